"""Euclidean Jordan algebra verifiers and explorers.

Objects cross the boundary as the same JSON documents the command-line tool
reads and writes: elements are {"algebra": ..., "coords": [...]}, maps are
{"algebra", "matrix", "provenance"}, and reports are plain dicts.
"""

import json

from . import _core

__all__ = [
    "EjaError",
    "algebra",
    "apply",
    "classify",
    "diag_map",
    "hlp_witness",
    "identity_map",
    "kadison_probe",
    "majorize",
    "non_ds_search",
    "omega_membership",
    "omega_vertices",
    "random_automorphism",
    "random_element",
    "random_frame",
    "run_cli",
    "schur_map",
    "spectral",
    "verify_eja",
    "verify_matrix",
    "verify_wm",
    "verify_wm_eja",
]


class EjaError(Exception):
    """Library error; `code` is the error name, e.g. "DEGENERATE_SPECTRUM"."""

    def __init__(self, code, message):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


def _plain(value):
    # numpy arrays and scalars become lists and floats
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _dumps(value):
    return json.dumps(_plain(value))


def _call(fn, *args):
    try:
        return json.loads(fn(*args))
    except _core.CoreError as exc:
        code, _, message = str(exc).partition(": ")
        raise EjaError(code, message) from None


def algebra(kind, size):
    """{"kind": ..., "rank": size} or, for SpinN, {"kind": "SpinN", "dim": size}."""
    return {"kind": kind, "dim" if kind == "SpinN" else "rank": int(size)}


def spectral(x):
    return _call(_core.spectral, _dumps(x))


def majorize(x, y, tol=1e-9):
    """Is x majorized by y? Vectors or elements of the same algebra."""
    return _call(_core.majorize, _dumps(x), _dumps(y), tol)


def hlp_witness(x, y):
    """Doubly stochastic D with D y = x and its Birkhoff decomposition."""
    return _call(_core.hlp_witness, _dumps(x), _dumps(y))


def verify_matrix(a, p, tol=1e-9):
    return _call(_core.verify_matrix, _dumps(a), _dumps(p), tol)


def verify_wm(a, p, tol=1e-9, downarrow=False):
    return _call(_core.verify_wm, _dumps(a), _dumps(p), tol, downarrow)


def verify_eja(t, p, tol=1e-9, trials=200, seed=0):
    return _call(_core.verify_eja, _dumps(t), _dumps(p), tol, trials, seed)


def verify_wm_eja(t, p, tol=1e-9, seed=0):
    return _call(_core.verify_wm_eja, _dumps(t), _dumps(p), tol, seed)


def classify(t, tol=1e-9, trials=200, seed=0):
    return _call(_core.classify, _dumps(t), tol, trials, seed)


def apply(t, x):
    return _call(_core.apply, _dumps(t), _dumps(x))


def omega_vertices(p, lp_trials=10000, seed=0):
    return _call(_core.omega_vertices, _dumps(p), lp_trials, seed)


def omega_membership(a, p, tol=1e-9):
    return _call(_core.omega_membership, _dumps(a), _dumps(p), tol)


def non_ds_search(n, samples, seed=0, threads=1):
    return _call(_core.non_ds_search, n, samples, seed, threads)


def kadison_probe(alg, trials=10000, seed=0, threads=1):
    return _call(_core.kadison_probe, _dumps(alg), trials, seed, threads)


def diag_map(alg):
    return _call(_core.diag_map, _dumps(alg))


def identity_map(alg):
    return _call(_core.identity_map, _dumps(alg))


def schur_map(correlation, frame, alg):
    return _call(_core.schur_map, _dumps(correlation), _dumps(frame), _dumps(alg))


def random_element(alg, seed=0):
    return _call(_core.random_element, _dumps(alg), seed)


def random_frame(alg, seed=0):
    return _call(_core.random_frame, _dumps(alg), seed)


def random_automorphism(alg, seed=0):
    return _call(_core.random_automorphism, _dumps(alg), seed)


def run_cli(args, input=""):
    """Runs the command-line front end in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args], input)
