#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <tuple>

#include "cli.hpp"
#include "eja/error.hpp"
#include "eja/json_io.hpp"
#include "eja/korovkin.hpp"
#include "eja/omega.hpp"
#include "eja/positive_maps.hpp"
#include "eja/spectral.hpp"

namespace py = pybind11;
using namespace eja;

// Every entry point speaks JSON text; the Python package converts to and from dicts.
namespace {

std::string dump(const Json& j) { return j.dump(); }

std::string spectral_json(const std::string& x) {
  const Element e = element_from_json(parse_json(x));
  Json j = to_json(spectral(e));
  j["algebra"] = to_json(e.algebra());
  return dump(j);
}

std::string majorize_json(const std::string& x, const std::string& y, double tol) {
  const Json xj = parse_json(x);
  const Json yj = parse_json(y);
  if (xj.is_array()) return dump(to_json(majorize_check(vector_from_json(xj), vector_from_json(yj), tol)));
  const Element xe = element_from_json(xj);
  return dump(to_json(element_majorize(xe, element_from_json(yj, xe.algebra()), tol)));
}

std::string hlp_json(const std::string& x, const std::string& y) {
  const Eigen::VectorXd xv = vector_from_json(parse_json(x));
  const Eigen::VectorXd yv = vector_from_json(parse_json(y));
  const Eigen::MatrixXd d = hlp_witness(xv, yv);
  Json j;
  j["witness"] = matrix_to_json(d);
  j["birkhoff"] = to_json(birkhoff(d, 1e-10));
  return dump(j);
}

std::string verify_matrix_json(const std::string& a, const std::string& p, double tol) {
  return dump(to_json(verify_matrix_korovkin(matrix_from_json(parse_json(a)), vector_from_json(parse_json(p)), tol)));
}

std::string verify_wm_json(const std::string& a, const std::string& p, double tol, bool downarrow) {
  const Eigen::MatrixXd am = matrix_from_json(parse_json(a));
  const Eigen::VectorXd pv = vector_from_json(parse_json(p));
  return dump(to_json(downarrow ? corollary_downarrow(am, pv, tol) : verify_wm_korovkin(am, pv, tol)));
}

std::string verify_eja_json(const std::string& map, const std::string& p, double tol, int trials, std::uint64_t seed) {
  const LinearMap t = map_from_json(parse_json(map));
  return dump(to_json(verify_eja_korovkin(t, element_from_json(parse_json(p), t.algebra()), tol, trials, seed)));
}

std::string verify_wm_eja_json(const std::string& map, const std::string& p, double tol, std::uint64_t seed) {
  const LinearMap t = map_from_json(parse_json(map));
  return dump(to_json(verify_wm_eja(t, element_from_json(parse_json(p), t.algebra()), tol, seed)));
}

std::string classify_json(const std::string& map, double tol, int trials, std::uint64_t seed) {
  return dump(to_json(classify(map_from_json(parse_json(map)), tol, trials, seed)));
}

std::string apply_json(const std::string& map, const std::string& x) {
  const LinearMap t = map_from_json(parse_json(map));
  return dump(to_json(t(element_from_json(parse_json(x), t.algebra()))));
}

std::string omega_vertices_json(const std::string& p, int lp_trials, std::uint64_t seed) {
  return dump(to_json(omega_vertices(vector_from_json(parse_json(p)), lp_trials, seed)));
}

std::string omega_membership_json(const std::string& a, const std::string& p, double tol) {
  return dump(to_json(omega_membership(matrix_from_json(parse_json(a)), vector_from_json(parse_json(p)), tol)));
}

std::string algebra_op(const std::string& alg, const std::function<Json(const Algebra&)>& f) {
  return dump(f(algebra_from_json(parse_json(alg))));
}

std::tuple<int, std::string, std::string> run_cli(const std::vector<std::string>& args, const std::string& input) {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "JSON-level bindings of the eja library";
  py::register_exception<Error>(m, "CoreError");

  const auto release = py::call_guard<py::gil_scoped_release>();
  m.def("spectral", &spectral_json, py::arg("x"), release);
  m.def("majorize", &majorize_json, py::arg("x"), py::arg("y"), py::arg("tol"), release);
  m.def("hlp_witness", &hlp_json, py::arg("x"), py::arg("y"), release);
  m.def("verify_matrix", &verify_matrix_json, py::arg("a"), py::arg("p"), py::arg("tol"), release);
  m.def("verify_wm", &verify_wm_json, py::arg("a"), py::arg("p"), py::arg("tol"), py::arg("downarrow"), release);
  m.def("verify_eja", &verify_eja_json, py::arg("map"), py::arg("p"), py::arg("tol"), py::arg("trials"),
        py::arg("seed"), release);
  m.def("verify_wm_eja", &verify_wm_eja_json, py::arg("map"), py::arg("p"), py::arg("tol"), py::arg("seed"),
        release);
  m.def("classify", &classify_json, py::arg("map"), py::arg("tol"), py::arg("trials"), py::arg("seed"), release);
  m.def("apply", &apply_json, py::arg("map"), py::arg("x"), release);
  m.def("omega_vertices", &omega_vertices_json, py::arg("p"), py::arg("lp_trials"), py::arg("seed"), release);
  m.def("omega_membership", &omega_membership_json, py::arg("a"), py::arg("p"), py::arg("tol"), release);
  m.def(
      "non_ds_search",
      [](int n, int samples, std::uint64_t seed, int threads) {
        return dump(to_json(non_ds_search(n, samples, seed, threads)));
      },
      py::arg("n"), py::arg("samples"), py::arg("seed"), py::arg("threads"), release);
  m.def(
      "kadison_probe",
      [](const std::string& alg, int trials, std::uint64_t seed, int threads) {
        return algebra_op(alg, [&](const Algebra& a) { return to_json(kadison_probe(a, trials, seed, threads)); });
      },
      py::arg("algebra"), py::arg("trials"), py::arg("seed"), py::arg("threads"), release);
  m.def(
      "diag_map", [](const std::string& alg) { return algebra_op(alg, [](const Algebra& a) { return to_json(diag_map(a)); }); },
      py::arg("algebra"), release);
  m.def(
      "identity_map",
      [](const std::string& alg) { return algebra_op(alg, [](const Algebra& a) { return to_json(identity_map(a)); }); },
      py::arg("algebra"), release);
  m.def(
      "schur_map",
      [](const std::string& corr, const std::string& frame, const std::string& alg) {
        return algebra_op(alg, [&](const Algebra& a) {
          return to_json(schur_map(matrix_from_json(parse_json(corr)), frame_from_json(parse_json(frame), a)));
        });
      },
      py::arg("correlation"), py::arg("frame"), py::arg("algebra"), release);
  m.def(
      "random_element",
      [](const std::string& alg, std::uint64_t seed) {
        return algebra_op(alg, [&](const Algebra& a) {
          Rng rng(seed);
          return to_json(random_element(a, rng));
        });
      },
      py::arg("algebra"), py::arg("seed"), release);
  m.def(
      "random_frame",
      [](const std::string& alg, std::uint64_t seed) {
        return algebra_op(alg, [&](const Algebra& a) {
          Rng rng(seed);
          return to_json(random_frame(a, rng));
        });
      },
      py::arg("algebra"), py::arg("seed"), release);
  m.def(
      "random_automorphism",
      [](const std::string& alg, std::uint64_t seed) {
        return algebra_op(alg, [&](const Algebra& a) {
          Rng rng(seed);
          return to_json(random_automorphism(a, rng));
        });
      },
      py::arg("algebra"), py::arg("seed"), release);
  m.def("run_cli", &run_cli, py::arg("args"), py::arg("input") = "", release);
}
