#include "eja/omega.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "eja/error.hpp"
#include "eja/positive_maps.hpp"
#include "eja/random.hpp"
#include "eja/spectral.hpp"

namespace eja {

namespace {

void require_valid_p(const Eigen::VectorXd& p) {
  if (p.size() == 0 || p.minCoeff() <= 0.0) {
    throw Error(ErrorCode::kPNotPositive, "p must have positive entries");
  }
  if (!has_distinct_values(p)) {
    throw Error(ErrorCode::kDegenerateSpectrum, "entries of p must be distinct");
  }
}

std::array<Eigen::VectorXd, 3> test_vectors(const Eigen::VectorXd& p) {
  return {Eigen::VectorXd::Ones(p.size()), p, p.cwiseProduct(p)};
}

// Calls f(subset) for every subset of {0..n-1} with k elements, in lexicographic order.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> s(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = i;
  while (true) {
    f(s);
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Runs body(i) for i in [0, count) on up to `threads` workers; rethrows the first error.
void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_lock;
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_lock);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

Eigen::VectorXd random_distinct_positive(int n, Rng& rng) {
  Eigen::VectorXd p(n);
  do {
    for (int i = 0; i < n; ++i) p(i) = rng.uniform(0.1, 10.0);
  } while (!has_distinct_values(p));
  return p;
}

}  // namespace

Eigen::VectorXd matrix_to_vars(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd x(a.size());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) x(i * a.cols() + j) = a(i, j);
  return x;
}

Eigen::MatrixXd vars_to_matrix(const Eigen::VectorXd& x, int n) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = x(i * n + j);
  return a;
}

OmegaPolytope omega_polytope(const Eigen::VectorXd& p) {
  require_valid_p(p);
  const int n = static_cast<int>(p.size());
  OmegaPolytope omega{n, p, make_polyhedron(n * n)};
  Polyhedron& poly = omega.region;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n * n);
    row.segment(i * n, n).setOnes();
    add_equality(poly, row, 1.0);
  }
  const auto hs = test_vectors(p);
  for (int which = 1; which < 3; ++which) {
    const Eigen::VectorXd& h = hs[static_cast<std::size_t>(which)];
    Eigen::VectorXd row(n * n);
    for (int i = 0; i < n; ++i) row.segment(i * n, n) = h;
    add_equality(poly, row, h.sum());
    const Eigen::VectorXd hd = sorted_decreasing(h);
    for (int k = 1; k < n; ++k) {
      const double cap = hd.head(k).sum();
      for_each_subset(n, k, [&](const std::vector<int>& s) {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(n * n);
        for (int i : s) r.segment(i * n, n) = h;
        add_inequality(poly, r, cap);
      });
    }
  }
  return omega;
}

Polyhedron korovkin_polytope(const Eigen::VectorXd& p) {
  if (!has_distinct_values(p)) {
    throw Error(ErrorCode::kDegenerateSpectrum, "entries of p must be distinct");
  }
  const int n = static_cast<int>(p.size());
  Polyhedron poly = make_polyhedron(n * n);
  for (const auto& h : test_vectors(p)) {
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(n * n);
      row.segment(i * n, n) = h;
      add_equality(poly, row, h(i));
    }
  }
  return poly;
}

bool is_doubly_stochastic_matrix(const Eigen::MatrixXd& a, double tol) {
  return a.rows() == a.cols() && doubly_stochastic_residual(a) <= tol;
}

OmegaMembership omega_membership(const Eigen::MatrixXd& a, const Eigen::VectorXd& p, double tol) {
  require_valid_p(p);
  if (a.rows() != p.size() || a.cols() != p.size()) {
    throw Error(ErrorCode::kSizeMismatch, "matrix must be square of the size of p");
  }
  OmegaMembership m;
  m.min_entry = a.minCoeff();
  const auto hs = test_vectors(p);
  bool all = true;
  for (std::size_t k = 0; k < 3; ++k) {
    const Eigen::VectorXd& h = hs[k];
    m.reports[k] = majorize_check(a * h, h, tol * (1.0 + h.cwiseAbs().maxCoeff()));
    all = all && m.reports[k].strictly();
  }
  m.member = all && m.min_entry >= -tol;
  return m;
}

LpSolution omega_lp(const OmegaPolytope& omega, const Eigen::MatrixXd& objective, Sense sense) {
  if (objective.rows() != omega.n || objective.cols() != omega.n) {
    throw Error(ErrorCode::kSizeMismatch, "objective must be n x n");
  }
  return lp_solve({omega.region, matrix_to_vars(objective), sense});
}

OmegaVertices omega_vertices(const Eigen::VectorXd& p, int lp_trials, std::uint64_t seed) {
  if (p.size() > 3) {
    throw Error(ErrorCode::kRankTooLarge, "vertex enumeration is limited to n <= 3");
  }
  const OmegaPolytope omega = omega_polytope(p);
  const int n = omega.n;
  OmegaVertices out;
  std::vector<Eigen::VectorXd> verts = enumerate_vertices(omega.region, 1e-8);
  out.all_doubly_stochastic = true;
  for (const auto& v : verts) {
    out.vertices.push_back(vars_to_matrix(v, n));
    out.all_doubly_stochastic = out.all_doubly_stochastic && is_doubly_stochastic_matrix(out.vertices.back(), 1e-8);
  }
  Rng rng(seed);
  for (int t = 0; t < lp_trials; ++t) {
    Eigen::VectorXd c(n * n);
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = rng.normal();
    const LpSolution sol = lp_solve({omega.region, c, Sense::kMaximize});
    double best = -std::numeric_limits<double>::infinity();
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& v : verts) {
      best = std::max(best, c.dot(v));
      nearest = std::min(nearest, (sol.x - v).cwiseAbs().maxCoeff());
    }
    out.max_lp_gap = std::max(out.max_lp_gap, std::abs(sol.optimum - best));
    out.max_argmax_distance = std::max(out.max_argmax_distance, nearest);
    ++out.lp_trials;
  }
  out.complete = !verts.empty() && out.max_lp_gap <= 1e-7 && out.max_argmax_distance <= 1e-7;
  return out;
}

NonDsReport non_ds_search(int n, int p_samples, std::uint64_t seed, int threads) {
  if (n < 2) throw Error(ErrorCode::kSizeMismatch, "non_ds_search needs n >= 2");
  if (n > 6) throw Error(ErrorCode::kRankTooLarge, "subset constraints are limited to n <= 6");
  NonDsReport report;
  report.n = n;
  report.seed = seed;
  Rng rng(seed);
  report.samples.resize(static_cast<std::size_t>(std::max(0, p_samples)));
  for (auto& s : report.samples) s.p = random_distinct_positive(n, rng);

  parallel_for(p_samples, threads, [&](int idx) {
    NonDsSample& s = report.samples[static_cast<std::size_t>(idx)];
    const OmegaPolytope omega = omega_polytope(s.p);
    s.column_min.resize(n);
    s.column_max.resize(n);
    s.certified_ds = true;
    for (int j = 0; j < n; ++j) {
      Eigen::MatrixXd obj = Eigen::MatrixXd::Zero(n, n);
      obj.col(j).setOnes();
      for (Sense sense : {Sense::kMaximize, Sense::kMinimize}) {
        const LpSolution sol = omega_lp(omega, obj, sense);
        (sense == Sense::kMaximize ? s.column_max : s.column_min)(j) = sol.optimum;
        if (std::abs(sol.optimum - 1.0) <= 1e-6) continue;
        s.certified_ds = false;
        ColumnSumWitness w{j, sol.optimum, vars_to_matrix(sol.x, n), false};
        w.validated = omega_membership(w.matrix, s.p, 1e-9).member && !is_doubly_stochastic_matrix(w.matrix, 1e-6);
        s.witnesses.push_back(std::move(w));
      }
    }
  });
  for (const auto& s : report.samples)
    for (const auto& w : s.witnesses) report.witness_count += w.validated ? 1 : 0;
  return report;
}

BasisDsReport basis_ds_criterion(const Eigen::MatrixXd& a, const Eigen::VectorXd& p, double tol) {
  const int n = static_cast<int>(p.size());
  if (a.rows() != n || a.cols() != n) {
    throw Error(ErrorCode::kSizeMismatch, "matrix must be square of the size of p");
  }
  BasisDsReport r;
  r.column_sum_residual = (a.colwise().sum().transpose() - Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff();
  Eigen::MatrixXd v(n, n);
  Eigen::VectorXd h = Eigen::VectorXd::Ones(n);
  double scale = 0.0;
  r.all_majorized = true;
  for (int j = 0; j < n; ++j) {
    v.row(j) = h.transpose();
    const double hs = 1.0 + h.cwiseAbs().maxCoeff();
    scale = std::max(scale, hs);
    if (!majorize_check(a * h, h, tol * hs).strictly()) {
      r.all_majorized = false;
      r.first_failing_power = j;
      break;
    }
    h = h.cwiseProduct(p);
  }
  const bool nonnegative = a.minCoeff() >= -tol;
  if (r.all_majorized) {
    // Totals give V (A^T e - e) = g with |g_j| <= tol (1 + ||p^j||_inf).
    const Eigen::MatrixXd vinv = v.fullPivLu().inverse();
    r.bound = vinv.cwiseAbs().rowwise().sum().maxCoeff() * tol * scale * (1.0 + 1e-9);
    r.bound_holds = r.column_sum_residual <= r.bound + 1e-14;
  }
  r.doubly_stochastic = r.all_majorized && nonnegative;
  return r;
}

namespace {

// Smallest eigenvalue from Eigen's solvers (closed form for spin blocks).
double reference_min_eigenvalue(const Element& x) {
  const Algebra& alg = x.algebra();
  if (alg.blocks().size() > 1) {
    double m = std::numeric_limits<double>::infinity();
    for (int b = 0; b < static_cast<int>(alg.blocks().size()); ++b)
      m = std::min(m, reference_min_eigenvalue(block_part(x, b)));
    return m;
  }
  switch (alg.kind()) {
    case Kind::kRN: return x.coords().minCoeff();
    case Kind::kSymN:
      return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(to_sym_matrix(x), Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
    case Kind::kHermN:
      return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(to_herm_matrix(x), Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
    case Kind::kSpinN: {
      const Eigen::VectorXd nat = spin_natural(x);
      return nat(0) - nat.tail(nat.size() - 1).norm();
    }
    case Kind::kProduct: break;
  }
  return min_eigenvalue(x);
}

struct SampledMap {
  std::string family;
  LinearMap map;
};

SampledMap sample_base_map(const Algebra& alg, Rng& rng) {
  std::vector<std::string> families = {"schur"};
  const bool single = alg.blocks().size() == 1;
  if (single) families.push_back("automorphism");
  if (alg.kind() == Kind::kSymN || alg.kind() == Kind::kHermN) families.push_back("diag");
  if (alg.kind() == Kind::kHermN) families.push_back("cp");
  const std::string family = families[static_cast<std::size_t>(rng.index(static_cast<int>(families.size())))];
  if (family == "automorphism") return {family, random_automorphism(alg, rng)};
  if (family == "diag") return {family, diag_map(alg)};
  if (family == "cp") return {family, cp_map(random_unital_kraus(alg.size(), 1 + rng.index(3), rng), alg)};
  return {family, schur_map(random_correlation(alg.rank(), rng), random_frame(alg, rng), 1e-9)};
}

SampledMap sample_map(const Algebra& alg, Rng& rng) {
  const int pick = rng.index(4);
  if (pick == 0) {
    std::vector<LinearMap> parts;
    std::vector<double> w;
    double total = 0.0;
    const int count = 2 + rng.index(2);
    for (int k = 0; k < count; ++k) {
      parts.push_back(sample_base_map(alg, rng).map);
      w.push_back(rng.uniform(0.05, 1.0));
      total += w.back();
    }
    for (auto& x : w) x /= total;
    return {"convex", combination(w, parts)};
  }
  if (pick == 1) {
    SampledMap base = sample_base_map(alg, rng);
    const double s[] = {rng.uniform(0.1, 1.0)};
    const LinearMap parts[] = {base.map};
    return {"subunital-" + base.family, combination(s, parts)};
  }
  return sample_base_map(alg, rng);
}

struct KadisonTrial {
  int trial = -1;
  double slack = std::numeric_limits<double>::infinity();
};

}  // namespace

KadisonReport kadison_probe(const Algebra& algebra, int trials, std::uint64_t seed, int threads) {
  KadisonReport report{algebra, 0, 0, 0.0, -1, {}, std::nullopt, std::nullopt, {}};
  report.trials = std::max(0, trials);
  report.seed = seed;
  std::vector<double> slacks(static_cast<std::size_t>(report.trials));
  auto run_trial = [&](int t, std::string* family, std::optional<LinearMap>* map, std::optional<Element>* x_out) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    SampledMap m = sample_map(algebra, rng);
    Element x = random_element(algebra, rng);
    const double nx = norm(x);
    if (nx > 0.0) x *= 1.0 / nx;
    const Element tx = m.map(x);
    const Element gap = m.map(square(x)) - square(tx);
    if (family) *family = m.family;
    if (map) *map = m.map;
    if (x_out) *x_out = x;
    return gap;
  };
  parallel_for(report.trials, threads, [&](int t) {
    slacks[static_cast<std::size_t>(t)] = min_eigenvalue(run_trial(t, nullptr, nullptr, nullptr));
  });
  report.min_slack = report.trials > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  for (int t = 0; t < report.trials; ++t) {
    const double s = slacks[static_cast<std::size_t>(t)];
    if (s < report.min_slack) {
      report.min_slack = s;
      report.witness_trial = t;
    }
    if (s < -1e-7) {
      const double again = reference_min_eigenvalue(run_trial(t, nullptr, nullptr, nullptr));
      if (again < -1e-7 && std::abs(again - s) <= 1e-12 + 1e-9 * std::abs(s)) {
        report.candidates.push_back({t, s, again});
      }
    }
  }
  if (report.witness_trial >= 0) {
    std::string family;
    std::optional<LinearMap> map;
    std::optional<Element> x;
    run_trial(report.witness_trial, &family, &map, &x);
    report.witness_family = family;
    report.witness_map = map;
    report.witness_x = x;
  }
  return report;
}

}  // namespace eja
