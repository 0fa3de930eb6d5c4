#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include "eja/error.hpp"
#include "eja/json_io.hpp"
#include "eja/korovkin.hpp"
#include "eja/majorization.hpp"
#include "eja/omega.hpp"
#include "eja/positive_maps.hpp"
#include "eja/spectral.hpp"

namespace eja::cli {

namespace {

const std::vector<std::string> kCommands = {
    "verify-matrix", "verify-wm",      "verify-eja",   "verify-seq",    "verify-wm-eja",
    "omega-vertices", "omega-search", "kadison-probe", "majorize",      "spectral",
};

struct Options {
  std::string command;
  std::string input = "-";
  std::string output;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int trials = -1;  // -1: the command's default
  int k_max = 10000;
  int threads = 1;
  bool summary = false;
  bool no_meta = false;
};

struct Outcome {
  Json report;
  int exit_code = kExitOk;
  std::string digest;
};

int trials_or(const Options& o, int fallback) { return o.trials >= 0 ? o.trials : fallback; }

const Json& need(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw Error(ErrorCode::kParseError, std::string("input needs field '") + key + "'");
  }
  return doc[key];
}

int int_or(const Json& doc, const char* key, int fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number_integer()) throw Error(ErrorCode::kParseError, std::string(key) + " must be an integer");
  return doc[key].get<int>();
}

double number_or(const Json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number()) throw Error(ErrorCode::kParseError, std::string(key) + " must be a number");
  return doc[key].get<double>();
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(3) << x;
  return s.str();
}

int verifier_exit(Conclusion c) { return c == Conclusion::kFailed ? kExitHypotheses : kExitOk; }

Outcome korovkin_outcome(const KorovkinReport& r) {
  Outcome o;
  o.report = to_json(r);
  o.exit_code = verifier_exit(r.conclusion);
  o.digest = std::string(to_string(r.conclusion)) + " residual=" + fmt(r.residual) + " bound=" + fmt(r.bound);
  if (!r.note.empty()) o.digest += " (" + r.note + ")";
  return o;
}

Outcome verify_matrix(const Json& doc, const Options& opt) {
  const Eigen::MatrixXd a = matrix_from_json(need(doc, "a"));
  const Eigen::VectorXd p = vector_from_json(need(doc, "p"));
  return korovkin_outcome(verify_matrix_korovkin(a, p, opt.tol));
}

Outcome verify_wm(const Json& doc, const Options& opt) {
  const Eigen::MatrixXd a = matrix_from_json(need(doc, "a"));
  const Eigen::VectorXd p = vector_from_json(need(doc, "p"));
  const bool downarrow = doc.contains("downarrow") && doc["downarrow"].get<bool>();
  return korovkin_outcome(downarrow ? corollary_downarrow(a, p, opt.tol) : verify_wm_korovkin(a, p, opt.tol));
}

Outcome verify_eja(const Json& doc, const Options& opt) {
  const LinearMap t = map_from_json(need(doc, "map"));
  const Element p = element_from_json(need(doc, "p"), t.algebra());
  return korovkin_outcome(verify_eja_korovkin(t, p, opt.tol, trials_or(opt, 200), opt.seed));
}

Outcome verify_wm_eja_cmd(const Json& doc, const Options& opt) {
  const LinearMap t = map_from_json(need(doc, "map"));
  const Element p = element_from_json(need(doc, "p"), t.algebra());
  return korovkin_outcome(verify_wm_eja(t, p, opt.tol, opt.seed));
}

Eigen::MatrixXd off_diagonal_correlation(int n, double c) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Constant(n, n, c);
  a.diagonal().setOnes();
  return a;
}

Outcome verify_seq(const Json& doc, const Options& opt) {
  const std::string family = need(doc, "family").get<std::string>();
  const Element p = element_from_json(need(doc, "p"));
  const Algebra& alg = p.algebra();
  const int k_min = int_or(doc, "k_min", 10);
  const int per_decade = int_or(doc, "per_decade", 4);
  const double scale = number_or(doc, "tol_scale", 2.0);
  if (k_min < 1 || opt.k_max < k_min || per_decade < 1) {
    throw Error(ErrorCode::kParseError, "need 1 <= k_min <= k_max and per_decade >= 1");
  }

  std::function<LinearMap(int)> seq;
  if (family == "schur_offdiag") {
    // A_k has off-diagonals 1 - 1/k on a frame other than that of p.
    Rng rng(opt.seed);
    const JordanFrame frame = doc.contains("frame") ? frame_from_json(doc["frame"], alg) : random_frame(alg, rng);
    const int n = alg.rank();
    seq = [frame, n](int k) { return schur_map(off_diagonal_correlation(n, 1.0 - 1.0 / k), frame); };
  } else if (family == "diag_blend") {
    const LinearMap parts[] = {identity_map(alg), diag_map(alg)};
    seq = [parts](int k) {
      const double w[] = {1.0 - 1.0 / k, 1.0 / k};
      return combination(w, parts);
    };
  } else if (family == "constant") {
    const LinearMap t = map_from_json(need(doc, "map"), alg);
    seq = [t](int) { return t; };
  } else {
    throw Error(ErrorCode::kParseError, "unknown family '" + family + "' (schur_offdiag, diag_blend, constant)");
  }

  const double floor = opt.tol;
  const SequenceReport r =
      verify_sequential(seq, p, log_grid(k_min, opt.k_max, per_decade),
                        [scale, floor](int k) { return std::max(floor, scale / k); });
  Outcome o;
  o.report = to_json(r);
  o.report["family"] = family;
  o.exit_code = verifier_exit(r.conclusion);
  o.digest = std::string(to_string(r.conclusion)) + " steps=" + std::to_string(r.steps.size()) +
             " fitted_c=" + fmt(r.fitted_c) + " monotone=" + (r.monotone ? "yes" : "no") +
             " bounded=" + (r.bounded ? "yes" : "no");
  return o;
}

Outcome omega_vertices_cmd(const Json& doc, const Options& opt) {
  const OmegaVertices v = omega_vertices(vector_from_json(need(doc, "p")), trials_or(opt, 10000), opt.seed);
  Outcome o;
  o.report = to_json(v);
  o.digest = std::to_string(v.vertices.size()) + " vertices, complete=" + (v.complete ? "yes" : "no") +
             " all_doubly_stochastic=" + (v.all_doubly_stochastic ? "yes" : "no");
  return o;
}

Outcome omega_search(const Json& doc, const Options& opt) {
  const int n = int_or(doc, "n", 4);
  const int samples = opt.trials >= 0 ? opt.trials : int_or(doc, "samples", 50);
  const NonDsReport r = non_ds_search(n, samples, opt.seed, opt.threads);
  int certified = 0;
  for (const auto& s : r.samples) certified += s.certified_ds ? 1 : 0;
  Outcome o;
  o.report = to_json(r);
  o.digest = "n=" + std::to_string(n) + " samples=" + std::to_string(r.samples.size()) +
             " validated_witnesses=" + std::to_string(r.witness_count) +
             " certified_ds=" + std::to_string(certified);
  return o;
}

Outcome kadison(const Json& doc, const Options& opt) {
  const Algebra alg = algebra_from_json(need(doc, "algebra"));
  const KadisonReport r = kadison_probe(alg, trials_or(opt, 10000), opt.seed, opt.threads);
  Outcome o;
  o.report = to_json(r);
  o.digest = alg.describe() + " trials=" + std::to_string(r.trials) + " min_slack=" + fmt(r.min_slack) +
             " candidates=" + std::to_string(r.candidates.size());
  return o;
}

Outcome majorize(const Json& doc, const Options& opt) {
  const Json& xj = need(doc, "x");
  const Json& yj = need(doc, "y");
  Outcome o;
  if (xj.is_array()) {
    const Eigen::VectorXd x = vector_from_json(xj);
    const Eigen::VectorXd y = vector_from_json(yj);
    if (x.size() != y.size()) throw Error(ErrorCode::kLengthMismatch, "x and y differ in length");
    const MajorizationReport r = majorize_check(x, y, opt.tol);
    o.report = to_json(r);
    if (r.strictly() && r.min_slack() >= -1e-10) {
      // Witness D with D y = x and its Birkhoff decomposition.
      const Eigen::MatrixXd d = hlp_witness(x, y);
      const auto terms = birkhoff(d, 1e-10);
      o.report["hlp_witness"] = matrix_to_json(d);
      o.report["witness_residual"] = (d * y - x).cwiseAbs().maxCoeff();
      o.report["birkhoff"] = to_json(terms);
      o.report["birkhoff_residual"] = (reconstruct(terms, static_cast<int>(x.size())) - d).cwiseAbs().maxCoeff();
    }
    o.digest = std::string(to_string(r.relation)) + " min_slack=" + fmt(r.min_slack());
  } else {
    const Element x = element_from_json(xj);
    const Element y = element_from_json(yj, x.algebra());
    const MajorizationReport r = element_majorize(x, y, opt.tol);
    o.report = to_json(r);
    o.report["eigenvalues_x"] = vector_to_json(eigenvalues(x));
    o.report["eigenvalues_y"] = vector_to_json(eigenvalues(y));
    o.digest = std::string(to_string(r.relation)) + " min_slack=" + fmt(r.min_slack());
  }
  return o;
}

Outcome spectral_cmd(const Json& doc, const Options&) {
  const Element x = element_from_json(need(doc, "x"));
  const SpectralDecomposition s = spectral(x);
  const Eigen::VectorXd& v = s.eigenvalues;
  const Element rebuilt = compose(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())), s.frame);
  Outcome o;
  o.report = to_json(s);
  o.report["reconstruction_residual"] = norm(rebuilt - x);
  o.report["frame_residual"] = frame_residuals(s.frame).max();
  o.digest = "eigenvalues=" + vector_to_json(v).dump();
  return o;
}

Outcome dispatch(const Json& doc, const Options& opt) {
  const std::string& c = opt.command;
  if (c == "verify-matrix") return verify_matrix(doc, opt);
  if (c == "verify-wm") return verify_wm(doc, opt);
  if (c == "verify-eja") return verify_eja(doc, opt);
  if (c == "verify-seq") return verify_seq(doc, opt);
  if (c == "verify-wm-eja") return verify_wm_eja_cmd(doc, opt);
  if (c == "omega-vertices") return omega_vertices_cmd(doc, opt);
  if (c == "omega-search") return omega_search(doc, opt);
  if (c == "kadison-probe") return kadison(doc, opt);
  if (c == "majorize") return majorize(doc, opt);
  return spectral_cmd(doc, opt);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kParseError, "cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Euclidean Jordan algebra verifiers and explorers"};
  app.name("eja");
  app.add_option("command", opt.command, "Command to run")->required()->check(CLI::IsMember(kCommands));
  app.add_option("input", opt.input, "Input JSON file, or - for standard input");
  app.add_option("--tol", opt.tol, "Tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Random seed");
  app.add_option("--trials", opt.trials, "Trial or sample count (command default when omitted)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--k-max", opt.k_max, "Largest k for verify-seq")->check(CLI::PositiveNumber);
  app.add_option("--threads", opt.threads, "Worker threads; never changes results")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", opt.output, "Write the JSON report here instead of standard output");
  app.add_flag("--summary", opt.summary, "Print a one-line digest instead of the JSON report");
  app.add_flag("--no-meta", opt.no_meta, "Omit the timestamp and version block");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  Json config;
  config["tol"] = opt.tol;
  config["seed"] = opt.seed;
  if (opt.trials >= 0) config["trials"] = opt.trials;
  if (opt.command == "verify-seq") config["k_max"] = opt.k_max;

  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = opt.command;
  doc["config"] = config;
  std::string digest;
  int exit_code = kExitOk;
  try {
    const Json input = parse_json(read_input(opt.input, in));
    require_schema(input);
    Outcome o = dispatch(input, opt);
    exit_code = o.exit_code;
    doc["exit_code"] = exit_code;
    doc["report"] = std::move(o.report);
    digest = o.digest;
  } catch (const Error& e) {
    // what() starts with "CODE: ".
    const std::string code(to_string(e.code()));
    std::string message = e.what();
    if (message.rfind(code + ": ", 0) == 0) message.erase(0, code.size() + 2);
    const bool violation = e.code() == ErrorCode::kTheoremViolation || e.code() == ErrorCode::kDivergence;
    exit_code = violation ? kExitViolation : kExitInput;
    doc["exit_code"] = exit_code;
    doc["error"] = {{"code", code}, {"message", message}};
    digest = code + ": " + message;
  } catch (const std::exception& e) {
    exit_code = kExitInput;
    doc["exit_code"] = exit_code;
    doc["error"] = {{"code", "PARSE_ERROR"}, {"message", e.what()}};
    digest = std::string("PARSE_ERROR: ") + e.what();
  }
  if (!opt.no_meta) doc["meta"] = {{"tool", "eja"}, {"version", "0.1.0"}, {"timestamp", utc_timestamp()}};

  const std::string text = doc.dump(2) + "\n";
  if (!opt.output.empty()) {
    std::ofstream f(opt.output);
    if (!f) {
      err << "cannot write '" << opt.output << "'\n";
      return kExitInput;
    }
    f << text;
  }
  if (opt.summary) {
    out << opt.command << ": " << digest << " [exit " << exit_code << "]\n";
  } else if (opt.output.empty()) {
    out << text;
  }
  return exit_code;
}

}  // namespace eja::cli
