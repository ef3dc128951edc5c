#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfa/block_map.hpp"
#include "qfa/checksum.hpp"
#include "qfa/entangle.hpp"
#include "qfa/errors.hpp"
#include "qfa/group_model.hpp"
#include "qfa/inequality.hpp"
#include "qfa/obstruction.hpp"
#include "qfa/random.hpp"

#ifndef QFA_VERSION
#define QFA_VERSION "0.0.0"
#endif

namespace qfa::cli {

using nlohmann::ordered_json;

namespace {

/// Thrown when an input path cannot be read.
struct NoInput {
  std::string message;
};

ordered_json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ordered_json complex_pair(cplx z) { return ordered_json::array({number(z.real()), number(z.imag())}); }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct Input {
  std::string text;
  std::string kind;  // "file" or "builtin"
  std::uint64_t checksum = 0;
};

Input read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NoInput{"cannot read " + path};
  std::stringstream buf;
  buf << in.rdbuf();
  Input out{buf.str(), "file", 0};
  out.checksum = fnv1a64(out.text);
  return out;
}

/// Relation a check value is judged by.
enum class Relation { AtLeast, AtMost, Info };

class Report {
 public:
  Report(std::string command, std::uint64_t seed, bool timings) : timings_(timings) {
    doc_["tool"] = "qfa";
    doc_["version"] = QFA_VERSION;
    doc_["command"] = std::move(command);
    doc_["seed"] = seed;
    doc_["input"] = nullptr;
    doc_["options"] = ordered_json::object();
    doc_["conventions"] = ordered_json::object();
    doc_["checks"] = ordered_json::array();
    doc_["result"] = ordered_json::object();
  }

  void input(const Input& in) { doc_["input"] = {{"kind", in.kind}, {"checksum", "fnv1a64:" + hex64(in.checksum)}}; }
  ordered_json& options() { return doc_["options"]; }
  ordered_json& conventions() { return doc_["conventions"]; }
  ordered_json& result() { return doc_["result"]; }

  /// Records a judged value. AtLeast passes when value ≥ threshold − tolerance, AtMost when
  /// value ≤ threshold + tolerance. A failing check is a finding.
  ordered_json& check(const std::string& id, double value, Relation rel, double threshold, double tolerance,
                      double seconds = -1.0) {
    ordered_json c;
    c["id"] = id;
    c["value"] = number(value);
    if (rel == Relation::Info) {
      c["relation"] = "info";
      c["tolerance"] = nullptr;
    } else {
      const bool ok = rel == Relation::AtLeast ? value >= threshold - tolerance : value <= threshold + tolerance;
      c["relation"] = rel == Relation::AtLeast ? ">=" : "<=";
      c["threshold"] = number(threshold);
      c["tolerance"] = number(tolerance);
      c["ok"] = ok;
      if (!ok) findings_ = true;
    }
    if (timings_ && seconds >= 0.0) c["wall_time_s"] = seconds;
    doc_["checks"].push_back(std::move(c));
    return doc_["checks"].back();
  }

  void finding() { findings_ = true; }
  bool findings() const { return findings_; }
  bool timings() const { return timings_; }
  std::string dump() const { return doc_.dump(2) + "\n"; }

 private:
  ordered_json doc_;
  bool findings_ = false;
  bool timings_ = false;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void ring_conventions(Report& r) {
  auto& c = r.conventions();
  c["indexing"] = "0-based; basis index 0 is the unit";
  c["A_side"] = "x_j<>x_k = delta_jk x_j / d_j, functional d(x_j) = d_j";
  c["B_side"] = "fusion product, trace tau = coefficient of x_0, realized by the left regular matrices";
  c["fourier"] = "identity on coefficients, side retagged";
  c["logarithm"] = "natural";
  c["support_relative_tolerance"] = kSupportRelativeTolerance;
  c["positivity_tolerance"] = kPositivityTolerance;
  c["margin_tolerance"] = kMarginTolerance;
}

void group_conventions(Report& r, const GroupModel& model) {
  auto& c = r.conventions();
  c["group"] = model.group().description();
  c["order"] = model.order();
  c["delta"] = model.delta();
  c["A_trace"] = "counting trace on functions, tr(1) = delta^2";
  c["B_trace"] = "trace of the left regular representation, n * coefficient of e";
  c["fourier"] = "F(f) = delta^-1 sum_g f(g) lambda_g";
  c["B_to_A"] = "(F b)(g) = delta * b(g^-1), so F^4 = 1";
  c["qup2_normalization"] = "S_A * S_B / delta^2";
  c["tr2_in_req_up"] = "counting trace on functions (A side)";
  c["logarithm"] = "natural";
  c["margin_tolerance"] = kMarginTolerance;
}

FusionRing load_ring_input(const std::string& path, Report& report) {
  const Input in = read_file(path);
  report.input(in);
  return parse_ring(in.text);
}

FiniteGroup load_group_input(const std::string& spec, Report& report) {
  if (std::filesystem::exists(spec)) {
    const Input in = read_file(spec);
    report.input(in);
    return parse_group(in.text);
  }
  try {
    FiniteGroup g = group_from_name(spec);
    report.input({spec, "builtin", fnv1a64(spec)});
    return g;
  } catch (const ValueError&) {
    throw NoInput{"no group file or builtin group named '" + spec + "'"};
  }
}

void require_valid(const FusionRing& ring) {
  const ValidationReport v = validate(ring);
  if (!v.ok()) {
    throw ValueError("ring violates " + std::string(axiom_name(v.violations.front().axiom)) + ": " +
                     v.violations.front().detail);
  }
}

// ---------------------------------------------------------------- ring commands

void cmd_validate(const std::string& path, Report& r) {
  const FusionRing ring = load_ring_input(path, r);
  ring_conventions(r);
  const ValidationReport v = validate(ring);
  auto& res = r.result();
  res["rank"] = ring.rank();
  res["valid"] = v.ok();
  res["commutative"] = ring.is_commutative();
  res["violations"] = ordered_json::array();
  for (const auto& viol : v.violations) {
    res["violations"].push_back({{"axiom", axiom_name(viol.axiom)}, {"indices", viol.indices}, {"detail", viol.detail}});
  }
  r.check("axiom_violations", static_cast<double>(v.violations.size()), Relation::AtMost, 0.0, 0.0);
}

void cmd_dims(const std::string& path, Report& r) {
  const FusionRing ring = load_ring_input(path, r);
  ring_conventions(r);
  require_valid(ring);
  const auto dims = pf_dimensions(ring);
  auto& res = r.result();
  res["pf_dimensions"] = ordered_json::array();
  for (double d : dims) res["pf_dimensions"].push_back(number(d));
  res["global_dimension"] = number(global_dimension(dims));
  r.check("min_pf_dimension", *std::min_element(dims.begin(), dims.end()), Relation::AtLeast, 1.0, 1e-9);
}

void cmd_characters(const std::string& path, Report& r) {
  const FusionRing ring = load_ring_input(path, r);
  ring_conventions(r);
  require_valid(ring);
  const CharacterTableOptions opts;
  r.conventions()["character_seed"] = opts.seed;
  r.conventions()["column_order"] = "PF column first, then lexicographic in (re, im) rounded to 1e-6";
  const CharacterTable t = character_table(ring, opts);
  auto& res = r.result();
  res["rank"] = t.rank();
  res["seed_used"] = t.seed_used;
  res["entries"] = ordered_json::array();
  for (Eigen::Index i = 0; i < t.entries.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < t.entries.cols(); ++c) row.push_back(complex_pair(t.entries(i, c)));
    res["entries"].push_back(std::move(row));
  }
  res["conjugate_column"] = t.conjugate_column;
  r.check("max_residual", t.max_residual(), Relation::AtMost, 0.0, opts.residual_tolerance);
}

void cmd_obstruct(const std::string& path, std::size_t samples, Report& r) {
  const FusionRing ring = load_ring_input(path, r);
  ring_conventions(r);
  require_valid(ring);
  r.options()["samples"] = samples;
  ScanOptions opts;
  opts.fallback_samples = samples;
  opts.seed = r.result().is_null() ? 0 : 0;
  Stopwatch sw;
  const ObstructionVerdict v = scan(ring, opts);
  const double secs = sw.seconds();
  auto& res = r.result();
  res["status"] = status_name(v.status);
  res["path"] = v.exhaustive ? "exhaustive triple scan" : "sampling falsifier";
  res["evaluations"] = v.evaluations;
  res["min_triple_sum"] = number(v.min_triple_sum);
  res["margin_threshold"] = number(v.margin_threshold);
  if (v.witness_columns) {
    res["witness_columns"] = *v.witness_columns;
    const CharacterTable t = character_table(ring, opts.table);
    ordered_json cols = ordered_json::array();
    for (std::size_t c : *v.witness_columns) {
      ordered_json col = ordered_json::array();
      for (Eigen::Index i = 0; i < t.entries.rows(); ++i) col.push_back(complex_pair(t.entries(i, static_cast<Eigen::Index>(c))));
      cols.push_back(std::move(col));
    }
    res["witness_column_values"] = std::move(cols);
  }
  if (v.min_diagonal_sum) {
    res["min_diagonal_sum"] = number(*v.min_diagonal_sum);
    res["min_diagonal_column"] = *v.min_diagonal_column;
  }
  if (v.witness_pair) res["witness_pair"] = ordered_json::parse(*v.witness_pair);
  res["min_positivity_margin"] = number(v.min_positivity_margin);
  if (!v.diagnostic.empty()) res["diagnostic"] = v.diagnostic;
  if (v.status == ObstructionStatus::Inconclusive) throw NumericalError("obstruction scan inconclusive: " + v.diagnostic);
  if (v.exhaustive) {
    r.check("triple_sum_nonnegative", v.min_triple_sum, Relation::AtLeast, 0.0, v.margin_threshold, secs);
  } else {
    r.check("dual_schur_positivity", v.min_positivity_margin, Relation::AtLeast, 0.0, v.margin_threshold, secs);
  }
}

void cmd_inequalities(const std::string& path, const std::string& suite, std::size_t samples, std::uint64_t seed,
                      Report& r) {
  const FusionRing ring = load_ring_input(path, r);
  ring_conventions(r);
  require_valid(ring);
  if (suite != "standard" && suite != "extended") throw CLI::ValidationError("--suite", "standard or extended");
  r.options()["suite"] = suite;
  r.options()["samples"] = samples;
  const ExponentGrid grid;
  r.conventions()["exponent_grid"] = grid.p_values;
  auto& res = r.result();
  res["reports"] = ordered_json::array();
  for (InequalityId id : kAllInequalities) {
    Stopwatch sw;
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(id));
    const CheckReport rep = run_check(ring, id, samples, s, grid);
    const double tol = id == InequalityId::Plancherel ? 1e-10 : kMarginTolerance;
    auto& c = r.check(std::string(inequality_name(id)), rep.worst_margin, Relation::AtLeast, 0.0, tol, sw.seconds());
    c["samples"] = rep.samples;
    c["seed"] = rep.seed;
    c["worst_sample"] = rep.worst_sample;
    if (rep.witness) c["witness"] = ordered_json::parse(*rep.witness);
  }
  const auto probe = extremizer_probe(ring, grid);
  r.check("QUP1_at_x0", std::abs(probe[0].qup1), Relation::AtMost, 0.0, kEqualityTolerance);
  r.check("QUP2_at_x0", std::abs(probe[0].qup2 - 1.0), Relation::AtMost, 0.0, kEqualityTolerance);
  if (suite == "extended") {
    res["extremizers"] = ordered_json::array();
    for (const auto& e : probe) {
      res["extremizers"].push_back({{"candidate", e.candidate},
                                    {"qup1", number(e.qup1)},
                                    {"qup2", number(e.qup2)},
                                    {"qhy_margin", number(e.qhy)},
                                    {"qup1_equality", e.qup1_equality},
                                    {"qup2_equality", e.qup2_equality},
                                    {"qhy_equality", e.qhy_equality},
                                    {"equality_tolerance", kEqualityTolerance}});
    }
  }
}

// ---------------------------------------------------------------- group commands

Eigen::VectorXcd random_function(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd f(static_cast<Eigen::Index>(n));
  for (Eigen::Index g = 0; g < f.size(); ++g) f[g] = cplx(gauss(rng), gauss(rng));
  return f;
}

void calibration_checks(const GroupModel& model, std::size_t samples, std::uint64_t seed, Report& r) {
  const std::size_t n = model.order();
  const double d2 = model.delta() * model.delta();
  double plancherel = 0.0;
  double period = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    std::mt19937_64 rng = sample_rng(seed, i);
    const Eigen::VectorXcd f = random_function(n, rng);
    plancherel = std::max(plancherel, std::abs(model.norm_b(model.fourier_operator(f), 2.0) - model.norm_a(f, 2.0)));
    Eigen::VectorXcd x = f;
    for (int k = 0; k < 2; ++k) x = model.rotate_b_to_a(model.dft(x));
    period = std::max(period, (x - f).norm());
  }
  r.check("plancherel", plancherel, Relation::AtMost, 0.0, 1e-10);
  r.check("fourier_period_four", period, Relation::AtMost, 0.0, 1e-10);

  double duality = 0.0;
  double qup2 = 0.0;
  double scalar_min = kInf;
  auto& subs = r.result()["subgroups"];
  subs = ordered_json::array();
  for (const auto& h : model.group().subgroups()) {
    const Eigen::VectorXcd f = model.biprojection(h);
    const Eigen::MatrixXcd b = model.fourier_operator(f);
    const double c = static_cast<double>(h.size()) / model.delta();
    duality = std::max(duality, (b * b - c * b).norm());
    duality = std::max(duality, spectral::hermitian_defect(b));
    scalar_min = std::min(scalar_min, c);
    const double prod = group_qup2(model, f);
    qup2 = std::max(qup2, std::abs(prod - 1.0));
    subs.push_back({{"elements", h}, {"fourier_scalar", number(c)}, {"qup2", number(prod)}});
  }
  r.check("biprojection_duality_defect", duality, Relation::AtMost, 0.0, 1e-10);
  r.check("biprojection_fourier_scalar", scalar_min, Relation::AtLeast, 0.0, 0.0);
  r.check("qup2_biprojection_equality", qup2, Relation::AtMost, 0.0, 1e-9);
  (void)d2;
}

void boundary_checks(const GroupModel& model, Report& r) {
  const std::vector<double> exps = {1.0, 1.25, 1.5, 2.0, 3.0, kInf};
  const double d = model.delta();
  auto inv = [](double e) { return std::isinf(e) ? 0.0 : 1.0 / e; };
  Eigen::VectorXcd point = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(model.order()));
  point[0] = 1.0;
  double point_dev = 0.0;
  for (double p : exps) {
    for (double q : exps) {
      point_dev = std::max(point_dev, std::abs(hausdorff_young_ratio(model, point, p, q) - std::pow(d, -1.0 + 2.0 * inv(q))));
    }
  }
  r.check("boundary_trace_one_projection", point_dev, Relation::AtMost, 0.0, 1e-8);

  // Unimodular functions on the q = 2 segment.
  double uni_dev = 0.0;
  std::mt19937_64 rng = sample_rng(0xb0da7, 0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int s = 0; s < 8; ++s) {
    Eigen::VectorXcd u(static_cast<Eigen::Index>(model.order()));
    for (Eigen::Index g = 0; g < u.size(); ++g) u[g] = std::polar(1.0, angle(rng));
    for (double p : exps) {
      uni_dev = std::max(uni_dev, std::abs(hausdorff_young_ratio(model, u, p, 2.0) - std::pow(d, 1.0 - 2.0 * inv(p))));
    }
  }
  r.check("boundary_unimodular_q2", uni_dev, Relation::AtMost, 0.0, 1e-8);

  if (model.group().abelian_factors().size() == 1) {
    const Eigen::VectorXcd u = chirp(model.order());
    double chirp_dev = 0.0;
    for (double p : exps) {
      for (double q : exps) {
        chirp_dev = std::max(chirp_dev, std::abs(hausdorff_young_ratio(model, u, p, q) - std::pow(d, 2.0 * inv(q) - 2.0 * inv(p))));
      }
    }
    r.check("boundary_biunitary_chirp", chirp_dev, Relation::AtMost, 0.0, 1e-8);
  }

  double bishift_dev = 0.0;
  for (const auto& b : bishift_catalog(model)) {
    for (double p : {1.0, 1.5, 2.0}) {
      const double q = spectral::conjugate_exponent(p);
      bishift_dev = std::max(bishift_dev, std::abs(hausdorff_young_ratio(model, b.values, p, q) - std::pow(d, -1.0 + 2.0 * inv(q))));
    }
  }
  r.check("bishift_extremal_ratio", bishift_dev, Relation::AtMost, 0.0, 1e-9);
}

void rqhy_checks(const GroupModel& model, std::size_t samples, std::uint64_t seed, Report& r) {
  Stopwatch sw;
  double worst = kInf;
  double p2_gap = 0.0;
  double k2 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    std::mt19937_64 rng = sample_rng(seed, i);
    const double p = std::uniform_real_distribution<double>(1.0, 2.0)(rng);
    const DensityState phi = random_state(model, Side::A, rng);
    const DensityState psi = random_state(model, Side::B, rng);
    const Eigen::VectorXcd x = random_function(model.order(), rng);
    worst = std::min(worst, rqhy_margin(model, x, p, phi, psi));
    const Eigen::VectorXcd xs = x.cwiseProduct(phi.density.diagonal().cwiseSqrt());
    p2_gap = std::max(p2_gap, std::abs(model.norm_b(relative_fourier(model, x, 2.0, phi, psi), 2.0) - model.norm_a(xs, 2.0)));
    k2 = std::max(k2, std::abs(rqhy_constant(model, 2.0, phi, psi) - 1.0));
  }
  auto& c = r.check("rqhy_margin", worst, Relation::AtLeast, 0.0, kMarginTolerance, sw.seconds());
  c["samples"] = samples;
  r.check("rqhy_plancherel_p2", p2_gap, Relation::AtMost, 0.0, 1e-10);
  r.check("rqhy_constant_p2", k2, Relation::AtMost, 0.0, 1e-10);
}

void req_up_checks(const GroupModel& model, std::size_t samples, std::uint64_t seed, Report& r) {
  Stopwatch sw;
  double printed = kInf;
  double corrected = kInf;
  double tracial = kInf;
  std::size_t failures = 0;
  ordered_json worst_case;
  for (std::size_t i = 0; i < samples; ++i) {
    std::mt19937_64 rng = sample_rng(seed, i);
    const DensityState omega = random_state(model, Side::A, rng);
    const DensityState phi = random_state(model, Side::A, rng);
    const DensityState psi = random_state(model, Side::B, rng);
    const ReqUpReport rep = req_up_check(model, omega, phi, psi);
    if (rep.margin < -kMarginTolerance) ++failures;
    if (rep.margin < printed) {
      printed = rep.margin;
      worst_case = {{"sample", i},
                    {"lhs", number(rep.lhs)},
                    {"rhs", number(rep.rhs)},
                    {"kink", number(rep.kink)},
                    {"relative_entropy", number(rep.relative_entropy)},
                    {"hat_relative_entropy", number(rep.hat_relative_entropy)}};
    }
    corrected = std::min(corrected, rep.corrected_margin);
    tracial = std::min(tracial, req_up_check(model, omega, trace_state(model, Side::A), psi).margin);
  }
  auto& c = r.check("req_up_margin", printed, Relation::AtLeast, 0.0, kMarginTolerance, sw.seconds());
  c["samples"] = samples;
  c["failures"] = failures;
  c["worst_case"] = worst_case;
  r.check("req_up_corrected_margin", corrected, Relation::AtLeast, 0.0, kMarginTolerance);
  r.check("req_up_tracial_phi_margin", tracial, Relation::AtLeast, 0.0, kMarginTolerance);
  const DensityState tr_a = trace_state(model, Side::A);
  r.check("req_up_trace_states_margin", req_up_check(model, tr_a, tr_a, trace_state(model, Side::B)).margin,
          Relation::Info, 0.0, 0.0);
}

void derivative_checks(const GroupModel& model, std::size_t samples, std::uint64_t seed, Report& r) {
  Stopwatch sw;
  double f2 = 0.0;
  double fd_min = kInf;
  double gap = 0.0;
  double literal_gap = 0.0;
  double near_two = -kInf;
  for (std::size_t i = 0; i < samples; ++i) {
    std::mt19937_64 rng = sample_rng(seed, i);
    const DensityState omega = random_state(model, Side::A, rng);
    const DensityState phi = random_state(model, Side::A, rng);
    const DensityState psi = random_state(model, Side::B, rng);
    const DerivativeReport d = derivative_check(model, omega, phi, psi);
    f2 = std::max(f2, std::abs(d.f_at_2));
    fd_min = std::min(fd_min, d.fd_value);
    gap = std::max(gap, d.abs_gap);
    literal_gap = std::max(literal_gap, std::abs(d.fd_value - d.literal_value));
    for (double p : {1.8, 1.9, 1.99}) near_two = std::max(near_two, f_curve(model, omega, phi, psi, p));
  }
  r.check("f_at_2", f2, Relation::AtMost, 0.0, 1e-10);
  r.check("f_below_2", near_two, Relation::AtMost, 0.0, kMarginTolerance);
  auto& c = r.check("fd_left_derivative", fd_min, Relation::AtLeast, 0.0, 1e-6, sw.seconds());
  c["samples"] = samples;
  c["step_sizes"] = {1e-3, 1e-4};
  c["stencil"] = "one-sided second order, Richardson-combined";
  r.check("fd_vs_analytic_gap", gap, Relation::AtMost, 0.0, 1e-4);
  r.check("fd_vs_literal_gap", literal_gap, Relation::Info, 0.0, 0.0);
}

void cmd_group_check(const std::string& spec, bool rqhy, bool req_up, bool derivative, std::size_t samples,
                     std::uint64_t seed, Report& r) {
  const GroupModel model(load_group_input(spec, r));
  group_conventions(r, model);
  r.options()["rqhy"] = rqhy;
  r.options()["req_up"] = req_up;
  r.options()["derivative_check"] = derivative;
  r.options()["samples"] = samples;
  auto count = [&](std::size_t fallback) { return samples ? samples : fallback; };
  calibration_checks(model, count(1000), derive_seed(seed, 1), r);
  boundary_checks(model, r);
  if (rqhy) rqhy_checks(model, count(200), derive_seed(seed, 2), r);
  if (req_up) {
    r.conventions()["req_up_correction"] =
        "corrected margin adds (1/delta)*||P' F(log D_phi) P'||_1, P' = 1 - (1/n) sum_g lambda_g";
    req_up_checks(model, count(500), derive_seed(seed, 3), r);
  }
  if (derivative) {
    r.conventions()["derivative_assembly"] =
        "-S/4 - S_hat/4 - K'(2-), K' including the one-sided kink (1/4delta)*||P' F(log D_phi) P'||_1";
    derivative_checks(model, count(100), derive_seed(seed, 4), r);
  }
}

void cmd_blockmap(const std::string& spec, double lambda, std::size_t trials, std::size_t max_steps,
                  const std::string& sidecar, std::uint64_t seed, Report& r) {
  const GroupModel model(load_group_input(spec, r));
  group_conventions(r, model);
  r.options()["lambda"] = number(lambda);
  r.options()["trials"] = trials;
  r.options()["max_steps"] = max_steps;
  const BlockDecoding& dec = calibrated_decoding();
  auto& conv = r.conventions();
  conv["block_decoding"] = dec.describe();
  conv["block_decoding_calibrated_on"] = "subgroup indicators of Z/12 and S3, lambda in {0, 0.25, 0.5, 0.75, 1}";
  conv["block_decoding_survivors"] = surviving_decodings({FiniteGroup::cyclic(12), FiniteGroup::symmetric3()});
  if (dec.widened) {
    conv["block_decoding_warning"] =
        "no decoding with the printed delta^2 prefactor fixes subgroup indicators; the prefactor power was widened";
  }
  conv["convergence"] = "||f_k+1 - f_k||_2 <= 1e-8 ||f_k||_2 for 3 consecutive steps";
  conv["classification_tolerance"] = kClassificationTolerance;

  const std::vector<double> lambdas = {0.0, 0.25, 0.5, 0.75, 1.0};
  const auto catalog = bishift_catalog(model);
  const auto subgroups = model.group().subgroups();
  double sub_err = 0.0;
  double shifted_err = 0.0;
  std::size_t shifted_fixed = 0;
  std::size_t shifted_total = 0;
  for (const auto& b : catalog) {
    const bool plain = b.character == 0 && std::binary_search(subgroups[b.subgroup].begin(), subgroups[b.subgroup].end(), b.shift);
    double worst = 0.0;
    for (double l : lambdas) worst = std::max(worst, (block_step(model, b.values, l, dec) - b.values).norm());
    if (plain) {
      sub_err = std::max(sub_err, worst);
    } else {
      ++shifted_total;
      shifted_err = std::max(shifted_err, worst);
      if (worst <= kFixedPointTolerance) ++shifted_fixed;
    }
  }
  r.check("subgroup_indicator_fixed_points", sub_err, Relation::AtMost, 0.0, kFixedPointTolerance);
  auto& sc = r.check("shifted_bishift_fixed_points", shifted_err, Relation::AtMost, 0.0, kFixedPointTolerance);
  sc["fixed"] = shifted_fixed;
  sc["total"] = shifted_total;

  // Degree-one homogeneity and positivity on random positive inputs.
  double homog = 0.0;
  double pos = kInf;
  for (std::size_t i = 0; i < 20; ++i) {
    std::mt19937_64 rng = sample_rng(derive_seed(seed, 7), i);
    Eigen::VectorXcd f(static_cast<Eigen::Index>(model.order()));
    for (Eigen::Index g = 0; g < f.size(); ++g) f[g] = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double c = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
    const Eigen::VectorXcd bf = block_step(model, f, lambda, dec);
    homog = std::max(homog, (block_step(model, f * c, lambda, dec) - c * bf).norm() / (c * bf.norm()));
    for (Eigen::Index g = 0; g < bf.size(); ++g) pos = std::min(pos, bf[g].real() - std::abs(bf[g].imag()));
  }
  r.check("homogeneity_degree_one", homog, Relation::AtMost, 0.0, 1e-10);
  r.check("positivity_propagation", pos, Relation::AtLeast, 0.0, 1e-12);

  std::size_t converged = 0;
  std::size_t classified = 0;
  std::size_t worst_steps = 0;
  std::size_t violations = 0;
  ordered_json trajectories = ordered_json::array();
  ordered_json dump = ordered_json::array();
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng = sample_rng(derive_seed(seed, 8), t);
    Eigen::VectorXcd f0(static_cast<Eigen::Index>(model.order()));
    for (Eigen::Index g = 0; g < f0.size(); ++g) f0[g] = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const Trajectory tr = iterate(model, f0, lambda, max_steps, dec);
    converged += tr.converged ? 1 : 0;
    classified += tr.limit.kind == LimitKind::Biprojection ? 1 : 0;
    worst_steps = std::max(worst_steps, tr.iterates.size() - 1);
    const auto viol = entropy_monotonicity_report(tr);
    violations += viol.size();
    ordered_json steps = ordered_json::array();
    for (const auto& s : tr.steps) {
      steps.push_back({{"checksum", hex64(s.checksum)}, {"diff_norm", number(s.diff_norm)}, {"entropy", number(s.entropy)}});
    }
    ordered_json v = ordered_json::array();
    for (const auto& e : viol) v.push_back({{"step", e.step}, {"increase", number(e.increase)}});
    ordered_json rec = {{"trial", t},
                        {"converged", tr.converged},
                        {"converged_at", tr.converged_at},
                        {"limit", limit_name(tr.limit.kind)},
                        {"distance", number(tr.limit.distance)}};
    if (tr.limit.kind == LimitKind::Biprojection) {
      rec["subgroup"] = subgroups[tr.limit.match.subgroup];
      rec["shift"] = tr.limit.match.shift;
      rec["character"] = tr.limit.match.character;
    }
    rec["entropy_violations"] = std::move(v);
    rec["steps"] = std::move(steps);
    trajectories.push_back(std::move(rec));
    if (!sidecar.empty()) {
      ordered_json its = ordered_json::array();
      for (const auto& it : tr.iterates) {
        ordered_json vec = ordered_json::array();
        for (Eigen::Index g = 0; g < it.size(); ++g) vec.push_back(complex_pair(it[g]));
        its.push_back(std::move(vec));
      }
      dump.push_back({{"trial", t}, {"iterates", std::move(its)}});
    }
  }
  r.check("trajectories_converged", static_cast<double>(converged), Relation::AtLeast, static_cast<double>(trials), 0.0);
  r.check("trajectories_classified", static_cast<double>(classified), Relation::AtLeast, static_cast<double>(trials), 0.0);
  r.check("max_steps_used", static_cast<double>(worst_steps), Relation::AtMost, static_cast<double>(max_steps), 0.0);
  r.check("entropy_increase_events", static_cast<double>(violations), Relation::Info, 0.0, kEntropyTolerance);
  r.result()["trajectories"] = std::move(trajectories);
  if (!sidecar.empty()) {
    std::ofstream out(sidecar);
    if (!out) throw Error("cannot write " + sidecar);
    out << dump.dump() << "\n";
  }
}

// ---------------------------------------------------------------- entanglement

void cmd_entangle(std::size_t n, std::size_t d, Report& r) {
  const std::string canonical = "entangle n=" + std::to_string(n) + " d=" + std::to_string(d);
  r.input({canonical, "arguments", fnv1a64(canonical)});
  r.options()["n"] = n;
  r.options()["d"] = d;
  const std::size_t cap = dimension_cap();
  r.conventions()["dimension_cap"] = cap;
  r.conventions()["max_state"] = "QFT^{(x)n} GHZ = d^{(1-n)/2} sum over k_1+...+k_n = 0 mod d";
  r.conventions()["logarithm"] = "natural";
  if (n < 2) throw DomainError("entangle needs n >= 2");
  const QuditState mx = max_state(n, d, cap);
  const QuditState ghz = ghz_state(n, d, cap);
  const QuditState prod = product_state(std::vector<std::size_t>(n, 0), d, cap);
  const double target = std::log(static_cast<double>(d));
  double max_dev = 0.0;
  double ghz_dev = 0.0;
  double prod_max = 0.0;
  ordered_json cuts = ordered_json::array();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::size_t> cut(k);
    std::iota(cut.begin(), cut.end(), std::size_t{0});
    const double em = entanglement_entropy(mx, cut);
    const double eg = entanglement_entropy(ghz, cut);
    const double ep = entanglement_entropy(prod, cut);
    max_dev = std::max(max_dev, std::abs(em - target));
    ghz_dev = std::max(ghz_dev, std::abs(eg - target));
    prod_max = std::max(prod_max, std::abs(ep));
    cuts.push_back({{"cut", cut}, {"max", number(em)}, {"ghz", number(eg)}, {"product", number(ep)}});
  }
  r.result()["cuts"] = std::move(cuts);
  r.result()["log_d"] = number(target);
  r.check("max_entropy_is_log_d", max_dev, Relation::AtMost, 0.0, 1e-10);
  r.check("ghz_entropy_is_log_d", ghz_dev, Relation::AtMost, 0.0, 1e-10);
  r.check("product_entropy_zero", prod_max, Relation::AtMost, 0.0, 1e-10);
  r.check("max_is_fourier_of_ghz", (apply_fourier(ghz).amplitudes - mx.amplitudes).norm(), Relation::AtMost, 0.0, 1e-10);
  if (n == 2) {
    // The two-qudit Max state d^{-1/2} Σ|k, −k⟩ corresponds to the constant 2-box d^{-1/2}·1 on Z/d.
    const GroupModel model(FiniteGroup::cyclic(d));
    const Eigen::VectorXcd x = Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(d), 1.0 / std::sqrt(double(d)));
    r.check("qup1_two_box", group_qup1(model, x), Relation::AtLeast, 0.0, 1e-10);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Fourier analysis on fusion rings and finite-group models", "qfa"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  std::string output;
  bool timings = false;
  app.add_option("--seed", seed, "Root seed for every random draw")->capture_default_str();
  app.add_option("-o,--output", output, "Write the report to this file instead of stdout");
  app.add_flag("--timings", timings, "Add wall times to checks (reports stop being byte-reproducible)");
  app.set_version_flag("--version", QFA_VERSION);

  std::string ring_path;
  std::string group_spec;
  auto* validate_cmd = app.add_subcommand("validate", "Check the fusion-ring axioms");
  validate_cmd->add_option("ring", ring_path, "Fusion-ring JSON document")->required();
  auto* dims_cmd = app.add_subcommand("dims", "Perron-Frobenius dimensions");
  dims_cmd->add_option("ring", ring_path)->required();
  auto* chars_cmd = app.add_subcommand("characters", "Character table of a commutative ring");
  chars_cmd->add_option("ring", ring_path)->required();
  std::size_t obstruct_samples = 1000;
  auto* obstruct_cmd = app.add_subcommand("obstruct", "Schur-product obstruction to unitary categorification");
  obstruct_cmd->add_option("ring", ring_path)->required();
  obstruct_cmd->add_option("--samples", obstruct_samples, "Samples for the noncommutative falsifier")->capture_default_str();
  std::string suite = "standard";
  std::size_t ineq_samples = 1000;
  auto* ineq_cmd = app.add_subcommand("inequalities", "Sampled margins of QSP, QHY, QY, QUP-1, QUP-2 and Plancherel");
  ineq_cmd->add_option("ring", ring_path)->required();
  ineq_cmd->add_option("--suite", suite, "standard or extended")->check(CLI::IsMember({"standard", "extended"}))->capture_default_str();
  ineq_cmd->add_option("--samples", ineq_samples)->capture_default_str();
  bool rqhy = false, req_up = false, derivative = false;
  std::size_t group_samples = 0;
  auto* group_cmd = app.add_subcommand("group-check", "Group-model calibration and relative inequalities");
  group_cmd->add_option("group", group_spec, "Group JSON document or builtin name (Z/n, Z/a x Z/b, S3)")->required();
  group_cmd->add_flag("--rqhy", rqhy, "Relative Hausdorff-Young inequality");
  group_cmd->add_flag("--req-up", req_up, "Relative-entropy uncertainty principle");
  group_cmd->add_flag("--derivative-check", derivative, "Finite-difference check of f'(2-)");
  group_cmd->add_option("--samples", group_samples, "Samples per check (0 keeps each check's default)");
  double lambda = 0.5;
  std::size_t trials = 100;
  std::size_t max_steps = 500;
  std::string sidecar;
  auto* block_cmd = app.add_subcommand("blockmap", "Iterate the block map on a group model");
  block_cmd->add_option("group", group_spec)->required();
  block_cmd->add_option("--lambda", lambda)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  block_cmd->add_option("--trials", trials)->capture_default_str();
  block_cmd->add_option("--max-steps", max_steps)->capture_default_str();
  block_cmd->add_option("--sidecar", sidecar, "Dump every iterate to this JSON file");
  std::size_t qudits = 2, local_dim = 2;
  auto* ent_cmd = app.add_subcommand("entangle", "Entanglement entropy of Max, GHZ and product states");
  ent_cmd->add_option("--n", qudits, "Number of qudits")->required();
  ent_cmd->add_option("--d", local_dim, "Local dimension")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << QFA_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qfa: " << e.what() << "\n" << "run 'qfa --help' for usage\n";
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  Report report(sub->get_name(), seed, timings);
  int code = kExitOk;
  try {
    if (sub == validate_cmd) cmd_validate(ring_path, report);
    else if (sub == dims_cmd) cmd_dims(ring_path, report);
    else if (sub == chars_cmd) cmd_characters(ring_path, report);
    else if (sub == obstruct_cmd) cmd_obstruct(ring_path, obstruct_samples, report);
    else if (sub == ineq_cmd) cmd_inequalities(ring_path, suite, ineq_samples, seed, report);
    else if (sub == group_cmd) cmd_group_check(group_spec, rqhy, req_up, derivative, group_samples, seed, report);
    else if (sub == block_cmd) cmd_blockmap(group_spec, lambda, trials, max_steps, sidecar, seed, report);
    else if (sub == ent_cmd) cmd_entangle(qudits, local_dim, report);
    code = report.findings() ? kExitFindings : kExitOk;
  } catch (const NoInput& e) {
    err << "qfa: " << e.message << "\n";
    return kExitNoInput;
  } catch (const ParseError& e) {
    err << "qfa: parse error at line " << e.line() << ", column " << e.column() << ": " << e.what() << "\n";
    return kExitError;
  } catch (const Error& e) {
    err << "qfa: " << e.what() << "\n";
    report.result()["error"] = e.what();
    code = kExitError;
  }

  const std::string text = report.dump();
  if (output.empty()) {
    out << text;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      err << "qfa: cannot write " << output << "\n";
      return kExitError;
    }
    f << text;
  }
  return code;
}

}  // namespace qfa::cli
