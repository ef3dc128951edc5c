#include "qfa/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "qfa/errors.hpp"
#include "qfa/random.hpp"

namespace qfa {

using nlohmann::json;

std::string_view inequality_name(InequalityId id) {
  switch (id) {
    case InequalityId::QSP: return "QSP";
    case InequalityId::QHY: return "QHY";
    case InequalityId::QY: return "QY";
    case InequalityId::QUP1: return "QUP1";
    case InequalityId::QUP2: return "QUP2";
    case InequalityId::Plancherel: return "PLANCHEREL";
  }
  return "?";
}

InequalityId parse_inequality(std::string_view name) {
  for (InequalityId id : kAllInequalities) {
    if (inequality_name(id) == name) return id;
  }
  throw ValueError("unknown inequality '" + std::string(name) + "'");
}

namespace {

void require_exponent(double p) {
  if (!(p >= 1.0)) throw DomainError("exponent " + std::to_string(p) + " is below 1");
}

double inverse(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

}  // namespace

std::vector<std::array<double, 2>> ExponentGrid::hausdorff_young_pairs() const {
  std::vector<std::array<double, 2>> out;
  for (double p : p_values) {
    if (!(p >= 1.0 && p <= 2.0)) throw DomainError("Hausdorff-Young exponent must lie in [1, 2]");
    out.push_back({p, spectral::conjugate_exponent(p)});
  }
  return out;
}

std::vector<std::array<double, 3>> ExponentGrid::young_triples() const {
  if (!young.empty()) {
    for (const auto& t : young) {
      for (double e : t) require_exponent(e);
      if (std::abs(inverse(t[0]) + inverse(t[1]) - 1.0 - inverse(t[2])) > 1e-12) {
        throw DomainError("Young triple violates 1/p + 1/q = 1 + 1/r");
      }
    }
    return young;
  }
  std::vector<double> all;
  for (double p : p_values) {
    require_exponent(p);
    all.push_back(p);
    all.push_back(spectral::conjugate_exponent(p));
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<std::array<double, 3>> out;
  for (double p : all) {
    for (double q : all) {
      const double s = inverse(p) + inverse(q) - 1.0;
      if (s < -1e-12) continue;
      out.push_back({p, q, s <= 1e-12 ? kInf : 1.0 / s});
    }
  }
  return out;
}

AlgebraElement sample_positive(const FusionAlgebra& algebra, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd c(static_cast<Eigen::Index>(algebra.rank()));
  for (std::size_t j = 0; j < algebra.rank(); ++j) {
    const double g = gauss(rng);
    c[static_cast<Eigen::Index>(j)] = algebra.dim(j) * g * g;
  }
  AlgebraElement a = algebra.element(Side::A, std::move(c));
  const double n = norm_p(a, 2.0);
  return n > 0.0 ? a * (1.0 / n) : algebra.unit(Side::A);
}

AlgebraElement sample_general(const FusionAlgebra& algebra, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> keep(0, 2);
  const std::size_t m = algebra.rank();
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m));
  bool any = false;
  for (std::size_t j = 0; j < m; ++j) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    if (keep(rng) == 0) continue;
    c[static_cast<Eigen::Index>(j)] = algebra.dim(j) * cplx(re, im);
    any = true;
  }
  if (!any) c[std::uniform_int_distribution<Eigen::Index>(0, static_cast<Eigen::Index>(m) - 1)(rng)] = 1.0;
  AlgebraElement a = algebra.element(Side::A, std::move(c));
  return a * (1.0 / norm_p(a, 2.0));
}

double qup1_value(const AlgebraElement& x) {
  const double n2 = std::pow(norm_p(x, 2.0), 2);
  const double tail = n2 > 0.0 ? 2.0 * n2 * std::log(n2) : 0.0;
  return entropy(x) + entropy(fourier(x)) + tail;
}

double qup2_product(const AlgebraElement& x) { return support(x) * support(fourier(x)); }

double qhy_margin(const AlgebraElement& x, const std::vector<double>& p_values) {
  double worst = kInf;
  const AlgebraElement xh = fourier(x);
  for (double p : p_values) worst = std::min(worst, norm_p(x, p) - norm_p(xh, spectral::conjugate_exponent(p)));
  return worst;
}

namespace {

struct Evaluation {
  double margin = kInf;
  std::vector<double> exponents;
};

std::size_t arity(InequalityId id) { return id == InequalityId::QSP || id == InequalityId::QY ? 2 : 1; }

Evaluation evaluate(InequalityId id, const std::vector<AlgebraElement>& xs,
                    const std::vector<std::array<double, 2>>& pairs,
                    const std::vector<std::array<double, 3>>& triples) {
  Evaluation ev;
  switch (id) {
    case InequalityId::Plancherel:
      ev.margin = -std::abs(norm_p(fourier(xs[0]), 2.0) - norm_p(xs[0], 2.0));
      break;
    case InequalityId::QSP:
      ev.margin = is_positive(convolve(xs[0], xs[1])).margin;
      break;
    case InequalityId::QHY: {
      const AlgebraElement xh = fourier(xs[0]);
      for (const auto& [p, q] : pairs) {
        const double m = norm_p(xs[0], p) - norm_p(xh, q);
        if (m < ev.margin) ev = {m, {p, q}};
      }
      break;
    }
    case InequalityId::QY: {
      const AlgebraElement c = convolve(xs[0], xs[1]);
      for (const auto& [p, q, r] : triples) {
        const double m = norm_p(xs[0], p) * norm_p(xs[1], q) - norm_p(c, r);
        if (m < ev.margin) ev = {m, {p, q, r}};
      }
      break;
    }
    case InequalityId::QUP1:
      ev.margin = qup1_value(xs[0]);
      break;
    case InequalityId::QUP2:
      ev.margin = qup2_product(xs[0]) - 1.0;
      break;
  }
  return ev;
}

json exponent_json(double e) { return std::isinf(e) ? json("inf") : json(e); }

double exponent_from_json(const json& e) {
  if (e.is_string() && e.get<std::string>() == "inf") return kInf;
  if (!e.is_number()) throw ValueError("witness exponent is not a number");
  return e.get<double>();
}

}  // namespace

CheckReport run_check(const FusionRing& ring, InequalityId id, std::size_t samples, std::uint64_t seed,
                      const ExponentGrid& grid) {
  const auto algebra = FusionAlgebra::create(ring);
  std::vector<std::array<double, 2>> pairs;
  std::vector<std::array<double, 3>> triples;
  if (id == InequalityId::QHY) pairs = grid.hausdorff_young_pairs();
  if (id == InequalityId::QY) triples = grid.young_triples();

  CheckReport report;
  report.id = id;
  report.samples = samples;
  report.seed = seed;
  report.worst_margin = samples ? kInf : std::numeric_limits<double>::quiet_NaN();
  const bool positive = id == InequalityId::QSP;
  for (std::size_t i = 0; i < samples; ++i) {
    std::mt19937_64 rng = sample_rng(seed, i);
    std::vector<AlgebraElement> xs;
    for (std::size_t k = 0; k < arity(id); ++k) {
      xs.push_back(positive ? sample_positive(*algebra, rng) : sample_general(*algebra, rng));
    }
    Evaluation ev;
    try {
      ev = evaluate(id, xs, pairs, triples);
    } catch (const NumericalError& e) {
      throw NumericalError(e.what(), static_cast<std::ptrdiff_t>(i));
    }
    if (ev.margin < report.worst_margin) {
      report.worst_margin = ev.margin;
      report.worst_sample = i;
      json w;
      w["elements"] = json::array();
      for (const auto& x : xs) w["elements"].push_back(json::parse(element_to_json(x)));
      w["exponents"] = json::array();
      for (double e : ev.exponents) w["exponents"].push_back(exponent_json(e));
      report.witness = w.dump();
    }
  }
  return report;
}

double witness_margin(const FusionRing& ring, InequalityId id, std::string_view witness) {
  const auto algebra = FusionAlgebra::create(ring);
  json w;
  try {
    w = json::parse(witness);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("witness: ") + e.what(), 0, 0);
  }
  std::vector<AlgebraElement> xs;
  for (const auto& e : w.at("elements")) xs.push_back(element_from_json(algebra, e.dump()));
  if (xs.size() != arity(id)) throw ShapeError("witness has the wrong number of elements");
  std::vector<double> ex;
  for (const auto& e : w.at("exponents")) ex.push_back(exponent_from_json(e));
  std::vector<std::array<double, 2>> pairs;
  std::vector<std::array<double, 3>> triples;
  if (id == InequalityId::QHY) {
    if (ex.size() != 2) throw ShapeError("QHY witness needs two exponents");
    pairs.push_back({ex[0], ex[1]});
  }
  if (id == InequalityId::QY) {
    if (ex.size() != 3) throw ShapeError("QY witness needs three exponents");
    triples.push_back({ex[0], ex[1], ex[2]});
  }
  return evaluate(id, xs, pairs, triples).margin;
}

std::vector<ExtremizerRecord> extremizer_probe(const FusionRing& ring, const ExponentGrid& grid) {
  const auto algebra = FusionAlgebra::create(ring);
  std::vector<std::pair<std::string, AlgebraElement>> candidates;
  candidates.emplace_back("x0", algebra->basis(Side::A, 0));
  candidates.emplace_back("unit", algebra->unit(Side::A));
  for (std::size_t j = 1; j < ring.rank(); ++j) {
    candidates.emplace_back("projection " + std::to_string(j), algebra->basis(Side::A, j) * algebra->dim(j));
  }
  std::vector<ExtremizerRecord> out;
  for (const auto& [name, x] : candidates) {
    ExtremizerRecord r;
    r.candidate = name;
    r.qup1 = qup1_value(x);
    r.qup2 = qup2_product(x);
    r.qhy = qhy_margin(x, grid.p_values);
    r.qup1_equality = std::abs(r.qup1) <= kEqualityTolerance;
    r.qup2_equality = std::abs(r.qup2 - 1.0) <= kEqualityTolerance;
    r.qhy_equality = std::abs(r.qhy) <= kEqualityTolerance;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qfa
