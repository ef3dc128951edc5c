#include "qfa/block_map.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <numeric>

#include "qfa/checksum.hpp"
#include "qfa/errors.hpp"
#include "qfa/random.hpp"

namespace qfa {

std::string BlockDecoding::describe() const {
  std::string t1 = "(f*f^)(f^*f)";
  std::string t2 = "(ff^)*(f^f)";
  if (reading == TermReading::ConvolutionOfProductsFirst) std::swap(t1, t2);
  return "T1 = " + t1 + ", T2 = " + t2 + "; convolution = classical / delta^" + std::to_string(convolution_power) +
         "; prefactor delta^" + std::to_string(prefactor_power) + " / |f|_2^2" +
         (widened ? " (widened from the printed delta^2)" : "");
}

namespace {

constexpr std::array<double, 5> kCalibrationLambdas = {0.0, 0.25, 0.5, 0.75, 1.0};

std::vector<BlockDecoding> candidate_order() {
  std::vector<BlockDecoding> out;
  for (int prefactor : {2, 1, 0}) {
    for (TermReading r : {TermReading::ProductOfConvolutionsFirst, TermReading::ConvolutionOfProductsFirst}) {
      for (int conv : {0, 1, 2}) out.push_back({r, conv, prefactor, prefactor != kPrintedPrefactorPower});
    }
  }
  return out;
}

bool fixes_subgroups(const BlockDecoding& dec, const std::vector<FiniteGroup>& groups) {
  for (const auto& g : groups) {
    const GroupModel model(g);
    for (const auto& h : g.subgroups()) {
      const Eigen::VectorXcd f = model.biprojection(h);
      for (double lambda : kCalibrationLambdas) {
        if ((block_step(model, f, lambda, dec) - f).norm() > kFixedPointTolerance) return false;
      }
    }
  }
  return true;
}

}  // namespace

BlockDecoding calibrate_decoding(const std::vector<FiniteGroup>& groups) {
  for (const auto& dec : candidate_order()) {
    if (fixes_subgroups(dec, groups)) return dec;
  }
  throw NumericalError("no block-map decoding fixes every subgroup indicator");
}

std::size_t surviving_decodings(const std::vector<FiniteGroup>& groups) {
  std::size_t n = 0;
  for (const auto& dec : candidate_order()) n += fixes_subgroups(dec, groups) ? 1 : 0;
  return n;
}

const BlockDecoding& calibrated_decoding() {
  static const BlockDecoding dec = calibrate_decoding({FiniteGroup::cyclic(12), FiniteGroup::symmetric3()});
  return dec;
}

Eigen::VectorXcd block_step(const GroupModel& model, const Eigen::VectorXcd& f, double lambda,
                            const BlockDecoding& decoding) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("block map needs lambda in [0, 1]");
  const double n2 = f.squaredNorm();
  if (n2 == 0.0) throw DomainError("block map of the zero function");
  const double n1 = f.cwiseAbs().sum();
  const double ninf = f.cwiseAbs().maxCoeff();
  const double conv_scale = std::pow(model.delta(), -decoding.convolution_power);
  auto conv = [&](const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
    return model.convolve(x, y) * conv_scale;
  };
  const Eigen::VectorXcd fs = f.conjugate();
  const Eigen::VectorXcd prod_of_conv = conv(f, fs).cwiseProduct(conv(fs, f));
  const Eigen::VectorXcd conv_of_prod = conv(f.cwiseProduct(fs), fs.cwiseProduct(f));
  const bool first = decoding.reading == TermReading::ProductOfConvolutionsFirst;
  const Eigen::VectorXcd& t1 = first ? prod_of_conv : conv_of_prod;
  const Eigen::VectorXcd& t2 = first ? conv_of_prod : prod_of_conv;
  const double pre = std::pow(model.delta(), decoding.prefactor_power) / n2;
  return pre * ((lambda / n1) * t1 + ((1.0 - lambda) / ninf) * t2);
}

double hirschman_beckner(const GroupModel& model, const Eigen::VectorXcd& f) {
  const Eigen::VectorXcd u = f / f.norm();
  Eigen::VectorXd a(u.size());
  for (Eigen::Index g = 0; g < u.size(); ++g) a[g] = std::norm(u[g]);
  const Eigen::MatrixXcd fu = model.fourier_operator(u);
  return spectral::von_neumann_sum(a) + spectral::von_neumann_sum(spectral::hermitian_eig(fu.adjoint() * fu).values);
}

std::vector<Bishift> bishift_catalog(const GroupModel& model) {
  const FiniteGroup& g = model.group();
  const auto subgroups = g.subgroups();
  const auto chars = g.linear_characters();
  std::vector<Bishift> out;
  for (std::size_t s = 0; s < subgroups.size(); ++s) {
    std::vector<std::vector<std::size_t>> seen_cosets;
    for (std::size_t x = 0; x < g.order(); ++x) {
      auto coset = g.left_coset(x, subgroups[s]);
      if (std::find(seen_cosets.begin(), seen_cosets.end(), coset) != seen_cosets.end()) continue;
      seen_cosets.push_back(std::move(coset));
      const std::size_t before = out.size();
      for (std::size_t c = 0; c < chars.size(); ++c) {
        Eigen::VectorXcd v = model.bishift(subgroups[s], x, chars[c]);
        bool dup = false;
        for (std::size_t k = before; k < out.size() && !dup; ++k) dup = (out[k].values - v).norm() < 1e-12;
        if (!dup) out.push_back({s, x, c, std::move(v)});
      }
    }
  }
  return out;
}

std::string_view limit_name(LimitKind kind) {
  switch (kind) {
    case LimitKind::Zero: return "Zero";
    case LimitKind::Biprojection: return "Biprojection";
    case LimitKind::Unclassified: return "Unclassified";
  }
  return "?";
}

Classification classify(const GroupModel& model, const Eigen::VectorXcd& f, const std::vector<Bishift>& catalog) {
  (void)model;
  Classification out;
  const double nf = f.norm();
  if (nf <= 1e-12) {
    out.kind = LimitKind::Zero;
    return out;
  }
  out.distance = kInf;
  for (const auto& b : catalog) {
    const cplx c = b.values.dot(f) / b.values.squaredNorm();
    const double d = (f - c * b.values).norm() / nf;
    if (d < out.distance) {
      out.distance = d;
      out.scale = c;
      out.match = b;
    }
  }
  out.kind = out.distance <= kClassificationTolerance ? LimitKind::Biprojection : LimitKind::Unclassified;
  return out;
}

std::uint64_t vector_checksum(const Eigen::VectorXcd& v) {
  return fnv1a64(std::string_view(reinterpret_cast<const char*>(v.data()), sizeof(cplx) * static_cast<std::size_t>(v.size())));
}

Trajectory iterate(const GroupModel& model, const Eigen::VectorXcd& f0, double lambda, std::size_t max_steps,
                   const BlockDecoding& decoding) {
  Trajectory t;
  t.lambda = lambda;
  t.iterates.push_back(f0);
  t.steps.push_back({vector_checksum(f0), 0.0, hirschman_beckner(model, f0)});
  int quiet = 0;
  for (std::size_t k = 0; k < max_steps; ++k) {
    const Eigen::VectorXcd& cur = t.iterates.back();
    Eigen::VectorXcd next = block_step(model, cur, lambda, decoding);
    const double diff = (next - cur).norm();
    const bool small = diff <= kConvergenceTolerance * cur.norm();
    const bool vanished = next.norm() == 0.0;
    t.steps.push_back({vector_checksum(next), diff, vanished ? 0.0 : hirschman_beckner(model, next)});
    t.iterates.push_back(std::move(next));
    quiet = small ? quiet + 1 : 0;
    if (quiet == kQuietSteps) {
      t.converged = true;
      t.converged_at = t.iterates.size() - 1 - kQuietSteps;
      break;
    }
    if (vanished) break;
  }
  t.limit = classify(model, t.iterates.back(), bishift_catalog(model));
  return t;
}

std::vector<EntropyViolation> entropy_monotonicity_report(const Trajectory& trajectory) {
  std::vector<EntropyViolation> out;
  for (std::size_t k = 1; k < trajectory.steps.size(); ++k) {
    const double inc = trajectory.steps[k].entropy - trajectory.steps[k - 1].entropy;
    if (inc > kEntropyTolerance) out.push_back({k, inc});
  }
  return out;
}

namespace {

/// min over λ and B-side spectral projections Q of ‖Y − λQ‖₂, using top-k spectral cuts.
double distance_to_scaled_projection(const Eigen::MatrixXcd& y) {
  const Eigen::MatrixXcd herm = 0.5 * (y + y.adjoint());
  const double skew2 = (y - herm).squaredNorm();
  const Eigen::VectorXd mu = spectral::hermitian_eig(herm).values;  // ascending
  const auto n = mu.size();
  double best = mu.squaredNorm();
  for (Eigen::Index k = 1; k <= n; ++k) {
    const Eigen::VectorXd top = mu.tail(k);
    const double lam = top.mean();
    const double err = mu.head(n - k).squaredNorm() + (top.array() - lam).square().sum();
    best = std::min(best, err);
  }
  return std::sqrt(best + skew2);
}

}  // namespace

double nearest_bishift_distance(const std::vector<Bishift>& catalog, const Eigen::VectorXcd& x) {
  double best = kInf;
  for (const auto& b : catalog) best = std::min(best, (x - b.values).norm());
  return best;
}

StabilityReport stability_probe(const GroupModel& model, double epsilon, std::size_t samples, std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw DomainError("stability probe needs epsilon > 0");
  const auto catalog = bishift_catalog(model);
  const FiniteGroup& g = model.group();
  const auto subgroups = g.subgroups();
  const auto n = static_cast<Eigen::Index>(model.order());
  StabilityReport r;
  r.epsilon = epsilon;
  r.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    std::mt19937_64 rng = sample_rng(seed, i);
    std::uniform_int_distribution<int> coin(0, 1);
    Eigen::VectorXcd p = Eigen::VectorXcd::Zero(n);
    if (coin(rng) == 0) {
      const auto& h = subgroups[std::uniform_int_distribution<std::size_t>(0, subgroups.size() - 1)(rng)];
      const std::size_t x = std::uniform_int_distribution<std::size_t>(0, g.order() - 1)(rng);
      for (std::size_t y : g.left_coset(x, h)) p[static_cast<Eigen::Index>(y)] = 1.0;
    } else {
      for (Eigen::Index k = 0; k < n; ++k) p[k] = coin(rng);
      if (p.norm() == 0.0) p[0] = 1.0;
    }
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd noise(n);
    for (Eigen::Index k = 0; k < n; ++k) noise[k] = cplx(gauss(rng), gauss(rng));
    const double radius = epsilon * std::uniform_real_distribution<double>(0.0, 0.99)(rng);
    const Eigen::VectorXcd x = p + noise * (radius / noise.norm());
    if (distance_to_scaled_projection(model.fourier_operator(x)) >= epsilon) continue;
    ++r.admissible;
    r.distances.push_back(nearest_bishift_distance(catalog, x));
  }
  if (!r.distances.empty()) {
    std::vector<double> sorted = r.distances;
    std::sort(sorted.begin(), sorted.end());
    r.min_distance = sorted.front();
    r.max_distance = sorted.back();
    r.median_distance = sorted[sorted.size() / 2];
  }
  return r;
}

}  // namespace qfa
