#include "qfa/obstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "qfa/errors.hpp"
#include "qfa/random.hpp"

namespace qfa {

std::string_view status_name(ObstructionStatus status) {
  switch (status) {
    case ObstructionStatus::Obstructed: return "Obstructed";
    case ObstructionStatus::NoObstructionFound: return "NoObstructionFound";
    case ObstructionStatus::Certified: return "Certified";
    case ObstructionStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

double triple_sum(const CharacterTable& table, std::size_t j1, std::size_t j2, std::size_t j3) {
  const std::size_t m = table.rank();
  if (j1 >= m || j2 >= m || j3 >= m) throw ShapeError("triple_sum: column out of range");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    acc += table.entries(r, static_cast<Eigen::Index>(j1)) * table.entries(r, static_cast<Eigen::Index>(j2)) *
           table.entries(r, static_cast<Eigen::Index>(j3)) / table.pf_dims[i];
  }
  const std::array<std::size_t, 3> cols = {j1, j2, j3};
  const bool closed = std::all_of(cols.begin(), cols.end(), [&](std::size_t c) {
    return std::find(cols.begin(), cols.end(), table.conjugate_column[c]) != cols.end();
  });
  if (closed && std::abs(acc.imag()) > 1e-9) {
    throw NumericalError("triple sum over a conjugation-closed set has imaginary part " +
                         std::to_string(acc.imag()));
  }
  return acc.real();
}

AlgebraElement lift_column(const std::shared_ptr<const FusionAlgebra>& algebra, const CharacterTable& table,
                           std::size_t col) {
  Eigen::VectorXcd c = table.entries.col(static_cast<Eigen::Index>(col)).conjugate();
  return algebra->element(Side::B, std::move(c));
}

namespace {

AlgebraElement scaled_to_unit_norm(const AlgebraElement& x) {
  const double n = norm_p(x, kInf);
  return n > 0.0 ? x * (1.0 / n) : x;
}

/// Coefficients of f(h) are read off the first column of f(L(h)).
AlgebraElement functional_calculus(const AlgebraElement& h, const std::function<double(double)>& f) {
  const Eigen::MatrixXcd fl = spectral::hermitian_apply(h.left_representation(), f);
  return h.algebra().element(Side::B, fl.col(0));
}

AlgebraElement random_b(const FusionAlgebra& algebra, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd c(static_cast<Eigen::Index>(algebra.rank()));
  for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = cplx(gauss(rng), gauss(rng));
  return algebra.element(Side::B, std::move(c));
}

AlgebraElement sample_positive_b(const FusionAlgebra& algebra, std::mt19937_64& rng, bool low_rank) {
  const AlgebraElement a = random_b(algebra, rng);
  if (!low_rank) return multiply(adjoint(a), a);
  const AlgebraElement h = (a + adjoint(a)) * 0.5;
  const Eigen::VectorXd ev = spectral::hermitian_eig(h.left_representation()).values;
  const double top = ev[ev.size() - 1];
  const double gap = 1e-6 * std::max(1.0, std::abs(top));
  AlgebraElement p = functional_calculus(h, [&](double l) { return l >= top - gap ? 1.0 : 0.0; });
  const AlgebraElement noise = random_b(algebra, rng);
  const double eps = 0.05 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return p + multiply(adjoint(noise), noise) * (eps / std::max(1.0, norm_p(noise, 2.0) * norm_p(noise, 2.0)));
}

}  // namespace

double schur_margin(const AlgebraElement& x, const AlgebraElement& y) {
  return is_positive(convolve(scaled_to_unit_norm(x), scaled_to_unit_norm(y))).margin;
}

ObstructionVerdict dual_schur_sample(const FusionRing& ring, std::size_t samples, std::uint64_t seed) {
  const auto algebra = FusionAlgebra::create(ring);
  ObstructionVerdict v;
  v.status = ObstructionStatus::NoObstructionFound;
  v.min_triple_sum = std::numeric_limits<double>::quiet_NaN();
  v.min_positivity_margin = samples ? kInf : std::numeric_limits<double>::quiet_NaN();
  v.margin_threshold = kSamplingThreshold;
  v.evaluations = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    std::mt19937_64 rng = sample_rng(seed, i);
    const bool low_rank = i % 2 == 0;
    const AlgebraElement x = sample_positive_b(*algebra, rng, low_rank);
    const AlgebraElement y = sample_positive_b(*algebra, rng, low_rank);
    const double margin = schur_margin(x, y);
    if (margin < v.min_positivity_margin) {
      v.min_positivity_margin = margin;
      if (margin < -v.margin_threshold) {
        nlohmann::json w;
        w["x"] = nlohmann::json::parse(element_to_json(x));
        w["y"] = nlohmann::json::parse(element_to_json(y));
        w["sample"] = i;
        v.witness_pair = w.dump();
      }
    }
  }
  if (v.witness_pair) v.status = ObstructionStatus::Obstructed;
  return v;
}

ObstructionVerdict scan(const FusionRing& ring, const ScanOptions& options) {
  if (!ring.is_commutative()) {
    ObstructionVerdict v = dual_schur_sample(ring, options.fallback_samples, options.seed);
    v.diagnostic = "noncommutative ring: sampling falsifier only";
    return v;
  }
  CharacterTable table;
  try {
    table = character_table(ring, options.table);
  } catch (const NumericalError& e) {
    ObstructionVerdict v;
    v.status = ObstructionStatus::Inconclusive;
    v.min_triple_sum = std::numeric_limits<double>::quiet_NaN();
    v.min_positivity_margin = std::numeric_limits<double>::quiet_NaN();
    v.diagnostic = e.what();
    return v;
  }
  const std::size_t m = table.rank();
  ObstructionVerdict v;
  v.exhaustive = true;
  v.min_positivity_margin = std::numeric_limits<double>::quiet_NaN();
  v.min_triple_sum = kInf;
  double largest = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      for (std::size_t c = b; c < m; ++c) {
        const double s = triple_sum(table, a, b, c);
        ++v.evaluations;
        largest = std::max(largest, std::abs(s));
        if (s < v.min_triple_sum) {
          v.min_triple_sum = s;
          v.witness_columns = {a, b, c};
        }
        if (a == b && b == c && (!v.min_diagonal_sum || s < *v.min_diagonal_sum)) {
          v.min_diagonal_sum = s;
          v.min_diagonal_column = a;
        }
      }
    }
  }
  v.margin_threshold = kRelativeMarginThreshold * largest;
  v.status = v.min_triple_sum < -v.margin_threshold ? ObstructionStatus::Obstructed : ObstructionStatus::Certified;
  return v;
}

}  // namespace qfa
