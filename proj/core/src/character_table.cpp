#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qfa/errors.hpp"
#include "qfa/fusion_ring.hpp"
#include "qfa/random.hpp"

namespace qfa {

namespace {

struct Attempt {
  Eigen::MatrixXcd vectors;
  Eigen::MatrixXcd values;  // (i, col)
  Eigen::MatrixXd residuals;
};

// Groups consecutive ascending eigenvalues closer than `gap` into clusters.
std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters(const Eigen::VectorXd& ev, double gap) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= ev.size(); ++i) {
    if (i == ev.size() || ev[i] - ev[i - 1] > gap) {
      out.emplace_back(start, i - start);
      start = i;
    }
  }
  return out;
}

Attempt diagonalize_once(const std::vector<Eigen::MatrixXd>& mats, std::uint64_t seed) {
  const Eigen::Index m = mats.front().rows();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;

  // Real symmetric combination separates joint eigenspaces up to conjugate pairs.
  Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(m, m);
  for (const auto& mj : mats) sym += gauss(rng) * (mj + mj.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sym_solver(sym);
  if (sym_solver.info() != Eigen::Success) throw NumericalError("symmetric combination did not diagonalize");
  Eigen::MatrixXcd q = sym_solver.eigenvectors().cast<cplx>();

  // Conjugate pairs share real parts; split them with the anti-symmetric parts.
  Eigen::MatrixXcd anti = Eigen::MatrixXcd::Zero(m, m);
  for (const auto& mj : mats) anti += cplx(0.0, gauss(rng)) * (mj - mj.transpose()).cast<cplx>();
  const double scale = std::max(1.0, sym_solver.eigenvalues().cwiseAbs().maxCoeff());
  for (const auto& [start, len] : clusters(sym_solver.eigenvalues(), 1e-7 * scale)) {
    if (len < 2) continue;
    const Eigen::MatrixXcd block = q.middleCols(start, len);
    const Eigen::MatrixXcd restricted = block.adjoint() * anti * block;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner(0.5 * (restricted + restricted.adjoint()));
    if (inner.info() != Eigen::Success) throw NumericalError("cluster refinement did not diagonalize");
    q.middleCols(start, len) = block * inner.eigenvectors();
  }

  Attempt a{q, Eigen::MatrixXcd(m, m), Eigen::MatrixXd(m, m)};
  for (Eigen::Index col = 0; col < m; ++col) {
    Eigen::VectorXcd v = q.col(col);
    Eigen::Index lead = 0;
    v.cwiseAbs().maxCoeff(&lead);
    if (std::abs(v[0]) > 1e-8) lead = 0;
    v *= std::conj(v[lead]) / std::abs(v[lead]);
    a.vectors.col(col) = v;
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::VectorXcd mv = mats[static_cast<std::size_t>(i)].cast<cplx>() * v;
      const cplx c = v.dot(mv);  // v† M_i v
      a.values(i, col) = c;
      a.residuals(i, col) = (mv - c * v).norm();
    }
  }
  return a;
}

double round6(double x) {
  const double r = std::round(x * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;  // fold -0
}

bool column_less(const Eigen::MatrixXcd& vals, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index i = 0; i < vals.rows(); ++i) {
    const double ra = round6(vals(i, a).real()), rb = round6(vals(i, b).real());
    if (ra != rb) return ra < rb;
    const double ia = round6(vals(i, a).imag()), ib = round6(vals(i, b).imag());
    if (ia != ib) return ia < ib;
  }
  return a < b;
}

}  // namespace

CharacterTable character_table(const FusionRing& ring, const CharacterTableOptions& options) {
  if (!ring.is_commutative()) {
    throw UnsupportedStructure("character table requires a commutative fusion ring");
  }
  const std::size_t m = ring.rank();
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(m);
  for (std::size_t j = 0; j < m; ++j) mats.push_back(ring.fusion_matrix(j));

  double best_residual = kInf;
  for (int attempt = 0; attempt < std::max(1, options.retry_budget); ++attempt) {
    const std::uint64_t seed = derive_seed(options.seed, static_cast<std::uint64_t>(attempt));
    Attempt a = diagonalize_once(mats, seed);
    const double worst = a.residuals.maxCoeff();
    best_residual = std::min(best_residual, worst);
    if (!(worst <= options.residual_tolerance)) continue;

    const auto n = static_cast<Eigen::Index>(m);
    // PF column: entrywise positive eigenvector; ties broken by the largest character sum.
    Eigen::Index pf = -1;
    double pf_score = -kInf;
    for (Eigen::Index col = 0; col < n; ++col) {
      const auto v = a.vectors.col(col);
      bool positive = true;
      for (Eigen::Index s = 0; s < n; ++s) {
        if (v[s].real() <= 1e-10 || std::abs(v[s].imag()) > 1e-8) positive = false;
      }
      const double score = a.values.col(col).real().sum() + (positive ? 1e12 : 0.0);
      if (score > pf_score) {
        pf_score = score;
        pf = col;
      }
    }
    std::vector<Eigen::Index> order(m);
    std::iota(order.begin(), order.end(), 0);
    order.erase(order.begin() + pf);
    std::sort(order.begin(), order.end(),
              [&a](Eigen::Index x, Eigen::Index y) { return column_less(a.values, x, y); });
    order.insert(order.begin(), pf);

    CharacterTable table;
    table.entries.resize(n, n);
    table.eigenvectors.resize(n, n);
    table.residuals.resize(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
      table.entries.col(c) = a.values.col(order[static_cast<std::size_t>(c)]);
      table.eigenvectors.col(c) = a.vectors.col(order[static_cast<std::size_t>(c)]);
      table.residuals.col(c) = a.residuals.col(order[static_cast<std::size_t>(c)]);
    }
    table.pf_dims.resize(m);
    for (std::size_t i = 0; i < m; ++i) table.pf_dims[i] = table.entries(static_cast<Eigen::Index>(i), 0).real();

    table.conjugate_column.resize(m);
    for (Eigen::Index c = 0; c < n; ++c) {
      double best = kInf;
      Eigen::Index match = c;
      for (Eigen::Index c2 = 0; c2 < n; ++c2) {
        const double gap = (table.entries.col(c2) - table.entries.col(c).conjugate()).cwiseAbs().maxCoeff();
        if (gap < best) {
          best = gap;
          match = c2;
        }
      }
      if (best > 1e-6) throw NumericalError("character table columns are not closed under conjugation", c);
      table.conjugate_column[static_cast<std::size_t>(c)] = static_cast<std::size_t>(match);
    }
    table.seed_used = seed;
    return table;
  }
  throw NumericalError("simultaneous diagonalization residual " + std::to_string(best_residual) +
                       " above tolerance after retry budget");
}

}  // namespace qfa
