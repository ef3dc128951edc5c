#include "qfa/fusion_ring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qfa/errors.hpp"

namespace qfa {

using nlohmann::json;

FusionRing::FusionRing(std::size_t rank, std::vector<std::int64_t> structure, std::vector<std::size_t> star)
    : rank_(rank), structure_(std::move(structure)), star_(std::move(star)) {
  if (rank_ == 0) throw ShapeError("fusion ring rank must be positive");
  if (structure_.size() != rank_ * rank_ * rank_) {
    throw ShapeError("structure tensor has " + std::to_string(structure_.size()) + " entries, expected " +
                     std::to_string(rank_ * rank_ * rank_));
  }
  if (star_.size() != rank_) throw ShapeError("star has length " + std::to_string(star_.size()));
  for (std::size_t v : star_) {
    if (v >= rank_) throw ShapeError("star entry " + std::to_string(v) + " out of range");
  }
}

Eigen::MatrixXd FusionRing::fusion_matrix(std::size_t j) const {
  Eigen::MatrixXd m(rank_, rank_);
  for (std::size_t s = 0; s < rank_; ++s)
    for (std::size_t t = 0; t < rank_; ++t) m(s, t) = static_cast<double>(n(j, s, t));
  return m;
}

Eigen::MatrixXd FusionRing::left_matrix(std::size_t j) const { return fusion_matrix(j).transpose(); }

bool FusionRing::is_commutative() const {
  // M_a M_b = M_b M_a on integers; equivalent to N[a][k][s] = N[k][a][s] only for valid rings,
  // so compare the matrix products directly.
  const std::size_t m = rank_;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t t = 0; t < m; ++t) {
          std::int64_t ab = 0, ba = 0;
          for (std::size_t u = 0; u < m; ++u) {
            ab += n(a, s, u) * n(b, u, t);
            ba += n(b, s, u) * n(a, u, t);
          }
          if (ab != ba) return false;
        }
      }
    }
  }
  return true;
}

FusionRing FusionRing::relabeled(const std::vector<std::size_t>& perm) const {
  if (perm.size() != rank_ || perm[0] != 0) throw ContractError("relabeling must be a permutation fixing 0");
  std::vector<std::int64_t> out(structure_.size());
  std::vector<std::size_t> star(rank_);
  for (std::size_t j = 0; j < rank_; ++j) {
    star[perm[j]] = perm[star_[j]];
    for (std::size_t k = 0; k < rank_; ++k)
      for (std::size_t s = 0; s < rank_; ++s) out[(perm[j] * rank_ + perm[k]) * rank_ + perm[s]] = n(j, k, s);
  }
  return FusionRing(rank_, std::move(out), std::move(star));
}

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::int64_t as_count(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return static_cast<std::int64_t>(v.get<std::uint64_t>());
  if (v.is_number_integer()) {
    const auto x = v.get<std::int64_t>();
    if (x < 0) throw ValueError(where + " is negative (" + std::to_string(x) + ")");
    return x;
  }
  if (v.is_number_float()) throw ValueError(where + " is not an integer (" + v.dump() + ")");
  throw ValueError(where + " must be an integer, got " + std::string(v.type_name()));
}

}  // namespace

FusionRing parse_ring(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(std::string("malformed fusion-ring document: ") + e.what(), line, col);
  }
  if (!doc.is_object()) throw ParseError("fusion-ring document must be a JSON object", 1, 1);
  for (const char* key : {"rank", "star", "N"}) {
    if (!doc.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"", 0, 0);
  }
  const std::int64_t rank_raw = as_count(doc["rank"], "rank");
  if (rank_raw == 0) throw ValueError("rank must be positive");
  const auto m = static_cast<std::size_t>(rank_raw);

  const json& star_j = doc["star"];
  if (!star_j.is_array()) throw ShapeError("star must be an array");
  if (star_j.size() != m) {
    throw ShapeError("star has " + std::to_string(star_j.size()) + " entries but rank is " + std::to_string(m));
  }
  std::vector<std::size_t> star(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto v = as_count(star_j[i], "star[" + std::to_string(i) + "]");
    if (static_cast<std::size_t>(v) >= m) throw ShapeError("star[" + std::to_string(i) + "] out of range");
    star[i] = static_cast<std::size_t>(v);
  }

  const json& n_j = doc["N"];
  auto expect_array = [m](const json& v, const std::string& where) {
    if (!v.is_array()) throw ShapeError(where + " must be an array");
    if (v.size() != m) {
      throw ShapeError(where + " has " + std::to_string(v.size()) + " entries but rank is " + std::to_string(m));
    }
  };
  expect_array(n_j, "N");
  std::vector<std::int64_t> structure(m * m * m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::string wj = "N[" + std::to_string(j) + "]";
    expect_array(n_j[j], wj);
    for (std::size_t k = 0; k < m; ++k) {
      const std::string wk = wj + "[" + std::to_string(k) + "]";
      expect_array(n_j[j][k], wk);
      for (std::size_t s = 0; s < m; ++s) {
        structure[(j * m + k) * m + s] = as_count(n_j[j][k][s], wk + "[" + std::to_string(s) + "]");
      }
    }
  }
  return FusionRing(m, std::move(structure), std::move(star));
}

FusionRing load_ring(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_ring(buf.str());
}

std::string ring_to_json(const FusionRing& ring) {
  const std::size_t m = ring.rank();
  json doc;
  doc["rank"] = m;
  doc["star"] = ring.star_map();
  json n = json::array();
  for (std::size_t j = 0; j < m; ++j) {
    json mj = json::array();
    for (std::size_t k = 0; k < m; ++k) {
      json row = json::array();
      for (std::size_t s = 0; s < m; ++s) row.push_back(ring.n(j, k, s));
      mj.push_back(std::move(row));
    }
    n.push_back(std::move(mj));
  }
  doc["N"] = std::move(n);
  return doc.dump();
}

FusionRing cyclic_group_ring(std::size_t n) {
  if (n == 0) throw DomainError("cyclic group order must be positive");
  std::vector<std::int64_t> structure(n * n * n, 0);
  std::vector<std::size_t> star(n);
  for (std::size_t j = 0; j < n; ++j) {
    star[j] = (n - j) % n;
    for (std::size_t k = 0; k < n; ++k) structure[(j * n + k) * n + (j + k) % n] = 1;
  }
  return FusionRing(n, std::move(structure), std::move(star));
}

FusionRing fibonacci_ring() {
  // x1 * x1 = x0 + x1
  std::vector<std::int64_t> structure = {1, 0, 0, 1, 0, 1, 1, 1};
  return FusionRing(2, std::move(structure), {0, 1});
}

std::string_view axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::StarNotPermutation: return "star-permutation";
    case Axiom::StarNotInvolution: return "star-involution";
    case Axiom::StarUnit: return "star-unit";
    case Axiom::UnitLaw: return "unit-law";
    case Axiom::Duality: return "duality";
    case Axiom::Associativity: return "associativity";
    case Axiom::AntiIsomorphism: return "anti-isomorphism";
  }
  return "unknown";
}

bool ValidationReport::contains(Axiom axiom) const {
  return std::any_of(violations.begin(), violations.end(), [axiom](const Violation& v) { return v.axiom == axiom; });
}

ValidationReport validate(const FusionRing& ring) {
  ValidationReport report;
  const std::size_t m = ring.rank();
  auto add = [&report](Axiom a, std::vector<std::size_t> idx, std::string detail) {
    report.violations.push_back({a, std::move(idx), std::move(detail)});
  };

  std::vector<int> hits(m, 0);
  for (std::size_t j = 0; j < m; ++j) ++hits[ring.star(j)];
  bool permutation = true;
  for (std::size_t j = 0; j < m; ++j) {
    if (hits[j] != 1) {
      permutation = false;
      add(Axiom::StarNotPermutation, {j}, "index " + std::to_string(j) + " is hit " + std::to_string(hits[j]) +
                                              " times by star");
    }
  }
  if (ring.star(0) != 0) add(Axiom::StarUnit, {0}, "star(0) = " + std::to_string(ring.star(0)));
  for (std::size_t j = 0; j < m; ++j) {
    if (ring.star(ring.star(j)) != j) add(Axiom::StarNotInvolution, {j}, "star(star(j)) != j");
  }

  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t s = 0; s < m; ++s) {
      const std::int64_t want = (j == s) ? 1 : 0;
      if (ring.n(0, j, s) != want) add(Axiom::UnitLaw, {0, j, s}, "N[0][j][s] != delta(j,s)");
      if (ring.n(j, 0, s) != want) add(Axiom::UnitLaw, {j, 0, s}, "N[j][0][s] != delta(j,s)");
    }
  }

  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      const std::int64_t want = (j == ring.star(k)) ? 1 : 0;
      if (ring.n(j, k, 0) != want) {
        add(Axiom::Duality, {j, k}, "N[j][k][0] = " + std::to_string(ring.n(j, k, 0)) + ", expected " +
                                        std::to_string(want));
      }
    }
  }

  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t l = 0; l < m; ++l) {
        for (std::size_t s = 0; s < m; ++s) {
          std::int64_t left = 0, right = 0;
          for (std::size_t t = 0; t < m; ++t) {
            left += ring.n(j, k, t) * ring.n(t, l, s);
            right += ring.n(k, l, t) * ring.n(j, t, s);
          }
          if (left != right) {
            add(Axiom::Associativity, {j, k, l, s},
                "(x_j x_k) x_l has " + std::to_string(left) + " copies of x_s, x_j (x_k x_l) has " +
                    std::to_string(right));
          }
        }
      }
    }
  }

  if (permutation) {
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t s = 0; s < m; ++s)
          if (ring.n(ring.star(k), ring.star(j), ring.star(s)) != ring.n(j, k, s)) {
            add(Axiom::AntiIsomorphism, {j, k, s}, "N[k*][j*][s*] != N[j][k][s]");
          }
  }
  return report;
}

std::vector<double> pf_dimensions(const FusionRing& ring) {
  const std::size_t m = ring.rank();
  std::vector<double> dims(m, 1.0);
  for (std::size_t j = 1; j < m; ++j) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(ring.fusion_matrix(j), /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("eigenvalues of fusion matrix " + std::to_string(j) + " did not converge",
                           static_cast<std::ptrdiff_t>(j));
    }
    // The spectral radius of a nonnegative matrix is itself an eigenvalue.
    double best = 0.0;
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) best = std::max(best, std::abs(ev[i]));
    if (!std::isfinite(best) || best < 1.0 - 1e-9) {
      throw NumericalError("Perron-Frobenius dimension of x_" + std::to_string(j) + " is " + std::to_string(best),
                           static_cast<std::ptrdiff_t>(j));
    }
    dims[j] = best;
  }
  return dims;
}

double global_dimension(const std::vector<double>& dims) {
  double total = 0.0;
  for (double d : dims) total += d * d;
  return total;
}

}  // namespace qfa
