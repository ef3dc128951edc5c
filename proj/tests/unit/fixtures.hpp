#pragma once

#include <string>

#include "qfa/fusion_ring.hpp"
#include "qfa/group.hpp"

#ifndef QFA_DATA_DIR
#error "QFA_DATA_DIR must point at the data/ directory"
#endif

namespace qfa::test {

inline std::string data_path(const std::string& name) { return std::string(QFA_DATA_DIR) + "/" + name; }

inline FusionRing load_fixture(const std::string& name) { return load_ring(data_path(name)); }

/// Group ring of G: N[g][h][gh] = 1, star(g) = g⁻¹.
inline FusionRing group_ring(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::int64_t> structure(n * n * n, 0);
  std::vector<std::size_t> star(n);
  for (std::size_t a = 0; a < n; ++a) {
    star[a] = g.inv(a);
    for (std::size_t b = 0; b < n; ++b) structure[(a * n + b) * n + g.mul(a, b)] = 1;
  }
  return FusionRing(n, std::move(structure), std::move(star));
}

}  // namespace qfa::test
