#include "qfa/group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <regex>
#include <set>

#include <json.hpp>

#include "qfa/errors.hpp"

namespace qfa {

cplx LinearCharacter::operator()(std::size_t g) const {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase[g]) / static_cast<double>(exponent);
  return std::polar(1.0, angle);
}

bool LinearCharacter::trivial() const {
  return std::all_of(phase.begin(), phase.end(), [](std::size_t k) { return k == 0; });
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<std::size_t>> table, std::string description) {
  const std::size_t n = table.size();
  if (n == 0) throw ShapeError("group table is empty");
  for (const auto& row : table) {
    if (row.size() != n) throw ShapeError("group table is not square");
    for (std::size_t v : row) {
      if (v >= n) throw ShapeError("group table entry " + std::to_string(v) + " out of range");
    }
  }
  for (std::size_t g = 0; g < n; ++g) {
    if (table[0][g] != g || table[g][0] != g) throw ValueError("index 0 is not the identity");
  }
  FiniteGroup out;
  out.inverse_.assign(n, n);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h) {
      if (table[g][h] == 0 && table[h][g] == 0) out.inverse_[g] = h;
    }
    if (out.inverse_[g] == n) throw ValueError("element " + std::to_string(g) + " has no inverse");
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw ValueError("associativity fails at (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                           std::to_string(c) + ")");
        }
      }
    }
  }
  out.table_ = std::move(table);
  out.description_ = std::move(description);
  return out;
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) { return abelian({n}); }

FiniteGroup FiniteGroup::abelian(const std::vector<std::size_t>& factors) {
  if (factors.empty()) throw ShapeError("abelian group needs at least one factor");
  std::size_t n = 1;
  std::string desc;
  for (std::size_t f : factors) {
    if (f == 0) throw ValueError("cyclic factor of order 0");
    n *= f;
    desc += (desc.empty() ? "" : " x ") + ("Z/" + std::to_string(f));
  }
  auto digits = [&](std::size_t g) {
    std::vector<std::size_t> d(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      d[i] = g % factors[i];
      g /= factors[i];
    }
    return d;
  };
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t g = 0; g < n; ++g) {
    const auto dg = digits(g);
    for (std::size_t h = 0; h < n; ++h) {
      const auto dh = digits(h);
      std::size_t idx = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) idx = idx * factors[i] + (dg[i] + dh[i]) % factors[i];
      table[g][h] = idx;
    }
  }
  FiniteGroup out = from_table(std::move(table), desc);
  out.factors_ = factors;
  return out;
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<std::size_t, 3>> perms;
  std::array<std::size_t, 3> p = {0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::size_t n = perms.size();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::array<std::size_t, 3> c{};
      for (std::size_t i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      table[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return from_table(std::move(table), "S3");
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t g = 0; g < order(); ++g) {
    for (std::size_t h = 0; h < g; ++h) {
      if (table_[g][h] != table_[h][g]) return false;
    }
  }
  return true;
}

std::size_t FiniteGroup::element_order(std::size_t g) const {
  std::size_t k = 1;
  for (std::size_t x = g; x != 0; x = table_[x][g]) ++k;
  return g == 0 ? 1 : k;
}

std::size_t FiniteGroup::exponent() const {
  std::size_t e = 1;
  for (std::size_t g = 0; g < order(); ++g) e = std::lcm(e, element_order(g));
  return e;
}

bool FiniteGroup::is_subgroup(const std::vector<std::size_t>& elements) const {
  if (elements.empty()) return false;
  std::vector<bool> in(order(), false);
  for (std::size_t g : elements) {
    if (g >= order()) return false;
    in[g] = true;
  }
  if (!in[0]) return false;
  for (std::size_t a : elements) {
    if (!in[inverse_[a]]) return false;
    for (std::size_t b : elements) {
      if (!in[table_[a][b]]) return false;
    }
  }
  return true;
}

namespace {

std::vector<std::size_t> closure(const FiniteGroup& g, std::vector<std::size_t> gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<std::size_t> elems = {0};
  in[0] = true;
  for (std::size_t x : gens) {
    if (!in[x]) {
      in[x] = true;
      elems.push_back(x);
    }
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (std::size_t prod : {g.mul(elems[i], elems[j]), g.mul(elems[j], elems[i])}) {
        if (!in[prod]) {
          in[prod] = true;
          elems.push_back(prod);
        }
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

}  // namespace

std::vector<std::vector<std::size_t>> FiniteGroup::subgroups() const {
  std::set<std::vector<std::size_t>> found = {{0}};
  std::vector<std::vector<std::size_t>> frontier = {{0}};
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& h : frontier) {
      for (std::size_t g = 0; g < order(); ++g) {
        if (std::binary_search(h.begin(), h.end(), g)) continue;
        std::vector<std::size_t> gens = h;
        gens.push_back(g);
        auto k = closure(*this, gens);
        if (found.insert(k).second) next.push_back(std::move(k));
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<std::size_t>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

std::vector<std::size_t> FiniteGroup::left_coset(std::size_t g, const std::vector<std::size_t>& h) const {
  std::vector<std::size_t> out;
  out.reserve(h.size());
  for (std::size_t x : h) out.push_back(table_[g][x]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LinearCharacter> FiniteGroup::linear_characters() const {
  const std::size_t e = exponent();
  // Greedy generating set: add elements not yet in the span.
  std::vector<std::size_t> gens;
  std::vector<std::size_t> span = {0};
  for (std::size_t g = 1; g < order() && span.size() < order(); ++g) {
    if (std::binary_search(span.begin(), span.end(), g)) continue;
    gens.push_back(g);
    span = closure(*this, gens);
  }
  std::vector<LinearCharacter> out;
  std::vector<std::size_t> assign(gens.size(), 0);
  while (true) {
    // Propagate phases along words in the generators; reject on conflict.
    std::vector<std::size_t> phase(order(), e);
    phase[0] = 0;
    std::vector<std::size_t> queue = {0};
    bool ok = true;
    for (std::size_t i = 0; i < queue.size() && ok; ++i) {
      const std::size_t x = queue[i];
      for (std::size_t k = 0; k < gens.size() && ok; ++k) {
        const std::size_t y = table_[x][gens[k]];
        const std::size_t py = (phase[x] + assign[k]) % e;
        if (phase[y] == e) {
          phase[y] = py;
          queue.push_back(y);
        } else if (phase[y] != py) {
          ok = false;
        }
      }
    }
    if (ok) {
      for (std::size_t a = 0; a < order() && ok; ++a) {
        for (std::size_t b = 0; b < order() && ok; ++b) {
          ok = phase[table_[a][b]] == (phase[a] + phase[b]) % e;
        }
      }
    }
    if (ok) out.push_back({phase, e});
    std::size_t k = 0;
    while (k < assign.size() && ++assign[k] == e) assign[k++] = 0;
    if (k == assign.size()) break;
  }
  return out;
}

FiniteGroup FiniteGroup::relabeled(const std::vector<std::size_t>& perm) const {
  const std::size_t n = order();
  if (perm.size() != n || perm[0] != 0) throw ValueError("relabeling must fix the identity");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) t[perm[a]][perm[b]] = perm[table_[a][b]];
  }
  return from_table(std::move(t), description_ + " (relabeled)");
}

FiniteGroup parse_group(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("group document: ") + e.what(), 0, 0);
  }
  try {
    if (doc.contains("abelian")) return FiniteGroup::abelian(doc["abelian"].get<std::vector<std::size_t>>());
    if (doc.contains("table")) {
      return FiniteGroup::from_table(doc["table"].get<std::vector<std::vector<std::size_t>>>(),
                                     doc.value("name", std::string("table")));
    }
  } catch (const nlohmann::json::type_error& e) {
    throw ValueError(std::string("group document: ") + e.what());
  }
  throw ParseError("group document needs \"abelian\" or \"table\"", 0, 0);
}

FiniteGroup group_from_name(std::string_view name) {
  const std::string s(name);
  if (s == "S3") return FiniteGroup::symmetric3();
  static const std::regex factor(R"(\s*Z/(\d+)\s*)");
  std::vector<std::size_t> factors;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = s.find('x', start);
    const std::string part = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::smatch m;
    if (!std::regex_match(part, m, factor)) throw ValueError("unknown group '" + s + "'");
    factors.push_back(std::stoul(m[1].str()));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return FiniteGroup::abelian(factors);
}

}  // namespace qfa
