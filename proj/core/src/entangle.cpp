#include "qfa/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "qfa/errors.hpp"

namespace qfa {

std::size_t dimension_cap() {
  if (const char* env = std::getenv("QFA_DIM_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultDimensionCap;
}

std::size_t checked_dimension(std::size_t n, std::size_t d, std::size_t cap) {
  if (n < 1 || d < 2) throw DomainError("need n >= 1 qudits of dimension d >= 2");
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (dim > cap / d) {
      throw ResourceError("dimension " + std::to_string(d) + "^" + std::to_string(n) + " exceeds the cap " +
                          std::to_string(cap));
    }
    dim *= d;
  }
  return dim;
}

QuditState max_state(std::size_t n, std::size_t d, std::size_t cap) {
  const std::size_t dim = checked_dimension(n, d, cap);
  QuditState s{n, d, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim))};
  const double amp = std::pow(static_cast<double>(d), (1.0 - static_cast<double>(n)) / 2.0);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t sum = 0;
    for (std::size_t r = idx; r > 0; r /= d) sum += r % d;
    if (sum % d == 0) s.amplitudes[static_cast<Eigen::Index>(idx)] = amp;
  }
  return s;
}

QuditState ghz_state(std::size_t n, std::size_t d, std::size_t cap) {
  const std::size_t dim = checked_dimension(n, d, cap);
  QuditState s{n, d, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim))};
  std::size_t ones = 0;
  for (std::size_t i = 0; i < n; ++i) ones = ones * d + 1;
  for (std::size_t k = 0; k < d; ++k) s.amplitudes[static_cast<Eigen::Index>(k * ones)] = 1.0 / std::sqrt(double(d));
  return s;
}

QuditState product_state(const std::vector<std::size_t>& digits, std::size_t d, std::size_t cap) {
  const std::size_t dim = checked_dimension(digits.size(), d, cap);
  std::size_t idx = 0;
  for (std::size_t k : digits) {
    if (k >= d) throw DomainError("qudit digit out of range");
    idx = idx * d + k;
  }
  QuditState s{digits.size(), d, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim))};
  s.amplitudes[static_cast<Eigen::Index>(idx)] = 1.0;
  return s;
}

QuditState apply_fourier(const QuditState& state) {
  const std::size_t d = state.d;
  Eigen::MatrixXcd qft(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      qft(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          std::polar(1.0 / std::sqrt(double(d)), 2.0 * std::numbers::pi * double((j * k) % d) / double(d));
    }
  }
  QuditState out = state;
  const auto dim = static_cast<std::size_t>(state.amplitudes.size());
  std::size_t stride = 1;
  for (std::size_t q = 0; q < state.n; ++q, stride *= d) {
    // Apply qft to the digit with weight `stride`.
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(out.amplitudes.size());
    for (std::size_t idx = 0; idx < dim; ++idx) {
      const std::size_t digit = (idx / stride) % d;
      const std::size_t base = idx - digit * stride;
      for (std::size_t j = 0; j < d; ++j) {
        next[static_cast<Eigen::Index>(base + j * stride)] +=
            qft(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(digit)) * out.amplitudes[static_cast<Eigen::Index>(idx)];
      }
    }
    out.amplitudes = std::move(next);
  }
  return out;
}

double entanglement_entropy(const QuditState& state, const std::vector<std::size_t>& cut) {
  const std::size_t n = state.n;
  const std::size_t d = state.d;
  std::vector<bool> in(n, false);
  for (std::size_t q : cut) {
    if (q >= n) throw DomainError("cut names qudit " + std::to_string(q) + " of " + std::to_string(n));
    in[q] = true;
  }
  const auto k = static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
  if (k == 0 || k == n) throw DomainError("cut must be a proper nonempty subset");
  std::size_t rows = 1;
  for (std::size_t i = 0; i < k; ++i) rows *= d;
  const std::size_t cols = static_cast<std::size_t>(state.amplitudes.size()) / rows;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(state.amplitudes.size()); ++idx) {
    std::size_t r = 0;
    std::size_t c = 0;
    std::size_t rest = idx;
    std::vector<std::size_t> digits(n);
    for (std::size_t q = n; q-- > 0;) {
      digits[q] = rest % d;
      rest /= d;
    }
    for (std::size_t q = 0; q < n; ++q) {
      if (in[q]) r = r * d + digits[q];
      else c = c * d + digits[q];
    }
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = state.amplitudes[static_cast<Eigen::Index>(idx)];
  }
  // Squared Schmidt coefficients. SVD avoids forming the reduced density, whose
  // heavily degenerate spectrum can stall the tridiagonal QR.
  const Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  Eigen::VectorXd p = svd.singularValues().array().square();
  p /= p.sum();
  return spectral::von_neumann_sum(p.cwiseMax(0.0));
}

}  // namespace qfa
