#pragma once

// Reference computations that share no code path with the library routines
// they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "smpcert/matrix2.hpp"
#include "smpcert/polytope.hpp"
#include "smpcert/words.hpp"

namespace oracle {

using Dense = std::array<double, 4>;

inline Dense dense(const smpcert::Mat2& m) {
  return {m.m11().to_double(), m.m12().to_double(), m.m21().to_double(), m.m22().to_double()};
}

inline Dense multiply(const Dense& x, const Dense& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

/// Largest eigenvalue modulus from the complex roots of the characteristic
/// polynomial.
inline double spectral_radius(const Dense& m) {
  const std::complex<double> tr = m[0] + m[3];
  const std::complex<double> det = m[0] * m[3] - m[1] * m[2];
  const std::complex<double> root = std::sqrt(tr * tr - 4.0 * det);
  return std::max(std::abs((tr + root) / 2.0), std::abs((tr - root) / 2.0));
}

/// Product of a word given as a bit mask: bit k set means the k-th factor
/// from the right is B.
inline Dense word_product(const Dense& a, const Dense& b, std::uint32_t mask, int n) {
  Dense p{1, 0, 0, 1};
  for (int k = 0; k < n; ++k) p = multiply((mask >> k) & 1U ? b : a, p);
  return p;
}

inline std::string mask_display(std::uint32_t mask, int n) {
  std::string s(static_cast<std::size_t>(n), 'A');
  for (int k = 0; k < n; ++k) {
    if ((mask >> k) & 1U) s[static_cast<std::size_t>(n - 1 - k)] = 'B';
  }
  return s;
}

struct BruteForce {
  double value = 0.0;
  std::vector<std::string> maximizers;  ///< every word, not only necklaces
};

/// max over all 2^n words of rho^(1/n), with every word within `tie` of it.
inline BruteForce rho_bar_n(const smpcert::MatrixPair& set, int n, double tie = 1e-9) {
  const Dense a = dense(set.a), b = dense(set.b);
  std::vector<double> values(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < values.size(); ++mask) {
    values[mask] = std::pow(spectral_radius(word_product(a, b, mask, n)), 1.0 / n);
  }
  BruteForce out;
  out.value = *std::max_element(values.begin(), values.end());
  for (std::uint32_t mask = 0; mask < values.size(); ++mask) {
    if (values[mask] >= out.value * (1.0 - tie)) out.maximizers.push_back(mask_display(mask, n));
  }
  return out;
}

/// Number of binary necklaces of length n (Burnside over the rotation group).
inline long necklace_count(int n) {
  long sum = 0;
  for (int k = 0; k < n; ++k) sum += 1L << std::gcd(k, n);
  return sum / n;
}

/// Minkowski functional of a convex balanced polygon as the largest of the
/// edge functionals l_i with l_i(v_i) = l_i(v_(i+1)) = 1.
inline smpcert::Scalar half_plane_gauge(const smpcert::Polygon& polygon, const smpcert::Vec2& x) {
  std::optional<smpcert::Scalar> best;
  for (int i = 1; i <= 12; ++i) {
    const smpcert::Vec2& p = polygon.vertex(i);
    const smpcert::Vec2& q = polygon.vertex(i + 1);
    const smpcert::Scalar nx = q.x2() - p.x2();
    const smpcert::Scalar ny = p.x1() - q.x1();
    const smpcert::Scalar value = (nx * x.x1() + ny * x.x2()) / (nx * p.x1() + ny * p.x2());
    if (!best || value > *best) best = value;
  }
  return *best;
}

/// Uniform random word of the given length in application order.
inline smpcert::Word random_word(std::mt19937_64& rng, int length) {
  std::bernoulli_distribution coin(0.5);
  std::vector<smpcert::Letter> symbols;
  for (int k = 0; k < length; ++k) symbols.push_back(coin(rng) ? smpcert::Letter::B : smpcert::Letter::A);
  return smpcert::Word::from_application_order(std::move(symbols));
}

inline smpcert::Scalar random_rational(std::mt19937_64& rng, long bound = 50) {
  std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
  return smpcert::Scalar::exact(num(rng), den(rng));
}

inline smpcert::Mat2 random_exact_matrix(std::mt19937_64& rng, long bound = 50) {
  return {random_rational(rng, bound), random_rational(rng, bound), random_rational(rng, bound),
          random_rational(rng, bound)};
}

}  // namespace oracle
