#pragma once

#include <array>
#include <string>

#include "smpcert/scalar.hpp"

// Closed forms for the main family at phi = 2pi/3, as functions of kappa
// and mu. Every kappa^(k/3) is evaluated as c^k, so they are exact whenever
// c and mu are.
namespace smpcert::closed_form {

struct Entry {
  std::string name;
  Scalar value;
};

/// (v_i, T v_j) for 1 <= i < j <= 6, in the order (1,2), (1,3), ..., (5,6).
std::array<Entry, 15> vertex_products(const KappaContext& kappa, const Scalar& mu);

/// s and t of a4, a6 in their sectors, then of b3 in (v11, v12) and b7 in
/// (v2, v3): s(a4), t(a4), s(a6), t(a6), s(b3), t(b3), s(b7), t(b7).
std::array<Entry, 8> sector_values(const KappaContext& kappa, const Scalar& mu);

/// h of a4, a6, b3, b7 in their sectors.
std::array<Entry, 4> h_values(const KappaContext& kappa, const Scalar& mu);

/// h(v(i-1), v(i+1), v(i)) for i = 1..6.
std::array<Entry, 6> convexity_values(const KappaContext& kappa, const Scalar& mu);

}  // namespace smpcert::closed_form
