#include "smpcert/closed_forms.hpp"

namespace smpcert::closed_form {

namespace {

struct Powers {
  explicit Powers(const KappaContext& ctx) : ctx(ctx) {}
  /// kappa^(k/3)
  Scalar operator()(int k_thirds) const { return ctx.power(k_thirds); }
  const KappaContext& ctx;
};

}  // namespace

std::array<Entry, 15> vertex_products(const KappaContext& kappa, const Scalar& mu) {
  const Powers k(kappa);
  const Scalar k2p1 = k(6) + 1;
  const Scalar quartic = k(12) + k(6) + 1;
  const Scalar mu2 = mu * mu;
  const Scalar one = Scalar::integer(1, mu.backend());
  return {{
      {"(v1,Tv2)", k(3) * mu / k2p1},
      {"(v1,Tv3)", k(1) * quartic * mu2 / (k2p1 * k2p1)},
      {"(v1,Tv4)", k(1) * mu},
      {"(v1,Tv5)", quartic * mu2 / (k(1) * k2p1 * k2p1)},
      {"(v1,Tv6)", mu / (k(1) * k2p1)},
      {"(v2,Tv3)", k(7) * mu / k2p1},
      {"(v2,Tv4)", k(1)},
      {"(v2,Tv5)", mu / k(1)},
      {"(v2,Tv6)", one / k(1)},
      {"(v3,Tv4)", mu / (k(1) * k2p1)},
      {"(v3,Tv5)", quartic * mu2 / (k(3) * k2p1 * k2p1)},
      {"(v3,Tv6)", (k(12) + 1) * mu / (k(3) * k2p1)},
      {"(v4,Tv5)", k(3) * mu / k2p1},
      {"(v4,Tv6)", k(3)},
      {"(v5,Tv6)", k(7) * mu / k2p1},
  }};
}

std::array<Entry, 8> sector_values(const KappaContext& kappa, const Scalar& mu) {
  const Powers k(kappa);
  const Scalar one = Scalar::integer(1, mu.backend());
  const Scalar k4 = k(12);
  return {{
      {"s(v11,v12,a4)", (k4 - 1) / (k4 * mu)},
      {"t(v11,v12,a4)", one / k4},
      {"s(v2,v3,a6)", one / k4},
      {"t(v2,v3,a6)", (k4 - 1) / (k(10) * mu)},
      {"s(v11,v12,b3)", one / k4},
      {"t(v11,v12,b3)", (k(18) - 1) * mu / (k4 * (k(6) + 1))},
      {"s(v2,v3,b7)", (k(18) - 1) * mu / (k(14) * (k(6) + 1))},
      {"t(v2,v3,b7)", one / k4},
  }};
}

std::array<Entry, 4> h_values(const KappaContext& kappa, const Scalar& mu) {
  const Powers k(kappa);
  const Scalar k4 = k(12);
  const Scalar k2p1 = k(6) + 1;
  return {{
      {"h(v11,v12,a4)", (k4 + mu - 1) / (k4 * mu)},
      {"h(v2,v3,a6)", (k(2) * (k4 - 1) + mu) / (k4 * mu)},
      {"h(v11,v12,b3)", ((k(18) - 1) * mu + k2p1) / (k4 * k2p1)},
      {"h(v2,v3,b7)", ((k(18) - 1) * mu + k(2) * k2p1) / (k(14) * k2p1)},
  }};
}

std::array<Entry, 6> convexity_values(const KappaContext& kappa, const Scalar& mu) {
  const Powers k(kappa);
  const Scalar k2p1 = k(6) + 1;
  const Scalar quartic = k(12) + k(6) + 1;
  const Scalar h1 = (k(4) + 1) * mu / k2p1;
  const Scalar h2 = k2p1 * (k(6) + k(2)) / (quartic * mu);
  const Scalar h3 = (k(8) + 1) * mu / (k(2) * k2p1);
  const Scalar h6 = k2p1 * (k(8) + 1) / (quartic * mu);
  return {{
      {"h(v12,v2,v1)", h1},
      {"h(v1,v3,v2)", h2},
      {"h(v2,v4,v3)", h3},
      {"h(v3,v5,v4)", h2},
      {"h(v4,v6,v5)", h1},
      {"h(v5,v7,v6)", h6},
  }};
}

}  // namespace smpcert::closed_form
