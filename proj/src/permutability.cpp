#include "smpcert/permutability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "smpcert/errors.hpp"

namespace smpcert {

namespace {

bool same(const Scalar& x, const Scalar& y) {
  return x.is_exact() ? x == y : approx_equal(x, y, kSimilarityTolerance);
}

bool same(const Mat2& x, const Mat2& y) {
  return x.backend() == Backend::exact ? x == y : approx_equal(x, y, kSimilarityTolerance);
}

bool is_scalar_matrix(const Mat2& m) {
  return approx_sign(m.m12(), kSimilarityTolerance) == 0 && approx_sign(m.m21(), kSimilarityTolerance) == 0 &&
         same(m.m11(), m.m22());
}

std::string counts_str(const FactorCounts& c) {
  return "(" + std::to_string(c.a) + ", " + std::to_string(c.b) + ")";
}

}  // namespace

TauMap::TauMap(Mat2 s) : s_(std::move(s)), s_inverse_(s_.inverse()) {}

bool is_irreducible(const MatrixPair& set) {
  const Mat2& a = set.a;
  const Mat2& b = set.b;
  if (a.backend() != b.backend()) throw BackendMismatch();
  // Non-real spectrum: A has no real invariant line at all.
  if (!has_real_spectrum(a, kSimilarityTolerance)) return true;
  // A = aI leaves every line invariant; a common line exists iff B has a real eigenvector.
  if (is_scalar_matrix(a)) return !has_real_spectrum(b, kSimilarityTolerance);
  // A has one or two real eigenlines. B shares an eigenvector with A iff
  // det(AB - BA) = 0, and the shared vector is then real because A's
  // eigenspaces are.
  const Mat2 commutator = a * b - b * a;
  const Scalar det = commutator.det();
  if (det.is_exact()) return !det.is_zero();
  const auto size = [](const Mat2& m) {
    return std::max({std::abs(m.m11().to_double()), std::abs(m.m12().to_double()), std::abs(m.m21().to_double()),
                     std::abs(m.m22().to_double())});
  };
  const double scale = std::max(1.0, size(a) * size(b));
  return std::abs(det.to_double()) > kSimilarityTolerance * scale * scale;
}

std::array<Scalar, 5> friedland_5tuple(const Mat2& a, const Mat2& b) {
  return {a.trace(), (a * a).trace(), b.trace(), (b * b).trace(), (a * b).trace()};
}

bool friedland_permutable(const MatrixPair& set) {
  if (same(set.a, set.b)) throw DomainError("permutability requires A != B");
  if (!is_irreducible(set)) throw CriterionInapplicable("criterion inapplicable (reducible)");
  return same(set.a.trace(), set.b.trace()) && same(set.a.det(), set.b.det());
}

bool verify_tau(const MatrixPair& set, const TauMap& tau) {
  return same(tau(set.a), set.b) && same(tau(set.b), set.a);
}

Word tau_word(const Word& word) {
  std::vector<Letter> symbols;
  symbols.reserve(word.size());
  for (Letter letter : word.symbols()) symbols.push_back(swapped(letter));
  return Word::from_application_order(std::move(symbols));
}

TauImageReport tau_image_check(const MatrixPair& set, const TauMap& tau, const Word& word) {
  if (!verify_tau(set, tau)) throw DomainError("tau does not swap A and B");
  Word image = tau_word(word);
  Mat2 product = evaluate(word, set);
  Mat2 image_product = evaluate(image, set);
  const bool iso = product.backend() == Backend::exact ? isospectral(product, image_product)
                                                       : isospectral(product, image_product, kSimilarityTolerance);
  const FactorCounts counts = factor_counts(word);
  const FactorCounts image_counts = factor_counts(image);
  Word normal = cyclic_normal_form(word);
  Word image_normal = cyclic_normal_form(image);
  const bool odd = word.size() % 2 == 1;
  return TauImageReport{
      .word = word,
      .image = image,
      .product = std::move(product),
      .image_product = std::move(image_product),
      .isospectral = iso,
      .odd_length = odd,
      .counts = counts,
      .image_counts = image_counts,
      .normal_form = normal,
      .image_normal_form = image_normal,
      .counts_differ = counts.a != image_counts.a,
      .classes_distinct = normal != image_normal,
  };
}

std::string TauImageReport::to_text() const {
  std::ostringstream out;
  out << "word          " << word.display() << "  ->  tau image " << image.display() << '\n';
  out << "trace / det   " << product.trace() << " / " << product.det() << "  vs  " << image_product.trace() << " / "
      << image_product.det() << '\n';
  out << "isospectral   " << (isospectral ? "yes" : "NO") << '\n';
  if (odd_length) {
    out << "counts (A,B)  " << counts_str(counts) << " vs " << counts_str(image_counts)
        << (counts_differ ? "  differ" : "  EQUAL") << '\n';
    out << "classes       {" << normal_form.display() << "} vs {" << image_normal_form.display() << "}"
        << (classes_distinct ? "  distinct" : "  SAME") << '\n';
  } else {
    out << "counts (A,B)  " << counts_str(counts) << " vs " << counts_str(image_counts)
        << "  (even length, not required to differ)\n";
  }
  out << "result        " << (passed() ? "pass" : "FAIL") << '\n';
  return out.str();
}

std::string TauImageReport::to_key_value() const {
  std::ostringstream out;
  out << "word = " << word.display() << '\n';
  out << "tau_word = " << image.display() << '\n';
  out << "trace = " << product.trace() << '\n';
  out << "det = " << product.det() << '\n';
  out << "tau_trace = " << image_product.trace() << '\n';
  out << "tau_det = " << image_product.det() << '\n';
  out << "isospectral = " << (isospectral ? "true" : "false") << '\n';
  out << "odd_length = " << (odd_length ? "true" : "false") << '\n';
  out << "count_a = " << counts.a << '\n';
  out << "count_b = " << counts.b << '\n';
  out << "tau_count_a = " << image_counts.a << '\n';
  out << "tau_count_b = " << image_counts.b << '\n';
  out << "normal_form = " << normal_form.display() << '\n';
  out << "tau_normal_form = " << image_normal_form.display() << '\n';
  out << "passed = " << (passed() ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace smpcert
