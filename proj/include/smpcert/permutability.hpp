#pragma once

#include <array>
#include <string>

#include "smpcert/matrix2.hpp"
#include "smpcert/words.hpp"

namespace smpcert {

/// Float tolerance for the similarity and isospectrality checks below.
inline constexpr double kSimilarityTolerance = 1e-10;

/// X -> S^-1 X S.
class TauMap {
 public:
  /// Throws SingularMatrix.
  explicit TauMap(Mat2 s);

  const Mat2& s() const noexcept { return s_; }
  Mat2 operator()(const Mat2& x) const { return s_inverse_ * x * s_; }

 private:
  Mat2 s_;
  Mat2 s_inverse_;
};

/// True iff A and B share no real invariant line.
bool is_irreducible(const MatrixPair& set);

/// (tr A, tr A^2, tr B, tr B^2, tr AB).
std::array<Scalar, 5> friedland_5tuple(const Mat2& a, const Mat2& b);

/// For an irreducible pair with A != B: whether some similarity swaps A and
/// B, decided by tr A == tr B and det A == det B.
/// Throws CriterionInapplicable on reducible input, DomainError when A == B.
bool friedland_permutable(const MatrixPair& set);

/// tau(A) == B and tau(B) == A.
bool verify_tau(const MatrixPair& set, const TauMap& tau);

/// Swaps every A with B, keeping the order.
Word tau_word(const Word& word);

struct TauImageReport {
  Word word;
  Word image;
  Mat2 product;
  Mat2 image_product;
  bool isospectral = false;
  bool odd_length = false;
  FactorCounts counts;
  FactorCounts image_counts;
  Word normal_form;
  Word image_normal_form;
  /// Only meaningful for odd lengths.
  bool counts_differ = false;
  bool classes_distinct = false;

  bool passed() const { return isospectral && (!odd_length || (counts_differ && classes_distinct)); }
  std::string to_text() const;
  std::string to_key_value() const;
};

/// Checks the spectrum of tau(M) against M for the product of `word`, and
/// for odd lengths that the factor counts and rotation classes differ.
/// Throws DomainError when tau does not swap the pair.
TauImageReport tau_image_check(const MatrixPair& set, const TauMap& tau, const Word& word);

}  // namespace smpcert
