#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smpcert/matrix2.hpp"

namespace smpcert {

enum class Letter : std::uint8_t { A = 0, B = 1 };

char to_char(Letter letter);
Letter swapped(Letter letter);

/// Non-empty word over {A, B}.
///
/// Symbols are stored in application order: the first stored symbol is the
/// first matrix applied to a vector, so it sits rightmost in the product.
/// The display form is the matrix juxtaposition, i.e. storage reversed: the
/// word displayed "BAA" stores {A, A, B} and evaluates to B*A*A.
class Word {
 public:
  /// Throws DomainError on an empty string or a character other than A/B.
  static Word from_display(std::string_view text);
  static Word from_application_order(std::vector<Letter> symbols);

  const std::vector<Letter>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  std::string display() const;

  friend bool operator==(const Word&, const Word&) = default;
  /// Lexicographic order of the display forms, A < B.
  friend std::strong_ordering operator<=>(const Word& lhs, const Word& rhs);

 private:
  explicit Word(std::vector<Letter> symbols) : symbols_(std::move(symbols)) {}
  std::vector<Letter> symbols_;
};

struct MatrixPair {
  Mat2 a;
  Mat2 b;

  const Mat2& operator[](Letter letter) const { return letter == Letter::A ? a : b; }
  Backend backend() const noexcept { return a.backend(); }
};

/// The product of the word's matrices, last-applied factor leftmost.
Mat2 evaluate(const Word& word, const MatrixPair& set);

/// Lexicographically least rotation of the display form.
Word cyclic_normal_form(const Word& word);

/// One normal-form representative per rotation class of {A, B}^n, sorted.
std::vector<Word> necklaces(int n);

struct FactorCounts {
  int a = 0;
  int b = 0;
  friend bool operator==(const FactorCounts&, const FactorCounts&) = default;
};

FactorCounts factor_counts(const Word& word);

struct BoundsOptions {
  int max_length = 20;
  /// Relative tolerance for maximizer ties on the float backend. The exact
  /// backend compares spectral radii exactly.
  double tie_tolerance = 1e-9;
};

struct BoundsRow {
  int n = 0;
  double rho_bar_n = 0.0;
  std::optional<double> rho_n;
  std::vector<Word> maximizers;
};

/// max over length-n necklaces of rho(A_w)^(1/n), with every maximizing
/// necklace. Throws CapExceeded beyond options.max_length.
BoundsRow rho_bar_n(const MatrixPair& set, int n, const BoundsOptions& options = {});

/// Induced operator norm evaluator.
using OperatorNorm = std::function<Scalar(const Mat2&)>;

/// Operator norm induced by the max-absolute-entry vector norm (max row sum).
OperatorNorm max_row_sum_norm();

/// max over all 2^n words of ||A_w||^(1/n).
double rho_n(const MatrixPair& set, int n, const OperatorNorm& norm, const BoundsOptions& options = {});

/// Rows n = 1..max_n; rho_n filled only when `norm` is given.
std::vector<BoundsRow> bounds_table(const MatrixPair& set, int max_n, const OperatorNorm* norm,
                                    const BoundsOptions& options = {});

std::string format_bounds_text(const std::vector<BoundsRow>& rows);
/// Columns n,rho_bar_n,rho_n,maximizers; maximizers joined by ';'.
std::string format_bounds_csv(const std::vector<BoundsRow>& rows);

}  // namespace smpcert
