#include "smpcert/words.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "smpcert/errors.hpp"

namespace smpcert {

namespace {

void check_length(int n, const BoundsOptions& options) {
  if (n < 1) throw DomainError("word length must be at least 1");
  if (n > options.max_length) {
    throw CapExceeded("word length " + std::to_string(n) + " exceeds the cap " + std::to_string(options.max_length));
  }
}

// Fredricksen-Kessler-Maiorana: prenecklaces in lexicographic order; the ones
// whose period divides n are exactly the least rotations.
void fkm(int t, int p, int n, std::vector<int>& a, std::vector<Word>& out) {
  if (t > n) {
    if (n % p == 0) {
      std::string text;
      for (int i = 1; i <= n; ++i) text.push_back(a[i] == 0 ? 'A' : 'B');
      out.push_back(Word::from_display(text));
    }
    return;
  }
  a[t] = a[t - p];
  fkm(t + 1, p, n, a, out);
  for (int j = a[t - p] + 1; j < 2; ++j) {
    a[t] = j;
    fkm(t + 1, t, n, a, out);
  }
}

void max_norm_dfs(const MatrixPair& set, const Mat2& prefix, int depth, int n, const OperatorNorm& norm,
                  std::optional<Scalar>& best) {
  if (depth == n) {
    Scalar value = norm(prefix);
    if (!best || value > *best) best = std::move(value);
    return;
  }
  max_norm_dfs(set, set.a * prefix, depth + 1, n, norm, best);
  max_norm_dfs(set, set.b * prefix, depth + 1, n, norm, best);
}

std::string join_words(const std::vector<Word>& words, char sep) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out.push_back(sep);
    out += words[i].display();
  }
  return out;
}

}  // namespace

char to_char(Letter letter) { return letter == Letter::A ? 'A' : 'B'; }

Letter swapped(Letter letter) { return letter == Letter::A ? Letter::B : Letter::A; }

Word Word::from_display(std::string_view text) {
  if (text.empty()) throw DomainError("empty word");
  std::vector<Letter> symbols;
  symbols.reserve(text.size());
  for (auto it = text.rbegin(); it != text.rend(); ++it) {
    if (*it == 'A') symbols.push_back(Letter::A);
    else if (*it == 'B') symbols.push_back(Letter::B);
    else throw DomainError("invalid letter '" + std::string(1, *it) + "' in word '" + std::string(text) + "'");
  }
  return Word(std::move(symbols));
}

Word Word::from_application_order(std::vector<Letter> symbols) {
  if (symbols.empty()) throw DomainError("empty word");
  return Word(std::move(symbols));
}

std::string Word::display() const {
  std::string out;
  out.reserve(symbols_.size());
  for (auto it = symbols_.rbegin(); it != symbols_.rend(); ++it) out.push_back(to_char(*it));
  return out;
}

std::strong_ordering operator<=>(const Word& lhs, const Word& rhs) {
  return std::lexicographical_compare_three_way(lhs.symbols_.rbegin(), lhs.symbols_.rend(), rhs.symbols_.rbegin(),
                                                rhs.symbols_.rend());
}

Mat2 evaluate(const Word& word, const MatrixPair& set) {
  const auto& symbols = word.symbols();
  Mat2 product = set[symbols.front()];
  for (std::size_t i = 1; i < symbols.size(); ++i) product = set[symbols[i]] * product;
  return product;
}

Word cyclic_normal_form(const Word& word) {
  const std::string text = word.display();
  const std::size_t n = text.size();
  std::string best = text;
  for (std::size_t shift = 1; shift < n; ++shift) {
    std::string rotated = text.substr(shift) + text.substr(0, shift);
    if (rotated < best) best = std::move(rotated);
  }
  return Word::from_display(best);
}

std::vector<Word> necklaces(int n) {
  if (n < 1) throw DomainError("necklace length must be at least 1");
  std::vector<int> a(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Word> out;
  fkm(1, 1, n, a, out);
  return out;
}

FactorCounts factor_counts(const Word& word) {
  FactorCounts counts;
  for (Letter letter : word.symbols()) (letter == Letter::A ? counts.a : counts.b)++;
  return counts;
}

BoundsRow rho_bar_n(const MatrixPair& set, int n, const BoundsOptions& options) {
  check_length(n, options);
  const auto classes = necklaces(n);
  std::vector<Mat2> products;
  products.reserve(classes.size());
  for (const auto& word : classes) products.push_back(evaluate(word, set));

  BoundsRow row;
  row.n = n;
  const double root = 1.0 / n;

  if (set.backend() == Backend::exact) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < products.size(); ++i) {
      if (compare_spectral_radius(products[i], products[best]) > 0) best = i;
    }
    for (std::size_t i = 0; i < products.size(); ++i) {
      if (compare_spectral_radius(products[i], products[best]) == 0) row.maximizers.push_back(classes[i]);
    }
    row.rho_bar_n = std::pow(spectral_radius(products[best]), root);
    return row;
  }

  std::vector<double> values;
  values.reserve(products.size());
  for (const auto& product : products) values.push_back(std::pow(spectral_radius(product), root));
  row.rho_bar_n = *std::max_element(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= row.rho_bar_n - options.tie_tolerance * row.rho_bar_n) row.maximizers.push_back(classes[i]);
  }
  return row;
}

OperatorNorm max_row_sum_norm() {
  return [](const Mat2& m) {
    const Scalar row1 = abs(m.m11()) + abs(m.m12());
    const Scalar row2 = abs(m.m21()) + abs(m.m22());
    return row1 < row2 ? row2 : row1;
  };
}

double rho_n(const MatrixPair& set, int n, const OperatorNorm& norm, const BoundsOptions& options) {
  check_length(n, options);
  std::optional<Scalar> best;
  max_norm_dfs(set, set.a, 1, n, norm, best);
  max_norm_dfs(set, set.b, 1, n, norm, best);
  return std::pow(best->to_double(), 1.0 / n);
}

std::vector<BoundsRow> bounds_table(const MatrixPair& set, int max_n, const OperatorNorm* norm,
                                    const BoundsOptions& options) {
  check_length(max_n, options);
  std::vector<BoundsRow> rows;
  for (int n = 1; n <= max_n; ++n) {
    BoundsRow row = rho_bar_n(set, n, options);
    if (norm) row.rho_n = rho_n(set, n, *norm, options);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_bounds_text(const std::vector<BoundsRow>& rows) {
  std::ostringstream out;
  out << std::setw(4) << "n" << "  " << std::setw(16) << "rho_bar_n" << "  " << std::setw(16) << "rho_n"
      << "  maximizers\n";
  out << std::fixed << std::setprecision(12);
  for (const auto& row : rows) {
    out << std::setw(4) << row.n << "  " << std::setw(16) << row.rho_bar_n << "  ";
    if (row.rho_n) out << std::setw(16) << *row.rho_n;
    else out << std::setw(16) << "-";
    out << "  " << join_words(row.maximizers, ' ') << '\n';
  }
  return out.str();
}

std::string format_bounds_csv(const std::vector<BoundsRow>& rows) {
  std::ostringstream out;
  out << "n,rho_bar_n,rho_n,maximizers\n";
  for (const auto& row : rows) {
    out << row.n << ',' << Scalar::real(row.rho_bar_n).str() << ',';
    if (row.rho_n) out << Scalar::real(*row.rho_n).str();
    out << ',' << join_words(row.maximizers, ';') << '\n';
  }
  return out.str();
}

}  // namespace smpcert
