#ifndef DCNC_RATIONAL_H_
#define DCNC_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace dcnc {

// Exact rational scalar. Always held in canonical form: positive
// denominator, numerator and denominator coprime.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : value_(v) {}  // NOLINT(runtime/explicit)
  Rational(int v) : value_(v) {}   // NOLINT(runtime/explicit)
  Rational(long num, long den);
  explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  // Accepts "n", "-n", "n/d" with d != 0. No whitespace, no decimals.
  static Rational Parse(std::string_view text);
  static bool TryParse(std::string_view text, Rational* out);

  // "n" when integral, otherwise "n/d".
  std::string ToString() const;

  bool IsInteger() const;
  bool IsZero() const { return sgn(value_) == 0; }
  int Sign() const { return sgn(value_); }
  Rational Abs() const { return Rational(mpq_class(abs(value_))); }
  mpz_class Floor() const;
  mpz_class Numerator() const { return value_.get_num(); }
  mpz_class Denominator() const { return value_.get_den(); }
  // Only valid when IsInteger() and the value fits.
  long ToLong() const;

  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    return Rational(mpq_class(-a.value_));
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

using RationalVector = std::vector<Rational>;

// Dense row-major rational matrix.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return data_[Index(r, c)]; }
  const Rational& operator()(int r, int c) const { return data_[Index(r, c)]; }

  bool IsSymmetric() const;
  RationalMatrix Principal(const std::vector<int>& indices) const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  size_t Index(int r, int c) const { return static_cast<size_t>(r) * cols_ + c; }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

Rational Dot(const RationalVector& a, const RationalVector& b);

// Exact positive-semidefiniteness test for a symmetric matrix by LDL^T with
// symmetric (diagonal) pivoting.
bool IsPositiveSemidefinite(const RationalMatrix& m);

// Independent PSD test: every principal minor is nonnegative. Exponential in
// the dimension, used as a cross-check for small blocks.
bool IsPositiveSemidefiniteByMinors(const RationalMatrix& m);

Rational Determinant(const RationalMatrix& m);

// Renders "(a,b,c)".
std::string FormatTuple(const RationalVector& v);

}  // namespace dcnc

#endif  // DCNC_RATIONAL_H_
