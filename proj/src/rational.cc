#include "dcnc/rational.h"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace dcnc {
namespace {

bool IsDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool IsSignedDigits(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return IsDigits(s);
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.IsZero()) throw std::domain_error("rational division by zero");
  value_ /= o.value_;
  return *this;
}

bool Rational::TryParse(std::string_view text, Rational* out) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : text.substr(slash + 1);
  if (!IsSignedDigits(num) || !IsDigits(den)) return false;
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) return false;
  mpq_class q(n, d);
  q.canonicalize();
  *out = Rational(q);
  return true;
}

Rational Rational::Parse(std::string_view text) {
  Rational q;
  if (!TryParse(text, &q)) {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  return q;
}

std::string Rational::ToString() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

bool Rational::IsInteger() const { return value_.get_den() == 1; }

mpz_class Rational::Floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return r;
}

long Rational::ToLong() const {
  if (!IsInteger() || !value_.get_num().fits_slong_p()) {
    throw std::range_error("rational " + ToString() + " is not a machine integer");
  }
  return value_.get_num().get_si();
}

std::ostream& operator<<(std::ostream& os, const Rational& q) {
  return os << q.ToString();
}

bool RationalMatrix::IsSymmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    for (int j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

RationalMatrix RationalMatrix::Principal(const std::vector<int>& indices) const {
  const int k = static_cast<int>(indices.size());
  RationalMatrix out(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) out(i, j) = (*this)(indices[i], indices[j]);
  }
  return out;
}

Rational Dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Dot: size mismatch");
  Rational s;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i].IsZero() && !b[i].IsZero()) s += a[i] * b[i];
  }
  return s;
}

bool IsPositiveSemidefinite(const RationalMatrix& m) {
  if (!m.IsSymmetric()) return false;
  RationalMatrix a = m;
  std::vector<int> live(m.rows());
  for (int i = 0; i < m.rows(); ++i) live[i] = i;

  while (!live.empty()) {
    // Pivot on the largest remaining diagonal entry.
    int best = -1;
    for (int idx : live) {
      if (a(idx, idx).Sign() < 0) return false;
      if (best < 0 || a(idx, idx) > a(best, best)) best = idx;
    }
    const Rational pivot = a(best, best);
    if (pivot.IsZero()) {
      // All remaining diagonals vanish: PSD iff the remaining block is zero.
      for (int i : live) {
        for (int j : live) {
          if (!a(i, j).IsZero()) return false;
        }
      }
      return true;
    }
    std::erase(live, best);
    for (int i : live) {
      if (a(i, best).IsZero()) continue;
      const Rational factor = a(i, best) / pivot;
      for (int j : live) a(i, j) -= factor * a(best, j);
    }
  }
  return true;
}

Rational Determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("Determinant: not square");
  RationalMatrix a = m;
  const int n = a.rows();
  Rational det(1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r) {
      if (!a(r, c).IsZero()) { piv = r; break; }
    }
    if (piv < 0) return Rational(0);
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (a(r, c).IsZero()) continue;
      const Rational f = a(r, c) / a(c, c);
      for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

bool IsPositiveSemidefiniteByMinors(const RationalMatrix& m) {
  if (!m.IsSymmetric()) return false;
  const int n = m.rows();
  if (n > 20) throw std::invalid_argument("principal-minor test limited to n <= 20");
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    if (Determinant(m.Principal(idx)).Sign() < 0) return false;
  }
  return true;
}

std::string FormatTuple(const RationalVector& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].ToString();
  }
  return s + ")";
}

}  // namespace dcnc
