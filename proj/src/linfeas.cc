#include "dcnc/linfeas.h"

#include <stdexcept>

namespace dcnc {

int LinearSystem::AddUnknown(std::string name, bool nonnegative) {
  unknown_names.push_back(std::move(name));
  nonneg.push_back(nonnegative);
  for (auto* rows : {&eq_rows, &ineq_rows}) {
    for (auto& row : *rows) row.coef.emplace_back(0);
  }
  return num_unknowns++;
}

void LinearSystem::CheckWellFormed() const {
  if (static_cast<int>(nonneg.size()) != num_unknowns) {
    throw std::invalid_argument("nonneg flags do not match unknown count");
  }
  for (const auto* rows : {&eq_rows, &ineq_rows}) {
    for (const auto& row : *rows) {
      if (static_cast<int>(row.coef.size()) != num_unknowns) {
        throw std::invalid_argument("row '" + row.label + "' has wrong width");
      }
    }
  }
}

std::string LinearSystem::RowToString(const LinearRow& row, bool equality) const {
  std::string s;
  for (int j = 0; j < num_unknowns; ++j) {
    const Rational& a = row.coef[j];
    if (a.IsZero()) continue;
    const std::string name = j < static_cast<int>(unknown_names.size())
                                 ? unknown_names[j]
                                 : "y" + std::to_string(j);
    if (s.empty()) {
      if (a == Rational(-1)) s += "-";
      else if (a != Rational(1)) s += a.ToString() + "*";
    } else {
      s += a.Sign() < 0 ? " - " : " + ";
      if (a.Abs() != Rational(1)) s += a.Abs().ToString() + "*";
    }
    s += name;
  }
  if (s.empty()) s = "0";
  return s + (equality ? " = " : " <= ") + row.rhs.ToString();
}

RationalVector FarkasCertificate::Combination(const LinearSystem& sys) const {
  RationalVector c(sys.num_unknowns, Rational(0));
  auto add = [&](const std::vector<LinearRow>& rows, const RationalVector& u) {
    for (size_t i = 0; i < rows.size(); ++i) {
      if (u[i].IsZero()) continue;
      for (int j = 0; j < sys.num_unknowns; ++j) c[j] += u[i] * rows[i].coef[j];
    }
  };
  add(sys.eq_rows, eq_multipliers);
  add(sys.ineq_rows, ineq_multipliers);
  return c;
}

Rational FarkasCertificate::CombinedRhs(const LinearSystem& sys) const {
  Rational r;
  for (size_t i = 0; i < sys.eq_rows.size(); ++i) r += eq_multipliers[i] * sys.eq_rows[i].rhs;
  for (size_t i = 0; i < sys.ineq_rows.size(); ++i) {
    r += ineq_multipliers[i] * sys.ineq_rows[i].rhs;
  }
  return r;
}

namespace {

// Dense phase-1 tableau over A z + s = b', z >= 0, with one artificial per
// row. Columns: structural (split free unknowns), slacks, artificials.
class Phase1Tableau {
 public:
  explicit Phase1Tableau(const LinearSystem& sys) : sys_(sys) {
    const int n = sys.num_unknowns;
    for (int j = 0; j < n; ++j) {
      column_of_plus_.push_back(num_cols_++);
      column_of_minus_.push_back(sys.nonneg[j] ? -1 : num_cols_++);
    }
    const int eq = static_cast<int>(sys.eq_rows.size());
    const int in = static_cast<int>(sys.ineq_rows.size());
    rows_ = eq + in;
    first_slack_ = num_cols_;
    num_cols_ += in;
    first_artificial_ = num_cols_;
    num_cols_ += rows_;

    table_.assign(rows_, RationalVector(num_cols_ + 1, Rational(0)));
    sign_.assign(rows_, 1);
    basis_.resize(rows_);
    for (int i = 0; i < rows_; ++i) {
      const LinearRow& row = i < eq ? sys.eq_rows[i] : sys.ineq_rows[i - eq];
      auto& t = table_[i];
      for (int j = 0; j < n; ++j) {
        t[column_of_plus_[j]] = row.coef[j];
        if (column_of_minus_[j] >= 0) t[column_of_minus_[j]] = -row.coef[j];
      }
      if (i >= eq) t[first_slack_ + (i - eq)] = Rational(1);
      t[num_cols_] = row.rhs;
      if (row.rhs.Sign() < 0) {
        sign_[i] = -1;
        for (auto& v : t) v = -v;
      }
      t[first_artificial_ + i] = Rational(1);
      basis_[i] = first_artificial_ + i;
    }
    // Reduced costs of min sum(artificials).
    cost_.assign(num_cols_ + 1, Rational(0));
    for (int j = 0; j <= num_cols_; ++j) {
      if (j >= first_artificial_ && j < num_cols_) continue;
      for (int i = 0; i < rows_; ++i) cost_[j] -= table_[i][j];
    }
  }

  void Run() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < num_cols_; ++j) {
        if (cost_[j].Sign() < 0) { enter = j; break; }
      }
      if (enter < 0) return;
      int leave = -1;
      Rational best_ratio;
      for (int i = 0; i < rows_; ++i) {
        if (table_[i][enter].Sign() <= 0) continue;
        Rational ratio = table_[i][num_cols_] / table_[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      // Phase-1 objective is bounded below by zero.
      if (leave < 0) throw std::logic_error("phase-1 simplex reported unbounded");
      Pivot(leave, enter);
    }
  }

  // Remaining phase-1 objective, sum of artificials.
  Rational Infeasibility() const { return -cost_[num_cols_]; }

  RationalVector Point() const {
    RationalVector z(num_cols_, Rational(0));
    for (int i = 0; i < rows_; ++i) z[basis_[i]] = table_[i][num_cols_];
    RationalVector y(sys_.num_unknowns);
    for (int j = 0; j < sys_.num_unknowns; ++j) {
      y[j] = z[column_of_plus_[j]];
      if (column_of_minus_[j] >= 0) y[j] -= z[column_of_minus_[j]];
    }
    return y;
  }

  FarkasCertificate Certificate() const {
    // Dual of row i is 1 - (reduced cost of its artificial); the Farkas
    // multiplier is minus the dual, mapped back through the row sign flip.
    const int eq = static_cast<int>(sys_.eq_rows.size());
    FarkasCertificate cert;
    cert.eq_multipliers.resize(eq);
    cert.ineq_multipliers.resize(rows_ - eq);
    for (int i = 0; i < rows_; ++i) {
      Rational u = cost_[first_artificial_ + i] - Rational(1);
      if (sign_[i] < 0) u = -u;
      (i < eq ? cert.eq_multipliers[i] : cert.ineq_multipliers[i - eq]) = u;
    }
    // Scale to the smallest integer multiplier vector.
    mpz_class den_lcm = 1;
    mpz_class num_gcd = 0;
    for (const auto* list : {&cert.eq_multipliers, &cert.ineq_multipliers}) {
      for (const auto& u : *list) {
        den_lcm = lcm(den_lcm, u.Denominator());
        num_gcd = gcd(num_gcd, u.Numerator());
      }
    }
    const Rational scale(mpq_class(den_lcm, num_gcd));
    for (auto& u : cert.eq_multipliers) u *= scale;
    for (auto& u : cert.ineq_multipliers) u *= scale;
    return cert;
  }

 private:
  void Pivot(int r, int c) {
    const Rational piv = table_[r][c];
    for (auto& v : table_[r]) v /= piv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || table_[i][c].IsZero()) continue;
      const Rational f = table_[i][c];
      for (int j = 0; j <= num_cols_; ++j) {
        if (!table_[r][j].IsZero()) table_[i][j] -= f * table_[r][j];
      }
    }
    if (!cost_[c].IsZero()) {
      const Rational f = cost_[c];
      for (int j = 0; j <= num_cols_; ++j) {
        if (!table_[r][j].IsZero()) cost_[j] -= f * table_[r][j];
      }
    }
    basis_[r] = c;
  }

  const LinearSystem& sys_;
  std::vector<int> column_of_plus_;
  std::vector<int> column_of_minus_;
  int num_cols_ = 0;
  int rows_ = 0;
  int first_slack_ = 0;
  int first_artificial_ = 0;
  std::vector<RationalVector> table_;
  std::vector<int> sign_;
  std::vector<int> basis_;
  RationalVector cost_;
};

}  // namespace

FeasibilityOutcome SolveFeasibility(const LinearSystem& sys) {
  sys.CheckWellFormed();
  Phase1Tableau tableau(sys);
  tableau.Run();
  if (tableau.Infeasibility().IsZero()) return FeasiblePoint{tableau.Point()};
  return tableau.Certificate();
}

bool VerifyPoint(const LinearSystem& sys, const RationalVector& point) {
  if (static_cast<int>(point.size()) != sys.num_unknowns) return false;
  for (int j = 0; j < sys.num_unknowns; ++j) {
    if (sys.nonneg[j] && point[j].Sign() < 0) return false;
  }
  for (const auto& row : sys.eq_rows) {
    if (Dot(row.coef, point) != row.rhs) return false;
  }
  for (const auto& row : sys.ineq_rows) {
    if (Dot(row.coef, point) > row.rhs) return false;
  }
  return true;
}

bool VerifyCertificate(const LinearSystem& sys, const FarkasCertificate& cert) {
  if (cert.eq_multipliers.size() != sys.eq_rows.size() ||
      cert.ineq_multipliers.size() != sys.ineq_rows.size()) {
    return false;
  }
  for (const auto& u : cert.ineq_multipliers) {
    if (u.Sign() < 0) return false;
  }
  const RationalVector c = cert.Combination(sys);
  for (int j = 0; j < sys.num_unknowns; ++j) {
    if (sys.nonneg[j] ? c[j].Sign() < 0 : !c[j].IsZero()) return false;
  }
  return cert.CombinedRhs(sys).Sign() < 0;
}

bool VerifyOutcome(const LinearSystem& sys, const FeasibilityOutcome& outcome) {
  try {
    sys.CheckWellFormed();
  } catch (const std::invalid_argument&) {
    return false;
  }
  return outcome.feasible() ? VerifyPoint(sys, outcome.point())
                            : VerifyCertificate(sys, outcome.certificate());
}

}  // namespace dcnc
