#ifndef DCNC_LINFEAS_H_
#define DCNC_LINFEAS_H_

#include <string>
#include <variant>
#include <vector>

#include "dcnc/rational.h"

namespace dcnc {

// a . y = rhs (equality rows) or a . y <= rhs (inequality rows).
struct LinearRow {
  RationalVector coef;
  Rational rhs;
  std::string label;
};

struct LinearSystem {
  int num_unknowns = 0;
  std::vector<std::string> unknown_names;
  std::vector<bool> nonneg;
  std::vector<LinearRow> eq_rows;
  std::vector<LinearRow> ineq_rows;

  int AddUnknown(std::string name, bool nonnegative);
  // Throws std::invalid_argument when a row width disagrees.
  void CheckWellFormed() const;
  std::string RowToString(const LinearRow& row, bool equality) const;
};

// Row multipliers proving infeasibility: equality multipliers are free,
// inequality multipliers nonnegative. The combination sum_i u_i a_i has zero
// entries on free unknowns and nonnegative entries on nonnegative unknowns,
// while sum_i u_i b_i < 0, so 0 <= combination . y <= sum_i u_i b_i < 0.
struct FarkasCertificate {
  RationalVector eq_multipliers;
  RationalVector ineq_multipliers;

  // sum_i u_i a_i, recomputed from the system.
  RationalVector Combination(const LinearSystem& sys) const;
  Rational CombinedRhs(const LinearSystem& sys) const;
};

struct FeasiblePoint {
  RationalVector point;
};

class FeasibilityOutcome {
 public:
  FeasibilityOutcome(FeasiblePoint p) : value_(std::move(p)) {}       // NOLINT
  FeasibilityOutcome(FarkasCertificate c) : value_(std::move(c)) {}   // NOLINT

  bool feasible() const { return std::holds_alternative<FeasiblePoint>(value_); }
  const RationalVector& point() const { return std::get<FeasiblePoint>(value_).point; }
  const FarkasCertificate& certificate() const {
    return std::get<FarkasCertificate>(value_);
  }

 private:
  std::variant<FeasiblePoint, FarkasCertificate> value_;
};

// Phase-1 simplex with Bland's rule over exact rationals. Deterministic and
// always terminates; the result always passes VerifyOutcome.
FeasibilityOutcome SolveFeasibility(const LinearSystem& sys);

bool VerifyPoint(const LinearSystem& sys, const RationalVector& point);
bool VerifyCertificate(const LinearSystem& sys, const FarkasCertificate& cert);
bool VerifyOutcome(const LinearSystem& sys, const FeasibilityOutcome& outcome);

}  // namespace dcnc

#endif  // DCNC_LINFEAS_H_
