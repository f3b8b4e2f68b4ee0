#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "msched/domain.hpp"
#include "msched/summary.hpp"

namespace msched {

enum class AtomKind : std::uint8_t {
  K1,  // single duty per employee
  K2,  // every job occupied every day
  K3,  // per-job working time within bounds
  K4,  // total salary within bounds
  K5,  // total staff cap
  K6,  // rest days capped
  Y1,  // emergency withdrawal absorbable
  Y2,  // per-job headcount within bounds
  O1,  // shift pattern valid for the instance's shift mode
  O2,  // cooperative task withdrawal absorbable
};

inline constexpr std::array<AtomKind, 10> kAllAtomKinds = {
    AtomKind::K1, AtomKind::K2, AtomKind::K3, AtomKind::K4, AtomKind::K5,
    AtomKind::K6, AtomKind::Y1, AtomKind::Y2, AtomKind::O1, AtomKind::O2};

std::string_view atom_name(AtomKind kind);
std::optional<AtomKind> parse_atom_name(std::string_view name);

struct AtomicConstraint {
  AtomKind kind;
  bool operator==(const AtomicConstraint&) const = default;
};

/// Boolean combination of atomic constraints. And/Or hold at least two
/// children; Not holds exactly one.
class ConstraintExpr {
 public:
  enum class Op : std::uint8_t { Atom, And, Or, Not };

  static ConstraintExpr atom(AtomKind kind);
  static ConstraintExpr all_of(std::vector<ConstraintExpr> children);
  static ConstraintExpr any_of(std::vector<ConstraintExpr> children);
  static ConstraintExpr negate(ConstraintExpr child);

  Op op() const { return op_; }
  AtomKind kind() const { return kind_; }
  const std::vector<ConstraintExpr>& children() const { return children_; }

  // Distinct atom kinds referenced anywhere in the tree, in first-seen order.
  std::vector<AtomKind> atoms() const;

  bool operator==(const ConstraintExpr&) const = default;

 private:
  Op op_ = Op::Atom;
  AtomKind kind_ = AtomKind::K1;
  std::vector<ConstraintExpr> children_;
};

// Grammar: atom | !e | e&e | e|e | (e), with ! binding tightest and & above |.
ConstraintExpr parse_constraint_string(std::string_view text);
std::string to_string(const ConstraintExpr& e);

// The paper's basic conjunction k1 & ... & k6.
ConstraintExpr basic_constraints();

using RestCounter = std::vector<int>;

RestCounter rest_counter(const AttendanceTensor& tensor, const HeadcountVector& hc,
                         const ProblemInstance& inst);

bool eval_atom(const AtomicConstraint& c, const AttendanceSummary& s, const ProblemInstance& inst);
double violation_atom(const AtomicConstraint& c, const AttendanceSummary& s,
                      const ProblemInstance& inst);

bool eval_atom(const AtomicConstraint& c, const AttendanceTensor& tensor,
               const HeadcountVector& hc, const ProblemInstance& inst);
double violation_atom(const AtomicConstraint& c, const AttendanceTensor& tensor,
                      const HeadcountVector& hc, const ProblemInstance& inst);

bool eval_expr(const ConstraintExpr& e, const AttendanceSummary& s, const ProblemInstance& inst);
double violation_expr(const ConstraintExpr& e, const AttendanceSummary& s,
                      const ProblemInstance& inst);

bool eval_expr(const ConstraintExpr& e, const AttendanceTensor& tensor,
               const HeadcountVector& hc, const ProblemInstance& inst);
double violation_expr(const ConstraintExpr& e, const AttendanceTensor& tensor,
                      const HeadcountVector& hc, const ProblemInstance& inst);

/// Smallest remaining margin before an inequality atom becomes violated.
/// Negative when violated; +infinity for structural atoms with no margin.
double atom_slack(const AtomicConstraint& c, const AttendanceSummary& s,
                  const ProblemInstance& inst);

/// Inverse-distance barrier for the internal penalty method:
/// sum over conjuncts of 1 / (1 + slack), min over satisfied disjuncts.
/// Infinite when the expression is violated. Throws ConfigurationError for
/// negations and for equality-style atoms (degenerate bounds).
double barrier_expr(const ConstraintExpr& e, const AttendanceSummary& s,
                    const ProblemInstance& inst);

// Throws ConfigurationError if the expression cannot use the internal method.
void require_inequality_form(const ConstraintExpr& e, const ProblemInstance& inst);

// Throws ConfigurationError when an atom needs instance data that is absent.
void check_resolvable(const ConstraintExpr& e, const ProblemInstance& inst);

/// Removes `alpha` staff one at a time from the currently largest of `jobs`
/// (lowest index on ties). Empty `jobs` means every job.
HeadcountVector withdraw_staff(const HeadcountVector& hc, int alpha,
                               const std::vector<std::size_t>& jobs);

struct EmergencyOutcome {
  HeadcountVector headcounts;
  double total_time = 0.0;
  double cost = 0.0;
};

EmergencyOutcome apply_emergency(const HeadcountVector& hc, double total_time, double cost,
                                 const EmergencySpec& spec);

}  // namespace msched
