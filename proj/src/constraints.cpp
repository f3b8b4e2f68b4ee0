#include "msched/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "msched/errors.hpp"

namespace msched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::size_t> kNoJobs;

struct Withdrawal {
  int staff = 0;
  const std::vector<std::size_t>* jobs = &kNoJobs;
};

Withdrawal withdrawal_for(AtomKind kind, const ProblemInstance& inst) {
  if (kind == AtomKind::Y1) {
    if (!inst.emergency) {
      throw ConfigurationError("constraint y1 needs an emergency section in the instance");
    }
    return {inst.emergency->alpha, &inst.emergency->jobs};
  }
  if (!inst.cooperation) {
    throw ConfigurationError("constraint o2 needs a cooperation section in the instance");
  }
  return {inst.cooperation->staff, &inst.cooperation->jobs};
}

std::vector<std::size_t> affected_jobs(const std::vector<std::size_t>& jobs, std::size_t n) {
  if (!jobs.empty()) return jobs;
  std::vector<std::size_t> all(n);
  for (std::size_t j = 0; j < n; ++j) all[j] = j;
  return all;
}

int available_staff(const HeadcountVector& hc, const std::vector<std::size_t>& jobs) {
  int total = 0;
  for (std::size_t j : affected_jobs(jobs, hc.size())) total += hc[j];
  return total;
}

double salary_of(const AttendanceSummary& s, const ProblemInstance& inst) {
  return inst.multi_shift ? s.salary_shift : s.salary_daily;
}

int total_rest_days(const AttendanceSummary& s) {
  int total = 0;
  for (int r : s.rest_days) total += r;
  return total;
}

// After drawing the withdrawn staff, every affected job must still meet its
// minimum headcount and, on the nominal schedule, its minimum work time.
struct Residual {
  double shortfall = 0.0;
  double slack = kInf;
};

Residual withdrawal_residual(AtomKind kind, const AttendanceSummary& s,
                             const ProblemInstance& inst) {
  const Withdrawal w = withdrawal_for(kind, inst);
  const int available = available_staff(s.headcounts, *w.jobs);
  const int drawn = std::min(w.staff, available);
  const HeadcountVector after = withdraw_staff(s.headcounts, drawn, *w.jobs);
  Residual r;
  r.shortfall = std::max(0, w.staff - available);
  if (w.staff > available) r.slack = -r.shortfall;
  for (std::size_t j : affected_jobs(*w.jobs, after.size())) {
    const double heads = after[j] - inst.jobs[j].headcount_min;
    const double hours = after[j] * daily_work_hours(inst.jobs[j]) * s.days -
                         inst.work_time_bounds[j].lower;
    r.shortfall += std::max(0.0, -heads) + std::max(0.0, -hours);
    r.slack = std::min({r.slack, heads, hours});
  }
  return r;
}

}  // namespace

std::string_view atom_name(AtomKind kind) {
  switch (kind) {
    case AtomKind::K1: return "k1";
    case AtomKind::K2: return "k2";
    case AtomKind::K3: return "k3";
    case AtomKind::K4: return "k4";
    case AtomKind::K5: return "k5";
    case AtomKind::K6: return "k6";
    case AtomKind::Y1: return "y1";
    case AtomKind::Y2: return "y2";
    case AtomKind::O1: return "o1";
    case AtomKind::O2: return "o2";
  }
  return "?";
}

std::optional<AtomKind> parse_atom_name(std::string_view name) {
  for (AtomKind k : kAllAtomKinds) {
    if (atom_name(k) == name) return k;
  }
  return std::nullopt;
}

ConstraintExpr ConstraintExpr::atom(AtomKind kind) {
  ConstraintExpr e;
  e.op_ = Op::Atom;
  e.kind_ = kind;
  return e;
}

ConstraintExpr ConstraintExpr::all_of(std::vector<ConstraintExpr> children) {
  if (children.size() < 2) throw StructuralError("a conjunction needs at least two operands");
  ConstraintExpr e;
  e.op_ = Op::And;
  e.children_ = std::move(children);
  return e;
}

ConstraintExpr ConstraintExpr::any_of(std::vector<ConstraintExpr> children) {
  if (children.size() < 2) throw StructuralError("a disjunction needs at least two operands");
  ConstraintExpr e;
  e.op_ = Op::Or;
  e.children_ = std::move(children);
  return e;
}

ConstraintExpr ConstraintExpr::negate(ConstraintExpr child) {
  ConstraintExpr e;
  e.op_ = Op::Not;
  e.children_.push_back(std::move(child));
  return e;
}

std::vector<AtomKind> ConstraintExpr::atoms() const {
  std::vector<AtomKind> out;
  auto visit = [&out](const ConstraintExpr& node, auto& self) -> void {
    if (node.op() == Op::Atom) {
      if (std::find(out.begin(), out.end(), node.kind()) == out.end()) out.push_back(node.kind());
      return;
    }
    for (const auto& c : node.children()) self(c, self);
  };
  visit(*this, visit);
  return out;
}

ConstraintExpr basic_constraints() {
  std::vector<ConstraintExpr> atoms;
  for (AtomKind k : {AtomKind::K1, AtomKind::K2, AtomKind::K3, AtomKind::K4, AtomKind::K5,
                     AtomKind::K6}) {
    atoms.push_back(ConstraintExpr::atom(k));
  }
  return ConstraintExpr::all_of(std::move(atoms));
}

RestCounter rest_counter(const AttendanceTensor& tensor, const HeadcountVector& hc,
                         const ProblemInstance& inst) {
  return summarize(tensor, hc, inst).rest_days;
}

bool eval_atom(const AtomicConstraint& c, const AttendanceSummary& s,
               const ProblemInstance& inst) {
  const std::size_t jobs = inst.job_count();
  switch (c.kind) {
    case AtomKind::K1:
      return s.foreign_entries == 0;
    case AtomKind::K2:
      for (std::size_t j = 0; j < jobs; ++j) {
        for (std::size_t d = 0; d < static_cast<std::size_t>(s.days); ++d) {
          if (!(s.coverage_at(j, d) > 0)) return false;
        }
      }
      return true;
    case AtomKind::K3:
      for (std::size_t j = 0; j < jobs; ++j) {
        const Bounds& b = inst.work_time_bounds[j];
        if (!(b.lower <= s.job_hours[j] && s.job_hours[j] <= b.upper)) return false;
      }
      return true;
    case AtomKind::K4: {
      const double salary = salary_of(s, inst);
      return inst.salary_bounds.lower <= salary && salary <= inst.salary_bounds.upper;
    }
    case AtomKind::K5:
      return s.headcounts.total() <= inst.max_total_staff;
    case AtomKind::K6:
      return std::all_of(s.rest_days.begin(), s.rest_days.end(),
                         [&](int r) { return 0 <= r && r <= inst.rest_cap; });
    case AtomKind::Y1:
    case AtomKind::O2: {
      const Withdrawal w = withdrawal_for(c.kind, inst);
      if (w.staff > available_staff(s.headcounts, *w.jobs)) return false;
      const HeadcountVector after = withdraw_staff(s.headcounts, w.staff, *w.jobs);
      for (std::size_t j : affected_jobs(*w.jobs, jobs)) {
        if (after[j] < inst.jobs[j].headcount_min) return false;
        const double hours = after[j] * daily_work_hours(inst.jobs[j]) * s.days;
        if (hours < inst.work_time_bounds[j].lower) return false;
      }
      return true;
    }
    case AtomKind::Y2:
      for (std::size_t j = 0; j < jobs; ++j) {
        const int n = s.headcounts[j];
        if (n < inst.jobs[j].headcount_min || n > inst.jobs[j].headcount_max) return false;
      }
      return true;
    case AtomKind::O1:
      // Multi-shift: every employee works at least one slot each day.
      // Single-shift: attendance is all-or-nothing per day.
      if (inst.multi_shift) return total_rest_days(s) == 0;
      return s.split_days == 0;
  }
  return false;
}

double violation_atom(const AtomicConstraint& c, const AttendanceSummary& s,
                      const ProblemInstance& inst) {
  const std::size_t jobs = inst.job_count();
  switch (c.kind) {
    case AtomKind::K1:
      return s.foreign_entries;
    case AtomKind::K2: {
      int vacancies = 0;
      for (int n : s.coverage) vacancies += n == 0 ? 1 : 0;
      return vacancies;
    }
    case AtomKind::K3: {
      double v = 0.0;
      for (std::size_t j = 0; j < jobs; ++j) v += inst.work_time_bounds[j].distance(s.job_hours[j]);
      return v;
    }
    case AtomKind::K4:
      return inst.salary_bounds.distance(salary_of(s, inst));
    case AtomKind::K5:
      return std::max(0, s.headcounts.total() - inst.max_total_staff);
    case AtomKind::K6: {
      int excess = 0;
      for (int r : s.rest_days) excess += std::max(0, r - inst.rest_cap);
      return excess;
    }
    case AtomKind::Y1:
    case AtomKind::O2:
      return withdrawal_residual(c.kind, s, inst).shortfall;
    case AtomKind::Y2: {
      double v = 0.0;
      for (std::size_t j = 0; j < jobs; ++j) {
        const Bounds b{static_cast<double>(inst.jobs[j].headcount_min),
                       static_cast<double>(inst.jobs[j].headcount_max)};
        v += b.distance(s.headcounts[j]);
      }
      return v;
    }
    case AtomKind::O1:
      return inst.multi_shift ? total_rest_days(s) : s.split_days;
  }
  return 0.0;
}

bool eval_atom(const AtomicConstraint& c, const AttendanceTensor& tensor,
               const HeadcountVector& hc, const ProblemInstance& inst) {
  return eval_atom(c, summarize(tensor, hc, inst), inst);
}

double violation_atom(const AtomicConstraint& c, const AttendanceTensor& tensor,
                      const HeadcountVector& hc, const ProblemInstance& inst) {
  return violation_atom(c, summarize(tensor, hc, inst), inst);
}

bool eval_expr(const ConstraintExpr& e, const AttendanceSummary& s,
               const ProblemInstance& inst) {
  switch (e.op()) {
    case ConstraintExpr::Op::Atom:
      return eval_atom({e.kind()}, s, inst);
    case ConstraintExpr::Op::And: {
      // Every operand is evaluated so configuration errors surface regardless
      // of operand order.
      bool all = true;
      for (const auto& c : e.children()) all = eval_expr(c, s, inst) && all;
      return all;
    }
    case ConstraintExpr::Op::Or: {
      bool any = false;
      for (const auto& c : e.children()) any = eval_expr(c, s, inst) || any;
      return any;
    }
    case ConstraintExpr::Op::Not:
      return !eval_expr(e.children().front(), s, inst);
  }
  return false;
}

double violation_expr(const ConstraintExpr& e, const AttendanceSummary& s,
                      const ProblemInstance& inst) {
  switch (e.op()) {
    case ConstraintExpr::Op::Atom:
      return violation_atom({e.kind()}, s, inst);
    case ConstraintExpr::Op::And: {
      double sum = 0.0;
      for (const auto& c : e.children()) sum += violation_expr(c, s, inst);
      return sum;
    }
    case ConstraintExpr::Op::Or: {
      double best = kInf;
      for (const auto& c : e.children()) best = std::min(best, violation_expr(c, s, inst));
      return best;
    }
    case ConstraintExpr::Op::Not:
      return eval_expr(e.children().front(), s, inst) ? 1.0 : 0.0;
  }
  return 0.0;
}

bool eval_expr(const ConstraintExpr& e, const AttendanceTensor& tensor,
               const HeadcountVector& hc, const ProblemInstance& inst) {
  return eval_expr(e, summarize(tensor, hc, inst), inst);
}

double violation_expr(const ConstraintExpr& e, const AttendanceTensor& tensor,
                      const HeadcountVector& hc, const ProblemInstance& inst) {
  return violation_expr(e, summarize(tensor, hc, inst), inst);
}

double atom_slack(const AtomicConstraint& c, const AttendanceSummary& s,
                  const ProblemInstance& inst) {
  const std::size_t jobs = inst.job_count();
  double slack = kInf;
  switch (c.kind) {
    case AtomKind::K1:
    case AtomKind::O1:
      return eval_atom(c, s, inst) ? kInf : -violation_atom(c, s, inst);
    case AtomKind::K2:
      for (int n : s.coverage) slack = std::min(slack, static_cast<double>(n - 1));
      return slack;
    case AtomKind::K3:
      for (std::size_t j = 0; j < jobs; ++j) {
        const Bounds& b = inst.work_time_bounds[j];
        slack = std::min({slack, s.job_hours[j] - b.lower, b.upper - s.job_hours[j]});
      }
      return slack;
    case AtomKind::K4: {
      const double salary = salary_of(s, inst);
      return std::min(salary - inst.salary_bounds.lower, inst.salary_bounds.upper - salary);
    }
    case AtomKind::K5:
      return inst.max_total_staff - s.headcounts.total();
    case AtomKind::K6:
      for (int r : s.rest_days) slack = std::min(slack, static_cast<double>(inst.rest_cap - r));
      return slack;
    case AtomKind::Y1:
    case AtomKind::O2:
      return withdrawal_residual(c.kind, s, inst).slack;
    case AtomKind::Y2:
      for (std::size_t j = 0; j < jobs; ++j) {
        const int n = s.headcounts[j];
        slack = std::min({slack, static_cast<double>(n - inst.jobs[j].headcount_min),
                          static_cast<double>(inst.jobs[j].headcount_max - n)});
      }
      return slack;
  }
  return slack;
}

void require_inequality_form(const ConstraintExpr& e, const ProblemInstance& inst) {
  switch (e.op()) {
    case ConstraintExpr::Op::Not:
      throw ConfigurationError(
          "the internal penalty method needs inequality constraints; negation is not supported");
    case ConstraintExpr::Op::And:
    case ConstraintExpr::Op::Or:
      for (const auto& c : e.children()) require_inequality_form(c, inst);
      return;
    case ConstraintExpr::Op::Atom:
      break;
  }
  auto equality = [](std::string_view atom, const std::string& detail) {
    return ConfigurationError("the internal penalty method cannot handle equality constraint " +
                              std::string(atom) + " (" + detail + ")");
  };
  switch (e.kind()) {
    case AtomKind::K3:
      for (std::size_t j = 0; j < inst.job_count(); ++j) {
        if (inst.work_time_bounds[j].lower == inst.work_time_bounds[j].upper) {
          throw equality("k3", "job " + inst.jobs[j].code + " has equal time bounds");
        }
      }
      break;
    case AtomKind::K4:
      if (inst.salary_bounds.lower == inst.salary_bounds.upper) {
        throw equality("k4", "equal salary bounds");
      }
      break;
    case AtomKind::Y2:
      for (const Job& job : inst.jobs) {
        if (job.headcount_min == job.headcount_max) {
          throw equality("y2", "job " + job.code + " has a fixed headcount");
        }
      }
      break;
    default:
      break;
  }
}

double barrier_expr(const ConstraintExpr& e, const AttendanceSummary& s,
                    const ProblemInstance& inst) {
  switch (e.op()) {
    case ConstraintExpr::Op::Atom: {
      const double slack = atom_slack({e.kind()}, s, inst);
      if (slack < 0.0 || !eval_atom({e.kind()}, s, inst)) return kInf;
      return std::isinf(slack) ? 0.0 : 1.0 / (1.0 + slack);
    }
    case ConstraintExpr::Op::And: {
      double sum = 0.0;
      for (const auto& c : e.children()) sum += barrier_expr(c, s, inst);
      return sum;
    }
    case ConstraintExpr::Op::Or: {
      double best = kInf;
      for (const auto& c : e.children()) best = std::min(best, barrier_expr(c, s, inst));
      return best;
    }
    case ConstraintExpr::Op::Not:
      break;
  }
  throw ConfigurationError(
      "the internal penalty method needs inequality constraints; negation is not supported");
}

void check_resolvable(const ConstraintExpr& e, const ProblemInstance& inst) {
  for (AtomKind k : e.atoms()) {
    if (k == AtomKind::Y1 || k == AtomKind::O2) (void)withdrawal_for(k, inst);
    if (k == AtomKind::K3 && inst.work_time_bounds.size() != inst.job_count()) {
      throw ConfigurationError("constraint k3 needs work time bounds for every job");
    }
  }
}

HeadcountVector withdraw_staff(const HeadcountVector& hc, int alpha,
                               const std::vector<std::size_t>& jobs) {
  const auto pool = affected_jobs(jobs, hc.size());
  for (std::size_t j : pool) {
    if (j >= hc.size()) throw StructuralError("withdrawal names unknown job " + std::to_string(j));
  }
  if (alpha > available_staff(hc, jobs)) {
    throw InfeasibilityError("cannot withdraw " + std::to_string(alpha) + " staff from " +
                             std::to_string(available_staff(hc, jobs)) + " available");
  }
  HeadcountVector out = hc;
  for (int k = 0; k < alpha; ++k) {
    std::size_t pick = pool.front();
    for (std::size_t j : pool) {
      if (out.counts[j] > out.counts[pick] || (out.counts[j] == out.counts[pick] && j < pick)) {
        pick = j;
      }
    }
    --out.counts[pick];
  }
  return out;
}

EmergencyOutcome apply_emergency(const HeadcountVector& hc, double total_time, double cost,
                                 const EmergencySpec& spec) {
  EmergencyOutcome out{hc, total_time, cost};
  if (spec.alpha == 0) return out;  // nobody is drawn, nothing happens
  out.headcounts = withdraw_staff(hc, spec.alpha, spec.jobs);
  out.total_time = total_time - spec.time_cost;
  out.cost = cost - spec.bonus + spec.punishment;
  return out;
}

}  // namespace msched
