#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "msched/constraints.hpp"
#include "msched/domain.hpp"
#include "msched/objectives.hpp"
#include "msched/summary.hpp"

namespace msched {

using Rng = std::mt19937_64;

enum class Encoding : std::uint8_t { Binary, RealInteger };  // BG / RI
enum class PenaltyMethod : std::uint8_t { External, Internal };
enum class SelectionMethod : std::uint8_t { Tournament, RowProportional };

std::string to_string(Encoding e);

struct PenaltyConfig {
  PenaltyMethod method = PenaltyMethod::External;
  double coefficient = 1e4;
  double barrier_coefficient = 1.0;
};

struct EAConfig {
  int population_size = 100;
  int generations = 50;
  double crossover_rate = 0.9;
  double mutation_rate = 0.1;  // per gene (bit for BG, variable for RI)
  SelectionMethod selection = SelectionMethod::Tournament;
  int tournament_size = 2;
  PenaltyConfig penalty;
  Encoding encoding = Encoding::RealInteger;
  std::uint64_t seed = 1;
};

// Throws ConfigurationError for out-of-range settings.
void validate(const EAConfig& cfg);

struct Genome {
  Encoding encoding = Encoding::RealInteger;
  std::vector<std::uint8_t> bits;  // BG segments, most significant bit first
  std::vector<int> values;         // RI variables

  bool operator==(const Genome&) const = default;
};

struct VariableBounds {
  int lower = 0;
  int upper = 0;
  bool operator==(const VariableBounds&) const = default;
};

/// Integer decision variables with box bounds and their genome layout.
/// BG stores each variable as an offset from its lower bound in
/// ceil(log2(range + 1)) bits; decoding clamps offsets past the range.
class GenomeSpace {
 public:
  GenomeSpace(Encoding encoding, std::vector<VariableBounds> bounds);

  Encoding encoding() const { return encoding_; }
  const std::vector<VariableBounds>& bounds() const { return bounds_; }
  std::size_t variables() const { return bounds_.size(); }
  std::size_t segment_width(std::size_t var) const { return widths_[var]; }
  std::size_t gene_count() const;

  Genome random(Rng& rng) const;
  Genome encode(const std::vector<int>& values, bool* clamped = nullptr) const;
  std::vector<int> decode(const Genome& g) const;

  std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, Rng& rng) const;
  void mutate(Genome& g, double rate, Rng& rng) const;

 private:
  Encoding encoding_;
  std::vector<VariableBounds> bounds_;
  std::vector<std::size_t> widths_;
};

GenomeSpace headcount_space(const ProblemInstance& inst, Encoding encoding);

struct EncodedHeadcounts {
  Genome genome;
  bool clamped = false;
};

EncodedHeadcounts encode(const HeadcountVector& hc, const ProblemInstance& inst, Encoding mode);
HeadcountVector decode(const Genome& g, const ProblemInstance& inst);

struct Evaluation {
  double fitness = 0.0;    // penalized, direction-normalized; lower is better
  double objective = 0.0;  // direction-normalized objective without penalty
  double raw_objective = 0.0;
  double violation = 0.0;
  bool feasible = false;
};

Evaluation evaluate_summary(const AttendanceSummary& s, const Objective& objective,
                            const ConstraintExpr& expr, const ProblemInstance& inst,
                            const PenaltyConfig& penalty);

Evaluation evaluate_headcounts(const HeadcountVector& hc, const ObjectiveBundle& bundle,
                               const ConstraintExpr& expr, const ProblemInstance& inst,
                               const PenaltyConfig& penalty);

double fitness(const Genome& g, const ObjectiveBundle& bundle, const ConstraintExpr& expr,
               const ProblemInstance& inst, const EAConfig& cfg);

struct RunTrace {
  struct Row {
    int generation = 0;
    double best = 0.0;
    double mean = 0.0;
    std::size_t evaluations = 0;
    double millis = 0.0;
  };
  std::vector<Row> rows;

  // generation,best,mean,evals[,millis]
  std::string to_csv(bool include_timing = true) const;
};

struct EAResult {
  HeadcountVector best;
  Genome genome;
  Evaluation evaluation;
  RunTrace trace;
  int generation_of_best = 0;  // generation in which `best` was first evaluated
  std::size_t evaluations = 0;
};

/// Single-objective improved EA over headcount vectors. Throws
/// InfeasibilityError (carrying the least-violating candidate) when no
/// feasible individual was ever evaluated.
EAResult run_ea(const ProblemInstance& inst, const ObjectiveBundle& bundle,
                const ConstraintExpr& expr, const EAConfig& cfg);

struct AssignmentResult {
  AttendanceTensor tensor;
  Evaluation evaluation;
  RunTrace trace;
  std::size_t evaluations = 0;
};

// Bits per employee: one per day (single-shift) or one per slot (multi-shift).
std::size_t assignment_bits(const HeadcountVector& hc, const ProblemInstance& inst);
AttendanceTensor assignment_tensor(const std::vector<int>& bits, const HeadcountVector& hc,
                                   const ProblemInstance& inst);

// Operator rates suited to long attendance bit strings.
EAConfig assignment_defaults(std::size_t bits, std::uint64_t seed);

/// Second stage: chooses attendance bits for a fixed staffing, optimizing the
/// bundle's first objective under `expr` with a trailing bit-flip descent.
AssignmentResult solve_assignment(const HeadcountVector& hc, const ProblemInstance& inst,
                                  const ObjectiveBundle& bundle, const ConstraintExpr& expr,
                                  const EAConfig& cfg);

}  // namespace msched
