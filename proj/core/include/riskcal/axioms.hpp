#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riskcal/axiom.hpp"
#include "riskcal/finite_space.hpp"
#include "riskcal/risk_functional.hpp"

namespace riskcal {

// One concrete test instance. Which fields matter depends on the axiom:
//   monotonicity                x <= y pointwise
//   cash axioms                 x and shift m >= 0
//   convexity family            x, y, mix weight lambda
//   star family                 x, lambda, constant t
//   normalization family        constant t
//   law/dominance axioms        x, y (related as the axiom demands)
//   sup-norm Lipschitz          x, y
struct TrialInputs {
  std::optional<Rv> x;
  std::optional<Rv> y;
  std::optional<double> lambda;
  std::optional<double> m;
  std::optional<double> t;
};

// Search configuration. Pinned trials are evaluated before the seeded random
// stream, in order, so decisive instances deterministically own the reported
// witness regardless of trial count.
struct CheckConfig {
  std::uint64_t seed = 20240817;
  int trials = 200;
  std::vector<std::size_t> space_sizes = {2, 3, 4, 5, 6};
  double value_lo = -5.0;
  double value_hi = 5.0;
  std::vector<double> lambda_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> m_grid = {0.0, 0.1, 0.5, 1.0, 2.0};
  double tolerance = 1e-9;
  int constants_points = 41;
  SpacePtr fixed_space;             // when set, every sampled variable lives here
  std::vector<TrialInputs> pins;    // evaluated first, in order

  void validate() const;  // throws std::invalid_argument on bad fields
};

// Observed value range of a functional: extremes seen on the constants grid
// and sampled variables, with unbounded-growth flags from probing constants
// grids of doubled and quadrupled span.
struct RangeEstimate {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_unbounded = false;
  bool hi_unbounded = false;
};

// A concrete violation: the inputs plus both sides of the failed inequality
// (or of the failed equality, for the equality-shaped axioms).
struct Witness {
  Axiom axiom = Axiom::monotonicity;
  TrialInputs inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string detail;
};

struct CheckReport {
  Axiom axiom = Axiom::monotonicity;
  std::string functional;
  bool pass = false;
  int trials_run = 0;
  std::optional<Witness> witness;
  std::optional<RangeEstimate> range;  // populated for the normalization family
  std::vector<std::string> notes;
};

// Both sides of the axiom's inequality on one concrete instance.
// `comparable` is false when extended-real arithmetic makes the instance
// indeterminate (opposite infinities); such trials are skipped with a note.
struct SidePair {
  double lhs = 0.0;
  double rhs = 0.0;
  bool comparable = true;
};

// Equality-shaped axioms compare |lhs - rhs| to the tolerance; the rest flag
// lhs > rhs + tolerance.
bool is_equality_axiom(Axiom a) noexcept;

// Evaluates one instance of an axiom; throws std::invalid_argument when the
// instance lacks a field the axiom needs. This is the single evaluator used
// by the checker, by witness replay, and by the reporting layer.
SidePair evaluate_axiom_instance(Axiom a, const RiskFunctional& rho, const TrialInputs& in);

// True when re-evaluating the witness's inputs still violates the axiom
// beyond the tolerance.
bool witness_replays(const Witness& w, const RiskFunctional& rho, double tol);

RangeEstimate estimate_range(const RiskFunctional& rho, const CheckConfig& cfg);

CheckReport check_axiom(Axiom a, const RiskFunctional& rho, const CheckConfig& cfg);

// Pointwise minimum of a family, as a functional.
RiskFunctional pointwise_min(std::vector<RiskFunctional> family, std::string name);

// Premise-then-closure check: every family member must pass each listed axiom
// before the pointwise minimum is tested on the same axioms.
struct ClosureReport {
  std::vector<CheckReport> premise;
  std::vector<CheckReport> closure;  // empty when preconditions fail
  bool preconditions_ok = false;
  bool pass = false;
};

ClosureReport check_min_closure(const std::vector<RiskFunctional>& family,
                                const std::vector<Axiom>& axioms, const CheckConfig& cfg);

}  // namespace riskcal
