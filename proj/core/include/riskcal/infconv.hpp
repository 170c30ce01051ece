#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "riskcal/ext_real.hpp"
#include "riskcal/finite_space.hpp"
#include "riskcal/risk_functional.hpp"

namespace riskcal {

// A split of one random variable into components on a common space.
struct Allocation {
  std::vector<Rv> components;
};

// Pointwise sum of the components. Throws on an empty allocation or on
// components living on different spaces.
Rv allocation_total(const Allocation& a);

// True when the components add up to x within tol at every outcome.
bool sums_to(const Allocation& a, const Rv& x, double tol = 1e-9);

// True when every pair of components moves in the same direction across every
// pair of outcomes: (c_i(w) - c_i(w'))(c_j(w) - c_j(w')) >= -tol.
bool is_comonotone(const Allocation& a, double tol = 1e-9);

struct InfConvConfig {
  // Direct search: points per outcome. The default grid spans
  // [min(0, x_i) - pad, max(0, x_i) + pad] with pad =
  // pad_fraction * (value range of x) + pad_floor, built as a uniform grid on
  // grid_points - 2 points plus the anchor values 0 and x_i.
  int grid_points = 21;
  double pad_fraction = 0.25;
  double pad_floor = 0.05;

  // When non-empty, used verbatim as the per-outcome grids for the direct
  // search (one grid per outcome, each non-empty).
  std::vector<std::vector<double>> explicit_grids;

  // Divergence probe: the search is re-run with the grid half-widths doubled
  // and quadrupled; if each widening lowers the optimum by more than
  // slope_threshold times the added half-width, the infimum is declared -inf.
  bool detect_divergence = true;
  double slope_threshold = 0.1;

  // Comonotone splitter: assignment fractions {0, 1/k, ..., 1} with
  // k = fraction_steps per sorted increment of x.
  int fraction_steps = 20;

  // Comonotone preconditions: each measure is screened for dominance
  // consistency and the cash bound before the restricted search is trusted;
  // failures mark the result as heuristic in its notes.
  bool check_preconditions = true;
  int precondition_trials = 100;
  unsigned long long seed = 20240817ULL;

  void validate(std::size_t n_outcomes) const;
};

struct InfConvResult {
  ExtReal value{0.0};
  std::optional<Allocation> allocation;
  bool diverged = false;
  // Bound on the gap to the exact optimum over the searched region: the
  // largest grid spacing (direct search) or (range + |lowest value|) / k
  // (comonotone splitter).
  double grid_tolerance = 0.0;
  std::vector<std::string> notes;
};

// Minimizes rho_1(X_1) + ... + rho_n(X_n) over all splits X_1 + ... + X_n = x
// by enumerating X_1 over a per-outcome value grid and recursing on the
// remainder (exact for n = 1). Deterministic: ties break toward the
// lexicographically first grid combination.
InfConvResult infconv_bruteforce(const std::vector<RiskFunctional>& rhos, const Rv& x,
                                 const InfConvConfig& cfg = {});

// Same objective restricted to comonotone splits: component 1 is built as an
// increasing function of x by assigning a fraction of each sorted increment
// (and of the base value) to it, and the remainder is split recursively. The
// returned allocation always passes is_comonotone.
InfConvResult infconv_comonotone(const std::vector<RiskFunctional>& rhos, const Rv& x,
                                 const InfConvConfig& cfg = {});

}  // namespace riskcal
