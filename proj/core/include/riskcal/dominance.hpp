#pragma once

#include <utility>

#include "riskcal/distribution.hpp"
#include "riskcal/finite_space.hpp"

namespace riskcal {

// Rearranges (X, Y) on a common refined space so that both outputs are
// increasing in the outcome index. Marginal laws are preserved exactly: the
// refined space's cumulative grid merges the probability breakpoints of both
// distributions and each output composes its own quantile curve with that grid.
// Requires X and Y on the same space.
std::pair<Rv, Rv> comonotone_rearrangement(const Rv& x, const Rv& y);

// First-order stochastic dominance X >=_1 Y: quantile curves compared at every
// merged probability breakpoint. Distributional; the spaces may differ.
bool fsd_dominates(const Rv& x, const Rv& y, double tol = 1e-9);

enum class SsdMethod {
  stop_loss,  // E[(X-k)+] >= E[(Y-k)+] at every merged support point
  es_curve,   // tail integrals of the quantile curves compared at merged breakpoints
  both,       // run both and require agreement
};

// Second-order (increasing convex / stop-loss) dominance X >=_2 Y.
// Both methods are exact on finite supports: the compared functions are
// piecewise linear between the grid points each method checks.
bool ssd_dominates(const Rv& x, const Rv& y, SsdMethod method = SsdMethod::stop_loss, double tol = 1e-9);

}  // namespace riskcal
