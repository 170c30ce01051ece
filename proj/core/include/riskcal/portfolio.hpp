#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "riskcal/finite_space.hpp"
#include "riskcal/lambda_fn.hpp"

namespace riskcal {

// Loss scenarios: one row per outcome, one column per asset, in loss units per
// unit of weight. Rows are tied to the outcome space they are indexed by.
class ScenarioMatrix {
 public:
  ScenarioMatrix(SpacePtr space, std::vector<std::vector<double>> losses);

  std::size_t outcomes() const noexcept { return losses_.size(); }
  std::size_t assets() const noexcept { return losses_.empty() ? 0 : losses_.front().size(); }
  const SpacePtr& space() const noexcept { return space_; }
  double loss(std::size_t outcome, std::size_t asset) const { return losses_.at(outcome).at(asset); }

  // Portfolio loss Lw as a random variable on the scenario space.
  Rv portfolio_loss(const std::vector<double>& weights) const;

 private:
  SpacePtr space_;
  std::vector<std::vector<double>> losses_;
};

// A point on the simplex: nonnegative weights summing to one within 1e-12.
class Weights {
 public:
  explicit Weights(std::vector<double> w);
  const std::vector<double>& values() const noexcept { return w_; }
  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_.at(i); }

 private:
  std::vector<double> w_;
};

enum class FeasibilityMode {
  primal,   // adaptive-level quantile of the portfolio loss <= z
  reduced,  // plain quantile at the right-limit level of the step <= z
};

// Whether the portfolio loss Lw satisfies the adaptive-level quantile
// constraint at level z, evaluated directly or through the equivalent plain
// quantile constraint. The two modes agree on every input.
bool lambda_feasible(const LambdaFn& lf, double z, const ScenarioMatrix& losses, const Weights& w,
                     FeasibilityMode mode);

enum class PortfolioObjective { min_expected_loss };

struct PortfolioResult {
  bool feasible = false;
  std::optional<Weights> weights;        // best feasible grid point, when any
  std::optional<double> expected_loss;   // objective at that point
  std::size_t points_total = 0;          // simplex grid points scanned
  std::size_t points_feasible = 0;
};

// Scans the simplex grid {k / resolution : k nonnegative integers summing to
// resolution}, keeps the points passing the reduced feasibility test, and
// returns the one minimizing the expected portfolio loss. Ties break toward
// the lexicographically first weight vector. resolution must be at least 2.
PortfolioResult optimize_portfolio(const ScenarioMatrix& losses, const LambdaFn& lf, double z,
                                   PortfolioObjective objective = PortfolioObjective::min_expected_loss,
                                   int resolution = 20);

}  // namespace riskcal
