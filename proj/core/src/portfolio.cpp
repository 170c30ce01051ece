#include "riskcal/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "riskcal/measures.hpp"
#include "riskcal/parallel.hpp"

namespace riskcal {

ScenarioMatrix::ScenarioMatrix(SpacePtr space, std::vector<std::vector<double>> losses)
    : space_(std::move(space)), losses_(std::move(losses)) {
  if (!space_) throw std::invalid_argument("ScenarioMatrix: null space");
  if (losses_.size() != space_->size())
    throw std::invalid_argument("ScenarioMatrix: one loss row per outcome required");
  if (losses_.empty() || losses_.front().empty())
    throw std::invalid_argument("ScenarioMatrix: at least one asset required");
  const std::size_t a = losses_.front().size();
  for (const auto& row : losses_) {
    if (row.size() != a) throw std::invalid_argument("ScenarioMatrix: ragged loss rows");
    for (double v : row)
      if (!std::isfinite(v)) throw std::invalid_argument("ScenarioMatrix: losses must be finite");
  }
}

Rv ScenarioMatrix::portfolio_loss(const std::vector<double>& weights) const {
  if (weights.size() != assets())
    throw std::invalid_argument("ScenarioMatrix: weight count does not match asset count");
  std::vector<double> vals(outcomes(), 0.0);
  for (std::size_t i = 0; i < outcomes(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) s += weights[j] * losses_[i][j];
    vals[i] = s;
  }
  return Rv(space_, std::move(vals));
}

Weights::Weights(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw std::invalid_argument("Weights: empty weight vector");
  double sum = 0.0;
  for (double v : w_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Weights: weights must be finite");
    if (v < -1e-12) throw std::invalid_argument("Weights: weights must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("Weights: weights must sum to one");
}

bool lambda_feasible(const LambdaFn& lf, double z, const ScenarioMatrix& losses, const Weights& w,
                     FeasibilityMode mode) {
  if (!std::isfinite(z)) throw std::invalid_argument("lambda_feasible: level must be finite");
  if (w.size() != losses.assets())
    throw std::invalid_argument("lambda_feasible: weight count does not match asset count");
  const Rv lw = losses.portfolio_loss(w.values());
  if (mode == FeasibilityMode::primal) return lambda_var_value(lw, lf) <= z;
  return var_value(lw, lambda_constraint_level(lf, z)) <= ExtReal(z);
}

namespace {

struct GridBest {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> weights;
  std::size_t scanned = 0;
  std::size_t feasible = 0;
};

// Enumerates compositions of `total` into `slots` parts in lexicographic
// order, appending each part to `prefix` and reporting full weight vectors.
template <typename Fn>
void for_each_composition(int total, std::size_t slots, std::vector<int>& prefix, Fn&& fn) {
  if (slots == 1) {
    prefix.push_back(total);
    fn(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    prefix.push_back(k);
    for_each_composition(total - k, slots - 1, prefix, fn);
    prefix.pop_back();
  }
}

}  // namespace

PortfolioResult optimize_portfolio(const ScenarioMatrix& losses, const LambdaFn& lf, double z,
                                   PortfolioObjective objective, int resolution) {
  if (objective != PortfolioObjective::min_expected_loss)
    throw std::invalid_argument("optimize_portfolio: unknown objective");
  if (resolution < 2) throw std::invalid_argument("optimize_portfolio: resolution must be at least 2");
  if (!std::isfinite(z)) throw std::invalid_argument("optimize_portfolio: level must be finite");

  const std::size_t assets = losses.assets();
  const double level = lambda_constraint_level(lf, z);

  // Parallel over the first asset's integer weight; each task walks its slice
  // of the simplex grid in lexicographic order so the ordered reduction keeps
  // the lexicographically first minimizer.
  const auto task = [&](std::size_t first) -> GridBest {
    GridBest best;
    std::vector<int> prefix{static_cast<int>(first)};
    const auto visit = [&](const std::vector<int>& counts) {
      ++best.scanned;
      std::vector<double> w(assets);
      for (std::size_t j = 0; j < assets; ++j)
        w[j] = static_cast<double>(counts[j]) / static_cast<double>(resolution);
      const Rv lw = losses.portfolio_loss(w);
      if (!(var_value(lw, level) <= ExtReal(z))) return;
      ++best.feasible;
      const double obj = lw.mean();
      if (obj < best.value) {
        best.value = obj;
        best.weights = w;
      }
    };
    if (assets == 1) {
      if (first == static_cast<std::size_t>(resolution)) visit(prefix);
    } else {
      for_each_composition(resolution - static_cast<int>(first), assets - 1, prefix, visit);
    }
    return best;
  };

  const auto partials = parallel_map<GridBest>(static_cast<std::size_t>(resolution) + 1, task);
  PortfolioResult r;
  GridBest best;
  for (const auto& p : partials) {
    r.points_total += p.scanned;
    r.points_feasible += p.feasible;
    if (p.value < best.value) best = p;
  }
  if (!best.weights.empty()) {
    r.feasible = true;
    r.weights = Weights(best.weights);
    r.expected_loss = best.value;
  }
  return r;
}

}  // namespace riskcal
