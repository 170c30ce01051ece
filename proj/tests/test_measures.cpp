#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "riskcal/measures.hpp"

using namespace riskcal;

namespace {

Rv uniform_rv(std::vector<double> values) {
  auto sp = FiniteSpace::uniform(values.size());
  return Rv(sp, std::move(values));
}

constexpr auto kModes = {LambdaVarMode::primal, LambdaVarMode::inf_envelope, LambdaVarMode::sup_envelope};

}  // namespace

TEST_CASE("level function: step evaluation and validation") {
  CHECK_THROWS_AS(LambdaFn({0.0}, {0.25, 0.75}), std::invalid_argument);  // increasing values
  CHECK_THROWS_AS(LambdaFn({0.0}, {0.0, 0.0}), std::invalid_argument);    // identically zero
  CHECK_THROWS_AS(LambdaFn({1.0, 0.0}, {0.9, 0.5, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(LambdaFn({0.0}, {1.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(LambdaFn({}, {0.5, 0.2}), std::invalid_argument);  // size mismatch

  const LambdaFn two = LambdaFn::two_level(0.25, 0.75, 0.0);
  CHECK(two.at(-1.0) == doctest::Approx(0.75));
  CHECK(two.at(0.0) == doctest::Approx(0.75));  // breakpoint belongs to the left plateau
  CHECK(two.at(0.5) == doctest::Approx(0.25));
  CHECK(two.right_limit(0.0) == doctest::Approx(0.25));
  CHECK(two.right_limit(-1.0) == doctest::Approx(0.75));
  CHECK(two.plateau_count() == 2);
  CHECK(two.plateau_left(0).is_neg_inf());
  CHECK(two.plateau_right(0).finite_value() == doctest::Approx(0.0));
  CHECK(two.plateau_left(1).finite_value() == doctest::Approx(0.0));
  CHECK(two.plateau_right(1).is_pos_inf());
  CHECK(two.zero_onset().is_pos_inf());
  CHECK_THROWS_AS(LambdaFn::two_level(0.75, 0.25, 0.0), std::invalid_argument);

  const LambdaFn ind({1.0}, {1.0, 0.0});  // 1 on x<=1, 0 after
  CHECK(ind.at(1.0) == doctest::Approx(1.0));
  CHECK(ind.right_limit(1.0) == doctest::Approx(0.0));
  CHECK(ind.zero_onset().finite_value() == doctest::Approx(1.0));

  const LambdaFn cst = LambdaFn::constant(0.4);
  CHECK(cst.at(-100.0) == doctest::Approx(0.4));
  CHECK(cst.at(100.0) == doctest::Approx(0.4));
  CHECK(cst.plateau_count() == 1);
}

TEST_CASE("adaptive-level quantile: two-level oracle instance") {
  const Rv x = uniform_rv({-2, -1, 1, 2});
  const LambdaFn lf = LambdaFn::two_level(0.25, 0.75, 0.0);
  for (auto m : kModes) CHECK(lambda_var_value(x, lf, m) == doctest::Approx(0.0));
  CHECK(two_level_lambda_var_value(x, 0.25, 0.75, 0.0) == doctest::Approx(0.0));
  // The two closed-form terms: q_{0.75}(X)=1 and q_{0.25}(X max 0)=0.
  CHECK(var_value(x, 0.75).finite_value() == doctest::Approx(1.0));
  CHECK(var_value(x.max_with(0.0), 0.25).finite_value() == doctest::Approx(0.0));
}

TEST_CASE("adaptive-level quantile: indicator level caps at the threshold") {
  const LambdaFn ind({1.0}, {1.0, 0.0});
  for (auto m : kModes) {
    CHECK(lambda_var_value(Rv::constant(FiniteSpace::uniform(2), 2.0), ind, m) == doctest::Approx(1.0));
    CHECK(lambda_var_value(Rv::constant(FiniteSpace::uniform(2), 0.5), ind, m) == doctest::Approx(0.5));
    CHECK(lambda_var_value(uniform_rv({0, 3}), ind, m) == doctest::Approx(1.0));
  }
}

TEST_CASE("adaptive-level quantile: constant level reduces to the plain quantile") {
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  std::uniform_int_distribution<int> len(2, 6);
  std::uniform_real_distribution<double> lev(0.05, 0.95);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> vs(static_cast<std::size_t>(len(rng)));
    for (auto& v : vs) v = val(rng);
    const Rv x = uniform_rv(vs);
    const double t = lev(rng);
    const LambdaFn cst = LambdaFn::constant(t);
    const double want = var_value(x, t).finite_value();
    for (auto m : kModes) CHECK(lambda_var_value(x, cst, m) == doctest::Approx(want));
  }
}

TEST_CASE("adaptive-level quantile: all modes agree with the two-level closed form") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  std::uniform_int_distribution<int> len(2, 7);
  std::uniform_real_distribution<double> u01(0.02, 0.98);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> vs(static_cast<std::size_t>(len(rng)));
    for (auto& v : vs) v = val(rng);
    const Rv x = uniform_rv(vs);
    double a = u01(rng), b = u01(rng);
    if (a > b) std::swap(a, b);
    if (b - a < 1e-3) b = std::min(0.99, a + 1e-3 + 0.01);
    const double z = val(rng);
    const double closed = two_level_lambda_var_value(x, a, b, z);
    const LambdaFn lf = LambdaFn::two_level(a, b, z);
    for (auto m : kModes) CHECK(lambda_var_value(x, lf, m) == doctest::Approx(closed));
  }
}

TEST_CASE("adaptive-level quantile: three modes agree on multi-plateau levels") {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  std::uniform_int_distribution<int> len(2, 6);
  std::uniform_int_distribution<int> plat(1, 4);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> vs(static_cast<std::size_t>(len(rng)));
    for (auto& v : vs) v = val(rng);
    const Rv x = uniform_rv(vs);

    const int nb = plat(rng);
    std::vector<double> bps(static_cast<std::size_t>(nb));
    for (auto& b : bps) b = val(rng);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end(), [](double p, double q) { return q - p < 1e-6; }), bps.end());
    std::vector<double> lv(bps.size() + 1);
    for (auto& v : lv) v = u01(rng);
    std::sort(lv.rbegin(), lv.rend());
    if (lv.front() <= 0.0) lv.front() = 0.5;
    const LambdaFn lf(bps, lv);

    const double primal = lambda_var_value(x, lf, LambdaVarMode::primal);
    CHECK(lambda_var_value(x, lf, LambdaVarMode::inf_envelope) == doctest::Approx(primal));
    CHECK(lambda_var_value(x, lf, LambdaVarMode::sup_envelope) == doctest::Approx(primal));
  }
}

TEST_CASE("adaptive-level quantile: vanishing tail caps the value at the zero onset") {
  // Level drops to exactly zero beyond 1: every x > 1 is feasible regardless of X.
  const LambdaFn lf({1.0}, {0.9, 0.0});
  const Rv x = uniform_rv({5, 9});
  for (auto m : kModes) CHECK(lambda_var_value(x, lf, m) == doctest::Approx(1.0));
  // With a level that never vanishes the value follows the quantile instead.
  const LambdaFn pos({1.0}, {0.9, 0.5});
  for (auto m : kModes) CHECK(lambda_var_value(x, pos, m) == doctest::Approx(5.0));
}

TEST_CASE("constraint level reads the step from the right of the threshold") {
  const LambdaFn two = LambdaFn::two_level(0.25, 0.75, 0.0);
  // Away from the jump the two one-sided readings coincide.
  CHECK(lambda_constraint_level(two, -0.5) == doctest::Approx(0.75));
  CHECK(lambda_constraint_level(two, 0.5) == doctest::Approx(0.25));
  // On the jump the right limit governs the reduced feasibility test: the
  // threshold itself already lives on the lower plateau's side.
  CHECK(lambda_constraint_level(two, 0.0) == doctest::Approx(0.25));
  CHECK(two.at(0.0) == doctest::Approx(0.75));  // the step value proper is unchanged
  CHECK(lambda_constraint_level(LambdaFn::constant(0.4), 123.0) == doctest::Approx(0.4));
}

TEST_CASE("transformed-loss premiums split the loss between the two sides") {
  const Rv x = uniform_rv({0, 2, 4});
  const PayoffFn dl = PayoffFn::deductible_limit(1.0, 2.0);
  CHECK(expected_transformed_loss(x, dl, PayoffSide::insurer) == doctest::Approx(1.0));
  CHECK(expected_transformed_loss(x, dl, PayoffSide::policyholder) == doctest::Approx(1.0));

  const Rv pm = uniform_rv({-1, 1});
  CHECK(expected_transformed_loss(pm, PayoffFn::positive_part(), PayoffSide::insurer) ==
        doctest::Approx(0.5));

  const PayoffFn zero = PayoffFn::piecewise_linear({0.0, 5.0}, {0.0, 0.0});
  CHECK(expected_transformed_loss(uniform_rv({1, 2}), zero, PayoffSide::insurer) == doctest::Approx(0.0));

  // Alternative weights shift the premium.
  const ProbabilityVector q({0.0, 0.0, 1.0});
  CHECK(expected_transformed_loss(x, dl, PayoffSide::insurer, q) == doctest::Approx(2.0));
  CHECK_THROWS_AS(expected_transformed_loss(x, dl, PayoffSide::insurer, ProbabilityVector({1.0})),
                  std::invalid_argument);

  // Shape violations surface through support validation.
  const PayoffFn steep = PayoffFn::piecewise_linear({0.0, 1.0}, {0.0, 2.0});
  CHECK_THROWS_AS(expected_transformed_loss(x, steep, PayoffSide::insurer), std::invalid_argument);
}

TEST_CASE("ambiguity-averse certainty equivalent: oracle values") {
  const Rv x = uniform_rv({-3, 1});
  const auto p = ProbabilityVector::from_space(*x.space());

  // Pure pessimism with the physical measure reduces to the entropic formula.
  const double ce = alpha_meu_ce(x, 1.0, 1.0, {1.0}, {p}, {p});
  CHECK(ce == doctest::Approx(std::log((std::exp(-3.0) + std::exp(1.0)) / 2.0)));

  // A zero scaling factor adds the value zero to the sup.
  const double ce01 = alpha_meu_ce(x, 1.0, 1.0, {0.0, 1.0}, {p}, {p});
  CHECK(ce01 == doctest::Approx(std::max(0.0, ce)));

  // Certainty equivalent of a nonnegative constant is the constant.
  const Rv c = Rv::constant(x.space(), 2.0);
  CHECK(alpha_meu_ce(c, 0.4, 0.7, {0.3, 1.0}, {p}, {p}) == doctest::Approx(2.0));

  // Pessimistic vs optimistic weighting across a two-measure ambiguity set.
  const auto d0 = ProbabilityVector::dirac(0, 2), d1 = ProbabilityVector::dirac(1, 2);
  const double worst = alpha_meu_ce(x, 1.0, 1.0, {1.0}, {d0, d1}, {d0, d1});
  const double best = alpha_meu_ce(x, 0.0, 1.0, {1.0}, {d0, d1}, {d0, d1});
  CHECK(worst == doctest::Approx(-3.0));
  CHECK(best == doctest::Approx(1.0));

  CHECK_THROWS_AS(alpha_meu_ce(x, 1.0, 0.0, {1.0}, {p}, {p}), std::invalid_argument);
  CHECK_THROWS_AS(alpha_meu_ce(x, 1.1, 1.0, {1.0}, {p}, {p}), std::invalid_argument);
  CHECK_THROWS_AS(alpha_meu_ce(x, 1.0, 1.0, {}, {p}, {p}), std::invalid_argument);
  CHECK_THROWS_AS(alpha_meu_ce(x, 1.0, 1.0, {2.0}, {p}, {p}), std::invalid_argument);
  CHECK_THROWS_AS(alpha_meu_ce(x, 0.5, 1.0, {1.0}, {}, {p}), std::invalid_argument);
  CHECK_THROWS_AS(alpha_meu_ce(x, 0.5, 1.0, {1.0}, {p}, {}), std::invalid_argument);
  CHECK_THROWS_AS(alpha_meu_ce(x, 0.5, 1.0, {1.0}, {ProbabilityVector({1.0})}, {p}),
                  std::invalid_argument);
}

TEST_CASE("Choquet integral against the distorted tail") {
  const Rv x = uniform_rv({0, 1});
  CHECK(choquet_integral(x, DistortionFn::power(2.0)) == doctest::Approx(0.25));
  CHECK(choquet_integral(x, DistortionFn::identity()) == doctest::Approx(0.5));

  // Identity distortion reproduces the mean for signed values too.
  const Rv y = uniform_rv({-2, 1, 7});
  CHECK(choquet_integral(y, DistortionFn::identity()) == doctest::Approx(2.0));

  // Convex distortion shrinks tail weight: integral below the mean.
  CHECK(choquet_integral(y, DistortionFn::power(2.0)) < 2.0);
  // Concave distortion inflates tail weight.
  CHECK(choquet_integral(y, DistortionFn::dual_power(2.0)) > 2.0);

  const Rv c = Rv::constant(FiniteSpace::uniform(3), -1.5);
  CHECK(choquet_integral(c, DistortionFn::power(3.0)) == doctest::Approx(-1.5));
}

TEST_CASE("rank-dependent certainty equivalent: oracle values") {
  const std::vector<double> one = {1.0};

  // Pure distortion, identity loss transform: 0.25 on a fair coin.
  const Rv coin = uniform_rv({0, 1});
  CHECK(rdeu_ce(coin, UtilityFn::identity(), 1.0, DistortionFn::power(2.0),
                DistortionFn::dual_power(2.0), one) == doctest::Approx(0.25));

  // Identity distortions reduce to the plain certainty equivalent.
  const Rv x = uniform_rv({-3, 1});
  const double plain = rdeu_ce(x, UtilityFn::exponential(1.0), 0.5, DistortionFn::identity(),
                               DistortionFn::identity(), one);
  CHECK(plain == doctest::Approx(std::log((std::exp(-3.0) + std::exp(1.0)) / 2.0)));

  // Constants are fixed points.
  const Rv c = Rv::constant(FiniteSpace::uniform(2), 1.5);
  CHECK(rdeu_ce(c, UtilityFn::power(2.0), 1.0, DistortionFn::power(2.0), DistortionFn::dual_power(2.0),
                one) == doctest::Approx(1.5));

  // Shape preconditions and domain errors.
  CHECK_THROWS_AS(rdeu_ce(coin, UtilityFn::identity(), 1.0, DistortionFn::dual_power(2.0),
                          DistortionFn::dual_power(2.0), one),
                  std::invalid_argument);
  CHECK_THROWS_AS(rdeu_ce(coin, UtilityFn::identity(), 0.0, DistortionFn::power(2.0),
                          DistortionFn::power(2.0), one),
                  std::invalid_argument);
  CHECK_THROWS_AS(rdeu_ce(coin, UtilityFn::identity(), 0.5, DistortionFn::power(2.0),
                          DistortionFn::dual_power(2.0), {1.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(rdeu_ce(coin, UtilityFn::identity(), 0.5, DistortionFn::power(2.0),
                          DistortionFn::dual_power(2.0), {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(rdeu_ce(uniform_rv({-1, 1}), UtilityFn::power(2.0), 1.0, DistortionFn::power(2.0),
                          DistortionFn::dual_power(2.0), one),
                  std::domain_error);
}

TEST_CASE("eligible-asset measure: bisection against closed forms") {
  auto sp = FiniteSpace::uniform(2);
  const AcceptancePredicate neg_part = [](const Rv& y) { return y.ess_sup() <= 0.0; };

  // Numeraire-like asset: the measure is the essential supremum.
  const Rv one = Rv::constant(sp, 1.0);
  const Rv x(sp, {-0.5, 2.25});
  CHECK(eligible_asset_value(x, neg_part, 1.0, one) == doctest::Approx(2.25).epsilon(1e-6));

  // Outcome-dependent asset: worst-case ratio across outcomes.
  const Rv st(sp, {1.0, 2.0});
  CHECK(eligible_asset_value(Rv(sp, {1.0, 1.0}), neg_part, 1.0, st) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(eligible_asset_value(Rv(sp, {3.0, 1.0}), neg_part, 1.0, st) == doctest::Approx(3.0).epsilon(1e-6));

  // Already-acceptable payoffs need no positive shift.
  CHECK(eligible_asset_value(Rv(sp, {-1.0, -2.0}), neg_part, 1.0, one) <= 1e-6);

  // Scale of the initial price enters linearly.
  CHECK(eligible_asset_value(x, neg_part, 2.0, one) == doctest::Approx(4.5).epsilon(1e-6));

  CHECK_THROWS_AS(eligible_asset_value(x, neg_part, 0.0, one), std::invalid_argument);
  CHECK_THROWS_AS(eligible_asset_value(x, neg_part, 1.0, Rv(sp, {1.0, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(eligible_asset_value(x, neg_part, 1.0, Rv(FiniteSpace::uniform(3), {1, 1, 1})),
                  std::invalid_argument);
  CHECK_THROWS_AS(eligible_asset_value(x, AcceptancePredicate{}, 1.0, one), std::invalid_argument);

  // Degenerate predicates are reported as unbounded rather than silently clipped.
  CHECK_THROWS_AS(eligible_asset_value(x, [](const Rv&) { return false; }, 1.0, one), std::runtime_error);
  CHECK_THROWS_AS(eligible_asset_value(x, [](const Rv&) { return true; }, 1.0, one), std::runtime_error);

  // A window-shaped predicate is caught by the monotonicity spot check.
  const AcceptancePredicate window = [](const Rv& y) {
    return y.ess_sup() <= 5.0 && y.ess_inf() >= 3.0;
  };
  CHECK_THROWS_AS(eligible_asset_value(Rv(sp, {4.0, 4.0}), window, 1.0, one), std::invalid_argument);
}

TEST_CASE("catalog factories carry names and property claims") {
  const RiskFunctional v = make_var(0.75);
  CHECK(v.name == "var:0.75");
  CHECK(v(uniform_rv({1, 2, 3, 4})).finite_value() == doctest::Approx(3.0));
  CHECK(v.claims_axiom(Axiom::cash_additivity));
  CHECK_FALSE(v.claims_axiom(Axiom::convexity));

  const RiskFunctional e = make_es(0.5);
  CHECK(e(uniform_rv({0, 1})).finite_value() == doctest::Approx(1.0));
  CHECK(e.claims_axiom(Axiom::convexity));

  CHECK(make_mean()(uniform_rv({1, 3})).finite_value() == doctest::Approx(2.0));
  CHECK(make_entropic(1.0)(uniform_rv({-3, 1})).finite_value() ==
        doctest::Approx(std::log((std::exp(-3.0) + std::exp(1.0)) / 2.0)));
  CHECK(make_min_mean_zero()(uniform_rv({1, 3})).finite_value() == doctest::Approx(0.0));
  CHECK(make_min_mean_zero()(uniform_rv({-4, 2})).finite_value() == doctest::Approx(-1.0));

  const RiskFunctional lv = make_lambda_var(LambdaFn::two_level(0.25, 0.75, 0.0));
  CHECK(lv(uniform_rv({-2, -1, 1, 2})).finite_value() == doctest::Approx(0.0));
  CHECK(lv.claims_axiom(Axiom::cash_subadditivity));
  CHECK_FALSE(lv.claims_axiom(Axiom::cash_additivity));

  const RiskFunctional tl = make_two_level_lambda_var(0.25, 0.75, 0.0);
  CHECK(tl(uniform_rv({-2, -1, 1, 2})).finite_value() == doctest::Approx(0.0));

  const RiskFunctional put = make_put_premium();
  CHECK(put.name == "put_premium");
  CHECK(put(uniform_rv({-1, 1})).finite_value() == doctest::Approx(0.5));
  CHECK(put.claims_axiom(Axiom::convexity));
  CHECK_FALSE(put.claims_axiom(Axiom::cash_additivity));

  CHECK_THROWS_AS(make_var(1.5), std::domain_error);
  CHECK_THROWS_AS(make_es(-0.5), std::domain_error);
  CHECK_THROWS_AS(make_entropic(-1.0), std::invalid_argument);

  RiskFunctional empty;
  CHECK_THROWS_AS(empty(uniform_rv({1, 2})), std::logic_error);
}
