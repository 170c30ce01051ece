#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "riskcal/axioms.hpp"
#include "riskcal/measures.hpp"

using namespace riskcal;

namespace {

CheckConfig quick_cfg(int trials = 60) {
  CheckConfig cfg;
  cfg.trials = trials;
  return cfg;
}

}  // namespace

TEST_CASE("config validation rejects malformed searches") {
  CheckConfig cfg;
  cfg.trials = 0;
  CHECK_THROWS_AS(check_axiom(Axiom::monotonicity, make_var(0.5), cfg), std::invalid_argument);
  cfg = CheckConfig{};
  cfg.value_lo = 1.0;
  cfg.value_hi = 1.0;
  CHECK_THROWS_AS(check_axiom(Axiom::monotonicity, make_var(0.5), cfg), std::invalid_argument);
  cfg = CheckConfig{};
  cfg.lambda_grid = {1.5};
  CHECK_THROWS_AS(check_axiom(Axiom::convexity, make_var(0.5), cfg), std::invalid_argument);
  cfg = CheckConfig{};
  cfg.m_grid = {-0.1};
  CHECK_THROWS_AS(check_axiom(Axiom::cash_subadditivity, make_var(0.5), cfg),
                  std::invalid_argument);
  cfg = CheckConfig{};
  cfg.constants_points = 1;
  CHECK_THROWS_AS(check_axiom(Axiom::normalization, make_var(0.5), cfg), std::invalid_argument);
}

TEST_CASE("instance evaluator demands the fields each axiom needs") {
  const auto rho = make_var(0.5);
  const auto sp = FiniteSpace::uniform(2);
  TrialInputs in;
  CHECK_THROWS_AS(evaluate_axiom_instance(Axiom::monotonicity, rho, in), std::invalid_argument);
  in.x = Rv(sp, {1.0, 2.0});
  CHECK_THROWS_AS(evaluate_axiom_instance(Axiom::monotonicity, rho, in), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_axiom_instance(Axiom::cash_subadditivity, rho, in),
                  std::invalid_argument);
  in.m = -1.0;
  CHECK_THROWS_AS(evaluate_axiom_instance(Axiom::cash_subadditivity, rho, in),
                  std::invalid_argument);
  in.m = 1.0;
  const SidePair s = evaluate_axiom_instance(Axiom::cash_subadditivity, rho, in);
  CHECK(s.comparable);
  CHECK(s.lhs == doctest::Approx(s.rhs));  // value-at-risk shifts cash exactly
  in.lambda = 2.0;
  CHECK_THROWS_AS(evaluate_axiom_instance(Axiom::star_shapedness, rho, in),
                  std::invalid_argument);
}

TEST_CASE("equality-shaped axioms are classified") {
  CHECK(is_equality_axiom(Axiom::cash_additivity));
  CHECK(is_equality_axiom(Axiom::normalization));
  CHECK(is_equality_axiom(Axiom::quasi_normalization));
  CHECK(is_equality_axiom(Axiom::law_invariance));
  CHECK_FALSE(is_equality_axiom(Axiom::cash_subadditivity));
  CHECK_FALSE(is_equality_axiom(Axiom::convexity));
  CHECK_FALSE(is_equality_axiom(Axiom::sup_norm_lipschitz));
}

TEST_CASE("expected shortfall passes its full claimed battery") {
  const auto rho = make_es(0.5);
  const CheckConfig cfg = quick_cfg();
  for (Axiom a : kAllAxioms) {
    if (!rho.claims_axiom(a)) continue;
    const CheckReport rep = check_axiom(a, rho, cfg);
    INFO("axiom: ", std::string(axiom_name(a)));
    CHECK(rep.pass);
    CHECK(rep.trials_run > 0);
  }
}

TEST_CASE("value at risk passes exactly what it claims and fails convexity") {
  const auto rho = make_var(0.75);
  const CheckConfig cfg = quick_cfg();
  for (Axiom a : kAllAxioms) {
    if (!rho.claims_axiom(a)) continue;
    const CheckReport rep = check_axiom(a, rho, cfg);
    INFO("axiom: ", std::string(axiom_name(a)));
    CHECK(rep.pass);
  }
  CHECK_FALSE(rho.claims_axiom(Axiom::convexity));
  CHECK_FALSE(rho.claims_axiom(Axiom::ssd_consistency));
}

TEST_CASE("pinned instance defeats quasi-convexity of low-level value at risk") {
  // At level 1/3 on a four-point uniform space: x = (-2,-1,1,2), y = -x,
  // lambda = 1/2 mixes to zero; rho(0) = 0 while both endpoints sit at -1.
  const auto rho = make_var(1.0 / 3.0);
  const auto sp = FiniteSpace::uniform(4);
  TrialInputs pin;
  pin.x = Rv(sp, {-2.0, -1.0, 1.0, 2.0});
  pin.y = Rv(sp, {2.0, 1.0, -1.0, -2.0});
  pin.lambda = 0.5;

  CheckConfig cfg = quick_cfg();
  cfg.pins = {pin};
  const CheckReport rep = check_axiom(Axiom::quasi_convexity, rho, cfg);
  REQUIRE_FALSE(rep.pass);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.trials_run == 1);  // the pin decides immediately
  CHECK(rep.witness->lhs == doctest::Approx(0.0));
  CHECK(rep.witness->rhs == doctest::Approx(-1.0));
  CHECK(witness_replays(*rep.witness, rho, cfg.tolerance));
  CHECK_FALSE(witness_replays(*rep.witness, make_es(1.0 / 3.0), cfg.tolerance));
}

TEST_CASE("pinned instance defeats star-shapedness of the indicator-threshold functional") {
  // Lambda = 1 on (-inf,1], 0 after: rho caps at 1. With x identically 2 and
  // lambda = 1/2: rho(x/2) = 1 exceeds rho(x)/2 + rho(0)/2 = 1/2 + 0.
  const auto rho = make_lambda_var(LambdaFn({1.0}, {1.0, 0.0}));
  const auto sp = FiniteSpace::uniform(2);
  TrialInputs pin;
  pin.x = Rv::constant(sp, 2.0);
  pin.lambda = 0.5;

  CheckConfig cfg = quick_cfg();
  cfg.pins = {pin};
  const CheckReport rep = check_axiom(Axiom::star_shapedness, rho, cfg);
  REQUIRE_FALSE(rep.pass);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->lhs == doctest::Approx(1.0));
  CHECK(rep.witness->rhs == doctest::Approx(0.5));
  CHECK(witness_replays(*rep.witness, rho, cfg.tolerance));
}

TEST_CASE("two-level threshold functional keeps its quasi battery") {
  const auto rho = make_two_level_lambda_var(0.25, 0.75, 0.0);
  const CheckConfig cfg = quick_cfg();
  for (Axiom a : {Axiom::monotonicity, Axiom::cash_subadditivity, Axiom::quasi_star_shapedness,
                  Axiom::quasi_normalization, Axiom::law_invariance, Axiom::fsd_consistency,
                  Axiom::sup_norm_lipschitz}) {
    const CheckReport rep = check_axiom(a, rho, cfg);
    INFO("axiom: ", std::string(axiom_name(a)));
    CHECK(rep.pass);
  }
}

TEST_CASE("cash additivity fails for the two-level threshold functional") {
  // x uniform on {-2,-1,1,2}: rho(x) = 0 via the cap, but x + 2 clears the cap
  // and evaluates at the low-level quantile: rho(x+2) = 0 while rho(x)+2 = 2.
  const auto rho = make_two_level_lambda_var(0.25, 0.75, 0.0);
  const auto sp = FiniteSpace::uniform(4);
  TrialInputs pin;
  pin.x = Rv(sp, {-2.0, -1.0, 1.0, 2.0});
  pin.m = 2.0;

  CheckConfig cfg = quick_cfg();
  cfg.pins = {pin};
  const CheckReport rep = check_axiom(Axiom::cash_additivity, rho, cfg);
  REQUIRE_FALSE(rep.pass);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->lhs == doctest::Approx(0.0));
  CHECK(rep.witness->rhs == doctest::Approx(2.0));
  // The subadditive direction still holds on the same instance.
  const SidePair s = evaluate_axiom_instance(Axiom::cash_subadditivity, rho, pin);
  CHECK(s.lhs <= s.rhs + 1e-9);
  CHECK(check_axiom(Axiom::cash_subadditivity, rho, cfg).pass);
}

TEST_CASE("pins lacking fields for the axiom are skipped with a note") {
  const auto rho = make_es(0.5);
  TrialInputs star_pin;
  star_pin.x = Rv::constant(FiniteSpace::uniform(2), 1.0);
  star_pin.lambda = 0.5;
  CheckConfig cfg = quick_cfg(20);
  cfg.pins = {star_pin};
  const CheckReport rep = check_axiom(Axiom::cash_subadditivity, rho, cfg);
  CHECK(rep.pass);
  REQUIRE_FALSE(rep.notes.empty());
  CHECK(rep.notes.front().find("pin skipped") == 0);
}

TEST_CASE("range estimation flags open-ended growth") {
  CheckConfig cfg = quick_cfg(40);

  SUBCASE("median grows on both sides") {
    cfg.value_lo = -10.0;
    cfg.value_hi = 10.0;
    const RangeEstimate est = estimate_range(make_var(0.5), cfg);
    CHECK(est.lo == doctest::Approx(-10.0));
    CHECK(est.hi == doctest::Approx(10.0));
    CHECK(est.lo_unbounded);
    CHECK(est.hi_unbounded);
  }

  SUBCASE("expected capped value tops out at the cap") {
    const RiskFunctional rho("capped_mean", [](const Rv& x) {
      double acc = 0.0;
      for (std::size_t i = 0; i < x.space()->size(); ++i) {
        acc += x.space()->probs()[i] * std::min(x.value(i), 1.0);
      }
      return ExtReal(acc);
    });
    const RangeEstimate est = estimate_range(rho, cfg);
    CHECK(est.hi == doctest::Approx(1.0));
    CHECK_FALSE(est.hi_unbounded);
    CHECK(est.lo_unbounded);
  }

  SUBCASE("mean floored at zero has a one-sided range") {
    const RangeEstimate est = estimate_range(make_min_mean_zero(), cfg);
    CHECK(est.hi == doctest::Approx(0.0));
    CHECK_FALSE(est.hi_unbounded);
    CHECK(est.lo_unbounded);
  }
}

TEST_CASE("normalization distinguishes the full and range-restricted forms") {
  // Capped threshold functional: rho(t) = min(t, 1). Plain normalization has
  // counterexamples above the cap, the quasi form does not.
  const auto rho = make_lambda_var(LambdaFn({1.0}, {0.9, 0.0}));
  const CheckConfig cfg = quick_cfg();

  const CheckReport plain = check_axiom(Axiom::normalization, rho, cfg);
  REQUIRE_FALSE(plain.pass);
  REQUIRE(plain.witness.has_value());
  CHECK(plain.witness->inputs.t.value() > 1.0 + 1e-12);

  const CheckReport quasi = check_axiom(Axiom::quasi_normalization, rho, cfg);
  CHECK(quasi.pass);
  REQUIRE(quasi.range.has_value());
  CHECK(quasi.range->hi == doctest::Approx(1.0));
  CHECK_FALSE(quasi.range->hi_unbounded);
  CHECK(quasi.range->lo_unbounded);
}

TEST_CASE("law and dominance checks need uniform fixed spaces") {
  CheckConfig cfg = quick_cfg(10);
  cfg.fixed_space = FiniteSpace::make({0.3, 0.7});
  CHECK_THROWS_AS(check_axiom(Axiom::law_invariance, make_var(0.5), cfg), std::invalid_argument);
  CHECK_THROWS_AS(check_axiom(Axiom::fsd_consistency, make_var(0.5), cfg), std::invalid_argument);
  cfg.fixed_space = FiniteSpace::uniform(3);
  CHECK(check_axiom(Axiom::law_invariance, make_var(0.5), cfg).pass);
}

TEST_CASE("checks are deterministic in the seed") {
  CheckConfig cfg = quick_cfg();
  const auto rho = make_lambda_var(LambdaFn({0.0, 1.5}, {0.8, 0.5, 0.2}));
  const CheckReport a = check_axiom(Axiom::cash_subadditivity, rho, cfg);
  const CheckReport b = check_axiom(Axiom::cash_subadditivity, rho, cfg);
  CHECK(a.pass == b.pass);
  CHECK(a.trials_run == b.trials_run);

  // A non-claimed axiom that fails must fail identically across runs.
  const auto v = make_var(1.0 / 3.0);
  const CheckReport c = check_axiom(Axiom::convexity, v, cfg);
  const CheckReport d = check_axiom(Axiom::convexity, v, cfg);
  REQUIRE(c.witness.has_value());
  REQUIRE(d.witness.has_value());
  CHECK(c.witness->lhs == d.witness->lhs);
  CHECK(c.witness->rhs == d.witness->rhs);
  CHECK(c.witness->detail == d.witness->detail);
  CHECK(c.trials_run == d.trials_run);
  CHECK(witness_replays(*c.witness, v, cfg.tolerance));
}

TEST_CASE("every reported witness replays against its functional") {
  const CheckConfig cfg = quick_cfg();
  const std::vector<RiskFunctional> suspects = {
      make_var(1.0 / 3.0), make_lambda_var(LambdaFn({1.0}, {1.0, 0.0})),
      make_two_level_lambda_var(0.25, 0.75, 0.0)};
  for (const auto& rho : suspects) {
    for (Axiom a : kAllAxioms) {
      const CheckReport rep = check_axiom(a, rho, cfg);
      if (rep.witness) {
        INFO("functional: ", rho.name, ", axiom: ", std::string(axiom_name(a)));
        CHECK(witness_replays(*rep.witness, rho, cfg.tolerance));
      }
    }
  }
}

TEST_CASE("pointwise minimum evaluates and intersects only min-stable claims") {
  const auto combined = pointwise_min({make_var(0.3), make_var(0.6)}, "band");
  CHECK(combined.name == "band");
  const auto sp = FiniteSpace::uniform(4);
  const Rv x(sp, {1.0, 2.0, 3.0, 4.0});
  const double lo = make_var(0.3)(x).finite_value();
  CHECK(combined(x).finite_value() == doctest::Approx(std::min(
      lo, make_var(0.6)(x).finite_value())));
  CHECK(combined.claims_axiom(Axiom::monotonicity));
  CHECK(combined.claims_axiom(Axiom::cash_subadditivity));
  CHECK(combined.claims_axiom(Axiom::quasi_normalization));
  // Quasi-star-shapedness is not certifiable by intersection alone.
  CHECK_FALSE(combined.claims_axiom(Axiom::quasi_star_shapedness));
  CHECK_THROWS_AS(pointwise_min({}, "empty"), std::invalid_argument);
}

TEST_CASE("minimum of two quantile levels keeps the quasi battery") {
  const std::vector<Axiom> battery = {Axiom::monotonicity, Axiom::cash_subadditivity,
                                      Axiom::quasi_star_shapedness, Axiom::quasi_normalization};
  const ClosureReport rep =
      check_min_closure({make_var(0.3), make_var(0.6)}, battery, quick_cfg());
  CHECK(rep.preconditions_ok);
  CHECK(rep.pass);
  CHECK(rep.premise.size() == 8);
  CHECK(rep.closure.size() == 4);
}

TEST_CASE("closure check stops at failed premises") {
  // Expected shortfall at level 1/3 is cash additive, so pairing it with a
  // premise battery containing star-shapedness on a functional that lacks it
  // must refuse to certify the closure.
  const std::vector<Axiom> battery = {Axiom::monotonicity, Axiom::convexity};
  const ClosureReport rep =
      check_min_closure({make_var(1.0 / 3.0), make_es(0.5)}, battery, quick_cfg());
  CHECK_FALSE(rep.preconditions_ok);
  CHECK_FALSE(rep.pass);
  CHECK(rep.closure.empty());
  const bool any_premise_failed =
      std::any_of(rep.premise.begin(), rep.premise.end(),
                  [](const CheckReport& r) { return !r.pass; });
  CHECK(any_premise_failed);
  CHECK_THROWS_AS(check_min_closure({}, battery, quick_cfg()), std::invalid_argument);
  CHECK_THROWS_AS(check_min_closure({make_es(0.5)}, {}, quick_cfg()), std::invalid_argument);
}

TEST_CASE("mean functional is transparent to every axiom") {
  const auto rho = make_mean();
  const CheckConfig cfg = quick_cfg(40);
  for (Axiom a : kAllAxioms) {
    const CheckReport rep = check_axiom(a, rho, cfg);
    INFO("axiom: ", std::string(axiom_name(a)));
    CHECK(rep.pass);
  }
}
