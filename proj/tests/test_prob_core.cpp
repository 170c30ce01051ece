#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "riskcal/csv.hpp"
#include "riskcal/distribution.hpp"
#include "riskcal/dominance.hpp"
#include "riskcal/ext_real.hpp"
#include "riskcal/finite_space.hpp"

using namespace riskcal;

namespace {

Rv uniform_rv(std::vector<double> values) {
  auto sp = FiniteSpace::uniform(values.size());
  return Rv(sp, std::move(values));
}

}  // namespace

TEST_CASE("ExtReal total order and guarded arithmetic") {
  const ExtReal a = 1.0, b = 2.0;
  const ExtReal pi = ExtReal::pos_inf(), ni = ExtReal::neg_inf();

  CHECK(a < b);
  CHECK(ni < a);
  CHECK(a < pi);
  CHECK(ni < pi);
  CHECK(emax(a, b) == b);
  CHECK(emin(ni, a) == ni);
  CHECK(emax(pi, b) == pi);

  CHECK((a + b).finite_value() == doctest::Approx(3.0));
  CHECK((pi + a).is_pos_inf());
  CHECK((ni + a).is_neg_inf());
  CHECK_THROWS_AS((void)(pi + ni), std::domain_error);
  CHECK_THROWS_AS((void)(pi - pi), std::domain_error);
  CHECK_THROWS_AS(pi.finite_value(), std::domain_error);
  CHECK_THROWS_AS(ExtReal(std::nan("")), std::invalid_argument);
  CHECK((-pi).is_neg_inf());
  CHECK(to_string(pi) == "inf");
  CHECK(to_string(ni) == "-inf");
}

TEST_CASE("FiniteSpace validates probabilities") {
  CHECK_THROWS_AS(FiniteSpace({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteSpace({0.5, -0.1, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteSpace({1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteSpace({}), std::invalid_argument);

  auto sp = FiniteSpace::uniform(4);
  CHECK(sp->size() == 4);
  CHECK(sp->prob(0) == doctest::Approx(0.25));

  auto sp2 = FiniteSpace::make({0.3, 0.7});
  CHECK(sp2->same_probs(*FiniteSpace::make({0.3, 0.7})));
  CHECK_FALSE(sp2->same_probs(*FiniteSpace::uniform(2)));
}

TEST_CASE("Rv construction, arithmetic and summaries") {
  auto sp = FiniteSpace::uniform(3);
  CHECK_THROWS_AS(Rv(sp, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(Rv(sp, {1.0, 2.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(Rv(nullptr, {1.0}), std::invalid_argument);

  const Rv x(sp, {-1.0, 0.0, 5.0});
  CHECK(x.mean() == doctest::Approx(4.0 / 3.0));
  CHECK(x.ess_sup() == doctest::Approx(5.0));
  CHECK(x.ess_inf() == doctest::Approx(-1.0));
  CHECK(x.sup_norm() == doctest::Approx(5.0));

  const Rv y = x + 1.0;
  CHECK(y.value(0) == doctest::Approx(0.0));
  const Rv z = -x * 2.0;
  CHECK(z.value(2) == doctest::Approx(-10.0));
  CHECK((x + (-x)).sup_norm() == doctest::Approx(0.0));
  CHECK(x.max_with(0.0).value(0) == doctest::Approx(0.0));
  CHECK(x.max_with(0.0).value(2) == doctest::Approx(5.0));

  const Rv c = Rv::constant(sp, 2.5);
  CHECK(c.mean() == doctest::Approx(2.5));

  auto other = FiniteSpace::make({0.3, 0.3, 0.4});
  const Rv w(other, {1.0, 1.0, 1.0});
  CHECK_FALSE(x.same_space(w));
  CHECK_THROWS_AS((void)(x + w), std::invalid_argument);

  CHECK(expectation(x, {0.0, 0.0, 1.0}) == doctest::Approx(5.0));
}

TEST_CASE("left quantile on a uniform four-point support") {
  const Rv x = uniform_rv({1, 2, 3, 4});
  CHECK(quantile(x, 0.5).finite_value() == doctest::Approx(2.0));
  CHECK(quantile(x, 0.75).finite_value() == doctest::Approx(3.0));
  CHECK(quantile(x, 0.25).finite_value() == doctest::Approx(1.0));
  CHECK(quantile(x, 0.26).finite_value() == doctest::Approx(2.0));
  CHECK(quantile(x, 1.0).finite_value() == doctest::Approx(4.0));
  CHECK(quantile(x, 0.0).is_neg_inf());
  CHECK_THROWS_AS(quantile(x, -0.1), std::domain_error);
  CHECK_THROWS_AS(quantile(x, 1.1), std::domain_error);

  const Rv tie = uniform_rv({2, 2});
  CHECK(quantile(tie, 0.5).finite_value() == doctest::Approx(2.0));
  CHECK(Distribution(tie).atoms().size() == 1);
  CHECK(Distribution(tie).ess_sup() == doctest::Approx(2.0));
}

TEST_CASE("quantile respects non-uniform probabilities") {
  auto sp = FiniteSpace::make({0.3, 0.7});
  const Rv x(sp, {5.0, 1.0});  // P(X=1)=0.7, P(X=5)=0.3
  CHECK(quantile(x, 0.7).finite_value() == doctest::Approx(1.0));
  CHECK(quantile(x, 0.7 + 1e-6).finite_value() == doctest::Approx(5.0));
  CHECK(quantile(x, 1e-6).finite_value() == doctest::Approx(1.0));
}

TEST_CASE("expected shortfall integrates the quantile step curve exactly") {
  const Rv x = uniform_rv({1, 2, 3, 4});
  CHECK(es_value(x, 0.0) == doctest::Approx(2.5));
  CHECK(es_value(x, 0.5) == doctest::Approx(3.5));
  CHECK(es_value(x, 0.375) == doctest::Approx(3.2));
  CHECK(es_value(x, 1.0) == doctest::Approx(4.0));
  CHECK(es_value(x, 0.75) == doctest::Approx(4.0));

  const Rv b = uniform_rv({0, 1});
  CHECK(es_value(b, 0.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)es_value(b, -0.01), std::domain_error);
}

TEST_CASE("cdf, tail integrals and stop-loss transforms") {
  const Rv x = uniform_rv({0, 2});
  const Distribution d(x);
  CHECK(d.cdf(-0.5) == doctest::Approx(0.0));
  CHECK(d.cdf(0.0) == doctest::Approx(0.5));
  CHECK(d.cdf(1.0) == doctest::Approx(0.5));
  CHECK(d.cdf(2.0) == doctest::Approx(1.0));
  CHECK(d.stop_loss(1.5) == doctest::Approx(0.25));
  CHECK(d.stop_loss(1.0) == doctest::Approx(0.5));
  CHECK(d.stop_loss(-1.0) == doctest::Approx(2.0));
  CHECK(Distribution(Rv::constant(x.space(), 1.0)).stop_loss(1.5) == doctest::Approx(0.0));
  CHECK(d.tail_integral(0.0) == doctest::Approx(1.0));

  const QuantileCurve qc = d.quantile_curve();
  REQUIRE(qc.breakpoints.size() == 2);
  CHECK(qc.breakpoints.back() == doctest::Approx(1.0));
  CHECK(qc.values.front() == doctest::Approx(0.0));
  CHECK(qc.values.back() == doctest::Approx(2.0));
}

TEST_CASE("comonotone rearrangement sorts both margins on a merged grid") {
  auto sp = FiniteSpace::uniform(2);
  const Rv x(sp, {1, 2});
  const Rv y(sp, {2, 1});
  const auto [xc, yc] = comonotone_rearrangement(x, y);
  REQUIRE(xc.size() == 2);
  CHECK(xc.value(0) == doctest::Approx(1.0));
  CHECK(xc.value(1) == doctest::Approx(2.0));
  CHECK(yc.value(0) == doctest::Approx(1.0));
  CHECK(yc.value(1) == doctest::Approx(2.0));
  CHECK(xc.same_space(yc));
}

TEST_CASE("comonotone rearrangement handles unequal breakpoint grids") {
  auto sp = FiniteSpace::make({0.3, 0.7});
  const Rv x(sp, {5, 1});
  const Rv y(sp, {1, 2});
  const auto [xc, yc] = comonotone_rearrangement(x, y);

  // Marginals are preserved: identical sorted atom lists.
  const auto ax = Distribution(x).atoms(), axc = Distribution(xc).atoms();
  REQUIRE(ax.size() == axc.size());
  for (std::size_t i = 0; i < ax.size(); ++i) {
    CHECK(axc[i].value == doctest::Approx(ax[i].value));
    CHECK(axc[i].cum == doctest::Approx(ax[i].cum));
  }
  const auto ay = Distribution(y).atoms(), ayc = Distribution(yc).atoms();
  REQUIRE(ay.size() == ayc.size());
  for (std::size_t i = 0; i < ay.size(); ++i) {
    CHECK(ayc[i].value == doctest::Approx(ay[i].value));
    CHECK(ayc[i].cum == doctest::Approx(ay[i].cum));
  }

  // Both outputs increase along the outcome index: comonotonic by construction.
  for (std::size_t i = 0; i + 1 < xc.size(); ++i) {
    CHECK(xc.value(i) <= xc.value(i + 1) + 1e-12);
    CHECK(yc.value(i) <= yc.value(i + 1) + 1e-12);
  }

  const Rv self(sp, {4, 7});
  const auto [sc1, sc2] = comonotone_rearrangement(self, self);
  for (std::size_t i = 0; i < sc1.size(); ++i) CHECK(sc1.value(i) == doctest::Approx(sc2.value(i)));

  const Rv c = Rv::constant(sp, 3.0);
  const auto [qx, qc] = comonotone_rearrangement(x, c);
  for (std::size_t i = 0; i < qc.size(); ++i) CHECK(qc.value(i) == doctest::Approx(3.0));
  CHECK(Distribution(qx).atoms().size() == 2);

  auto sp3 = FiniteSpace::uniform(3);
  CHECK_THROWS_AS(comonotone_rearrangement(x, Rv::constant(sp3, 0.0)), std::invalid_argument);
}

TEST_CASE("first-order dominance compares quantile curves") {
  const Rv hi = uniform_rv({1, 2});
  const Rv lo = uniform_rv({0, 1});
  CHECK(fsd_dominates(hi, lo));
  CHECK_FALSE(fsd_dominates(lo, hi));
  CHECK(fsd_dominates(hi, hi));

  const Rv spread = uniform_rv({0, 3});
  const Rv tight = uniform_rv({1, 2});
  CHECK_FALSE(fsd_dominates(spread, tight));
  CHECK_FALSE(fsd_dominates(tight, spread));

  // Distributional comparison across different spaces.
  const Rv lo4 = uniform_rv({0, 1, 0, 1});
  CHECK(fsd_dominates(hi, lo4));
  CHECK(fsd_dominates(lo4, lo));
  CHECK(fsd_dominates(lo, lo4));
}

TEST_CASE("second-order dominance: stop-loss and tail-curve methods agree") {
  const Rv x = uniform_rv({0, 2});
  const Rv y = uniform_rv({1, 1});

  for (auto m : {SsdMethod::stop_loss, SsdMethod::es_curve, SsdMethod::both}) {
    CHECK(ssd_dominates(x, y, m));
    CHECK_FALSE(ssd_dominates(y, x, m));  // fails at k=1.5: 0 < 0.25
    CHECK(ssd_dominates(x, x, m));
  }

  // Mean mismatch: neither direction dominates.
  const Rv y2 = uniform_rv({1.2, 1.2});
  CHECK_FALSE(ssd_dominates(x, y2));
  CHECK_FALSE(ssd_dominates(y2, x, SsdMethod::es_curve));

  // First-order dominance implies second-order dominance.
  const Rv hi = uniform_rv({1, 2}), lo = uniform_rv({0, 1});
  CHECK(fsd_dominates(hi, lo));
  CHECK(ssd_dominates(hi, lo, SsdMethod::both));

  // Comonotone sums dominate the original sums in the second order.
  auto sp = FiniteSpace::uniform(3);
  const Rv a(sp, {3, -1, 0});
  const Rv b(sp, {-2, 4, 1});
  const auto [ac, bc] = comonotone_rearrangement(a, b);
  CHECK(ssd_dominates(ac + bc, a + b, SsdMethod::both));
}

TEST_CASE("scenario CSV ingestion with line-reported failures") {
  std::istringstream good(
      "prob,loss,hedge\n"
      "0.25,1,0\n"
      "0.25,2,-1\n"
      "\n"
      "0.5,3,2\n");
  const ScenarioTable t = load_scenarios_csv(good);
  CHECK(t.column_count() == 2);
  CHECK(t.space->size() == 3);
  CHECK(t.has_column("hedge"));
  CHECK_FALSE(t.has_column("spread"));
  CHECK(t.column("loss").value(2) == doctest::Approx(3.0));
  CHECK(t.column(1).value(1) == doctest::Approx(-1.0));
  CHECK(t.column("loss").mean() == doctest::Approx(0.25 + 0.5 + 1.5));
  CHECK_THROWS_AS((void)t.column("spread"), std::invalid_argument);
  CHECK_THROWS_AS((void)t.column(7), std::out_of_range);

  auto message_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      (void)load_scenarios_csv(in);
      return std::string("no error");
    } catch (const std::exception& e) {
      return std::string(e.what());
    }
  };

  CHECK(message_of("p,loss\n1,1\n").find("line 1") != std::string::npos);
  CHECK(message_of("prob,loss\n0.5,1\n0.5,oops\n").find("line 3") != std::string::npos);
  CHECK(message_of("prob,loss\n0.5,1\n0.5\n").find("line 3") != std::string::npos);
  CHECK(message_of("prob,loss\n0.5,1\n-0.5,2\n").find("line 3") != std::string::npos);
  CHECK(message_of("prob,loss\n0.5,1\n0.4,2\n").find("sum") != std::string::npos);
  CHECK(message_of("prob,loss\n").find("no outcome rows") != std::string::npos);

  CHECK_THROWS_AS((void)load_scenarios_csv_file("/nonexistent/file.csv"), std::runtime_error);
}
