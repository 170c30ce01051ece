#include <stdexcept>

#include "doctest.h"
#include "riskcal/replication.hpp"

using namespace riskcal;

TEST_CASE("suite catalog lists twelve suites with stable ids") {
  const auto& idx = criterion_index();
  REQUIRE(idx.size() == 12);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    CHECK(idx[i].first == static_cast<int>(i) + 1);
    CHECK_FALSE(idx[i].second.empty());
  }
}

TEST_CASE("slug lookup resolves known suites and rejects unknown ones") {
  CHECK(criterion_id_from_slug("remark-star-shapedness") == 2);
  CHECK(criterion_id_from_slug("constraint-reduction") == 10);
  CHECK(criterion_id_from_slug("no-such-suite") == 0);
  CHECK(criterion_id_from_slug("") == 0);
}

TEST_CASE("unknown ids are rejected") {
  CHECK_THROWS_AS(run_criterion(0), std::invalid_argument);
  CHECK_THROWS_AS(run_criterion(13), std::invalid_argument);
}

TEST_CASE("a single suite runs and reports its slug") {
  const CriterionResult res = run_criterion(3);
  CHECK(res.id == 3);
  CHECK(res.slug == "quasi-convexity-failure");
  CHECK(res.pass);
  CHECK_FALSE(res.details.empty());
}
