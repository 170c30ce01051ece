#pragma once

#include <string>
#include <utility>
#include <vector>

namespace riskcal {

// One replication suite: a pinned, seeded piece of the verification program,
// reported as pass/fail plus human-readable detail lines carrying the key
// numbers (witness values, agreement counts, tolerances).
struct CriterionResult {
  int id = 0;
  std::string slug;
  bool pass = false;
  std::vector<std::string> details;
};

// Stable (id, slug) catalog of the replication suites, in run order.
const std::vector<std::pair<int, std::string>>& criterion_index();

// Resolves a suite slug to its id; 0 when the slug names no suite.
int criterion_id_from_slug(const std::string& slug);

// Runs one suite; throws std::invalid_argument for an unknown id. Every
// suite is deterministic: all randomness flows from seeds fixed in the
// implementation, so repeated runs produce identical reports.
CriterionResult run_criterion(int id);

// Runs every suite in id order.
std::vector<CriterionResult> run_all_criteria();

}  // namespace riskcal
