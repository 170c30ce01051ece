// Acceptance runner: executes every replication suite and prints one
// verdict line per suite, with the suite's key numbers indented below it.
// Exit status is the number of failing suites.

#include <cstdio>
#include <exception>
#include <string>

#include "riskcal/replication.hpp"

int main() {
  int failures = 0;
  for (const auto& [id, slug] : riskcal::criterion_index()) {
    riskcal::CriterionResult res;
    try {
      res = riskcal::run_criterion(id);
    } catch (const std::exception& e) {
      res.id = id;
      res.slug = slug;
      res.pass = false;
      res.details = {std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d %s\n", res.pass ? "PASS" : "FAIL", res.id, res.slug.c_str());
    for (const std::string& d : res.details) {
      std::printf("         - %s\n", d.c_str());
    }
    if (!res.pass) ++failures;
  }
  if (failures == 0) {
    std::printf("all %zu suites passed\n", riskcal::criterion_index().size());
  } else {
    std::printf("%d suite(s) FAILED\n", failures);
  }
  return failures;
}
