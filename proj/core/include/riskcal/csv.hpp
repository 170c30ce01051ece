#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "riskcal/finite_space.hpp"

namespace riskcal {

// Scenario table read from CSV. Layout: header `prob,NAME1,NAME2,...`, one row
// per outcome. Probabilities must be strictly positive and sum to 1 within
// 1e-9; they are renormalized to machine precision on ingestion.
struct ScenarioTable {
  SpacePtr space;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;  // columns[j][outcome]

  std::size_t column_count() const noexcept { return names.size(); }
  Rv column(std::size_t j) const;
  Rv column(const std::string& name) const;
  bool has_column(const std::string& name) const noexcept;
};

ScenarioTable load_scenarios_csv(std::istream& in);
ScenarioTable load_scenarios_csv_file(const std::string& path);

}  // namespace riskcal
