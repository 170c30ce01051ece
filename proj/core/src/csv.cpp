#include "riskcal/csv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace riskcal {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim surrounding whitespace
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& cell, std::size_t line_no, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(cell, &pos);
    if (pos != cell.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(v)) throw std::invalid_argument("not finite");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("CSV line " + std::to_string(line_no) + ": cannot parse " + what + " from '" +
                             cell + "'");
  }
}

}  // namespace

Rv ScenarioTable::column(std::size_t j) const {
  if (j >= columns.size()) throw std::out_of_range("ScenarioTable: column index out of range");
  return Rv(space, columns[j]);
}

Rv ScenarioTable::column(const std::string& name) const {
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (names[j] == name) return column(j);
  }
  throw std::invalid_argument("ScenarioTable: no column named '" + name + "'");
}

bool ScenarioTable::has_column(const std::string& name) const noexcept {
  for (const auto& n : names) {
    if (n == name) return true;
  }
  return false;
}

ScenarioTable load_scenarios_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw std::runtime_error("CSV line 1: empty input");
  ++line_no;
  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "prob") {
    throw std::runtime_error("CSV line 1: first column must be named 'prob'");
  }
  ScenarioTable table;
  table.names.assign(header.begin() + 1, header.end());
  for (const auto& n : table.names) {
    if (n.empty()) throw std::runtime_error("CSV line 1: empty column name");
  }
  table.columns.assign(table.names.size(), {});

  std::vector<double> probs;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;  // skip blank lines
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error("CSV line " + std::to_string(line_no) + ": expected " +
                               std::to_string(header.size()) + " cells, found " + std::to_string(cells.size()));
    }
    const double p = parse_number(cells[0], line_no, "probability");
    if (p <= 0.0) {
      throw std::runtime_error("CSV line " + std::to_string(line_no) + ": probability must be > 0");
    }
    probs.push_back(p);
    for (std::size_t j = 0; j < table.names.size(); ++j) {
      table.columns[j].push_back(parse_number(cells[j + 1], line_no, "value for '" + table.names[j] + "'"));
    }
  }
  if (probs.empty()) throw std::runtime_error("CSV: no outcome rows");

  double sum = 0.0;
  for (double p : probs) sum += p;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::runtime_error("CSV: probabilities sum to " + std::to_string(sum) + ", expected 1 within 1e-9");
  }
  for (double& p : probs) p /= sum;  // renormalize float dust to satisfy the space invariant
  table.space = FiniteSpace::make(std::move(probs));
  return table;
}

ScenarioTable load_scenarios_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open scenario file: " + path);
  return load_scenarios_csv(f);
}

}  // namespace riskcal
