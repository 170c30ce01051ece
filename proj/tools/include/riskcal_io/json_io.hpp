#pragma once

// Text-facing layer for the command-line tool: measure-address parsing,
// JSON ingestion of structured parameters (step level functions, payoff and
// utility transforms, scenario-weighted measures), and byte-stable JSON
// serialization of every report the tool emits. Identical inputs always
// produce identical bytes: object keys are sorted and doubles use the
// shortest round-trip form.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riskcal/axioms.hpp"
#include "riskcal/csv.hpp"
#include "riskcal/envelopes.hpp"
#include "riskcal/ext_real.hpp"
#include "riskcal/infconv.hpp"
#include "riskcal/lambda_fn.hpp"
#include "riskcal/payoffs.hpp"
#include "riskcal/portfolio.hpp"
#include "riskcal/replication.hpp"
#include "riskcal/risk_functional.hpp"

namespace riskcal_io {

// Invocation-level problem (bad flag value, unreadable file, malformed JSON,
// unknown address): callers map this to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inputs a measure address may draw on.
struct MeasureContext {
  std::optional<std::string> lambda_path;   // --lambda file for lambda_var
  std::optional<std::string> payoff_path;   // --payoff file for transformed:*
  const riskcal::ScenarioTable* scenarios = nullptr;  // numeraire columns
};

// A parsed measure. bound_space is set when the measure only evaluates
// variables on one specific outcome space (scenario-weighted or
// numeraire-based measures); checks fix their sampling space to it.
struct MeasureSpec {
  riskcal::RiskFunctional rho;
  riskcal::SpacePtr bound_space;
};

// Address grammar (case-sensitive):
//   mean | min_mean_zero | put_premium
//   var:T | es:T | entropic:G | two_level:A:B:Z
//   lambda_var                  (requires --lambda FILE)
//   transformed:insurer | transformed:policyholder   (requires --payoff FILE)
//   @file.json                  (structured catalog, see measure_from_json)
MeasureSpec parse_measure(const std::string& address, const MeasureContext& ctx);

// Comma-separated addresses.
std::vector<MeasureSpec> parse_measure_list(const std::string& addresses, const MeasureContext& ctx);

std::string read_file(const std::string& path);

riskcal::LambdaFn lambda_from_json_text(const std::string& text);
riskcal::LambdaFn lambda_from_file(const std::string& path);
riskcal::PayoffFn payoff_from_json_text(const std::string& text);
riskcal::PayoffFn payoff_from_file(const std::string& path);

// ---- report serialization ----

std::string measure_value_json(const std::string& measure, const riskcal::ExtReal& value);
std::string check_report_json(const riskcal::CheckReport& rep, std::uint64_t seed);
std::string envelope_report_json(const riskcal::EnvelopeReport& rep);
std::string infconv_json(const riskcal::InfConvResult& res, const std::string& method,
                         const std::vector<std::string>& measures);
std::string portfolio_json(const riskcal::PortfolioResult& res,
                           const std::vector<std::string>& assets);
std::string replication_json(const std::vector<riskcal::CriterionResult>& results);

}  // namespace riskcal_io
