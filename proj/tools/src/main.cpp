// riskcal: command-line front end for the risk-measure library.
//
// Exit codes: 0 success (and verification passes), 3 a check/verification
// failed (the JSON report carries the witness), 2 usage error, 1 internal
// error. Every subcommand writes a single JSON document to stdout; identical
// invocations produce byte-identical output, and RISKCAL_THREADS only caps
// the worker count without changing any result.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "riskcal/axiom.hpp"
#include "riskcal/axioms.hpp"
#include "riskcal/csv.hpp"
#include "riskcal/envelopes.hpp"
#include "riskcal/infconv.hpp"
#include "riskcal/portfolio.hpp"
#include "riskcal/replication.hpp"
#include "riskcal_io/json_io.hpp"

namespace {

using namespace riskcal;
using riskcal_io::MeasureContext;
using riskcal_io::MeasureSpec;
using riskcal_io::UsageError;

struct CommonFlags {
  std::string scenarios_path;
  std::string var_name;
  std::string lambda_path;
  std::string payoff_path;
};

// A missing or malformed scenario file is an invocation problem, not an
// internal one: fold whatever the loader throws into a UsageError.
ScenarioTable load_table(const std::string& path) {
  try {
    return load_scenarios_csv_file(path);
  } catch (const std::exception& e) {
    throw UsageError(std::string(e.what()));
  }
}

// Picks the requested column; with no --var and exactly one column, that
// column is implied.
Rv pick_column(const ScenarioTable& table, const std::string& var_name) {
  if (!var_name.empty()) {
    if (!table.has_column(var_name)) {
      std::string cols;
      for (const std::string& n : table.names) {
        if (!cols.empty()) cols += ", ";
        cols += n;
      }
      throw UsageError("scenario table has no column '" + var_name + "' (columns: " + cols + ")");
    }
    return table.column(var_name);
  }
  if (table.column_count() == 1) return table.column(std::size_t{0});
  throw UsageError("--var is required when the scenario table has more than one column");
}

MeasureContext make_context(const CommonFlags& f, const ScenarioTable* table) {
  MeasureContext ctx;
  if (!f.lambda_path.empty()) ctx.lambda_path = f.lambda_path;
  if (!f.payoff_path.empty()) ctx.payoff_path = f.payoff_path;
  ctx.scenarios = table;
  return ctx;
}

int run_measure(const CommonFlags& f, const std::string& address) {
  const ScenarioTable table = load_table(f.scenarios_path);
  const Rv x = pick_column(table, f.var_name);
  const MeasureSpec spec = riskcal_io::parse_measure(address, make_context(f, &table));
  std::cout << riskcal_io::measure_value_json(address, spec.rho.eval(x));
  return 0;
}

int run_check(const CommonFlags& f, const std::string& axiom_name_arg, const std::string& address,
              std::uint64_t seed, int trials, double tolerance) {
  const std::optional<Axiom> axiom = axiom_from_name(axiom_name_arg);
  if (!axiom) {
    std::string names;
    for (Axiom a : kAllAxioms) {
      if (!names.empty()) names += ", ";
      names += axiom_name(a);
    }
    throw UsageError("unknown axiom '" + axiom_name_arg + "' (axioms: " + names + ")");
  }
  std::optional<ScenarioTable> table;
  if (!f.scenarios_path.empty()) table = load_table(f.scenarios_path);
  const MeasureSpec spec =
      riskcal_io::parse_measure(address, make_context(f, table ? &*table : nullptr));
  CheckConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.tolerance = tolerance;
  cfg.fixed_space = spec.bound_space;
  const CheckReport rep = check_axiom(*axiom, spec.rho, cfg);
  std::cout << riskcal_io::check_report_json(rep, seed);
  return rep.pass ? 0 : 3;
}

int run_envelope(const CommonFlags& f, const std::string& kind_name, const std::string& address,
                 const std::string& anchors_path, std::uint64_t seed, int trials, double tolerance) {
  const std::optional<EnvelopeKind> kind = envelope_kind_from_name(kind_name);
  if (!kind) {
    throw UsageError("unknown envelope kind '" + kind_name +
                     "' (kinds: rho_z, tilde_rho_z, psi_z_ssd, monetary_acceptance)");
  }
  const ScenarioTable table = load_table(f.scenarios_path);
  const Rv x = pick_column(table, f.var_name);
  const MeasureSpec spec = riskcal_io::parse_measure(address, make_context(f, &table));

  std::vector<Rv> anchors;
  if (!anchors_path.empty()) {
    const ScenarioTable anchor_table = load_table(anchors_path);
    for (std::size_t j = 0; j < anchor_table.column_count(); ++j) {
      anchors.push_back(anchor_table.column(j));
    }
  } else {
    // Every column, the evaluated one included: the representation attains its
    // minimum at the evaluated variable itself, so keeping it in the family
    // makes the equality verifiable with a single CSV.
    for (std::size_t j = 0; j < table.column_count(); ++j) {
      anchors.push_back(table.column(j));
    }
  }
  if (anchors.empty()) throw UsageError("no anchor variables: give --anchors or extra scenario columns");

  CheckConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.fixed_space = x.space();
  const EnvelopeReport rep = verify_envelope(spec.rho, *kind, x, anchors, cfg, tolerance);
  std::cout << riskcal_io::envelope_report_json(rep);
  return rep.pass ? 0 : 3;
}

int run_infconv(const CommonFlags& f, const std::string& addresses, int grid, int fractions,
                bool comonotone, std::uint64_t seed) {
  const ScenarioTable table = load_table(f.scenarios_path);
  const Rv x = pick_column(table, f.var_name);
  const MeasureContext ctx = make_context(f, &table);
  std::vector<std::string> names;
  std::vector<RiskFunctional> rhos;
  for (const MeasureSpec& spec : riskcal_io::parse_measure_list(addresses, ctx)) {
    rhos.push_back(spec.rho);
  }
  {
    std::string cur;
    for (char c : addresses) {
      if (c == ',') {
        names.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    names.push_back(cur);
  }
  InfConvConfig cfg;
  cfg.grid_points = grid;
  cfg.fraction_steps = fractions;
  cfg.seed = seed;
  const InfConvResult res =
      comonotone ? infconv_comonotone(rhos, x, cfg) : infconv_bruteforce(rhos, x, cfg);
  std::cout << riskcal_io::infconv_json(res, comonotone ? "comonotone" : "grid", names);
  return 0;
}

int run_portfolio(const CommonFlags& f, double level, int resolution) {
  const ScenarioTable table = load_table(f.scenarios_path);
  if (table.column_count() == 0) throw UsageError("scenario table has no asset columns");
  const std::size_t n = table.space->size();
  std::vector<std::vector<double>> losses(n, std::vector<double>(table.column_count()));
  for (std::size_t j = 0; j < table.column_count(); ++j) {
    for (std::size_t i = 0; i < n; ++i) losses[i][j] = table.columns[j][i];
  }
  const LambdaFn lf = riskcal_io::lambda_from_file(f.lambda_path);
  const ScenarioMatrix matrix(table.space, std::move(losses));
  const PortfolioResult res = optimize_portfolio(matrix, lf, level,
                                                 PortfolioObjective::min_expected_loss, resolution);
  std::cout << riskcal_io::portfolio_json(res, table.names);
  return 0;
}

int run_replicate(const std::string& suite) {
  std::vector<CriterionResult> results;
  if (suite.empty() || suite == "all") {
    results = run_all_criteria();
  } else {
    int id = 0;
    const bool numeric = !suite.empty() && suite.size() <= 4 &&
                         suite.find_first_not_of("0123456789") == std::string::npos;
    if (numeric) {
      id = std::stoi(suite);
    } else {
      id = criterion_id_from_slug(suite);
    }
    if (id < 1 || id > static_cast<int>(criterion_index().size())) {
      std::string slugs;
      for (const auto& [cid, slug] : criterion_index()) {
        if (!slugs.empty()) slugs += ", ";
        slugs += slug;
      }
      throw UsageError("unknown suite '" + suite + "' (suites: all, " + slugs + ")");
    }
    results.push_back(run_criterion(id));
  }
  bool all_pass = true;
  for (const CriterionResult& r : results) all_pass = all_pass && r.pass;
  std::cout << riskcal_io::replication_json(results);
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cash-subadditive risk measures on finite probability spaces"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string measure_address;
  std::string axiom_arg;
  std::string envelope_kind;
  std::string anchors_path;
  std::string measures_arg;
  std::string suite = "all";
  std::uint64_t seed = 20240817ULL;
  int trials = 200;
  double tolerance = 1e-9;
  double envelope_tolerance = 1e-6;
  int grid = 21;
  int fractions = 20;
  bool comonotone = false;
  double level = 0.0;
  int resolution = 20;

  CLI::App* measure = app.add_subcommand("measure", "Evaluate a risk measure on a scenario column");
  measure->add_option("--kind", measure_address, "Measure address, e.g. var:0.3 or @measure.json")
      ->required();
  measure->add_option("--scenarios", flags.scenarios_path, "CSV with prob + value columns")->required();
  measure->add_option("--var", flags.var_name, "Column to evaluate (implied when unique)");
  measure->add_option("--lambda", flags.lambda_path, "JSON step definition for lambda_var");
  measure->add_option("--payoff", flags.payoff_path, "JSON payoff for transformed:*");

  CLI::App* check = app.add_subcommand("check", "Run a randomized axiom battery on a measure");
  check->add_option("--axiom", axiom_arg, "Axiom name, e.g. quasi_convexity")->required();
  check->add_option("--measure", measure_address, "Measure address, e.g. var:0.3")->required();
  check->add_option("--seed", seed, "Randomization seed (default 20240817)");
  check->add_option("--trials", trials, "Random trials per battery (default 200)");
  check->add_option("--tolerance", tolerance, "Comparison tolerance (default 1e-9)");
  check->add_option("--lambda", flags.lambda_path, "JSON step definition for lambda_var");
  check->add_option("--payoff", flags.payoff_path, "JSON payoff for transformed:*");
  check->add_option("--scenarios", flags.scenarios_path, "CSV for numeraire_column references");

  CLI::App* envelope = app.add_subcommand("envelope", "Verify a lower-envelope representation");
  envelope->add_option("--kind", envelope_kind,
                       "rho_z | tilde_rho_z | psi_z_ssd | monetary_acceptance")
      ->required();
  envelope->add_option("--base-measure", measure_address, "Measure address being represented")
      ->required();
  envelope->add_option("--scenarios", flags.scenarios_path, "CSV with prob + value columns")->required();
  envelope->add_option("--var", flags.var_name, "Column to evaluate (implied when unique)");
  envelope->add_option("--anchors", anchors_path, "CSV of anchor columns (default: other columns)");
  envelope->add_option("--lambda", flags.lambda_path, "JSON step definition for lambda_var");
  envelope->add_option("--payoff", flags.payoff_path, "JSON payoff for transformed:*");
  envelope->add_option("--seed", seed, "Randomization seed (default 20240817)");
  envelope->add_option("--trials", trials, "Trials for precondition batteries (default 200)");
  envelope->add_option("--tolerance", envelope_tolerance, "Envelope tolerance (default 1e-6)");

  CLI::App* infconv = app.add_subcommand("infconv", "Minimize a sum of measures over splits of X");
  infconv->add_option("--measures", measures_arg, "Comma-separated measure addresses")->required();
  infconv->add_option("--scenarios", flags.scenarios_path, "CSV with prob + value columns")->required();
  infconv->add_option("--var", flags.var_name, "Column to split (implied when unique)");
  infconv->add_option("--grid", grid, "Grid points per outcome for the direct search (default 21)");
  infconv->add_option("--fractions", fractions, "Fraction steps for the comonotone splitter (default 20)");
  infconv->add_flag("--comonotone", comonotone, "Restrict the search to comonotone allocations");
  infconv->add_option("--lambda", flags.lambda_path, "JSON step definition for lambda_var");
  infconv->add_option("--payoff", flags.payoff_path, "JSON payoff for transformed:*");
  infconv->add_option("--seed", seed, "Seed for precondition batteries (default 20240817)");

  CLI::App* portfolio = app.add_subcommand("portfolio", "Optimize weights under an adaptive quantile cap");
  portfolio->add_option("--scenarios", flags.scenarios_path, "CSV: prob column + one loss column per asset")
      ->required();
  portfolio->add_option("--lambda", flags.lambda_path, "JSON step definition of the level function")
      ->required();
  portfolio->add_option("--level", level, "Cap z on the adaptive quantile of the portfolio loss")
      ->required();
  portfolio->add_option("--resolution", resolution, "Simplex grid resolution (default 20)");

  CLI::App* replicate = app.add_subcommand("replicate", "Run the packaged verification suites");
  replicate->add_option("suite", suite, "Suite slug or id (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (measure->parsed()) return run_measure(flags, measure_address);
    if (check->parsed()) return run_check(flags, axiom_arg, measure_address, seed, trials, tolerance);
    if (envelope->parsed()) {
      return run_envelope(flags, envelope_kind, measure_address, anchors_path, seed, trials,
                          envelope_tolerance);
    }
    if (infconv->parsed()) return run_infconv(flags, measures_arg, grid, fractions, comonotone, seed);
    if (portfolio->parsed()) return run_portfolio(flags, level, resolution);
    if (replicate->parsed()) return run_replicate(suite);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
