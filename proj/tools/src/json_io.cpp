#include "riskcal_io/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "riskcal/measures.hpp"

namespace riskcal_io {

using nlohmann::json;
using namespace riskcal;

namespace {

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(what + ": malformed JSON: " + e.what());
  }
}

const json& field(const json& j, const char* key, const std::string& what) {
  const auto it = j.find(key);
  if (it == j.end()) throw UsageError(what + ": missing field '" + key + "'");
  return *it;
}

double number_field(const json& j, const char* key, const std::string& what) {
  const json& v = field(j, key, what);
  if (!v.is_number()) throw UsageError(what + ": field '" + key + "' must be a number");
  return v.get<double>();
}

std::string string_field(const json& j, const char* key, const std::string& what) {
  const json& v = field(j, key, what);
  if (!v.is_string()) throw UsageError(what + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> number_array(const json& v, const std::string& what) {
  if (!v.is_array()) throw UsageError(what + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) throw UsageError(what + ": expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<double> number_array_field(const json& j, const char* key, const std::string& what) {
  return number_array(field(j, key, what), what + ": '" + key + "'");
}

LambdaFn lambda_from_json(const json& j, const std::string& what) {
  try {
    return LambdaFn(number_array_field(j, "breakpoints", what),
                    number_array_field(j, "values", what));
  } catch (const std::invalid_argument& e) {
    throw UsageError(what + ": " + e.what());
  }
}

PayoffFn payoff_from_json(const json& j, const std::string& what) {
  const std::string kind = string_field(j, "kind", what);
  try {
    if (kind == "positive_part") return PayoffFn::positive_part();
    if (kind == "deductible_limit") {
      return PayoffFn::deductible_limit(number_field(j, "d", what), number_field(j, "l", what));
    }
    if (kind == "piecewise_linear") {
      return PayoffFn::piecewise_linear(number_array_field(j, "xs", what),
                                        number_array_field(j, "ys", what));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(what + ": " + e.what());
  }
  throw UsageError(what + ": unknown payoff kind '" + kind + "'");
}

UtilityFn utility_from_json(const json& j, const std::string& what) {
  const std::string kind = string_field(j, "kind", what);
  try {
    if (kind == "identity") return UtilityFn::identity();
    if (kind == "exponential") return UtilityFn::exponential(number_field(j, "gamma", what));
    if (kind == "power") return UtilityFn::power(number_field(j, "p", what));
    if (kind == "piecewise_linear") {
      return UtilityFn::piecewise_linear(number_array_field(j, "xs", what),
                                         number_array_field(j, "ys", what));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(what + ": " + e.what());
  }
  throw UsageError(what + ": unknown utility kind '" + kind + "'");
}

DistortionFn distortion_from_json(const json& j, const std::string& what) {
  const std::string kind = string_field(j, "kind", what);
  try {
    if (kind == "identity") return DistortionFn::identity();
    if (kind == "power") return DistortionFn::power(number_field(j, "theta", what));
    if (kind == "dual_power") return DistortionFn::dual_power(number_field(j, "theta", what));
    if (kind == "grid") {
      const std::string shape = string_field(j, "shape", what);
      DistortionFn::Shape s;
      if (shape == "convex") s = DistortionFn::Shape::convex;
      else if (shape == "concave") s = DistortionFn::Shape::concave;
      else if (shape == "affine") s = DistortionFn::Shape::affine;
      else if (shape == "none") s = DistortionFn::Shape::none;
      else throw UsageError(what + ": unknown distortion shape '" + shape + "'");
      return DistortionFn::grid(number_array_field(j, "us", what),
                                number_array_field(j, "ts", what), s);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(what + ": " + e.what());
  }
  throw UsageError(what + ": unknown distortion kind '" + kind + "'");
}

SpacePtr space_from_json(const json& j, const std::string& what) {
  try {
    return FiniteSpace::make(number_array_field(j, "probs", what));
  } catch (const std::invalid_argument& e) {
    throw UsageError(what + ": " + e.what());
  }
}

// Structured measure catalog: every functional in the library is reachable
// through a JSON object with a "kind" discriminator.
MeasureSpec measure_from_json(const json& j, const MeasureContext& ctx, const std::string& what) {
  const std::string kind = string_field(j, "kind", what);
  MeasureSpec spec;
  try {
    if (kind == "var") {
      spec.rho = make_var(number_field(j, "t", what));
    } else if (kind == "es") {
      spec.rho = make_es(number_field(j, "t", what));
    } else if (kind == "mean") {
      spec.rho = make_mean();
    } else if (kind == "entropic") {
      spec.rho = make_entropic(number_field(j, "gamma", what));
    } else if (kind == "min_mean_zero") {
      spec.rho = make_min_mean_zero();
    } else if (kind == "put_premium") {
      spec.rho = make_put_premium();
    } else if (kind == "two_level") {
      spec.rho = make_two_level_lambda_var(number_field(j, "a", what), number_field(j, "b", what),
                                           number_field(j, "z", what));
    } else if (kind == "lambda_var") {
      spec.rho = make_lambda_var(lambda_from_json(field(j, "lambda", what), what + ": 'lambda'"));
    } else if (kind == "transformed") {
      const std::string side = string_field(j, "side", what);
      if (side != "insurer" && side != "policyholder") {
        throw UsageError(what + ": side must be 'insurer' or 'policyholder'");
      }
      spec.rho = make_expected_transformed_loss(
          payoff_from_json(field(j, "payoff", what), what + ": 'payoff'"),
          side == "insurer" ? PayoffSide::insurer : PayoffSide::policyholder);
    } else if (kind == "alpha_meu") {
      const auto rows = [&](const char* key) {
        const json& arr = field(j, key, what);
        if (!arr.is_array() || arr.empty()) {
          throw UsageError(what + ": '" + key + "' must be a non-empty array of probability vectors");
        }
        std::vector<ProbabilityVector> out;
        for (const auto& row : arr) {
          out.emplace_back(number_array(row, what + ": '" + std::string(key) + "'"));
        }
        return out;
      };
      auto q1 = rows("q1");
      auto q2 = rows("q2");
      const std::size_t n = q1.front().weights().size();
      spec.bound_space =
          j.contains("space") ? space_from_json(j.at("space"), what + ": 'space'") : FiniteSpace::uniform(n);
      spec.rho = make_alpha_meu_ce(number_field(j, "alpha", what), number_field(j, "gamma", what),
                                   number_array_field(j, "lambdas", what), std::move(q1),
                                   std::move(q2));
    } else if (kind == "rdeu") {
      spec.rho = make_rdeu_ce(utility_from_json(field(j, "utility", what), what + ": 'utility'"),
                              number_field(j, "alpha", what),
                              distortion_from_json(field(j, "t1", what), what + ": 't1'"),
                              distortion_from_json(field(j, "t2", what), what + ": 't2'"),
                              number_array_field(j, "lambdas", what));
    } else if (kind == "eligible") {
      const json& acc = field(j, "accept", what);
      const std::string acc_kind = string_field(acc, "kind", what + ": 'accept'");
      AcceptancePredicate accept;
      std::string acc_label;
      if (acc_kind == "es_floor") {
        const double level = number_field(acc, "level", what + ": 'accept'");
        const double bound = number_field(acc, "bound", what + ": 'accept'");
        accept = [level, bound](const Rv& z) { return es_value(z, level) <= bound; };
        acc_label = "es_floor";
      } else if (acc_kind == "ess_sup_floor") {
        const double bound = number_field(acc, "bound", what + ": 'accept'");
        accept = [bound](const Rv& z) { return es_value(z, 1.0) <= bound; };
        acc_label = "ess_sup_floor";
      } else if (acc_kind == "mean_floor") {
        const double bound = number_field(acc, "bound", what + ": 'accept'");
        accept = [bound](const Rv& z) { return z.mean() <= bound; };
        acc_label = "mean_floor";
      } else {
        throw UsageError(what + ": unknown acceptance kind '" + acc_kind + "'");
      }
      Rv numeraire = [&]() -> Rv {
        if (j.contains("numeraire_column")) {
          if (ctx.scenarios == nullptr) {
            throw UsageError(what + ": 'numeraire_column' needs a --scenarios table");
          }
          const std::string col = j.at("numeraire_column").get<std::string>();
          if (!ctx.scenarios->has_column(col)) {
            throw UsageError(what + ": scenario table has no column '" + col + "'");
          }
          return ctx.scenarios->column(col);
        }
        const SpacePtr sp = space_from_json(j, what);  // needs "probs" alongside "numeraire"
        return Rv(sp, number_array_field(j, "numeraire", what));
      }();
      spec.bound_space = numeraire.space();
      spec.rho = make_eligible_asset(std::move(accept), number_field(j, "s0", what),
                                     std::move(numeraire), acc_label);
    } else {
      throw UsageError(what + ": unknown measure kind '" + kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(what + ": " + e.what());
  }
  return spec;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + s + "' is not a number");
  }
  if (used != s.size()) throw UsageError(what + ": '" + s + "' is not a number");
  return v;
}

// ---- serialization helpers ----

json to_json(const ExtReal& v) {
  if (v.is_pos_inf()) return json("+inf");
  if (v.is_neg_inf()) return json("-inf");
  return json(v.raw());
}

json to_json(const Rv& x) {
  json j;
  j["probs"] = x.space()->probs();
  j["values"] = x.values();
  return j;
}

json to_json(const Witness& w) {
  json j;
  j["detail"] = w.detail;
  j["lhs"] = w.lhs;
  j["rhs"] = w.rhs;
  json in;
  if (w.inputs.x) in["x"] = to_json(*w.inputs.x);
  if (w.inputs.y) in["y"] = to_json(*w.inputs.y);
  if (w.inputs.lambda) in["lambda"] = *w.inputs.lambda;
  if (w.inputs.m) in["m"] = *w.inputs.m;
  if (w.inputs.t) in["t"] = *w.inputs.t;
  j["inputs"] = std::move(in);
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

MeasureSpec parse_measure(const std::string& address, const MeasureContext& ctx) {
  if (address.empty()) throw UsageError("measure address is empty");
  if (address.front() == '@') {
    const std::string path = address.substr(1);
    return measure_from_json(parse_json(read_file(path), path), ctx, path);
  }
  const std::vector<std::string> parts = split(address, ':');
  const std::string& kind = parts.front();
  const std::string what = "measure '" + address + "'";
  const auto want_parts = [&](std::size_t n) {
    if (parts.size() != n) {
      throw UsageError(what + ": expected " + std::to_string(n - 1) + " ':'-separated parameter(s)");
    }
  };
  MeasureSpec spec;
  try {
    if (kind == "mean") {
      want_parts(1);
      spec.rho = make_mean();
    } else if (kind == "min_mean_zero") {
      want_parts(1);
      spec.rho = make_min_mean_zero();
    } else if (kind == "put_premium") {
      want_parts(1);
      spec.rho = make_put_premium();
    } else if (kind == "var") {
      want_parts(2);
      spec.rho = make_var(parse_number(parts[1], what));
    } else if (kind == "es") {
      want_parts(2);
      spec.rho = make_es(parse_number(parts[1], what));
    } else if (kind == "entropic") {
      want_parts(2);
      spec.rho = make_entropic(parse_number(parts[1], what));
    } else if (kind == "two_level") {
      want_parts(4);
      spec.rho = make_two_level_lambda_var(parse_number(parts[1], what), parse_number(parts[2], what),
                                           parse_number(parts[3], what));
    } else if (kind == "lambda_var") {
      want_parts(1);
      if (!ctx.lambda_path) throw UsageError(what + ": needs --lambda FILE with the step definition");
      spec.rho = make_lambda_var(lambda_from_file(*ctx.lambda_path));
    } else if (kind == "transformed") {
      want_parts(2);
      if (!ctx.payoff_path) throw UsageError(what + ": needs --payoff FILE with the transform");
      if (parts[1] != "insurer" && parts[1] != "policyholder") {
        throw UsageError(what + ": side must be 'insurer' or 'policyholder'");
      }
      spec.rho = make_expected_transformed_loss(
          payoff_from_file(*ctx.payoff_path),
          parts[1] == "insurer" ? PayoffSide::insurer : PayoffSide::policyholder);
    } else {
      throw UsageError(what + ": unknown kind '" + kind +
                       "' (use mean, min_mean_zero, put_premium, var:T, es:T, entropic:G, "
                       "two_level:A:B:Z, lambda_var, transformed:SIDE, or @file.json)");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(what + ": " + e.what());
  }
  return spec;
}

std::vector<MeasureSpec> parse_measure_list(const std::string& addresses, const MeasureContext& ctx) {
  std::vector<MeasureSpec> out;
  for (const std::string& a : split(addresses, ',')) {
    out.push_back(parse_measure(a, ctx));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

LambdaFn lambda_from_json_text(const std::string& text) {
  return lambda_from_json(parse_json(text, "step definition"), "step definition");
}

LambdaFn lambda_from_file(const std::string& path) {
  return lambda_from_json(parse_json(read_file(path), path), path);
}

PayoffFn payoff_from_json_text(const std::string& text) {
  return payoff_from_json(parse_json(text, "payoff definition"), "payoff definition");
}

PayoffFn payoff_from_file(const std::string& path) {
  return payoff_from_json(parse_json(read_file(path), path), path);
}

std::string measure_value_json(const std::string& measure, const ExtReal& value) {
  json j;
  j["measure"] = measure;
  j["schema"] = "riskcal/measure_value/v1";
  j["value"] = to_json(value);
  return dump(j);
}

std::string check_report_json(const CheckReport& rep, std::uint64_t seed) {
  json j;
  j["axiom"] = axiom_name(rep.axiom);
  j["functional"] = rep.functional;
  j["notes"] = rep.notes;
  if (rep.range) {
    json rj;
    rj["hi"] = rep.range->hi;
    rj["hi_unbounded"] = rep.range->hi_unbounded;
    rj["lo"] = rep.range->lo;
    rj["lo_unbounded"] = rep.range->lo_unbounded;
    j["range"] = std::move(rj);
  }
  j["schema"] = "riskcal/check_report/v1";
  j["seed"] = seed;
  j["trials"] = rep.trials_run;
  j["verdict"] = rep.pass ? "pass" : "fail";
  if (rep.witness) j["witness"] = to_json(*rep.witness);
  return dump(j);
}

std::string envelope_report_json(const EnvelopeReport& rep) {
  json j;
  j["attaining_index"] = rep.attaining_index;
  j["attainment_ok"] = rep.attainment_ok;
  j["base"] = rep.base_name;
  j["base_value"] = rep.base_value;
  j["dominance_ok"] = rep.dominance_ok;
  j["kind"] = envelope_kind_name(rep.kind);
  if (!rep.label.empty()) j["label"] = rep.label;
  j["member_values"] = rep.member_values;
  j["min_value"] = rep.min_value;
  j["pass"] = rep.pass;
  j["preconditions_ok"] = rep.preconditions_ok;
  j["schema"] = "riskcal/envelope_report/v1";
  j["spot_checks_ok"] = rep.spot_checks_ok;
  j["tolerance"] = rep.tolerance;
  return dump(j);
}

std::string infconv_json(const InfConvResult& res, const std::string& method,
                         const std::vector<std::string>& measures) {
  json j;
  if (res.allocation) {
    json rows = json::array();
    for (const Rv& comp : res.allocation->components) rows.push_back(comp.values());
    j["allocation"] = std::move(rows);
  } else {
    j["allocation"] = nullptr;
  }
  j["diverged"] = res.diverged;
  j["grid_tolerance"] = res.grid_tolerance;
  j["measures"] = measures;
  j["method"] = method;
  j["notes"] = res.notes;
  j["schema"] = "riskcal/infconv_result/v1";
  j["value"] = to_json(res.value);
  return dump(j);
}

std::string portfolio_json(const PortfolioResult& res, const std::vector<std::string>& assets) {
  json j;
  j["assets"] = assets;
  if (res.expected_loss) {
    j["expected_loss"] = *res.expected_loss;
  } else {
    j["expected_loss"] = nullptr;
  }
  j["feasible"] = res.feasible;
  j["points_feasible"] = res.points_feasible;
  j["points_total"] = res.points_total;
  j["schema"] = "riskcal/portfolio_result/v1";
  if (res.weights) {
    j["weights"] = res.weights->values();
  } else {
    j["weights"] = nullptr;
  }
  return dump(j);
}

std::string replication_json(const std::vector<CriterionResult>& results) {
  json j;
  bool all = true;
  json suites = json::array();
  for (const CriterionResult& r : results) {
    all = all && r.pass;
    json s;
    s["details"] = r.details;
    s["id"] = r.id;
    s["pass"] = r.pass;
    s["slug"] = r.slug;
    suites.push_back(std::move(s));
  }
  j["pass"] = all;
  j["schema"] = "riskcal/replication_report/v1";
  j["suites"] = std::move(suites);
  return dump(j);
}

}  // namespace riskcal_io
