#include "riskcal/infconv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "riskcal/axioms.hpp"
#include "riskcal/parallel.hpp"

namespace riskcal {

namespace {

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

Rv allocation_total(const Allocation& a) {
  if (a.components.empty()) throw std::invalid_argument("allocation_total: no components");
  Rv total = a.components.front();
  for (std::size_t i = 1; i < a.components.size(); ++i) {
    if (!total.same_space(a.components[i]))
      throw std::invalid_argument("allocation_total: components live on different spaces");
    total = total + a.components[i];
  }
  return total;
}

bool sums_to(const Allocation& a, const Rv& x, double tol) {
  if (a.components.empty()) return false;
  const Rv total = allocation_total(a);
  if (!total.same_space(x)) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(total.value(i) - x.value(i)) > tol) return false;
  }
  return true;
}

bool is_comonotone(const Allocation& a, double tol) {
  const std::size_t n = a.components.size();
  if (n == 0) return false;
  const std::size_t m = a.components.front().size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t w = 0; w + 1 < m; ++w) {
        for (std::size_t v = w + 1; v < m; ++v) {
          const double di = a.components[i].value(w) - a.components[i].value(v);
          const double dj = a.components[j].value(w) - a.components[j].value(v);
          if (di * dj < -tol) return false;
        }
      }
    }
  }
  return true;
}

void InfConvConfig::validate(std::size_t n_outcomes) const {
  if (!explicit_grids.empty()) {
    if (explicit_grids.size() != n_outcomes)
      throw std::invalid_argument("InfConvConfig: need one explicit grid per outcome");
    for (const auto& g : explicit_grids) {
      if (g.empty()) throw std::invalid_argument("InfConvConfig: empty grid");
      for (double v : g)
        if (!std::isfinite(v)) throw std::invalid_argument("InfConvConfig: grid values must be finite");
    }
  } else if (grid_points < 4) {
    throw std::invalid_argument("InfConvConfig: grid_points must be at least 4");
  }
  if (!(pad_fraction >= 0.0) || !std::isfinite(pad_fraction))
    throw std::invalid_argument("InfConvConfig: pad_fraction must be a finite nonnegative number");
  if (!(pad_floor >= 0.0) || !std::isfinite(pad_floor))
    throw std::invalid_argument("InfConvConfig: pad_floor must be a finite nonnegative number");
  if (!(slope_threshold > 0.0) || !std::isfinite(slope_threshold))
    throw std::invalid_argument("InfConvConfig: slope_threshold must be positive");
  if (fraction_steps < 1)
    throw std::invalid_argument("InfConvConfig: comonotone split needs a resolution of at least 2 fractions");
  if (precondition_trials < 1)
    throw std::invalid_argument("InfConvConfig: precondition_trials must be positive");
}

namespace {

void insert_sorted_unique(std::vector<double>& g, double v) {
  for (double u : g)
    if (std::abs(u - v) <= 1e-12) return;
  g.push_back(v);
  std::sort(g.begin(), g.end());
}

// Per-outcome grids at a given widening factor about each grid's midpoint.
// Default grids are rebuilt from the widened span and re-anchored at 0 and at
// the outcome's value; explicit grids are affinely stretched.
std::vector<std::vector<double>> grids_at_scale(const Rv& x, const InfConvConfig& cfg, double scale) {
  std::vector<std::vector<double>> grids;
  grids.reserve(x.size());
  if (!cfg.explicit_grids.empty()) {
    for (const auto& g : cfg.explicit_grids) {
      std::vector<double> s;
      s.reserve(g.size());
      const auto [lo_it, hi_it] = std::minmax_element(g.begin(), g.end());
      const double mid = 0.5 * (*lo_it + *hi_it);
      for (double v : g) s.push_back(mid + scale * (v - mid));
      std::sort(s.begin(), s.end());
      grids.push_back(std::move(s));
    }
    return grids;
  }
  const double range = x.ess_sup() - x.ess_inf();
  const double pad = cfg.pad_fraction * range + cfg.pad_floor;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x.value(i);
    const double lo0 = std::min(0.0, xi) - pad;
    const double hi0 = std::max(0.0, xi) + pad;
    const double mid = 0.5 * (lo0 + hi0);
    const double half = scale * 0.5 * (hi0 - lo0);
    const int m = cfg.grid_points - 2;
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(cfg.grid_points));
    for (int j = 0; j < m; ++j)
      g.push_back(mid - half + (2.0 * half) * static_cast<double>(j) / static_cast<double>(m - 1));
    insert_sorted_unique(g, 0.0);
    insert_sorted_unique(g, xi);
    grids.push_back(std::move(g));
  }
  return grids;
}

double max_grid_spacing(const std::vector<std::vector<double>>& grids) {
  double h = 0.0;
  for (const auto& g : grids)
    for (std::size_t j = 0; j + 1 < g.size(); ++j) h = std::max(h, g[j + 1] - g[j]);
  return h;
}

double max_grid_half_width(const std::vector<std::vector<double>>& grids) {
  double h = 0.0;
  for (const auto& g : grids)
    if (!g.empty()) h = std::max(h, 0.5 * (g.back() - g.front()));
  return h;
}

struct SearchBest {
  double value = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> combo;
};

void take_better(SearchBest& best, double v, const std::vector<std::size_t>& combo) {
  if (v < best.value) {
    best.value = v;
    best.combo = combo;
  }
}

double brute_rest_value(const std::vector<RiskFunctional>& rhos, std::size_t from, const Rv& rest,
                        const InfConvConfig& cfg);

// Minimizes rho_from(X1) + (rest of the chain applied to rest - X1) with X1
// enumerated over the given grids. Odometer order makes the lexicographically
// first combination win ties; the outer loop over the first outcome's grid is
// the unit of parallelism.
SearchBest brute_scan(const std::vector<RiskFunctional>& rhos, std::size_t from, const Rv& rest,
                      const std::vector<std::vector<double>>& grids, const InfConvConfig& cfg,
                      bool parallel) {
  const std::size_t n_out = rest.size();
  const auto task = [&](std::size_t first_idx) {
    SearchBest best;
    std::vector<std::size_t> combo(n_out, 0);
    combo[0] = first_idx;
    std::vector<double> vals(n_out);
    vals[0] = grids[0][first_idx];
    for (;;) {
      for (std::size_t i = 1; i < n_out; ++i) vals[i] = grids[i][combo[i]];
      const Rv x1(rest.space(), vals);
      double v = rhos[from](x1).raw();
      if (from + 2 == rhos.size()) {
        v += rhos[from + 1](rest - x1).raw();
      } else {
        v += brute_rest_value(rhos, from + 1, rest - x1, cfg);
      }
      take_better(best, v, combo);
      // Advance the odometer over outcomes 1..n-1; outcome 0 is fixed.
      std::size_t pos = n_out - 1;
      for (;;) {
        if (pos == 0) return best;
        if (++combo[pos] < grids[pos].size()) break;
        combo[pos] = 0;
        --pos;
      }
    }
  };
  const std::size_t n_tasks = grids[0].size();
  SearchBest best;
  if (parallel && n_tasks > 1) {
    const auto partials = parallel_map<SearchBest>(n_tasks, task);
    for (const auto& p : partials) take_better(best, p.value, p.combo);
  } else {
    for (std::size_t t = 0; t < n_tasks; ++t) {
      const SearchBest p = task(t);
      take_better(best, p.value, p.combo);
    }
  }
  return best;
}

double brute_rest_value(const std::vector<RiskFunctional>& rhos, std::size_t from, const Rv& rest,
                        const InfConvConfig& cfg) {
  if (from + 1 == rhos.size()) return rhos[from](rest).raw();
  InfConvConfig inner = cfg;
  inner.explicit_grids.clear();  // the remainder has its own span
  const auto grids = grids_at_scale(rest, inner, 1.0);
  return brute_scan(rhos, from, rest, grids, inner, /*parallel=*/false).value;
}

// Materializes the minimizing split for components from..n-1 (from >= 1; the
// top component is cut from the already-computed search combo) by re-running
// the deterministic search on each remainder.
void brute_collect(const std::vector<RiskFunctional>& rhos, std::size_t from, const Rv& rest,
                   const InfConvConfig& cfg, std::vector<Rv>& out) {
  if (from + 1 == rhos.size()) {
    out.push_back(rest);
    return;
  }
  InfConvConfig inner = cfg;
  inner.explicit_grids.clear();  // the remainder has its own span
  const auto grids = grids_at_scale(rest, inner, 1.0);
  const SearchBest best = brute_scan(rhos, from, rest, grids, inner, /*parallel=*/false);
  std::vector<double> vals(rest.size());
  for (std::size_t i = 0; i < rest.size(); ++i) vals[i] = grids[i][best.combo[i]];
  const Rv x1(rest.space(), vals);
  out.push_back(x1);
  brute_collect(rhos, from + 1, rest - x1, cfg, out);
}

}  // namespace

InfConvResult infconv_bruteforce(const std::vector<RiskFunctional>& rhos, const Rv& x,
                                 const InfConvConfig& cfg) {
  if (rhos.empty()) throw std::invalid_argument("infconv_bruteforce: no measures");
  cfg.validate(x.size());
  InfConvResult r;
  if (rhos.size() == 1) {
    r.value = rhos[0](x);
    r.allocation = Allocation{{x}};
    r.grid_tolerance = 0.0;
    return r;
  }

  const auto grids = grids_at_scale(x, cfg, 1.0);
  const SearchBest base = brute_scan(rhos, 0, x, grids, cfg, /*parallel=*/true);
  r.grid_tolerance = max_grid_spacing(grids);

  if (cfg.detect_divergence) {
    const double half = max_grid_half_width(grids);
    const double v2 = brute_scan(rhos, 0, x, grids_at_scale(x, cfg, 2.0), cfg, true).value;
    const double v4 = brute_scan(rhos, 0, x, grids_at_scale(x, cfg, 4.0), cfg, true).value;
    r.notes.push_back("widening probe optima: " + format_value(base.value) + ", " + format_value(v2) +
                      ", " + format_value(v4));
    const bool first_drop = base.value - v2 > cfg.slope_threshold * half;
    const bool second_drop = v2 - v4 > cfg.slope_threshold * (2.0 * half);
    if (first_drop && second_drop) {
      r.value = ExtReal::neg_inf();
      r.diverged = true;
      r.notes.push_back("optimum keeps falling as the search box widens; infimum declared unbounded");
      return r;
    }
  }

  r.value = base.value;
  std::vector<double> vals(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) vals[i] = grids[i][base.combo[i]];
  const Rv x1(x.space(), vals);
  std::vector<Rv> comps{x1};
  brute_collect(rhos, 1, x - x1, cfg, comps);
  r.allocation = Allocation{std::move(comps)};
  return r;
}

namespace {

// Distinct sorted values of x with the outcome -> rank map.
struct SortedProfile {
  std::vector<double> levels;      // u_1 < ... < u_r
  std::vector<std::size_t> rank;   // per outcome, index into levels
};

SortedProfile sorted_profile(const Rv& x) {
  SortedProfile p;
  std::vector<double> vals(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) vals[i] = x.value(i);
  std::vector<double> sorted = vals;
  std::sort(sorted.begin(), sorted.end());
  for (double v : sorted) {
    if (p.levels.empty() || v - p.levels.back() > 1e-12) p.levels.push_back(v);
  }
  p.rank.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto it = std::lower_bound(p.levels.begin(), p.levels.end(), vals[i] - 1e-12);
    p.rank[i] = static_cast<std::size_t>(it - p.levels.begin());
  }
  return p;
}

double comono_rest_value(const std::vector<RiskFunctional>& rhos, std::size_t from, const Rv& rest,
                         const InfConvConfig& cfg);

// Enumerates fractions (f_0, ..., f_{r-1}) on {0, 1/k, ..., 1}: component
// `from` receives f_0 of the base value u_1 and f_j of the j-th sorted
// increment, making it an increasing function of the remainder. Lexicographic
// odometer; parallel over the base fraction at the top level.
SearchBest comono_scan(const std::vector<RiskFunctional>& rhos, std::size_t from, const Rv& rest,
                       const SortedProfile& prof, const InfConvConfig& cfg, bool parallel) {
  const std::size_t slots = prof.levels.size();
  const std::size_t k = static_cast<std::size_t>(cfg.fraction_steps);
  double combos = 1.0;
  for (std::size_t s = 0; s < slots; ++s) combos *= static_cast<double>(k + 1);
  if (combos > 2e7)
    throw std::invalid_argument(
        "infconv_comonotone: split enumeration too large; lower the resolution or coarsen x");

  const auto task = [&](std::size_t base_idx) {
    SearchBest best;
    std::vector<std::size_t> combo(slots, 0);
    combo[0] = base_idx;
    std::vector<double> cum(slots);  // component value at each sorted level
    std::vector<double> vals(rest.size());
    for (;;) {
      cum[0] = (static_cast<double>(combo[0]) / static_cast<double>(k)) * prof.levels[0];
      for (std::size_t s = 1; s < slots; ++s) {
        const double frac = static_cast<double>(combo[s]) / static_cast<double>(k);
        cum[s] = cum[s - 1] + frac * (prof.levels[s] - prof.levels[s - 1]);
      }
      for (std::size_t i = 0; i < rest.size(); ++i) vals[i] = cum[prof.rank[i]];
      const Rv x1(rest.space(), vals);
      double v = rhos[from](x1).raw();
      if (from + 2 == rhos.size()) {
        v += rhos[from + 1](rest - x1).raw();
      } else {
        v += comono_rest_value(rhos, from + 1, rest - x1, cfg);
      }
      take_better(best, v, combo);
      std::size_t pos = slots - 1;
      for (;;) {
        if (pos == 0) return best;
        if (++combo[pos] <= k) break;
        combo[pos] = 0;
        --pos;
      }
    }
  };
  SearchBest best;
  if (parallel && k > 0) {
    const auto partials = parallel_map<SearchBest>(k + 1, task);
    for (const auto& p : partials) take_better(best, p.value, p.combo);
  } else {
    for (std::size_t t = 0; t <= k; ++t) {
      const SearchBest p = task(t);
      take_better(best, p.value, p.combo);
    }
  }
  return best;
}

double comono_rest_value(const std::vector<RiskFunctional>& rhos, std::size_t from, const Rv& rest,
                         const InfConvConfig& cfg) {
  if (from + 1 == rhos.size()) return rhos[from](rest).raw();
  return comono_scan(rhos, from, rest, sorted_profile(rest), cfg, /*parallel=*/false).value;
}

Rv comono_component(const Rv& rest, const SortedProfile& prof, const std::vector<std::size_t>& combo,
                    std::size_t k) {
  const std::size_t slots = prof.levels.size();
  std::vector<double> cum(slots);
  cum[0] = (static_cast<double>(combo[0]) / static_cast<double>(k)) * prof.levels[0];
  for (std::size_t s = 1; s < slots; ++s) {
    const double frac = static_cast<double>(combo[s]) / static_cast<double>(k);
    cum[s] = cum[s - 1] + frac * (prof.levels[s] - prof.levels[s - 1]);
  }
  std::vector<double> vals(rest.size());
  for (std::size_t i = 0; i < rest.size(); ++i) vals[i] = cum[prof.rank[i]];
  return Rv(rest.space(), vals);
}

void comono_collect(const std::vector<RiskFunctional>& rhos, std::size_t from, const Rv& rest,
                    const InfConvConfig& cfg, std::vector<Rv>& out) {
  if (from + 1 == rhos.size()) {
    out.push_back(rest);
    return;
  }
  const SortedProfile prof = sorted_profile(rest);
  const SearchBest best = comono_scan(rhos, from, rest, prof, cfg, /*parallel=*/false);
  const Rv x1 = comono_component(rest, prof, best.combo, static_cast<std::size_t>(cfg.fraction_steps));
  out.push_back(x1);
  comono_collect(rhos, from + 1, rest - x1, cfg, out);
}

}  // namespace

InfConvResult infconv_comonotone(const std::vector<RiskFunctional>& rhos, const Rv& x,
                                 const InfConvConfig& cfg) {
  if (rhos.empty()) throw std::invalid_argument("infconv_comonotone: no measures");
  cfg.validate(x.size());
  InfConvResult r;

  if (cfg.check_preconditions && rhos.size() > 1) {
    CheckConfig ccfg;
    ccfg.seed = cfg.seed;
    ccfg.trials = cfg.precondition_trials;
    bool all_ok = true;
    for (const auto& rho : rhos) {
      for (Axiom a : {Axiom::ssd_consistency, Axiom::cash_subadditivity}) {
        const CheckReport rep = check_axiom(a, rho, ccfg);
        if (!rep.pass) {
          all_ok = false;
          r.notes.push_back("precondition failed for '" + rho.name + "': " +
                            std::string(axiom_name(a)) +
                            "; the restricted search is heuristic for this measure");
        }
      }
    }
    if (all_ok) r.notes.push_back("preconditions verified: dominance consistency and cash bound");
  }

  if (rhos.size() == 1) {
    r.value = rhos[0](x);
    r.allocation = Allocation{{x}};
    r.grid_tolerance = 0.0;
    return r;
  }

  const SortedProfile prof = sorted_profile(x);
  InfConvConfig inner = cfg;
  inner.check_preconditions = false;
  const SearchBest best = comono_scan(rhos, 0, x, prof, inner, /*parallel=*/true);
  r.value = best.value;
  const double range = prof.levels.back() - prof.levels.front();
  r.grid_tolerance = static_cast<double>(rhos.size() - 1) * (range + std::abs(prof.levels.front())) /
                     static_cast<double>(cfg.fraction_steps);
  const Rv x1 = comono_component(x, prof, best.combo, static_cast<std::size_t>(cfg.fraction_steps));
  std::vector<Rv> comps{x1};
  comono_collect(rhos, 1, x - x1, inner, comps);
  r.allocation = Allocation{std::move(comps)};
  return r;
}

}  // namespace riskcal
