#include "riskcal/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "riskcal/dominance.hpp"
#include "riskcal/rng.hpp"

namespace riskcal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double eval_raw(const RiskFunctional& rho, const Rv& x) { return rho(x).raw(); }

// w*a + (1-w)*b with zero-weight terms dropped exactly; NaN signals an
// indeterminate mix of opposite infinities.
double affine_mix(double w, double a, double b) {
  if (w <= 0.0) return b;
  if (w >= 1.0) return a;
  return w * a + (1.0 - w) * b;
}

bool is_uniform_space(const FiniteSpace& s) {
  const double want = 1.0 / static_cast<double>(s.size());
  for (double p : s.probs()) {
    if (std::abs(p - want) > 1e-12) return false;
  }
  return true;
}

bool needs_uniform_space(Axiom a) {
  return a == Axiom::law_invariance || a == Axiom::fsd_consistency || a == Axiom::ssd_consistency;
}

const Rv& require_x(const TrialInputs& in) {
  if (!in.x) throw std::invalid_argument("axiom instance: missing x");
  return *in.x;
}
const Rv& require_y(const TrialInputs& in) {
  if (!in.y) throw std::invalid_argument("axiom instance: missing y");
  return *in.y;
}
double require_lambda(const TrialInputs& in) {
  if (!in.lambda) throw std::invalid_argument("axiom instance: missing lambda");
  if (*in.lambda < 0.0 || *in.lambda > 1.0) {
    throw std::invalid_argument("axiom instance: lambda outside [0,1]");
  }
  return *in.lambda;
}
double require_m(const TrialInputs& in) {
  if (!in.m) throw std::invalid_argument("axiom instance: missing m");
  if (*in.m < 0.0) throw std::invalid_argument("axiom instance: m must be >= 0");
  return *in.m;
}
double require_t(const TrialInputs& in) {
  if (!in.t) throw std::invalid_argument("axiom instance: missing t");
  return *in.t;
}

SidePair make_pair_checked(double lhs, double rhs) {
  SidePair s;
  s.lhs = lhs;
  s.rhs = rhs;
  s.comparable = !std::isnan(lhs) && !std::isnan(rhs);
  return s;
}

}  // namespace

bool is_equality_axiom(Axiom a) noexcept {
  return a == Axiom::cash_additivity || a == Axiom::normalization ||
         a == Axiom::quasi_normalization || a == Axiom::law_invariance;
}

SidePair evaluate_axiom_instance(Axiom a, const RiskFunctional& rho, const TrialInputs& in) {
  switch (a) {
    case Axiom::monotonicity: {
      return make_pair_checked(eval_raw(rho, require_x(in)), eval_raw(rho, require_y(in)));
    }
    case Axiom::cash_additivity:
    case Axiom::cash_subadditivity: {
      const Rv& x = require_x(in);
      const double m = require_m(in);
      return make_pair_checked(eval_raw(rho, x + m), eval_raw(rho, x) + m);
    }
    case Axiom::convexity: {
      const Rv& x = require_x(in);
      const Rv& y = require_y(in);
      const double lam = require_lambda(in);
      const Rv mix = x * lam + y * (1.0 - lam);
      return make_pair_checked(eval_raw(rho, mix),
                               affine_mix(lam, eval_raw(rho, x), eval_raw(rho, y)));
    }
    case Axiom::quasi_convexity:
    case Axiom::comonotonic_quasi_convexity: {
      const Rv& x = require_x(in);
      const Rv& y = require_y(in);
      const double lam = require_lambda(in);
      const Rv mix = x * lam + y * (1.0 - lam);
      return make_pair_checked(eval_raw(rho, mix),
                               std::max(eval_raw(rho, x), eval_raw(rho, y)));
    }
    case Axiom::star_shapedness: {
      const Rv& x = require_x(in);
      const double lam = require_lambda(in);
      const double at_zero = eval_raw(rho, Rv::constant(x.space(), 0.0));
      return make_pair_checked(eval_raw(rho, x * lam),
                               affine_mix(lam, eval_raw(rho, x), at_zero));
    }
    case Axiom::quasi_star_shapedness: {
      const Rv& x = require_x(in);
      const double lam = require_lambda(in);
      const double t = require_t(in);
      const Rv mix = x * lam + (1.0 - lam) * t;
      const double at_t = eval_raw(rho, Rv::constant(x.space(), t));
      return make_pair_checked(eval_raw(rho, mix), std::max(eval_raw(rho, x), at_t));
    }
    case Axiom::normalization:
    case Axiom::quasi_normalization: {
      return make_pair_checked(eval_raw(rho, require_x(in)), require_t(in));
    }
    case Axiom::law_invariance: {
      return make_pair_checked(eval_raw(rho, require_x(in)), eval_raw(rho, require_y(in)));
    }
    case Axiom::fsd_consistency:
    case Axiom::ssd_consistency: {
      // x stores the dominant variable, y the dominated one; consistency
      // demands rho(y) <= rho(x).
      return make_pair_checked(eval_raw(rho, require_y(in)), eval_raw(rho, require_x(in)));
    }
    case Axiom::sup_norm_lipschitz: {
      const Rv& x = require_x(in);
      const Rv& y = require_y(in);
      const double diff = eval_raw(rho, x) - eval_raw(rho, y);
      return make_pair_checked(std::abs(diff), (x - y).sup_norm());
    }
  }
  throw std::invalid_argument("evaluate_axiom_instance: unknown axiom");
}

namespace {

bool violates(Axiom a, const SidePair& s, double tol) {
  if (!s.comparable) return false;
  if (is_equality_axiom(a)) {
    if (s.lhs == s.rhs) return false;  // covers matching infinities
    if (!std::isfinite(s.lhs) || !std::isfinite(s.rhs)) return true;
    return std::abs(s.lhs - s.rhs) > tol;
  }
  return s.lhs > s.rhs + tol;
}

std::string detail_for(Axiom a, const TrialInputs& in, const SidePair& s) {
  const std::string L = fmt(s.lhs), R = fmt(s.rhs);
  switch (a) {
    case Axiom::monotonicity:
      return "x <= y pointwise but rho(x) = " + L + " > rho(y) = " + R;
    case Axiom::cash_additivity:
      return "rho(x + m) = " + L + " differs from rho(x) + m = " + R + " at m = " + fmt(*in.m);
    case Axiom::cash_subadditivity:
      return "rho(x + m) = " + L + " > rho(x) + m = " + R + " at m = " + fmt(*in.m);
    case Axiom::convexity:
      return "rho(lam x + (1-lam) y) = " + L + " > lam rho(x) + (1-lam) rho(y) = " + R +
             " at lam = " + fmt(*in.lambda);
    case Axiom::quasi_convexity:
      return "rho(lam x + (1-lam) y) = " + L + " > max{rho(x), rho(y)} = " + R +
             " at lam = " + fmt(*in.lambda);
    case Axiom::star_shapedness:
      return "rho(lam x) = " + L + " > lam rho(x) + (1-lam) rho(0) = " + R +
             " at lam = " + fmt(*in.lambda);
    case Axiom::quasi_star_shapedness:
      return "rho(lam x + (1-lam) t) = " + L + " > max{rho(x), rho(t)} = " + R + " at lam = " +
             fmt(*in.lambda) + ", t = " + fmt(*in.t);
    case Axiom::normalization:
      return "rho(t) = " + L + " differs from t = " + R;
    case Axiom::quasi_normalization:
      return "rho(t) = " + L + " differs from t = " + R + " with t inside the estimated range";
    case Axiom::law_invariance:
      return "equal laws but rho(x) = " + L + " differs from rho(y) = " + R;
    case Axiom::fsd_consistency:
      return "x first-order dominates y but rho(y) = " + L + " > rho(x) = " + R;
    case Axiom::ssd_consistency:
      return "x second-order dominates y but rho(y) = " + L + " > rho(x) = " + R;
    case Axiom::comonotonic_quasi_convexity:
      return "comonotonic pair: rho(lam x + (1-lam) y) = " + L + " > max{rho(x), rho(y)} = " + R +
             " at lam = " + fmt(*in.lambda);
    case Axiom::sup_norm_lipschitz:
      return "|rho(x) - rho(y)| = " + L + " > ||x - y||_sup = " + R;
  }
  return "violation: " + L + " vs " + R;
}

class TrialSampler {
 public:
  TrialSampler(Axiom axiom, const CheckConfig& cfg, std::uint64_t stream)
      : axiom_(axiom), cfg_(cfg), rng_(cfg.seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1))) {
    // Small constants grid for the star family's t parameter; 9 points makes
    // the (lambda, t) product cycle fully in 45 trials.
    t_grid_.resize(9);
    for (int i = 0; i < 9; ++i) {
      t_grid_[static_cast<std::size_t>(i)] =
          cfg.value_lo + (cfg.value_hi - cfg.value_lo) * i / 8.0;
    }
  }

  TrialInputs sample(int i) {
    switch (axiom_) {
      case Axiom::monotonicity: {
        TrialInputs in;
        const SpacePtr sp = pick_space();
        in.x = rng_.rv(sp, cfg_.value_lo, cfg_.value_hi);
        const double reach = 0.5 * (cfg_.value_hi - cfg_.value_lo);
        Rv bump(sp, rng_.values(sp->size(), 0.0, reach));
        in.y = *in.x + bump;
        return in;
      }
      case Axiom::cash_additivity:
      case Axiom::cash_subadditivity: {
        TrialInputs in;
        in.x = rng_.rv(pick_space(), cfg_.value_lo, cfg_.value_hi);
        in.m = cfg_.m_grid[static_cast<std::size_t>(i) % cfg_.m_grid.size()];
        return in;
      }
      case Axiom::convexity:
      case Axiom::quasi_convexity: {
        TrialInputs in;
        const SpacePtr sp = pick_space();
        in.x = rng_.rv(sp, cfg_.value_lo, cfg_.value_hi);
        in.y = rng_.rv(sp, cfg_.value_lo, cfg_.value_hi);
        in.lambda = cycle_lambda(i);
        return in;
      }
      case Axiom::star_shapedness: {
        TrialInputs in;
        in.x = rng_.rv(pick_space(), cfg_.value_lo, cfg_.value_hi);
        in.lambda = cycle_lambda(i);
        return in;
      }
      case Axiom::quasi_star_shapedness: {
        TrialInputs in;
        in.x = rng_.rv(pick_space(), cfg_.value_lo, cfg_.value_hi);
        in.lambda = cycle_lambda(i);
        in.t = t_grid_[static_cast<std::size_t>(i) % t_grid_.size()];
        return in;
      }
      case Axiom::law_invariance: {
        TrialInputs in;
        const SpacePtr sp = pick_space();
        in.x = rng_.rv(sp, cfg_.value_lo, cfg_.value_hi);
        std::vector<double> shuffled = in.x->values();
        rng_.shuffle(shuffled);
        in.y = Rv(sp, std::move(shuffled));
        return in;
      }
      case Axiom::fsd_consistency:
        return sample_fsd_pair();
      case Axiom::ssd_consistency:
        return sample_ssd_pair(i);
      case Axiom::comonotonic_quasi_convexity: {
        const SpacePtr sp = pick_space();
        const Rv a = rng_.rv(sp, cfg_.value_lo, cfg_.value_hi);
        const Rv b = rng_.rv(sp, cfg_.value_lo, cfg_.value_hi);
        auto [ac, bc] = comonotone_rearrangement(a, b);
        TrialInputs in;
        in.x = std::move(ac);
        in.y = std::move(bc);
        in.lambda = cycle_lambda(i);
        return in;
      }
      case Axiom::sup_norm_lipschitz: {
        TrialInputs in;
        const SpacePtr sp = pick_space();
        in.x = rng_.rv(sp, cfg_.value_lo, cfg_.value_hi);
        in.y = rng_.rv(sp, cfg_.value_lo, cfg_.value_hi);
        return in;
      }
      case Axiom::normalization:
      case Axiom::quasi_normalization:
        break;  // handled by the constants sweep, not by sampling
    }
    throw std::logic_error("TrialSampler: axiom has no random sampler");
  }

 private:
  SpacePtr pick_space() {
    if (cfg_.fixed_space) {
      if (needs_uniform_space(axiom_) && !is_uniform_space(*cfg_.fixed_space)) {
        throw std::invalid_argument(
            "check_axiom: law/dominance axioms need a uniform fixed space");
      }
      return cfg_.fixed_space;
    }
    const std::size_t n = cfg_.space_sizes[rng_.index(0, cfg_.space_sizes.size() - 1)];
    if (needs_uniform_space(axiom_)) return FiniteSpace::uniform(n);
    return rng_.index(0, 1) == 0 ? FiniteSpace::uniform(n) : rng_.space(n);
  }

  double cycle_lambda(int i) {
    return cfg_.lambda_grid[static_cast<std::size_t>(i) % cfg_.lambda_grid.size()];
  }

  // Dominant x built over the dominated y: sorted values shifted up by
  // nonnegative amounts, then relabeled. Sorted-vector domination implies
  // quantile domination at every level.
  TrialInputs sample_fsd_pair() {
    const SpacePtr sp = pick_space();
    TrialInputs in;
    in.y = rng_.rv(sp, cfg_.value_lo, cfg_.value_hi);
    std::vector<double> xs = in.y->values();
    std::sort(xs.begin(), xs.end());
    const double reach = 0.25 * (cfg_.value_hi - cfg_.value_lo);
    for (auto& v : xs) v += rng_.uniform(0.0, reach);
    rng_.shuffle(xs);
    in.x = Rv(sp, std::move(xs));
    return in;
  }

  // Three rotating constructions, each yielding x second-order dominating y.
  TrialInputs sample_ssd_pair(int i) {
    const SpacePtr sp = pick_space();
    TrialInputs in;
    switch (i % 3) {
      case 0: {  // comonotone rearrangement of a sum dominates the sum
        const Rv a = rng_.rv(sp, cfg_.value_lo, cfg_.value_hi);
        const Rv b = rng_.rv(sp, cfg_.value_lo, cfg_.value_hi);
        auto [ac, bc] = comonotone_rearrangement(a, b);
        in.x = ac + bc;
        in.y = a + b;
        return in;
      }
      case 1:
      default: {  // averaging over partition blocks is dominated by the original
        const Rv x = rng_.rv(sp, cfg_.value_lo, cfg_.value_hi);
        std::vector<double> ys(sp->size());
        std::size_t lo = 0;
        while (lo < sp->size()) {
          std::size_t hi = lo;
          while (hi + 1 < sp->size() && rng_.index(0, 1) == 1) ++hi;
          double mean = 0.0;
          for (std::size_t k = lo; k <= hi; ++k) mean += x.value(k);
          mean /= static_cast<double>(hi - lo + 1);
          for (std::size_t k = lo; k <= hi; ++k) ys[k] = mean;
          lo = hi + 1;
        }
        in.x = x;
        in.y = Rv(sp, std::move(ys));
        return in;
      }
      case 2: {  // random pair kept only when dominance verifies exactly
        for (int attempt = 0; attempt < 20; ++attempt) {
          Rv a = rng_.rv(sp, cfg_.value_lo, cfg_.value_hi);
          Rv b = rng_.rv(sp, cfg_.value_lo, cfg_.value_hi);
          if (ssd_dominates(a, b)) {
            in.x = std::move(a);
            in.y = std::move(b);
            return in;
          }
          if (ssd_dominates(b, a)) {
            in.x = std::move(b);
            in.y = std::move(a);
            return in;
          }
        }
        return sample_ssd_pair(i + 2);  // fall back to the coarsening route
      }
    }
  }

  Axiom axiom_;
  const CheckConfig& cfg_;
  Rng rng_;
  std::vector<double> t_grid_;
};

}  // namespace

void CheckConfig::validate() const {
  if (trials <= 0) throw std::invalid_argument("CheckConfig: trials must be positive");
  if (space_sizes.empty()) throw std::invalid_argument("CheckConfig: no space sizes");
  for (auto n : space_sizes) {
    if (n == 0) throw std::invalid_argument("CheckConfig: zero space size");
  }
  if (!(value_lo < value_hi)) throw std::invalid_argument("CheckConfig: empty value range");
  if (lambda_grid.empty() || m_grid.empty()) throw std::invalid_argument("CheckConfig: empty grid");
  for (double l : lambda_grid) {
    if (l < 0.0 || l > 1.0) throw std::invalid_argument("CheckConfig: lambda grid outside [0,1]");
  }
  for (double m : m_grid) {
    if (m < 0.0) throw std::invalid_argument("CheckConfig: m grid must be nonnegative");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("CheckConfig: tolerance must be positive");
  if (constants_points < 2) throw std::invalid_argument("CheckConfig: need at least two constants");
}

bool witness_replays(const Witness& w, const RiskFunctional& rho, double tol) {
  return violates(w.axiom, evaluate_axiom_instance(w.axiom, rho, w.inputs), tol);
}

RangeEstimate estimate_range(const RiskFunctional& rho, const CheckConfig& cfg) {
  cfg.validate();
  const SpacePtr sp = cfg.fixed_space ? cfg.fixed_space : FiniteSpace::uniform(2);

  RangeEstimate est;
  est.lo = kInf;
  est.hi = -kInf;

  const auto sweep = [&](double lo, double hi, double& out_lo, double& out_hi) {
    out_lo = kInf;
    out_hi = -kInf;
    for (int i = 0; i < cfg.constants_points; ++i) {
      const double c = lo + (hi - lo) * i / static_cast<double>(cfg.constants_points - 1);
      const double v = eval_raw(rho, Rv::constant(sp, c));
      out_lo = std::min(out_lo, v);
      out_hi = std::max(out_hi, v);
    }
  };

  double lo1, hi1;
  sweep(cfg.value_lo, cfg.value_hi, lo1, hi1);
  est.lo = lo1;
  est.hi = hi1;

  // Sampled variables refine the estimate inside the base range.
  Rng rng(cfg.seed ^ 0xA5A5A5A5ULL);
  for (int i = 0; i < cfg.trials; ++i) {
    const SpacePtr s =
        cfg.fixed_space
            ? cfg.fixed_space
            : FiniteSpace::uniform(cfg.space_sizes[rng.index(0, cfg.space_sizes.size() - 1)]);
    const double v = eval_raw(rho, rng.rv(s, cfg.value_lo, cfg.value_hi));
    est.lo = std::min(est.lo, v);
    est.hi = std::max(est.hi, v);
  }

  // Unbounded sides keep growing when the constants grid span doubles twice.
  const double mid = 0.5 * (cfg.value_lo + cfg.value_hi);
  const double half = 0.5 * (cfg.value_hi - cfg.value_lo);
  double lo2, hi2, lo4, hi4;
  sweep(mid - 2.0 * half, mid + 2.0 * half, lo2, hi2);
  sweep(mid - 4.0 * half, mid + 4.0 * half, lo4, hi4);
  const double step = cfg.tolerance;
  est.lo_unbounded = std::isinf(est.lo) || (lo2 < lo1 - step && lo4 < lo2 - step);
  est.hi_unbounded = std::isinf(est.hi) || (hi2 > hi1 + step && hi4 > hi2 + step);
  if (std::isinf(est.lo)) est.lo = lo1;
  if (std::isinf(est.hi)) est.hi = hi1;
  return est;
}

namespace {

// Shared skeleton: evaluate pins first, then the axiom-specific trial stream.
CheckReport run_trials(Axiom a, const RiskFunctional& rho, const CheckConfig& cfg,
                       const std::function<bool(TrialInputs&)>& next_inputs, int planned_trials) {
  CheckReport rep;
  rep.axiom = a;
  rep.functional = rho.name;
  int skipped = 0;

  const auto evaluate_one = [&](const TrialInputs& in) -> bool {
    const SidePair s = evaluate_axiom_instance(a, rho, in);
    ++rep.trials_run;
    if (!s.comparable) {
      ++skipped;
      return false;
    }
    if (violates(a, s, cfg.tolerance)) {
      Witness w;
      w.axiom = a;
      w.inputs = in;
      w.lhs = s.lhs;
      w.rhs = s.rhs;
      w.detail = detail_for(a, in, s);
      rep.witness = std::move(w);
      return true;
    }
    return false;
  };

  for (const TrialInputs& pin : cfg.pins) {
    // A pin lacking this axiom's required fields is skipped with a note, so
    // one configuration can carry pins aimed at several axioms.
    try {
      if (evaluate_one(pin)) break;
    } catch (const std::invalid_argument& e) {
      rep.notes.push_back(std::string("pin skipped: ") + e.what());
    }
  }
  if (!rep.witness) {
    TrialInputs in;
    for (int i = 0; i < planned_trials; ++i) {
      if (!next_inputs(in)) break;
      if (evaluate_one(in)) break;
    }
  }

  rep.pass = !rep.witness;
  if (skipped > 0) {
    rep.notes.push_back(std::to_string(skipped) + " trial(s) skipped as indeterminate (opposite infinities)");
  }
  return rep;
}

}  // namespace

CheckReport check_axiom(Axiom a, const RiskFunctional& rho, const CheckConfig& cfg) {
  cfg.validate();

  if (a == Axiom::normalization || a == Axiom::quasi_normalization) {
    // Constants sweep; the quasi form restricts to the estimated value range.
    RangeEstimate range;
    if (a == Axiom::quasi_normalization) range = estimate_range(rho, cfg);

    const SpacePtr sp = cfg.fixed_space ? cfg.fixed_space : FiniteSpace::uniform(2);
    int next = 0;
    int in_range_points = 0;
    const auto gen = [&](TrialInputs& in) {
      while (next < cfg.constants_points) {
        const double t = cfg.value_lo + (cfg.value_hi - cfg.value_lo) * next /
                                            static_cast<double>(cfg.constants_points - 1);
        ++next;
        if (a == Axiom::quasi_normalization) {
          const bool lo_ok = range.lo_unbounded || t >= range.lo - 1e-9;
          const bool hi_ok = range.hi_unbounded || t <= range.hi + 1e-9;
          if (!lo_ok || !hi_ok) continue;
        }
        in = TrialInputs{};
        in.x = Rv::constant(sp, t);
        in.t = t;
        ++in_range_points;
        return true;
      }
      return false;
    };
    CheckReport rep = run_trials(a, rho, cfg, gen, cfg.constants_points);
    if (a == Axiom::quasi_normalization) {
      rep.range = range;
      if (in_range_points == 0) {
        rep.notes.push_back("no constants-grid point fell inside the estimated range");
      }
    }
    return rep;
  }

  TrialSampler sampler(a, cfg, static_cast<std::uint64_t>(a));
  int i = 0;
  const auto gen = [&](TrialInputs& in) {
    in = sampler.sample(i++);
    return true;
  };
  return run_trials(a, rho, cfg, gen, cfg.trials);
}

RiskFunctional pointwise_min(std::vector<RiskFunctional> family, std::string name) {
  if (family.empty()) throw std::invalid_argument("pointwise_min: empty family");

  // Only properties preserved by pointwise minima survive into the claims.
  static const std::set<Axiom> kMinStable = {
      Axiom::monotonicity,      Axiom::cash_additivity,  Axiom::cash_subadditivity,
      Axiom::normalization,     Axiom::quasi_normalization, Axiom::law_invariance,
      Axiom::fsd_consistency,   Axiom::ssd_consistency,  Axiom::sup_norm_lipschitz};
  std::set<Axiom> claims = family.front().claims;
  for (const auto& f : family) {
    std::set<Axiom> keep;
    for (Axiom ax : claims) {
      if (f.claims_axiom(ax) && kMinStable.count(ax) != 0) keep.insert(ax);
    }
    claims = std::move(keep);
  }

  auto shared = std::make_shared<std::vector<RiskFunctional>>(std::move(family));
  return RiskFunctional(
      std::move(name),
      [shared](const Rv& x) {
        ExtReal best = ExtReal::pos_inf();
        for (const auto& f : *shared) best = emin(best, f(x));
        return best;
      },
      std::move(claims));
}

ClosureReport check_min_closure(const std::vector<RiskFunctional>& family,
                                const std::vector<Axiom>& axioms, const CheckConfig& cfg) {
  if (family.empty()) throw std::invalid_argument("check_min_closure: empty family");
  if (axioms.empty()) throw std::invalid_argument("check_min_closure: no axioms listed");

  ClosureReport out;
  out.preconditions_ok = true;
  for (const RiskFunctional& member : family) {
    for (Axiom a : axioms) {
      CheckReport rep = check_axiom(a, member, cfg);
      out.preconditions_ok = out.preconditions_ok && rep.pass;
      out.premise.push_back(std::move(rep));
    }
  }
  if (!out.preconditions_ok) {
    out.pass = false;
    return out;
  }

  std::string name = "min(";
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i > 0) name += ",";
    name += family[i].name;
  }
  name += ")";
  const RiskFunctional mn = pointwise_min(family, std::move(name));

  out.pass = true;
  for (Axiom a : axioms) {
    CheckReport rep = check_axiom(a, mn, cfg);
    out.pass = out.pass && rep.pass;
    out.closure.push_back(std::move(rep));
  }
  return out;
}

}  // namespace riskcal
