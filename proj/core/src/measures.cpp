#include "riskcal/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace riskcal {

namespace {

constexpr double kCumTol = 1e-12;

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

ExtReal var_value(const Rv& x, double t) { return Distribution(x).quantile(t); }

double lambda_var_value(const Rv& x, const LambdaFn& lf, LambdaVarMode mode) {
  const Distribution dist(x);

  if (mode == LambdaVarMode::primal) {
    // Candidate scan. The feasibility set {x : P(X<=x) >= L(x)} is upward
    // closed (the cdf increases while L decreases), so its infimum sits at an
    // atom of X or at a level breakpoint. Between consecutive candidates both
    // sides are constant, with the cdf frozen at its value AT the left
    // candidate and L frozen at its right limit there; testing
    // F(b) >= L(b+) therefore evaluates the predicate on (b, next) exactly —
    // the "just right of b" probe with the offset taken to its limit. Since
    // L(b+) <= L(b), that single test also covers attainment at b itself.
    std::vector<double> base;
    base.reserve(dist.atoms().size() + lf.breakpoints().size());
    for (const Atom& a : dist.atoms()) base.push_back(a.value);
    for (double b : lf.breakpoints()) base.push_back(b);
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end(),
                           [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
               base.end());
    for (double b : base) {
      if (dist.cdf(b) >= lf.right_limit(b) - kCumTol) return b;
    }
    throw std::logic_error("lambda_var: primal scan found no feasible candidate");
  }

  // Plateau envelopes. On plateau i (level v_i, interval (x_i, x_{i+1}]) the
  // objective q(v_i) OR x / q(v_i) AND x reduces in closed form to a max/min
  // against the plateau's endpoints, so both envelopes are exact.
  const std::size_t n = lf.plateau_count();
  if (mode == LambdaVarMode::inf_envelope) {
    ExtReal best = ExtReal::pos_inf();
    for (std::size_t i = 0; i < n; ++i) {
      best = emin(best, emax(dist.quantile(lf.values()[i]), lf.plateau_left(i)));
    }
    return best.finite_value();
  }
  ExtReal best = ExtReal::neg_inf();
  for (std::size_t i = 0; i < n; ++i) {
    best = emax(best, emin(dist.quantile(lf.values()[i]), lf.plateau_right(i)));
  }
  return best.finite_value();
}

double two_level_lambda_var_value(const Rv& x, double a, double b, double z) {
  if (!(0.0 < a && a < b && b < 1.0)) {
    throw std::invalid_argument("two_level_lambda_var: need 0 < a < b < 1");
  }
  const double qb = var_value(x, b).finite_value();
  const double qa = var_value(x.max_with(z), a).finite_value();
  return std::min(qb, qa);
}

double lambda_constraint_level(const LambdaFn& lf, double z) { return lf.right_limit(z); }

double expected_transformed_loss(const Rv& x, const PayoffFn& f, PayoffSide side) {
  return expected_transformed_loss(x, f, side, ProbabilityVector::from_space(*x.space()));
}

double expected_transformed_loss(const Rv& x, const PayoffFn& f, PayoffSide side,
                                 const ProbabilityVector& q) {
  if (q.size() != x.size()) {
    throw std::invalid_argument("expected_transformed_loss: weight count mismatch");
  }
  f.validate_on(x.values());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = x.value(i);
    s += q.weight(i) * (side == PayoffSide::insurer ? f(v) : v - f(v));
  }
  return s;
}

double alpha_meu_ce(const Rv& x, double alpha, double gamma, const std::vector<double>& lambdas,
                    const std::vector<ProbabilityVector>& q1, const std::vector<ProbabilityVector>& q2) {
  if (!(gamma > 0.0)) throw std::invalid_argument("alpha_meu_ce: gamma must be > 0");
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha_meu_ce: alpha outside [0,1]");
  if (lambdas.empty()) throw std::invalid_argument("alpha_meu_ce: empty scaling set");
  for (double l : lambdas) {
    if (l < 0.0 || l > 1.0) throw std::invalid_argument("alpha_meu_ce: scaling factors must lie in [0,1]");
  }
  if (alpha > 0.0 && q1.empty()) throw std::invalid_argument("alpha_meu_ce: empty pessimistic set");
  if (alpha < 1.0 && q2.empty()) throw std::invalid_argument("alpha_meu_ce: empty optimistic set");
  for (const auto& q : q1) {
    if (q.size() != x.size()) throw std::invalid_argument("alpha_meu_ce: pessimistic weight count mismatch");
  }
  for (const auto& q : q2) {
    if (q.size() != x.size()) throw std::invalid_argument("alpha_meu_ce: optimistic weight count mismatch");
  }

  double best = -std::numeric_limits<double>::infinity();
  for (double lam : lambdas) {
    const Rv expo = x.map([gamma, lam](double v) { return std::exp(gamma * lam * v); });
    double inner = 0.0;
    if (alpha > 0.0) {
      double worst = std::numeric_limits<double>::infinity();
      for (const auto& q : q1) worst = std::min(worst, q.expect(expo));
      inner += alpha * worst;
    }
    if (alpha < 1.0) {
      double besto = -std::numeric_limits<double>::infinity();
      for (const auto& q : q2) besto = std::max(besto, q.expect(expo));
      inner += (1.0 - alpha) * besto;
    }
    best = std::max(best, std::log(inner) / gamma);
  }
  return best;
}

namespace {

double choquet_impl(const Distribution& d, const std::function<double(double)>& t) {
  // Rank-based layer sum: with distinct values y_(1) > ... > y_(m) and
  // S_j = P(Y >= y_(j)), the integral is sum_j y_(j) (T(S_j) - T(S_{j-1})).
  const auto& atoms = d.atoms();
  double total = 0.0;
  double s_prev = 0.0;
  for (std::size_t r = atoms.size(); r-- > 0;) {
    const double below = (r == 0) ? 0.0 : atoms[r - 1].cum;
    const double s = 1.0 - below;
    total += atoms[r].value * (t(s) - t(s_prev));
    s_prev = s;
  }
  return total;
}

}  // namespace

double choquet_integral(const Rv& y, const DistortionFn& t) {
  return choquet_impl(Distribution(y), [&t](double u) { return t.at(u); });
}

double rdeu_ce(const Rv& x, const UtilityFn& ell, double alpha, const DistortionFn& t1,
               const DistortionFn& t2, const std::vector<double>& lambdas) {
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("rdeu_ce: alpha outside [0,1]");
  if (lambdas.empty()) throw std::invalid_argument("rdeu_ce: empty scaling set");
  for (double l : lambdas) {
    if (l < 0.0 || l > 1.0) throw std::invalid_argument("rdeu_ce: scaling factors must lie in [0,1]");
  }
  if (alpha > 0.0 && !t1.convex()) {
    throw std::invalid_argument("rdeu_ce: first distortion must carry the convex flag");
  }
  if (alpha < 1.0 && !t2.concave()) {
    throw std::invalid_argument("rdeu_ce: second distortion must carry the concave flag");
  }
  const auto t = [&](double u) { return alpha * t1.at(u) + (1.0 - alpha) * t2.at(u); };

  double best = -std::numeric_limits<double>::infinity();
  for (double lam : lambdas) {
    const Rv y = x.map([&ell, lam](double v) { return ell.value(lam * v); });
    best = std::max(best, ell.inverse(choquet_impl(Distribution(y), t)));
  }
  return best;
}

double eligible_asset_value(const Rv& x, const AcceptancePredicate& accept, double s0, const Rv& sT) {
  if (!accept) throw std::invalid_argument("eligible_asset: empty acceptance predicate");
  if (!(s0 > 0.0)) throw std::invalid_argument("eligible_asset: s0 must be > 0");
  if (!x.same_space(sT)) throw std::invalid_argument("eligible_asset: payoff on mismatched space");
  if (!(sT.ess_inf() > 0.0)) throw std::invalid_argument("eligible_asset: terminal prices must be > 0");

  const double bound = (x.sup_norm() / sT.ess_inf()) * s0 + 1.0;
  const auto pred = [&](double m) { return accept(x + sT * (-m / s0)); };

  // Monotonicity spot check along the search path: larger m shrinks the
  // position, so acceptance must be monotone in m.
  bool seen_true = false;
  for (int i = 0; i <= 4; ++i) {
    const double m = -bound + (2.0 * bound) * (static_cast<double>(i) / 4.0);
    const bool p = pred(m);
    if (seen_true && !p) {
      throw std::invalid_argument("eligible_asset: acceptance predicate is not monotone in the shift");
    }
    seen_true = seen_true || p;
  }

  double lo = -bound, hi = bound;
  if (!pred(hi)) {
    throw std::runtime_error("eligible_asset: no accepted shift within the bracket; result unbounded");
  }
  if (pred(lo)) {
    throw std::runtime_error("eligible_asset: acceptance persists at the lower bracket end; result unbounded");
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

// ---- factories ----

RiskFunctional make_var(double t) {
  if (t < -kCumTol || t > 1.0 + kCumTol) throw std::domain_error("make_var: level outside [0,1]");
  return RiskFunctional(
      "var:" + fmt_num(t), [t](const Rv& x) { return var_value(x, t); },
      {Axiom::monotonicity, Axiom::cash_additivity, Axiom::cash_subadditivity, Axiom::star_shapedness,
       Axiom::quasi_star_shapedness, Axiom::normalization, Axiom::quasi_normalization,
       Axiom::law_invariance, Axiom::fsd_consistency, Axiom::comonotonic_quasi_convexity,
       Axiom::sup_norm_lipschitz});
}

RiskFunctional make_es(double t) {
  if (t < -kCumTol || t > 1.0 + kCumTol) throw std::domain_error("make_es: level outside [0,1]");
  return RiskFunctional(
      "es:" + fmt_num(t), [t](const Rv& x) { return ExtReal(es_value(x, t)); },
      {Axiom::monotonicity, Axiom::cash_additivity, Axiom::cash_subadditivity, Axiom::convexity,
       Axiom::quasi_convexity, Axiom::star_shapedness, Axiom::quasi_star_shapedness, Axiom::normalization,
       Axiom::quasi_normalization, Axiom::law_invariance, Axiom::fsd_consistency, Axiom::ssd_consistency,
       Axiom::comonotonic_quasi_convexity, Axiom::sup_norm_lipschitz});
}

RiskFunctional make_mean() {
  return RiskFunctional(
      "mean", [](const Rv& x) { return ExtReal(x.mean()); },
      {Axiom::monotonicity, Axiom::cash_additivity, Axiom::cash_subadditivity, Axiom::convexity,
       Axiom::quasi_convexity, Axiom::star_shapedness, Axiom::quasi_star_shapedness, Axiom::normalization,
       Axiom::quasi_normalization, Axiom::law_invariance, Axiom::fsd_consistency, Axiom::ssd_consistency,
       Axiom::comonotonic_quasi_convexity, Axiom::sup_norm_lipschitz});
}

RiskFunctional make_entropic(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("make_entropic: gamma must be > 0");
  return RiskFunctional(
      "entropic:" + fmt_num(gamma),
      [gamma](const Rv& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          s += x.space()->prob(i) * std::exp(gamma * x.value(i));
        }
        return ExtReal(std::log(s) / gamma);
      },
      {Axiom::monotonicity, Axiom::cash_additivity, Axiom::cash_subadditivity, Axiom::convexity,
       Axiom::quasi_convexity, Axiom::normalization, Axiom::quasi_normalization, Axiom::law_invariance,
       Axiom::fsd_consistency, Axiom::ssd_consistency, Axiom::comonotonic_quasi_convexity,
       Axiom::sup_norm_lipschitz});
}

RiskFunctional make_min_mean_zero() {
  return RiskFunctional(
      "min_mean_0", [](const Rv& x) { return ExtReal(std::min(x.mean(), 0.0)); },
      {Axiom::monotonicity, Axiom::cash_subadditivity, Axiom::quasi_convexity,
       Axiom::quasi_star_shapedness, Axiom::quasi_normalization, Axiom::law_invariance,
       Axiom::fsd_consistency, Axiom::ssd_consistency, Axiom::comonotonic_quasi_convexity,
       Axiom::sup_norm_lipschitz});
}

RiskFunctional make_lambda_var(LambdaFn lf, LambdaVarMode mode) {
  std::string name = "lambda_var";
  if (mode == LambdaVarMode::inf_envelope) name += "/inf_envelope";
  if (mode == LambdaVarMode::sup_envelope) name += "/sup_envelope";
  return RiskFunctional(
      std::move(name), [lf = std::move(lf), mode](const Rv& x) { return ExtReal(lambda_var_value(x, lf, mode)); },
      {Axiom::monotonicity, Axiom::cash_subadditivity, Axiom::quasi_star_shapedness,
       Axiom::quasi_normalization, Axiom::law_invariance, Axiom::fsd_consistency,
       Axiom::sup_norm_lipschitz});
}

RiskFunctional make_two_level_lambda_var(double a, double b, double z) {
  if (!(0.0 < a && a < b && b < 1.0)) {
    throw std::invalid_argument("make_two_level_lambda_var: need 0 < a < b < 1");
  }
  return RiskFunctional(
      "two_level:" + fmt_num(a) + ":" + fmt_num(b) + ":" + fmt_num(z),
      [a, b, z](const Rv& x) { return ExtReal(two_level_lambda_var_value(x, a, b, z)); },
      {Axiom::monotonicity, Axiom::cash_subadditivity, Axiom::quasi_star_shapedness,
       Axiom::quasi_normalization, Axiom::law_invariance, Axiom::fsd_consistency,
       Axiom::sup_norm_lipschitz});
}

RiskFunctional make_expected_transformed_loss(PayoffFn f, PayoffSide side) {
  const std::string side_name = side == PayoffSide::insurer ? "insurer" : "policyholder";
  return RiskFunctional(
      side_name + ":" + f.label(),
      [f = std::move(f), side](const Rv& x) { return ExtReal(expected_transformed_loss(x, f, side)); },
      {Axiom::monotonicity, Axiom::cash_subadditivity, Axiom::law_invariance, Axiom::fsd_consistency,
       Axiom::sup_norm_lipschitz});
}

RiskFunctional make_put_premium() {
  RiskFunctional f = make_expected_transformed_loss(PayoffFn::positive_part(), PayoffSide::insurer);
  f.name = "put_premium";
  f.claims.insert(Axiom::convexity);
  f.claims.insert(Axiom::quasi_convexity);
  f.claims.insert(Axiom::ssd_consistency);
  f.claims.insert(Axiom::comonotonic_quasi_convexity);
  return f;
}

RiskFunctional make_alpha_meu_ce(double alpha, double gamma, std::vector<double> lambdas,
                                 std::vector<ProbabilityVector> q1, std::vector<ProbabilityVector> q2) {
  return RiskFunctional(
      "alpha_meu:" + fmt_num(alpha) + ":" + fmt_num(gamma),
      [alpha, gamma, lambdas = std::move(lambdas), q1 = std::move(q1), q2 = std::move(q2)](const Rv& x) {
        return ExtReal(alpha_meu_ce(x, alpha, gamma, lambdas, q1, q2));
      },
      {Axiom::monotonicity, Axiom::cash_subadditivity, Axiom::quasi_star_shapedness});
}

RiskFunctional make_rdeu_ce(UtilityFn ell, double alpha, DistortionFn t1, DistortionFn t2,
                            std::vector<double> lambdas) {
  return RiskFunctional(
      "rdeu:" + fmt_num(alpha) + ":" + ell.label(),
      [ell = std::move(ell), alpha, t1 = std::move(t1), t2 = std::move(t2),
       lambdas = std::move(lambdas)](const Rv& x) {
        return ExtReal(rdeu_ce(x, ell, alpha, t1, t2, lambdas));
      },
      {Axiom::monotonicity, Axiom::cash_subadditivity, Axiom::law_invariance,
       Axiom::quasi_star_shapedness});
}

RiskFunctional make_eligible_asset(AcceptancePredicate accept, double s0, Rv sT, std::string label) {
  return RiskFunctional(
      "eligible:" + label,
      [accept = std::move(accept), s0, sT = std::move(sT)](const Rv& x) {
        return ExtReal(eligible_asset_value(x, accept, s0, sT));
      },
      {Axiom::monotonicity});
}

}  // namespace riskcal
