#pragma once

#include <functional>
#include <string>
#include <vector>

#include "riskcal/distribution.hpp"
#include "riskcal/ext_real.hpp"
#include "riskcal/lambda_fn.hpp"
#include "riskcal/payoffs.hpp"
#include "riskcal/risk_functional.hpp"

namespace riskcal {

// ---- quantile family ----

// Left quantile at level t; -inf at t=0, essential supremum at t=1.
ExtReal var_value(const Rv& x, double t);

// Expected shortfall: mean of the quantile curve over (t,1]; mean at t=0,
// essential supremum at t=1.
double es_value(const Rv& x, double t);  // re-exported from distribution.hpp

enum class LambdaVarMode { primal, inf_envelope, sup_envelope };

// Adaptive-level quantile inf{x : P(X <= x) >= L(x)}.
//   primal        — scan of the monotone feasibility predicate over the exact
//                   candidate set (atoms, breakpoints, right-of-breakpoint probes);
//   inf_envelope  — min over plateaus i of max(q(v_i), left_i);
//   sup_envelope  — max over plateaus i of min(q(v_i), right_{i}),
// where q(v) is the left quantile of X at level v. The three agree.
double lambda_var_value(const Rv& x, const LambdaFn& lf, LambdaVarMode mode = LambdaVarMode::primal);

// Closed form for the two-level step b*1{x<=z} + a*1{x>z}:
//   min( q_b(X), q_a(X max z) ).
double two_level_lambda_var_value(const Rv& x, double a, double b, double z);

// Quantile level for the reduced feasibility test: the right limit L(z+) of
// the level function at the constraint threshold. Reading the step from the
// right is what makes "adaptive-level quantile of X <= z" equivalent to
// "plain quantile of X at this level <= z" when z sits exactly on a jump.
double lambda_constraint_level(const LambdaFn& lf, double z);

// ---- transformed-loss family ----

enum class PayoffSide { insurer, policyholder };

// E_Q[f(X)] (insurer) or E_Q[X - f(X)] (policyholder). The payoff transform is
// validated on the support of X; Q defaults to the physical probabilities.
double expected_transformed_loss(const Rv& x, const PayoffFn& f, PayoffSide side);
double expected_transformed_loss(const Rv& x, const PayoffFn& f, PayoffSide side, const ProbabilityVector& q);

// ---- certainty equivalents ----

// sup over scaling factors lam in I of
//   (1/gamma) log( alpha * min_{Q1} E_{Q1} e^{gamma lam X}
//                + (1-alpha) * max_{Q2} E_{Q2} e^{gamma lam X} ).
double alpha_meu_ce(const Rv& x, double alpha, double gamma, const std::vector<double>& lambdas,
                    const std::vector<ProbabilityVector>& q1, const std::vector<ProbabilityVector>& q2);

// Exact Choquet integral of y under the distorted probability T(P(.)).
double choquet_integral(const Rv& y, const DistortionFn& t);

// sup over lam in I of ell^{-1}( Choquet of ell(lam X) under
// alpha*T1 + (1-alpha)*T2 ), with T1 convex and T2 concave.
double rdeu_ce(const Rv& x, const UtilityFn& ell, double alpha, const DistortionFn& t1,
               const DistortionFn& t2, const std::vector<double>& lambdas);

// ---- eligible-asset functional ----

using AcceptancePredicate = std::function<bool(const Rv&)>;

// Smallest capital m such that X - (m / s0) * sT is accepted. Bisection to
// 1e-9 inside the documented bracket; the predicate is spot-checked for
// monotonicity along the search path.
double eligible_asset_value(const Rv& x, const AcceptancePredicate& accept, double s0, const Rv& sT);

// ---- factory catalog ----

RiskFunctional make_var(double t);
RiskFunctional make_es(double t);
RiskFunctional make_mean();
RiskFunctional make_entropic(double gamma);
RiskFunctional make_min_mean_zero();  // min(E[X], 0)
RiskFunctional make_lambda_var(LambdaFn lf, LambdaVarMode mode = LambdaVarMode::primal);
RiskFunctional make_two_level_lambda_var(double a, double b, double z);
RiskFunctional make_expected_transformed_loss(PayoffFn f, PayoffSide side);
RiskFunctional make_put_premium();  // E[X+]
RiskFunctional make_alpha_meu_ce(double alpha, double gamma, std::vector<double> lambdas,
                                 std::vector<ProbabilityVector> q1, std::vector<ProbabilityVector> q2);
RiskFunctional make_rdeu_ce(UtilityFn ell, double alpha, DistortionFn t1, DistortionFn t2,
                            std::vector<double> lambdas);
RiskFunctional make_eligible_asset(AcceptancePredicate accept, double s0, Rv sT, std::string label);

}  // namespace riskcal
