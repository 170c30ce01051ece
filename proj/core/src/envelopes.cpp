#include "riskcal/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "riskcal/distribution.hpp"
#include "riskcal/parallel.hpp"

namespace riskcal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_space(const char* who, const Rv& x, const Rv& z) {
  if (!x.same_space(z)) {
    throw std::invalid_argument(std::string(who) + ": space mismatch between input and anchor");
  }
}

std::string member_name(EnvelopeKind kind, const RiskFunctional& rho) {
  return std::string(envelope_kind_name(kind)) + "(" + rho.name + ")";
}

// Merged cumulative-probability grid of two laws; 0 and 1 are appended only
// when asked for (expected-shortfall levels live on [0,1], quantile levels on
// (0,1]).
std::vector<double> merged_levels(const Distribution& a, const Distribution& b,
                                  bool include_zero) {
  std::vector<double> grid;
  if (include_zero) grid.push_back(0.0);
  for (const Atom& at : a.atoms()) grid.push_back(at.cum);
  for (const Atom& at : b.atoms()) grid.push_back(at.cum);
  grid.push_back(1.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double u, double v) { return std::abs(u - v) < 1e-15; }),
             grid.end());
  return grid;
}

}  // namespace

std::optional<EnvelopeKind> envelope_kind_from_name(std::string_view name) {
  for (EnvelopeKind k :
       {EnvelopeKind::rho_z, EnvelopeKind::tilde_rho_z, EnvelopeKind::psi_z_ssd,
        EnvelopeKind::phi_z_fsd, EnvelopeKind::monetary_acceptance}) {
    if (name == envelope_kind_name(k)) return k;
  }
  return std::nullopt;
}

RiskFunctional rho_z_envelope(const RiskFunctional& rho, const Rv& z) {
  return RiskFunctional(
      member_name(EnvelopeKind::rho_z, rho),
      [rho, z](const Rv& x) {
        require_same_space("rho_z member", x, z);
        return rho(z + (x - z).ess_sup());
      },
      {Axiom::monotonicity, Axiom::cash_subadditivity, Axiom::quasi_convexity});
}

ExtReal m_of(const RiskFunctional& rho, const Rv& z, double t, double bracket_lo,
             double bracket_hi) {
  if (!std::isfinite(bracket_lo) || !std::isfinite(bracket_hi) || !(bracket_lo < bracket_hi)) {
    throw std::invalid_argument("m_of: invalid bracket");
  }
  const double eps = 1e-9;  // slack for level-set membership in value space
  const auto g = [&](double m) { return rho(z + m).raw(); };

  const double ghi = g(bracket_hi);
  if (std::abs(ghi - t) <= eps) return ExtReal::pos_inf();  // plateau alive at the cap
  if (ghi < t - eps) return ExtReal::neg_inf();             // t above the reachable values
  if (g(bracket_lo) > t + eps) return ExtReal::neg_inf();   // t below the reachable values

  // Boundary of {m : g(m) <= t}; g is increasing, so the boundary is the
  // supremum of the level set whenever the level is actually reached.
  double lo = bracket_lo, hi = bracket_hi;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > t + eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // A discontinuous functional (not cash subadditive) can jump across the
  // level; the level set is then empty.
  if (g(lo) < t - 1e-6) return ExtReal::neg_inf();
  return ExtReal(lo);
}

RiskFunctional tilde_rho_z_envelope(const RiskFunctional& rho, const Rv& z) {
  std::set<Axiom> claims = {Axiom::monotonicity, Axiom::cash_subadditivity,
                            Axiom::quasi_convexity, Axiom::quasi_normalization};
  if (rho.claims_axiom(Axiom::normalization)) claims.insert(Axiom::normalization);
  return RiskFunctional(
      member_name(EnvelopeKind::tilde_rho_z, rho),
      [rho, z](const Rv& x) {
        require_same_space("tilde_rho_z member", x, z);
        // Mix weight 0 admits X at any threshold >= ess-sup(X).
        double best = x.ess_sup();
        const auto g = [&](double m) { return rho(z + m).raw(); };
        for (int j = 1; j <= 100; ++j) {
          const double lam = static_cast<double>(j) / 100.0;
          const double s = (x - z * lam).ess_sup();
          // Feasibility at threshold g(m) is monotone in the shift m through
          // phi(m) = lam*m + (1-lam)*g(m); the smallest feasible shift gives
          // the smallest admitting threshold for this weight.
          const auto phi = [&](double m) {
            if (lam >= 1.0) return m;
            return lam * m + (1.0 - lam) * g(m);
          };
          double half = x.sup_norm() + z.sup_norm() + 1.0;
          double lo = -half, hi = half;
          int guard = 0;
          while (phi(hi) < s) {
            hi += 2.0 * half;
            half *= 2.0;
            if (++guard > 60) {
              throw std::runtime_error("tilde_rho_z member: upper bracket widening failed");
            }
          }
          guard = 0;
          while (phi(lo) >= s) {
            lo -= 2.0 * half;
            half *= 2.0;
            if (++guard > 60) {
              throw std::runtime_error("tilde_rho_z member: lower bracket widening failed");
            }
          }
          while (hi - lo > 1e-9) {
            const double mid = 0.5 * (lo + hi);
            if (phi(mid) >= s) {
              hi = mid;
            } else {
              lo = mid;
            }
          }
          best = std::min(best, g(hi));
        }
        return ExtReal(best);
      },
      std::move(claims));
}

RiskFunctional psi_z_ssd_envelope(const RiskFunctional& rho, const Rv& z) {
  auto dz = std::make_shared<Distribution>(z);
  return RiskFunctional(
      member_name(EnvelopeKind::psi_z_ssd, rho),
      [rho, z, dz](const Rv& x) {
        require_same_space("psi_z_ssd member", x, z);
        const Distribution dx(x);
        // Between adjacent merged breakpoints both quantile curves are
        // constant, so the difference of expected shortfalls is monotone
        // there; the supremum over [0,1] is attained on the grid.
        double sup = -kInf;
        for (double t : merged_levels(dx, *dz, /*include_zero=*/true)) {
          sup = std::max(sup, dx.es(t) - dz->es(t));
        }
        return rho(z + sup);
      },
      {Axiom::monotonicity, Axiom::cash_subadditivity, Axiom::quasi_convexity,
       Axiom::law_invariance});
}

RiskFunctional phi_z_fsd_envelope(const RiskFunctional& rho, const Rv& z) {
  auto dz = std::make_shared<Distribution>(z);
  return RiskFunctional(
      member_name(EnvelopeKind::phi_z_fsd, rho),
      [rho, z, dz](const Rv& x) {
        require_same_space("phi_z_fsd member", x, z);
        const Distribution dx(x);
        // Step quantile curves are constant on each merged level interval
        // (closed on the right), so the supremum over (0,1) is a grid max;
        // the level-1 value stands for the last open piece.
        double sup = -kInf;
        for (double t : merged_levels(dx, *dz, /*include_zero=*/false)) {
          sup = std::max(sup, dx.quantile(t).finite_value() - dz->quantile(t).finite_value());
        }
        return rho(z + sup);
      },
      {Axiom::monotonicity, Axiom::cash_subadditivity, Axiom::law_invariance});
}

namespace {

RiskFunctional monetary_acceptance_member(const RiskFunctional& rho, const Rv& z) {
  return RiskFunctional(
      member_name(EnvelopeKind::monetary_acceptance, rho),
      [z](const Rv& x) {
        require_same_space("monetary_acceptance member", x, z);
        return ExtReal((x - z).ess_sup());
      },
      {Axiom::monotonicity, Axiom::cash_additivity, Axiom::cash_subadditivity, Axiom::convexity,
       Axiom::quasi_convexity});
}

std::vector<Axiom> precondition_axioms(EnvelopeKind kind) {
  switch (kind) {
    case EnvelopeKind::rho_z:
      return {Axiom::monotonicity, Axiom::cash_subadditivity};
    case EnvelopeKind::tilde_rho_z:
      return {Axiom::monotonicity, Axiom::cash_subadditivity, Axiom::quasi_star_shapedness,
              Axiom::quasi_normalization};
    case EnvelopeKind::psi_z_ssd:
      return {Axiom::monotonicity, Axiom::cash_subadditivity, Axiom::ssd_consistency};
    case EnvelopeKind::phi_z_fsd:
      return {Axiom::monotonicity, Axiom::cash_subadditivity, Axiom::law_invariance};
    case EnvelopeKind::monetary_acceptance:
      return {Axiom::monotonicity, Axiom::cash_additivity};
  }
  throw std::invalid_argument("verify_envelope: unknown kind");
}

bool space_is_uniform(const FiniteSpace& s) {
  const double want = 1.0 / static_cast<double>(s.size());
  for (double p : s.probs()) {
    if (std::abs(p - want) > 1e-12) return false;
  }
  return true;
}

std::vector<Axiom> spot_axioms(EnvelopeKind kind, bool uniform) {
  switch (kind) {
    case EnvelopeKind::rho_z:
      return {Axiom::quasi_convexity, Axiom::cash_subadditivity};
    case EnvelopeKind::tilde_rho_z:
      return {Axiom::quasi_convexity, Axiom::cash_subadditivity};
    case EnvelopeKind::psi_z_ssd: {
      std::vector<Axiom> axs = {Axiom::quasi_convexity, Axiom::cash_subadditivity};
      if (uniform) axs.push_back(Axiom::law_invariance);
      return axs;
    }
    case EnvelopeKind::phi_z_fsd:
    case EnvelopeKind::monetary_acceptance:
      return {Axiom::cash_subadditivity};
  }
  throw std::invalid_argument("verify_envelope: unknown kind");
}

}  // namespace

RiskFunctional envelope_member(EnvelopeKind kind, const RiskFunctional& rho, const Rv& anchor) {
  switch (kind) {
    case EnvelopeKind::rho_z: return rho_z_envelope(rho, anchor);
    case EnvelopeKind::tilde_rho_z: return tilde_rho_z_envelope(rho, anchor);
    case EnvelopeKind::psi_z_ssd: return psi_z_ssd_envelope(rho, anchor);
    case EnvelopeKind::phi_z_fsd: return phi_z_fsd_envelope(rho, anchor);
    case EnvelopeKind::monetary_acceptance: return monetary_acceptance_member(rho, anchor);
  }
  throw std::invalid_argument("envelope_member: unknown kind");
}

EnvelopeReport verify_envelope(const RiskFunctional& rho, EnvelopeKind kind, const Rv& x,
                               const std::vector<Rv>& anchors, const CheckConfig& cfg,
                               double tolerance) {
  if (anchors.empty()) throw std::invalid_argument("verify_envelope: no anchors");
  if (!(tolerance > 0.0)) throw std::invalid_argument("verify_envelope: tolerance must be positive");
  for (const Rv& a : anchors) require_same_space("verify_envelope", x, a);

  EnvelopeReport rep;
  rep.kind = kind;
  rep.base_name = rho.name;
  rep.tolerance = tolerance;

  rep.preconditions_ok = true;
  for (Axiom a : precondition_axioms(kind)) {
    CheckReport pr = check_axiom(a, rho, cfg);
    rep.preconditions_ok = rep.preconditions_ok && pr.pass;
    rep.precondition_reports.push_back(std::move(pr));
  }
  if (!rep.preconditions_ok) {
    rep.label = "preconditions violated; equality not guaranteed";
  }

  rep.base_value = rho(x).finite_value();

  // Effective anchor list; the monetary form projects anchors onto the
  // acceptance boundary and prepends the canonical X - rho(X).
  std::vector<Rv> zs;
  zs.reserve(anchors.size() + 1);
  if (kind == EnvelopeKind::monetary_acceptance) {
    zs.push_back(x - rep.base_value);
    for (const Rv& a : anchors) zs.push_back(a - rho(a).finite_value());
  } else {
    zs = anchors;
  }

  rep.member_values = parallel_map<double>(zs.size(), [&](std::size_t i) {
    return envelope_member(kind, rho, zs[i])(x).finite_value();
  });

  rep.min_value = kInf;
  for (double v : rep.member_values) rep.min_value = std::min(rep.min_value, v);
  rep.attaining_index = 0;
  while (rep.attaining_index < rep.member_values.size() &&
         rep.member_values[rep.attaining_index] > rep.min_value + 1e-12) {
    ++rep.attaining_index;
  }

  rep.dominance_ok = true;
  for (double v : rep.member_values) {
    rep.dominance_ok = rep.dominance_ok && v >= rep.base_value - tolerance;
  }
  rep.attainment_ok = std::abs(rep.min_value - rep.base_value) <= tolerance;

  // Spot checks on the attaining member with a trimmed trial budget on the
  // fixed evaluation space; the full member batteries run in the dedicated
  // member-property suites.
  CheckConfig spot = cfg;
  spot.trials = std::min(cfg.trials, 8);
  spot.fixed_space = x.space();
  spot.pins.clear();
  rep.spot_checks_ok = true;
  const RiskFunctional member = envelope_member(kind, rho, zs[rep.attaining_index]);
  for (Axiom a : spot_axioms(kind, space_is_uniform(*x.space()))) {
    CheckReport sr = check_axiom(a, member, spot);
    rep.spot_checks_ok = rep.spot_checks_ok && sr.pass;
    rep.spot_checks.push_back(std::move(sr));
  }

  rep.pass = rep.preconditions_ok && rep.dominance_ok && rep.attainment_ok && rep.spot_checks_ok;
  return rep;
}

DualVertexReport dual_vertex_identity(const Rv& x, const Rv& z,
                                      const std::vector<ProbabilityVector>& grid,
                                      bool require_diracs) {
  require_same_space("dual_vertex_identity", x, z);
  if (grid.empty()) throw std::invalid_argument("dual_vertex_identity: empty grid");
  const std::size_t n = x.size();
  for (const ProbabilityVector& q : grid) {
    if (q.size() != n) {
      throw std::invalid_argument("dual_vertex_identity: grid vector has wrong dimension");
    }
  }

  std::vector<bool> seen(n, false);
  for (const ProbabilityVector& q : grid) {
    for (std::size_t i = 0; i < n; ++i) {
      if (q.weight(i) >= 1.0 - 1e-12) seen[i] = true;
    }
  }
  const bool all_diracs = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  if (require_diracs && !all_diracs) {
    throw std::invalid_argument("dual_vertex_identity: grid missing Dirac vectors");
  }

  const Rv diff = x - z;
  DualVertexReport rep;
  rep.has_all_diracs = all_diracs;
  rep.grid_max = -kInf;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = grid[i].expect(diff);
    if (v > rep.grid_max) {
      rep.grid_max = v;
      rep.argmax = i;
    }
  }
  rep.target = diff.ess_sup();
  rep.gap = rep.target - rep.grid_max;
  rep.exact = rep.grid_max == rep.target;
  return rep;
}

}  // namespace riskcal
