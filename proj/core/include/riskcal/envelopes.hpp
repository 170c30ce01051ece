#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riskcal/axioms.hpp"
#include "riskcal/ext_real.hpp"
#include "riskcal/finite_space.hpp"
#include "riskcal/payoffs.hpp"
#include "riskcal/risk_functional.hpp"

namespace riskcal {

// Families of dominating functionals indexed by an anchor variable Z. Each
// builder returns a functional on Z's space whose pointwise minimum over a
// rich enough anchor family recovers the base functional.
enum class EnvelopeKind {
  rho_z,                // X -> rho(Z + ess-sup(X - Z))
  tilde_rho_z,          // level-set form: inf over mix weights of threshold t
  psi_z_ssd,            // X -> rho(Z + sup_t (ES_t(X) - ES_t(Z)))
  phi_z_fsd,            // X -> rho(Z + sup_t (quantile_t(X) - quantile_t(Z)))
  monetary_acceptance,  // X -> ess-sup(X - Z) over acceptable anchors
};

constexpr const char* envelope_kind_name(EnvelopeKind k) {
  switch (k) {
    case EnvelopeKind::rho_z: return "rho_z";
    case EnvelopeKind::tilde_rho_z: return "tilde_rho_z";
    case EnvelopeKind::psi_z_ssd: return "psi_z_ssd";
    case EnvelopeKind::phi_z_fsd: return "phi_z_fsd";
    case EnvelopeKind::monetary_acceptance: return "monetary_acceptance";
  }
  return "unknown";
}

std::optional<EnvelopeKind> envelope_kind_from_name(std::string_view name);

// X -> rho(Z + ess-sup(X - Z)): the smallest quasi-convex cash-subadditive
// dominator anchored at Z.
RiskFunctional rho_z_envelope(const RiskFunctional& rho, const Rv& z);

// sup{m in [lo,hi] : rho(Z+m) = t} by bisection to 1e-9. Empty level sets
// return -inf; a level set still alive at the bracket's upper end returns
// +inf (the plateau reaches the cap). Requires cash subadditivity, which
// makes m -> rho(Z+m) increasing and 1-Lipschitz.
ExtReal m_of(const RiskFunctional& rho, const Rv& z, double t, double bracket_lo,
             double bracket_hi);

// Level-set member: inf over a 101-point mix-weight grid (0 and 1 included
// exactly) of the smallest threshold t admitting X into the anchored
// acceptance region. Per-weight search runs in shift space where the
// threshold map is monotone; shift bisection tolerance 1e-9.
RiskFunctional tilde_rho_z_envelope(const RiskFunctional& rho, const Rv& z);

// Second-order member: the supremum of expected-shortfall differences is
// evaluated exactly on the merged breakpoint grid of both step quantile
// curves plus the endpoint levels 0 and 1.
RiskFunctional psi_z_ssd_envelope(const RiskFunctional& rho, const Rv& z);

// First-order member: supremum of quantile differences on the merged
// cumulative-probability grid.
RiskFunctional phi_z_fsd_envelope(const RiskFunctional& rho, const Rv& z);

// Uniform entry point used by the verification driver and the CLI.
// For monetary_acceptance the anchor is used as-is (no projection here).
RiskFunctional envelope_member(EnvelopeKind kind, const RiskFunctional& rho, const Rv& anchor);

struct EnvelopeReport {
  EnvelopeKind kind = EnvelopeKind::rho_z;
  std::string base_name;
  double base_value = 0.0;                    // rho(X)
  double min_value = 0.0;                     // min over anchors of member(X)
  std::size_t attaining_index = 0;            // lowest index achieving the min
  std::vector<double> member_values;          // per-anchor member(X)
  bool preconditions_ok = false;
  std::vector<CheckReport> precondition_reports;
  std::vector<CheckReport> spot_checks;       // member-level property trials
  bool spot_checks_ok = false;
  bool dominance_ok = false;                  // member(X) >= rho(X) - tol for all anchors
  bool attainment_ok = false;                 // |min - rho(X)| <= tol
  bool pass = false;
  std::string label;                          // set when preconditions fail
  double tolerance = 0.0;
};

// Builds one member per anchor, evaluates all members at X (in parallel, with
// a deterministic index-order reduction), and checks the envelope equality
// min over anchors = rho(X) together with dominance and member spot checks.
//
// For monetary_acceptance, every anchor Z is projected onto the acceptance
// boundary Z - rho(Z) and the canonical anchor X - rho(X) is prepended, so
// member_values has anchors.size() + 1 entries in that mode.
//
// Preconditions on the base functional are checked with axiom trials first;
// when they fail, the construction still runs but the report is labeled and
// pass is false.
EnvelopeReport verify_envelope(const RiskFunctional& rho, EnvelopeKind kind, const Rv& x,
                               const std::vector<Rv>& anchors, const CheckConfig& cfg,
                               double tolerance = 1e-6);

struct DualVertexReport {
  double grid_max = 0.0;      // max over grid vectors of E_Q[X - Z]
  double target = 0.0;        // ess-sup(X - Z)
  double gap = 0.0;           // target - grid_max (>= 0 for admissible grids)
  std::size_t argmax = 0;     // lowest grid index attaining the max
  bool has_all_diracs = false;
  bool exact = false;         // grid_max == target exactly
};

// On a finite space the maximum of E_Q[X - Z] over the simplex is attained at
// a vertex, i.e. equals ess-sup(X - Z). With require_diracs (the default) the
// grid must contain every point-mass vector and the equality is exact; with
// it disabled the report shows how far an interior grid stays below the
// essential supremum.
DualVertexReport dual_vertex_identity(const Rv& x, const Rv& z,
                                      const std::vector<ProbabilityVector>& grid,
                                      bool require_diracs = true);

}  // namespace riskcal
