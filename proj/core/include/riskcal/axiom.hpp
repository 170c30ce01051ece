#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace riskcal {

// Structural properties a risk functional can be checked against.
enum class Axiom {
  monotonicity,
  cash_additivity,
  cash_subadditivity,
  convexity,
  quasi_convexity,
  star_shapedness,
  quasi_star_shapedness,
  normalization,
  quasi_normalization,
  law_invariance,
  fsd_consistency,
  ssd_consistency,
  comonotonic_quasi_convexity,
  sup_norm_lipschitz,
};

inline constexpr std::array<Axiom, 14> kAllAxioms = {
    Axiom::monotonicity,         Axiom::cash_additivity,       Axiom::cash_subadditivity,
    Axiom::convexity,            Axiom::quasi_convexity,       Axiom::star_shapedness,
    Axiom::quasi_star_shapedness, Axiom::normalization,        Axiom::quasi_normalization,
    Axiom::law_invariance,       Axiom::fsd_consistency,       Axiom::ssd_consistency,
    Axiom::comonotonic_quasi_convexity, Axiom::sup_norm_lipschitz,
};

constexpr const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::monotonicity: return "monotonicity";
    case Axiom::cash_additivity: return "cash_additivity";
    case Axiom::cash_subadditivity: return "cash_subadditivity";
    case Axiom::convexity: return "convexity";
    case Axiom::quasi_convexity: return "quasi_convexity";
    case Axiom::star_shapedness: return "star_shapedness";
    case Axiom::quasi_star_shapedness: return "quasi_star_shapedness";
    case Axiom::normalization: return "normalization";
    case Axiom::quasi_normalization: return "quasi_normalization";
    case Axiom::law_invariance: return "law_invariance";
    case Axiom::fsd_consistency: return "fsd_consistency";
    case Axiom::ssd_consistency: return "ssd_consistency";
    case Axiom::comonotonic_quasi_convexity: return "comonotonic_quasi_convexity";
    case Axiom::sup_norm_lipschitz: return "sup_norm_lipschitz";
  }
  return "unknown";
}

inline std::optional<Axiom> axiom_from_name(std::string_view name) {
  for (Axiom a : kAllAxioms) {
    if (name == axiom_name(a)) return a;
  }
  return std::nullopt;
}

}  // namespace riskcal
