#pragma once

#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "riskcal/axiom.hpp"
#include "riskcal/ext_real.hpp"
#include "riskcal/finite_space.hpp"

namespace riskcal {

// A named map from random variables to the extended reals, together with the
// structural properties its constructor claims for it. Claims are metadata;
// the checking machinery decides whether they hold.
struct RiskFunctional {
  std::string name;
  std::function<ExtReal(const Rv&)> eval;
  std::set<Axiom> claims;

  RiskFunctional() = default;
  RiskFunctional(std::string n, std::function<ExtReal(const Rv&)> f, std::set<Axiom> c = {})
      : name(std::move(n)), eval(std::move(f)), claims(std::move(c)) {}

  ExtReal operator()(const Rv& x) const {
    if (!eval) throw std::logic_error("RiskFunctional '" + name + "': empty evaluator");
    return eval(x);
  }

  bool claims_axiom(Axiom a) const { return claims.count(a) != 0; }
};

}  // namespace riskcal
