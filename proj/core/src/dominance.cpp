#include "riskcal/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace riskcal {

namespace {

constexpr double kGridMergeTol = 1e-12;

std::vector<double> merged_breakpoints(const Distribution& a, const Distribution& b) {
  std::vector<double> u;
  u.reserve(a.atoms().size() + b.atoms().size());
  for (const Atom& at : a.atoms()) u.push_back(at.cum);
  for (const Atom& at : b.atoms()) u.push_back(at.cum);
  std::sort(u.begin(), u.end());
  std::vector<double> out;
  for (double v : u) {
    if (out.empty() || v - out.back() > kGridMergeTol) out.push_back(v);
  }
  out.back() = 1.0;
  return out;
}

std::vector<double> merged_support(const Distribution& a, const Distribution& b) {
  std::vector<double> u;
  u.reserve(a.atoms().size() + b.atoms().size());
  for (const Atom& at : a.atoms()) u.push_back(at.value);
  for (const Atom& at : b.atoms()) u.push_back(at.value);
  std::sort(u.begin(), u.end());
  std::vector<double> out;
  for (double v : u) {
    if (out.empty() || v - out.back() > kGridMergeTol) out.push_back(v);
  }
  return out;
}

}  // namespace

std::pair<Rv, Rv> comonotone_rearrangement(const Rv& x, const Rv& y) {
  if (!x.same_space(y)) {
    throw std::invalid_argument("comonotone_rearrangement: inputs on mismatched spaces");
  }
  const Distribution dx(x), dy(y);
  const std::vector<double> grid = merged_breakpoints(dx, dy);

  std::vector<double> probs;
  std::vector<double> xv, yv;
  probs.reserve(grid.size());
  xv.reserve(grid.size());
  yv.reserve(grid.size());
  double prev = 0.0;
  for (double u : grid) {
    probs.push_back(u - prev);
    // The quantile curve is constant on (prev, u]; evaluating at the right
    // endpoint reads off that plateau exactly.
    xv.push_back(dx.quantile(u).finite_value());
    yv.push_back(dy.quantile(u).finite_value());
    prev = u;
  }
  SpacePtr refined = FiniteSpace::make(std::move(probs));
  return {Rv(refined, std::move(xv)), Rv(refined, std::move(yv))};
}

bool fsd_dominates(const Rv& x, const Rv& y, double tol) {
  const Distribution dx(x), dy(y);
  for (double u : merged_breakpoints(dx, dy)) {
    if (dx.quantile(u).finite_value() < dy.quantile(u).finite_value() - tol) return false;
  }
  return true;
}

namespace {

bool ssd_stop_loss(const Distribution& dx, const Distribution& dy, double tol) {
  // E[(X-k)+] is piecewise linear in k with kinks only at support points, and
  // below the smallest merged support point both transforms have slope -1, so
  // the comparison there reduces to the means. Checking the merged support is
  // therefore exact.
  for (double k : merged_support(dx, dy)) {
    if (dx.stop_loss(k) < dy.stop_loss(k) - tol) return false;
  }
  return dx.mean() >= dy.mean() - tol;
}

bool ssd_es_curve(const Distribution& dx, const Distribution& dy, double tol) {
  // ES_t(X) >= ES_t(Y) for t < 1 iff the unnormalized tail integrals compare
  // the same way (the 1/(1-t) factor is positive); the integral difference is
  // piecewise monotone between merged breakpoints, so grid checks are exact.
  // t -> 1 reduces to the essential suprema.
  if (dx.tail_integral(0.0) < dy.tail_integral(0.0) - tol) return false;  // t = 0: means
  for (double u : merged_breakpoints(dx, dy)) {
    if (u >= 1.0 - kGridMergeTol) continue;
    if (dx.tail_integral(u) < dy.tail_integral(u) - tol) return false;
  }
  return dx.ess_sup() >= dy.ess_sup() - tol;
}

}  // namespace

bool ssd_dominates(const Rv& x, const Rv& y, SsdMethod method, double tol) {
  const Distribution dx(x), dy(y);
  switch (method) {
    case SsdMethod::stop_loss:
      return ssd_stop_loss(dx, dy, tol);
    case SsdMethod::es_curve:
      return ssd_es_curve(dx, dy, tol);
    case SsdMethod::both: {
      const bool a = ssd_stop_loss(dx, dy, tol);
      const bool b = ssd_es_curve(dx, dy, tol);
      if (a != b) {
        throw std::logic_error("ssd_dominates: stop-loss and ES-curve methods disagree");
      }
      return a;
    }
  }
  throw std::invalid_argument("ssd_dominates: unknown method");
}

}  // namespace riskcal
