#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "riskcal/finite_space.hpp"

namespace riskcal {

// Deterministic random source for trial generation. All sampling in the
// checking machinery flows through one of these, seeded explicitly, so every
// report is reproducible from (seed, config) alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }

  // Inclusive bounds.
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(gen_);
  }

  std::vector<double> values(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  Rv rv(const SpacePtr& sp, double lo, double hi) { return Rv(sp, values(sp->size(), lo, hi)); }

  // Random space with strictly positive probabilities, renormalized exactly.
  SpacePtr space(std::size_t n) {
    std::vector<double> p(n);
    double sum = 0.0;
    for (auto& q : p) {
      q = uniform(0.05, 1.0);
      sum += q;
    }
    for (auto& q : p) q /= sum;
    return FiniteSpace::make(std::move(p));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(0, i - 1)]);
    }
  }

  std::mt19937_64& engine() noexcept { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace riskcal
