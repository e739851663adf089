#pragma once

#include <map>
#include <memory>
#include <optional>

#include "hsw/lie2.hpp"
#include "hsw/random.hpp"

namespace hsw {

struct DegreeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotNilpotent : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidMorphism : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidMC : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Λ ⊕ Π with Λ ∈ 𝔄₂, Π ∈ 𝔊₁
struct MCElement {
  std::shared_ptr<const CrossedModule> cm;
  Vec Lambda;
  Vec Pi;

  // coordinates in 𝒱₁
  Vec as_v() const { return join_v(*cm, 1, Lambda, Pi); }
  friend bool operator==(const MCElement& a, const MCElement& b) {
    return *a.cm == *b.cm && a.Lambda == b.Lambda && a.Pi == b.Pi;
  }
};

// dΛ + ½[Π,Π] = 0 and Π·Λ = 0
ValidationReport mc_check(const CrossedModule& cm, const Vec& Lambda, const Vec& Pi);
inline ValidationReport mc_check(const MCElement& m) { return mc_check(*m.cm, m.Lambda, m.Pi); }

// T ∈ 𝔄₁: Π_T = Π + dT, Λ_T = Λ − Π·T − ½[T,T]
MCElement twist(const MCElement& m, const Vec& T);

// exp(b)·m = m + Σₙ ad_bⁿ([b,m] − db)/(n+1)!  for m ∈ 𝒱₁, b ∈ 𝒱₀.
// With b = −T ⊕ 0 this is the twist by T.
Vec gauge(const Dgla& g, const Vec& m, const Vec& b, int nilpotency_bound = 8);

// (Φ₁Λ + ½Φ₂(Π,Π)) ⊕ Φ₁Π; validates both inputs unless told not to
MCElement mc_pushforward(const Lie2Morphism& phi, const MCElement& m, bool validate = true);

// MC(Ψ)(m) = MC(Φ)(m) twisted by h(Π)
ValidationReport mc_homotopy_transport(const Lie2Homotopy& hty, const MCElement& m);

struct LPComplex {
  MCElement base;
  GradedVectorSpace V;
  GradedLinearMap diff;  // shift +1 on 𝒱
};

// d_{Π,Λ}(a⊕P) = (−Π·a − P·Λ) ⊕ ([Π,P] + da), i.e. d + [m,·]
LPComplex lp_differential(const MCElement& m);
ValidationReport check_lp_square_zero(const LPComplex& c);
std::map<int, int> lp_cohomology(const MCElement& m);

bool twist_witness_check(const MCElement& m1, const MCElement& m2, const Vec& T);
// brute force over T with coordinates drawn from `values`; gives up beyond max_tries
std::optional<Vec> twist_search(const MCElement& m1, const MCElement& m2, const std::vector<Scalar>& values,
                                long max_tries = 100000);

// Crossed modules sized for MC work (degrees −1..3, two odd generators half of the time).
std::shared_ptr<const CrossedModule> random_mc_crossed_module(Rng& rng);

// Π random, Λ solving the MC equations when possible (else Π = 0), then twisted by a random T.
MCElement random_mc(Rng& rng, std::shared_ptr<const CrossedModule> cm);

}  // namespace hsw
