#pragma once

#include <memory>
#include <random>

#include "hsw/lie2.hpp"

namespace hsw {

using Rng = std::mt19937_64;

// small integers, occasionally with a denominator
Scalar random_scalar(Rng& rng, int range = 3, bool fractions = true);
Vec random_vec(Rng& rng, int n, int range = 3);
Matrix random_matrix(Rng& rng, int r, int c, int range = 3);
// unit-triangular factors times a permutation, so always invertible
Matrix random_invertible(Rng& rng, int n);
GradedLinearMap random_glm(Rng& rng, const GradedVectorSpace& src, const GradedVectorSpace& tgt, int shift = 0);
GradedLinearMap random_invertible_glm(Rng& rng, const GradedVectorSpace& v);

// S(cm) for strict isomorphisms sa: 𝔄 → 𝔄′, sg: 𝔊 → 𝔊′
CrossedModule transport(const CrossedModule& cm, const GradedLinearMap& sa, const GradedLinearMap& sg);
CrossedModule direct_sum_cm(const CrossedModule& x, const CrossedModule& y);
// 𝔄 = 𝔊 = v, d = id, everything else zero
CrossedModule contractible_cm(const GradedVectorSpace& v);

struct RandomCmParams {
  int deg_lo = -3;
  int deg_hi = 3;
  int max_dim = 3;
  // allow two odd generators of the same degree, so degree-1 brackets can be nonzero
  bool allow_pair = true;
  bool force_pair = false;
};

// Valid by construction: an ordinary crossed module tensored with a small
// graded-commutative algebra, plus abelian summands, moved by a random basis change.
CrossedModule random_crossed_module(Rng& rng, const RandomCmParams& p = {});

// Deformation-retract data Φ: X → Y with a chain inverse Ψ₁ and homotopies.
struct RetractInstance {
  std::shared_ptr<const CrossedModule> X, Y;
  Lie2Morphism phi;
  GradedLinearMap psi1A, psi1G;
  GradedLinearMap h;       // Ψ₁Φ₁ = id + [d,h]
  GradedLinearMap hprime;  // Φ₁Ψ₁ = id + [d′,h′]
};
RetractInstance random_retract_instance(Rng& rng, const RandomCmParams& p = {-2, 2, 3});

// A morphism with nonzero quadratic part and a homotopic partner.
struct HomotopicPair {
  Lie2Morphism phi, psi;
  GradedLinearMap h;
};
HomotopicPair random_homotopic_pair(Rng& rng, const RandomCmParams& p = {-2, 2, 3});

}  // namespace hsw
