#pragma once

#include <map>
#include <memory>
#include <utility>

#include "hsw/bilinear.hpp"
#include "hsw/report.hpp"

namespace hsw {

struct InvalidCrossedModule : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SourceTargetMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAChainHomotopyInverse : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GradedLieAlgebra {
  GradedVectorSpace space;
  Bilinear bracket;

  GradedLieAlgebra() = default;
  explicit GradedLieAlgebra(GradedVectorSpace v) : space(v), bracket(v, v, v, 0) {}
  Vec br(int k, const Vec& x, int l, const Vec& y) const { return bracket.apply(k, x, l, y); }
  friend bool operator==(const GradedLieAlgebra& a, const GradedLieAlgebra& b) {
    return a.space == b.space && a.bracket == b.bracket;
  }
};

ValidationReport check_graded_jacobi(const GradedLieAlgebra& g);

// 𝔄 →d 𝔊 with 𝔊 acting on 𝔄.
struct CrossedModule {
  GradedLieAlgebra A, G;
  GradedLinearMap d;  // A → G, degree 0
  Bilinear action;    // G_k × A_l → A_{k+l}

  CrossedModule() = default;
  CrossedModule(GradedLieAlgebra a, GradedLieAlgebra g);

  Vec act(int k, const Vec& pi, int l, const Vec& a) const { return action.apply(k, pi, l, a); }
  // a·π := (−1)^{k(l+1)} π·a for π ∈ 𝔊_k, a ∈ 𝔄_l
  Vec ract(int l, const Vec& a, int k, const Vec& pi) const;

  friend bool operator==(const CrossedModule& a, const CrossedModule& b) {
    return a.A == b.A && a.G == b.G && a.d == b.d && a.action == b.action;
  }
};

ValidationReport check_crossed_module(const CrossedModule& cm);

// 𝒱_k = 𝔄_{k+1} ⊕ 𝔊_k, coordinates ordered [𝔄 part | 𝔊 part].
struct Dgla {
  GradedVectorSpace V;
  GradedLinearMap diff;  // shift +1
  Bilinear bracket;

  Vec br(int k, const Vec& x, int l, const Vec& y) const { return bracket.apply(k, x, l, y); }
  Vec d(int k, const Vec& x) const { return diff.apply(k, x); }
};

ValidationReport check_dgla(const Dgla& g);
Dgla associated_dgla(const CrossedModule& cm);

// split and join 𝒱_k coordinates
std::pair<Vec, Vec> split_v(const CrossedModule& cm, int k, const Vec& x);
Vec join_v(const CrossedModule& cm, int k, const Vec& a, const Vec& pi);

struct Lie2Morphism {
  std::shared_ptr<const CrossedModule> source, target;
  GradedLinearMap phi1A;  // 𝔄 → 𝔄′
  GradedLinearMap phi1G;  // 𝔊 → 𝔊′
  Bilinear phi2;          // 𝔊_k × 𝔊_l → 𝔄′_{k+l}

  static Lie2Morphism identity(std::shared_ptr<const CrossedModule> cm);
  // zero Φ₂
  static Lie2Morphism strict(std::shared_ptr<const CrossedModule> src, std::shared_ptr<const CrossedModule> tgt,
                             GradedLinearMap a, GradedLinearMap g);
};

ValidationReport check_lie2_morphism(const Lie2Morphism& m);
Lie2Morphism compose_lie2(const Lie2Morphism& outer, const Lie2Morphism& inner);

// Θ_h^Φ(π₁,π₂) = h[π₁,π₂] − [hπ₁,hπ₂] − Φ₁(π₁)·h(π₂) + (−1)^l h(π₁)·Φ₁(π₂), l = |π₂| in 𝔊
Bilinear theta(const Lie2Morphism& phi, const GradedLinearMap& h);

// Morphism reached from Φ along h: Φ₁ + (d′h, hd), Φ₂ + Θ_h^Φ.
Lie2Morphism shift_by_homotopy(const Lie2Morphism& phi, const GradedLinearMap& h);

struct Lie2Homotopy {
  Lie2Morphism from, to;
  GradedLinearMap h;  // 𝔊 → 𝔄′
};

ValidationReport check_homotopy(const Lie2Homotopy& hty);

// Chain-level checks used by the inversion precondition.
ValidationReport check_chain_map(const CrossedModule& src, const CrossedModule& tgt, const GradedLinearMap& fa,
                                 const GradedLinearMap& fg);
// f − g = d h on 𝔊 and h d on 𝔄 (f = g + [d,h])
ValidationReport check_chain_homotopy(const CrossedModule& src, const CrossedModule& tgt, const GradedLinearMap& fa,
                                      const GradedLinearMap& fg, const GradedLinearMap& ga, const GradedLinearMap& gg,
                                      const GradedLinearMap& h);

// h: Ψ₁Φ₁ ≃ id on the source side, hprime: Φ₁Ψ₁ ≃ id on the target side,
// both in the orientation composite = id + [d,h].
Lie2Morphism invert_lie2_morphism(const Lie2Morphism& phi, const GradedLinearMap& psi1A, const GradedLinearMap& psi1G,
                                  const GradedLinearMap& h, const GradedLinearMap& hprime);

// The four identities the inverse must satisfy.
ValidationReport check_inversion_constraints(const Lie2Morphism& phi, const Lie2Morphism& psi, const GradedLinearMap& h,
                                             const GradedLinearMap& hprime);

struct TwoTermDims {
  int ker = 0;    // dim ker d on 𝔄_{k+1}
  int coker = 0;  // dim coker d on 𝔊_k
};
std::map<int, TwoTermDims> two_term_cohomology(const CrossedModule& cm);

}  // namespace hsw
