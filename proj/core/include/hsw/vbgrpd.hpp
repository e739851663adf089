#pragma once

#include <memory>
#include <optional>

#include "hsw/fingrpd.hpp"

namespace hsw {

struct InvalidVB : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotProjectable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAHomotopyEquivalence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// V ⇉ E over Γ ⇉ M. Fibers are coordinate spaces; every structure map is a matrix.
// mult[(γ1,γ2)] acts on V_{γ1} ⊕ V_{γ2}; only its restriction to the fiber product matters.
struct VBGroupoid {
  FiniteGroupoid base;
  std::vector<int> dimE;  // per object
  std::vector<int> dimV;  // per arrow
  std::vector<Matrix> s, t;     // V_γ → E_{sγ}, V_γ → E_{tγ}
  std::vector<Matrix> unit;     // E_m → V_{1_m}, e ↦ 1_e
  std::map<std::pair<int, int>, Matrix> mult;
  std::vector<Matrix> inv;      // V_γ → V_{γ⁻¹}

  int unit_arrow(int m) const { return base.unit[m]; }
  // columns: basis of {(v1, v2) : s v1 = t v2} inside V_{γ1} ⊕ V_{γ2}
  Matrix fiber_product(int g1, int g2) const;
  Matrix mul(int g1, int g2) const { return mult.at({g1, g2}); }
};

ValidationReport check_vb_groupoid(const VBGroupoid& v);
VBGroupoid zero_vb(const FiniteGroupoid& g);
// V = E over the unit groupoid, all structure maps the identity
VBGroupoid identity_vb_over_units(const std::vector<int>& dims);

// C_m = ker(s on V_{1_m}); basis[m] : C_m → V_{1_m}; proj[m] : V_{1_m} → C_m, v ↦ coords(v − 1_{sv})
struct CoreBundle {
  std::vector<int> dim;
  std::vector<Matrix> basis, proj;
  std::vector<Matrix> rho;  // t restricted to the core, C_m → E_m
};
CoreBundle core(const VBGroupoid& v);

// L_γ(c) = −0_γ·c⁻¹ for c ∈ C_{sγ}; R_γ(c) = c·0_γ for c ∈ C_{tγ}
struct CoreEmbeddings {
  std::vector<Matrix> L, R;
};
CoreEmbeddings core_embeddings(const VBGroupoid& v, const CoreBundle& c);
CoreEmbeddings core_embeddings(const VBGroupoid& v);
// 0 → t*C → V → s*E → 0 exact at every arrow
ValidationReport check_core_sequence(const VBGroupoid& v);

// V^∨ ⇉ C^∨. s = Lᵀ, t = Rᵀ.
VBGroupoid dualize(const VBGroupoid& v);
// E_m^∨ → core(V^∨)_m coordinates, ε ↦ t_{1_m}ᵀε
std::vector<Matrix> dual_core_iso(const VBGroupoid& v, const VBGroupoid& dual);

// per-arrow and per-object linear maps over a base functor
struct VBMorphism {
  std::shared_ptr<const VBGroupoid> source, target;
  std::vector<int> obj_map, arr_map;  // base functor
  std::vector<Matrix> arr;  // V_γ → V′_{Fγ}
  std::vector<Matrix> obj;  // E_m → E′_{Fm}
};
ValidationReport check_vb_morphism(const VBMorphism& f);
VBMorphism vb_identity(std::shared_ptr<const VBGroupoid> v);
// both over identity base functors
VBMorphism vb_compose(const VBMorphism& g, const VBMorphism& f);
VBMorphism vb_add(const VBMorphism& a, const VBMorphism& b, const Scalar& coef = Scalar(1));
bool vb_equal(const VBMorphism& a, const VBMorphism& b);
// Φ restricted to cores, in core coordinates: C_m → C′_{Fm}
std::vector<Matrix> core_part(const VBMorphism& f, const CoreBundle& cs, const CoreBundle& ct);
// transpose of a morphism over the identity: V′^∨ → V^∨
VBMorphism dual_morphism(const VBMorphism& f, std::shared_ptr<const VBGroupoid> src_dual,
                         std::shared_ptr<const VBGroupoid> tgt_dual);

// double dual back to v: identity on arrows, E_m → core(V^∨)^∨ on objects
VBMorphism double_dual_iso(std::shared_ptr<const VBGroupoid> v, std::shared_ptr<const VBGroupoid> ddual);

// ℰ over X with φ̂_x : ℰ_x → E_{φx}
struct BundleSurjection {
  std::vector<int> phi;
  std::vector<int> dim;
  std::vector<Matrix> map;
};
struct VBPullback {
  PullbackGroupoid pb;
  VBGroupoid v;
  // V[ℰ]_a ⊂ ℰ_x ⊕ V_γ ⊕ ℰ_y: basis and a left inverse
  std::vector<Matrix> basis, coords;
  std::vector<Matrix> proj;  // V[ℰ]_a → V_γ
};
VBPullback vb_pullback(const VBGroupoid& v, const BundleSurjection& ph);
BundleSurjection identity_surjection(const VBGroupoid& v);

// h_m : E_{1,m} → C_{2,m}, core coordinates of the target
struct VBHomotopyDatum {
  std::vector<Matrix> h;
};
// J_h(v) = 0_γ·h(s v)⁻¹ + h(t v)·0_γ = −L h s v + R h t v
VBMorphism apply_vb_homotopy(std::shared_ptr<const VBGroupoid> v1, std::shared_ptr<const VBGroupoid> v2,
                             const VBHomotopyDatum& h);
std::optional<VBHomotopyDatum> find_homotopy(const VBMorphism& phi, const VBMorphism& psi);

// Ψ∘Φ = id + J_{h1}, Φ∘Ψ = id + J_{h2}
struct VBHomotopyEquivalence {
  VBMorphism phi, psi;
  VBHomotopyDatum h1, h2;
};
ValidationReport check_homotopy_equivalence(const VBHomotopyEquivalence& eq);
VBHomotopyEquivalence dual_equivalence(const VBHomotopyEquivalence& eq);

struct Bridge {
  std::shared_ptr<const VBGroupoid> P1, P2;  // V₁[E₁×E₂], V₂[E₁×E₂]
  VBMorphism A, B;
  VBHomotopyDatum h_tilde;
  ValidationReport report;  // B∘A = id + J_{h̃}, id + J_{h̃} invertible, A and B morphisms
};
Bridge homotopy_to_morita_bridge(const VBHomotopyEquivalence& eq);

// Φ₀ surjective and W → V[E_W] an isomorphism
ValidationReport check_morita_morphism(const VBMorphism& f);

// V₁[φ₁*E₁] and V₂[φ₂*E₂] homotopy equivalent over Γ₁[X] ≅ Γ₂[X]
struct MoritaWitness {
  std::vector<int> phi1, phi2;     // X → M₁, X → M₂
  std::vector<int> arrow_iso;      // arrows of Γ₁[X] → arrows of Γ₂[X]
  std::vector<Matrix> phi, psi;    // per arrow of Γ₁[X]
  std::vector<Matrix> phi0, psi0;  // per point of X
  std::vector<Matrix> h1, h2;
};
ValidationReport morita_witness_check(const VBGroupoid& v1, const VBGroupoid& v2, const MoritaWitness& w);
// X = M, φ₁ = φ₂ = id
MoritaWitness witness_from_equivalence(const VBHomotopyEquivalence& eq);

// VB cochains. Level 0: Γ(C) in core coordinates; level k ≥ 1: σ(γ₁..γ_k) ∈ V_{γ₁}.
struct VBCochainSpace {
  int level = 0;
  std::vector<int> offset;  // per nerve tuple
  int total = 0;            // all sections
  Matrix basis;             // columns span the projectable ones
};
VBCochainSpace vb_cochains(const VBGroupoid& v, const Nerve& n, int k);
bool is_projectable(const VBGroupoid& v, const Nerve& n, int k, const Vec& sigma);
// on all sections of level k; only meaningful on projectable ones
Matrix vb_coboundary_matrix(const VBGroupoid& v, const Nerve& n, int k);
Vec vb_coboundary(const VBGroupoid& v, const Nerve& n, int k, const Vec& sigma);  // throws NotProjectable
ValidationReport check_vb_complex(const VBGroupoid& v, int max_level = 2);
// i : C^k_VB(V) → linear cochains on the nerve of V^∨, intertwining δ
ValidationReport check_dual_embedding(const VBGroupoid& v, int max_level = 2);

// Φ̂ on level-k sections, for Φ over the identity
Vec vb_hat(const VBMorphism& f, const Nerve& n, int k, const Vec& sigma);
// ĥ(σ)(γ₁..γ_k) = −h(s σ(1_{tγ₁},γ₁..γ_k))·0_{γ₁}, level k+1 → k
Vec vb_hat_homotopy(const VBGroupoid& v1, const VBGroupoid& v2, const VBHomotopyDatum& h, const Nerve& n, int k,
                    const Vec& sigma);
ValidationReport vb_chain_map_and_homotopy(const VBMorphism& phi, const VBMorphism& psi, const VBHomotopyDatum& h,
                                           int max_level = 2);

// basis of multiplicative k-forms, as coefficient vectors over (arrow, increasing index tuple)
Matrix multiplicative_sections(const VBGroupoid& v, int k);

VBGroupoid vb_direct_sum(const VBGroupoid& a, const VBGroupoid& b);
// move every fiber by an isomorphism: S_γ on arrows, T_m on objects
VBGroupoid vb_transport(const VBGroupoid& v, const std::vector<Matrix>& S, const std::vector<Matrix>& T);

}  // namespace hsw
