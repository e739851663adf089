#pragma once

#include "hsw/random.hpp"
#include "hsw/vbgrpd.hpp"

namespace hsw {

struct InvalidModule : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidDecomposition : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ρ : C → E, R^E_γ : E_{sγ} → E_{tγ}, R^C_γ : C_{sγ} → C_{tγ}, Ω(γ1,γ2) : E_{sγ2} → C_{tγ1}
struct HomotopyModule2 {
  FiniteGroupoid base;
  std::vector<int> dimC, dimE;
  std::vector<Matrix> rho;
  std::vector<Matrix> RE, RC;
  std::map<std::pair<int, int>, Matrix> Omega;
};

// axioms, plus R_{1_m} = id and Ω vanishing on units
ValidationReport check_homotopy_module(const HomotopyModule2& m);
HomotopyModule2 zero_module(const FiniteGroupoid& g);

// level k: c ∈ C^k(Γ, C) then e ∈ C^{k−1}(Γ, E), values at t(γ₁)
struct ModuleCochains {
  int level = 0;
  std::vector<int> c_off, e_off;
  int c_total = 0, total = 0;
};
ModuleCochains module_cochains(const HomotopyModule2& m, const Nerve& n, int k);
// D : level k → level k+1
Matrix build_D(const HomotopyModule2& m, const Nerve& n, int k);
// D² = 0 and D(ω∪f) = Dω∪f − (−1)^k ω∪δf for f ∈ C¹(Γ)
ValidationReport check_D(const HomotopyModule2& m, int max_level = 2);

// (Φω)_C = φ_C c + μ_{γ1} e(γ2..), (Φω)_E = φ_E e
struct HM2Morphism {
  std::shared_ptr<const HomotopyModule2> source, target;
  std::vector<Matrix> phiC, phiE;
  std::vector<Matrix> mu;  // E_{sγ} → C′_{tγ}
};
Matrix hm2_apply(const HM2Morphism& f, const Nerve& n, int k);
ValidationReport check_hm2_morphism(const HM2Morphism& f, int max_level = 2);
HM2Morphism hm2_identity(std::shared_ptr<const HomotopyModule2> m);
HM2Morphism hm2_compose(const HM2Morphism& g, const HM2Morphism& f);
// H(c, e) = (h e, 0)
Matrix hm2_homotopy_matrix(const HomotopyModule2& m1, const HomotopyModule2& m2, const std::vector<Matrix>& h,
                           const Nerve& n, int k);
// Φ − Ψ = D₂H + HD₁
ValidationReport check_hm2_homotopy(const HM2Morphism& f, const HM2Morphism& g, const std::vector<Matrix>& h,
                                    int max_level = 2);

HomotopyModule2 pullback_module(const HomotopyModule2& m, const std::vector<int>& phi);

// right decomposition π_γ : E_{sγ} → V_γ with s π = id, canonical on units
struct RightDecomposition {
  std::vector<Matrix> pi;
};
ValidationReport check_decomposition(const VBGroupoid& v, const RightDecomposition& d);
HomotopyModule2 from_split_vb(const VBGroupoid& v, const RightDecomposition& d);

struct SplitVB {
  VBGroupoid v;  // V_γ = C_{tγ} ⊕ E_{sγ}
  RightDecomposition dec;
};
SplitVB to_split_vb(const HomotopyModule2& m);
// V → split model of from_split_vb(v, d), v ↦ (R⁻¹(v − π s v), s v)
VBMorphism split_iso(std::shared_ptr<const VBGroupoid> v, const RightDecomposition& d,
                     std::shared_ptr<const VBGroupoid> split);
// π + R θ, θ_γ : E_{sγ} → C_{tγ}, zero on units
RightDecomposition shift_decomposition(const VBGroupoid& v, const RightDecomposition& d, const std::vector<Matrix>& theta);
// m1 → m2 for the decompositions π and π + Rθ: φ = id, μ = −θ
HM2Morphism decomposition_gauge(std::shared_ptr<const HomotopyModule2> m1, std::shared_ptr<const HomotopyModule2> m2,
                                const std::vector<Matrix>& theta);
// Φ over the identity between split VB groupoids
HM2Morphism module_morphism_from_vb(const VBMorphism& f, const RightDecomposition& d1, const RightDecomposition& d2,
                                    std::shared_ptr<const HomotopyModule2> m1,
                                    std::shared_ptr<const HomotopyModule2> m2);

// homotopy equivalence between φ₁*m1 and φ₂*m2 over Γ₁[X] ≅ Γ₂[X]
struct ModuleWitness {
  std::vector<int> phi1, phi2;
  std::vector<int> arrow_iso;
  std::vector<Matrix> fC, fE, fmu, gC, gE, gmu;
  std::vector<Matrix> h1, h2;
};
ValidationReport morita_module_witness(const HomotopyModule2& m1, const HomotopyModule2& m2, const ModuleWitness& w);

// random instances
// R_γ = A_{tγ} A_{sγ}⁻¹, Ω = 0
HomotopyModule2 random_strict_module(Rng& rng, const FiniteGroupoid& g, int max_dim = 2);
// strict module seen through a random decomposition, so Ω ≠ 0 in general
HomotopyModule2 random_module(Rng& rng, const FiniteGroupoid& g, int max_dim = 2);
std::vector<Matrix> random_theta(Rng& rng, const HomotopyModule2& m);
RightDecomposition random_decomposition(Rng& rng, const VBGroupoid& v);
// split model of a random module moved by random fiber isomorphisms
VBGroupoid random_vb_groupoid(Rng& rng, const FiniteGroupoid& g, int max_dim = 2);
// v2 = S(v1 ⊕ K) with K contractible, Φ perturbed by a random J_g
VBHomotopyEquivalence random_vb_equivalence(Rng& rng, const FiniteGroupoid& g, int max_dim = 2);

}  // namespace hsw
