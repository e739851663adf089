#pragma once

#include <optional>
#include <string>

#include "hsw/framed.hpp"
#include "hsw/random.hpp"
#include "hsw/report.hpp"

namespace hsw {

struct DegenerateForm : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidTriple : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidAlgebra : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PointNotInGroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MatrixLieAlgebra {
  std::string name;
  int n = 0;
  int rep_dim = 0;
  std::vector<Matrix> basis;
  std::vector<Matrix> ad;  // ad[i](k, l) = e_k-coefficient of [e_i, e_l]
  Matrix K;
  std::optional<Matrix> casimir;

  Vec coords(const Matrix& x) const;  // throws InvalidAlgebra outside the span
  Vec bracket(const Vec& x, const Vec& y) const;
  FrameContext frame(int factors) const { return FrameContext{n, factors, ad}; }
};

MatrixLieAlgebra make_algebra(std::string name, std::vector<Matrix> basis, Matrix K,
                              std::optional<Matrix> casimir = std::nullopt);
// Jacobi, K symmetric and invariant, det K ≠ 0 when asked
ValidationReport check_algebra(const MatrixLieAlgebra& g, bool nondegenerate = true);
// basis (h, e, f), K = trace form
MatrixLieAlgebra sl2();
// basis L_x, L_y, L_z with [L_x, L_y] = L_z, K = −½ trace (so K = I)
MatrixLieAlgebra so3();
// diagonal matrices, K = I
MatrixLieAlgebra abelian(int n);

struct GroupPoint {
  Matrix g;
  Matrix Ad, Ad_inv;  // in the Lie algebra basis
};
GroupPoint make_point(const MatrixLieAlgebra& alg, const Matrix& g);
GroupPoint point_product(const MatrixLieAlgebra& alg, const GroupPoint& a, const GroupPoint& b);
GroupPoint point_inverse(const MatrixLieAlgebra& alg, const GroupPoint& a);
// SL(2) via [[a, b], [c, (1+bc)/a]], SO(3) via the Cayley transform, tori via diagonal entries
GroupPoint random_point(const MatrixLieAlgebra& alg, Rng& rng);

// Totally antisymmetric coefficients: T(i,j,k) is the coefficient of e_i ∧ e_j ∧ e_k for i < j < k.
using Multivector = ExteriorElement;
// raise indices of ¼K(x, [y, z]) with K⁻¹
Multivector cartan_trivector(const MatrixLieAlgebra& g);

// d with invariant form, a Lagrangian subalgebra g and a complement h
struct ManinQuasiTriple {
  MatrixLieAlgebra d;  // form stored in d.K
  Matrix g_basis, h_basis;  // columns in d coordinates
};
ValidationReport check_quasi_triple(const ManinQuasiTriple& q);
// φ(ξ, η, ζ) = ⟨[ξ, η], ζ⟩ for ξ, η, ζ ∈ h ≅ g^∨, as an element of ∧³g
Multivector phi_from_pairing(const ManinQuasiTriple& q);
// d = g ⊕ g with K ⊕ −K, Δ(g) and Δ₋(g)
ManinQuasiTriple double_quasitriple(const MatrixLieAlgebra& g);
// [(g′, g)] ↦ g′g⁻¹
Matrix double_quotient_map(const Matrix& gprime, const Matrix& g);
// (positive, negative) counts of a symmetric form
std::pair<int, int> signature(const Matrix& sym);

// Conjugation groupoid G⋉G ⇉ G: the arrow (g, s) goes from s to gsg⁻¹.
// Frames: factor 0 is g, factor 1 is s. Sections of ∧A are framed on
// factor 0 only, with coefficients in the Ad_{s⁻¹} variables of the base.
struct ConjugationModel {
  MatrixLieAlgebra alg;
  FrameContext ctx;
  std::map<int, AdPolynomial> at_target;  // base variables at t(g, s) = gsg⁻¹
};
ConjugationModel conjugation_model(const MatrixLieAlgebra& g);
// variables at the arrow (g, s)
std::vector<Scalar> arrow_values(const ConjugationModel& m, const GroupPoint& g, const GroupPoint& s);

using Section = FramedPolyvector;
Section constant_section(const ConjugationModel& m, const Multivector& a);
FramedPolyvector right_invariant(const ConjugationModel& m, const Section& a);
FramedPolyvector left_invariant(const ConjugationModel& m, const Section& a);
// ←a − →a
FramedPolyvector exact_polyvector(const ConjugationModel& m, const Section& a);
// the section b with →b = X, read off along the units
Section right_invariant_part(const ConjugationModel& m, const FramedPolyvector& X);
// →δ_P(a) = [P, →a]
Section delta(const ConjugationModel& m, const FramedPolyvector& P, const Section& a);
// bracket on Γ(∧A) transported from right-invariant fields
Section section_bracket(const ConjugationModel& m, const Section& a, const Section& b);

// ½Σ K⁻¹_{ij}(←e_i² ∧ →e_j² − ←e_i² ∧ ←e_j¹ − →(Ad_{g⁻¹}e_i)² ∧ →e_j¹)
FramedPolyvector amm_bivector(const ConjugationModel& m);

struct ArrowPoint {
  GroupPoint g, s;
};
// ½[Π,Π] = ←Λ − →Λ and δ_Π Λ = 0 at every arrow
ValidationReport check_quasi_poisson(const ConjugationModel& m, const FramedPolyvector& Pi, const Section& Lambda,
                                     const std::vector<ArrowPoint>& points);
// units coisotropic: Π(α, β) = 0 for conormal α, β at (e, s)
ValidationReport check_units_coisotropic(const ConjugationModel& m, const FramedPolyvector& Pi,
                                         const std::vector<GroupPoint>& points);
// Π_T = Π + (→T − ←T), Λ_T = Λ − δ_Π T − ½[T, T]
std::pair<FramedPolyvector, Section> twist_framed(const ConjugationModel& m, const FramedPolyvector& Pi,
                                                  const Section& Lambda, const Section& T);

// ρ : A_m → T_mM and ρ_* : A_m^∨ → T_mM in frames at m
struct AnchorData {
  Matrix rho, rho_star;
};
AnchorData anchor_and_rho_star(const ConjugationModel& m, const FramedPolyvector& Pi, const GroupPoint& s);
// G ⇉ point: ρ = ρ_* = 0
AnchorData point_quotient_anchors(int n);

struct RankReport {
  int dim_M = 0, rk_A = 0;
  int dim_im_rho = 0, dim_im_rho_star = 0, dim_sum = 0;
  int dim_common_kernel = 0;  // ker ρ^∨ ∩ ker ρ_*^∨
  int rank = 0;
  int dim_stack = 0;
  bool forms_agree = true;  // dim_sum − rk A == dim 𝔛 − dim_common_kernel
};
RankReport rank_from_anchors(const AnchorData& a);
RankReport rank_at(const ConjugationModel& m, const FramedPolyvector& Pi, const GroupPoint& s);

struct NondegeneracyCertificate {
  int h_minus1_cot = 0, h0_cot = 0;  // ker ρ^∨, coker ρ^∨
  int h_minus1_tan = 0, h0_tan = 0;  // ker ρ, coker ρ
  int rank_minus1 = 0, rank0 = 0;    // induced maps
  bool chain_map = true;
  bool quasi_iso = false;
  int rank = 0, dim_stack = 0;
  bool consistent = true;  // quasi_iso ⇒ rank = dim 𝔛 = 0
};
NondegeneracyCertificate nondegenerate_from_anchors(const AnchorData& a);
NondegeneracyCertificate nondegenerate_at(const ConjugationModel& m, const FramedPolyvector& Pi, const GroupPoint& s);

// T^# : A^∨ → A, α ↦ T(α, ·)
Matrix sharp(const Multivector& T, int n);
// ranks of Π and Π_T agree at s; which reading of ρ_*^T matches; T^# a chain homotopy
struct TwistRankReport {
  ValidationReport report;
  RankReport before, after;
  bool plus_reading = false;     // ρ_*^T = ρ_* + ρ∘T^#
  bool minus_reading = false;    // ρ_*^T = ρ_* − ρ∘T^#
  bool printed_reading = false;  // ρ_*^T = ρ + ρ∘T^#
  int homotopy_sign = 0;         // ±1 when ±T^# is a homotopy between the two chain maps
};
TwistRankReport rank_twist_invariance(const ConjugationModel& m, const FramedPolyvector& Pi, const Section& Lambda,
                                      const Multivector& T, const GroupPoint& s);

}  // namespace hsw
