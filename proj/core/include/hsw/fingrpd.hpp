#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "hsw/report.hpp"

namespace hsw {

struct NotSurjective : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidCover : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Objects 0..n_obj-1, arrows 0..n_arr-1. comp(g, h) = g∘h, defined when s(g) = t(h).
struct FiniteGroupoid {
  int n_obj = 0;
  int n_arr = 0;
  std::vector<int> src, tgt, unit, inv;
  std::map<std::pair<int, int>, int> comp;
  std::vector<std::string> obj_names, arr_names;  // optional

  int compose(int g, int h) const;  // throws std::out_of_range when not composable
  bool composable(int g, int h) const { return src[g] == tgt[h]; }
  std::string obj_name(int m) const;
  std::string arr_name(int g) const;
};

ValidationReport check_groupoid(const FiniteGroupoid& g);

FiniteGroupoid unit_groupoid(int n);
// arrow (x,y) goes from y to x; (x,y)(y,z) = (x,z)
FiniteGroupoid pair_groupoid(int n);
// one object; arrows are the group elements of ℤ/n
FiniteGroupoid cyclic_group_groupoid(int n);
// transitive groupoid X×G×X over n objects with group ℤ/k (k = 0 means S₃)
FiniteGroupoid transitive_groupoid(int n, int k);
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);
// relabel objects and arrows by permutations (for randomized instances)
FiniteGroupoid relabel(const FiniteGroupoid& g, const std::vector<int>& obj_perm, const std::vector<int>& arr_perm);
FiniteGroupoid random_groupoid(std::mt19937_64& rng, int max_obj = 6, int max_arr = 30);

// Γ^{(p)}: tuples (γ₁..γ_p) with s(γᵢ) = t(γᵢ₊₁). Level 0 holds one-element tuples {m}.
// Levels are built eagerly up to the cap in the constructor, so reads are thread-safe.
class Nerve {
public:
  Nerve(const FiniteGroupoid& g, int max_level);
  int max_level() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<std::vector<int>>& level(int p) const { return levels_.at(p); }
  int size(int p) const { return static_cast<int>(levels_.at(p).size()); }
  int index(int p, const std::vector<int>& t) const;  // -1 if absent

private:
  std::vector<std::vector<std::vector<int>>> levels_;
  std::vector<std::map<std::vector<int>, int>> index_;
};

std::vector<std::vector<int>> nerve(const FiniteGroupoid& g, int p);

struct Cochain {
  int level = 0;
  Vec values;  // indexed like Nerve::level(level)
};

// δf = s*f − t*f on level 0; alternating face sum above
Cochain coboundary(const FiniteGroupoid& g, const Nerve& n, const Cochain& c);
Cochain coboundary(const FiniteGroupoid& g, const Cochain& c);
// δ_p as sparse rows (one row per (p+1)-simplex)
std::vector<SparseRow> coboundary_rows(const FiniteGroupoid& g, const Nerve& n, int p);
Matrix coboundary_matrix(const FiniteGroupoid& g, const Nerve& n, int p);

std::vector<int> cohomology_dims(const FiniteGroupoid& g, int max_level);

struct PullbackGroupoid {
  FiniteGroupoid g;                              // Γ[X]
  std::vector<std::tuple<int, int, int>> triples;  // arrow -> (x, γ, y), from y to x
  std::map<std::tuple<int, int, int>, int> index;
  std::vector<int> proj;  // arrow -> γ
  std::vector<int> phi;   // X -> M
};

PullbackGroupoid pullback_groupoid(const FiniteGroupoid& g, const std::vector<int>& phi);

// C(M) →δ Z(Γ) with Z = ker δ₁ ⊂ C¹(Γ)
struct TwoTermGroupoidComplex {
  int dim_c0 = 0;
  Matrix z_basis;  // columns span Z inside C¹
  Matrix delta;    // δ₀ in z_basis coordinates, dim Z × dim C(M)
  int dim_ker = 0;
  int dim_coker = 0;
};
TwoTermGroupoidComplex truncated_two_term(const FiniteGroupoid& g);
// kernel of δ₁ as columns
Matrix multiplicative_functions(const FiniteGroupoid& g);

struct CoveredSurjection {
  std::vector<int> phi;                   // X -> M
  std::vector<std::vector<int>> cover;    // U_i as sorted object lists
  std::vector<std::vector<int>> sections; // σ_i(m) ∈ X, -1 outside U_i
  std::vector<Vec> weights;               // χ_i on M
};

ValidationReport check_covered_surjection(const FiniteGroupoid& g, int n_x, const CoveredSurjection& cs);
CoveredSurjection random_covered_surjection(std::mt19937_64& rng, const FiniteGroupoid& g, int extra_points = 3,
                                            int max_sets = 3);

struct SectionMaps {
  std::vector<int> sigma_hat;  // arrow of Γ -> arrow (σ_i tγ, γ, σ_j sγ) of Γ[X], or -1
  std::vector<int> tau;        // x -> arrow (x, 1_{φx}, σ_i φx) of Γ[X], or -1
  int at_arrow(int gamma) const;  // throws DomainViolation outside the cover
  int at_point(int x) const;
};
SectionMaps section_maps(const FiniteGroupoid& g, const PullbackGroupoid& pb, const CoveredSurjection& cs, int i, int j);

// I₀ : C(X) → C(M), I₁ : C¹(Γ[X]) → C¹(Γ), H : C¹(Γ[X]) → C(X), plus the pullbacks Φ*.
struct PartitionInverse {
  PullbackGroupoid pb;
  Matrix I0, I1, H;
  Matrix Phi0, Phi1;  // C(M) → C(X), C¹(Γ) → C¹(Γ[X])
};
PartitionInverse partition_inverse(const FiniteGroupoid& g, const CoveredSurjection& cs);
// chain map, I∘Φ* = id, Φ*∘I − id = δH + Hδ on C(X) ⊕ Z(Γ[X])
ValidationReport check_partition_inverse(const FiniteGroupoid& g, const PartitionInverse& pi);

}  // namespace hsw
