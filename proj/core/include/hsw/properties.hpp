#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hsw/homrep.hpp"
#include "hsw/mc.hpp"
#include "hsw/qpois.hpp"

namespace hsw {

// Randomized property checks. Each call draws one instance from rng and
// reports every identity that fails on it.

// valid crossed module, and its dgla has d² = 0, Jacobi and the derivation rule
ValidationReport prop_crossed_module(Rng& rng, const RandomCmParams& p = {-3, 3, 3});
// the inverse satisfies the four constraints and is reproduced exactly by a second run
ValidationReport prop_inversion(Rng& rng);
// exp(−T)·m = m_T
ValidationReport prop_gauge_is_twist(Rng& rng);
// MC(Φ)(m_T) = (MC(Φ)m)_{Φ₁T} and MC(Ψ)(m) = MC(Φ)(m)_{h(Π)}
ValidationReport prop_mc_functoriality(Rng& rng);
// H(m) and H(m_T) have the same dimensions
ValidationReport prop_lp_invariance(Rng& rng);
// (I₀, I₁) is a chain map, I∘Φ* = id, Φ*∘I − id = δH + Hδ
ValidationReport prop_partition_inverse(Rng& rng, int max_obj = 6, int max_arr = 30);
// B∘A = id + J_h̃ with id + J_h̃ invertible; the dual equivalence gives a Morita witness
ValidationReport prop_vb_bridge(Rng& rng);
// δĥ + ĥδ = Φ̂ − Ψ̂ through level 2; i intertwines the differentials
ValidationReport prop_vb_cochain_homotopy(Rng& rng);
// to_split_vb∘from_split_vb ≅ id both ways, and the gauge between two decompositions
ValidationReport prop_dictionary(Rng& rng);

// ½[Π,Π] = ←Λ − →Λ, δ_ΠΛ = 0, rank 0 and non-degenerate at each point, rank constant
// on conjugation orbits and unchanged by `twists` random bivectors
struct AmmRun {
  ValidationReport report;
  std::vector<int> ranks;
  std::vector<bool> nondegenerate;
  int plus_readings = 0, printed_readings = 0, twist_checks = 0;
};
AmmRun amm_property(const MatrixLieAlgebra& g, Rng& rng, int points, int twists);

struct NamedProperty {
  std::string name;
  std::string module;
  std::function<ValidationReport(Rng&)> run;
};
const std::vector<NamedProperty>& all_properties();

}  // namespace hsw
