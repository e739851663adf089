#include "hsw/properties.hpp"

namespace hsw {

namespace {

const RandomCmParams kMcParams{-1, 3, 6};

bool same_module(const HomotopyModule2& a, const HomotopyModule2& b) {
  return a.dimC == b.dimC && a.dimE == b.dimE && a.rho == b.rho && a.RC == b.RC && a.RE == b.RE && a.Omega == b.Omega;
}

std::string mc_str(const MCElement& m) { return "Λ " + vec_str(m.Lambda) + " Π " + vec_str(m.Pi); }

}  // namespace

ValidationReport prop_crossed_module(Rng& rng, const RandomCmParams& p) {
  CrossedModule cm = random_crossed_module(rng, p);
  ValidationReport r;
  r.merge(check_crossed_module(cm), "crossed-module");
  r.merge(check_dgla(associated_dgla(cm)), "dgla");
  return r;
}

ValidationReport prop_inversion(Rng& rng) {
  RetractInstance in = random_retract_instance(rng);
  Lie2Morphism psi = invert_lie2_morphism(in.phi, in.psi1A, in.psi1G, in.h, in.hprime);
  ValidationReport r = check_inversion_constraints(in.phi, psi, in.h, in.hprime);
  Lie2Morphism again = invert_lie2_morphism(in.phi, in.psi1A, in.psi1G, in.h, in.hprime);
  if (!(again.phi2 == psi.phi2) || !(again.phi1A == psi.phi1A) || !(again.phi1G == psi.phi1G))
    r.add("uniqueness", "Psi2", "second run differs");
  return r;
}

ValidationReport prop_gauge_is_twist(Rng& rng) {
  MCElement m = random_mc(rng, random_mc_crossed_module(rng));
  const CrossedModule& cm = *m.cm;
  Vec T = random_vec(rng, cm.A.space.dim(1));
  Dgla g = associated_dgla(cm);
  Vec b = join_v(cm, 0, vec_scale(T, Scalar(-1)), Vec(cm.G.space.dim(0)));
  ValidationReport r;
  r.expect_eq(gauge(g, m.as_v(), b), twist(m, T).as_v(), "gauge=twist", "T " + vec_str(T));
  return r;
}

ValidationReport prop_mc_functoriality(Rng& rng) {
  HomotopicPair pr = random_homotopic_pair(rng, kMcParams);
  MCElement m = random_mc(rng, pr.phi.source);
  Vec T = random_vec(rng, m.cm->A.space.dim(1));
  ValidationReport r;
  MCElement lhs = mc_pushforward(pr.phi, twist(m, T));
  MCElement rhs = twist(mc_pushforward(pr.phi, m), pr.phi.phi1A.apply(1, T));
  if (!(lhs == rhs)) r.add("push-twist", "T " + vec_str(T), mc_str(lhs), mc_str(rhs));
  r.merge(mc_homotopy_transport({pr.phi, pr.psi, pr.h}, m), "homotopy");
  return r;
}

ValidationReport prop_lp_invariance(Rng& rng) {
  MCElement m = random_mc(rng, random_mc_crossed_module(rng));
  Vec T = random_vec(rng, m.cm->A.space.dim(1));
  auto a = lp_cohomology(m), b = lp_cohomology(twist(m, T));
  ValidationReport r;
  if (a != b) {
    auto s = [](const std::map<int, int>& d) {
      std::string o;
      for (const auto& [k, n] : d) o += std::to_string(k) + ":" + std::to_string(n) + " ";
      return o;
    };
    r.add("lp-invariance", "T " + vec_str(T), s(a), s(b));
  }
  return r;
}

ValidationReport prop_partition_inverse(Rng& rng, int max_obj, int max_arr) {
  FiniteGroupoid g = random_groupoid(rng, max_obj, max_arr);
  CoveredSurjection cs = random_covered_surjection(rng, g);
  ValidationReport r = check_covered_surjection(g, static_cast<int>(cs.phi.size()), cs);
  if (!r.ok()) return r;
  r.merge(check_partition_inverse(g, partition_inverse(g, cs)));
  return r;
}

ValidationReport prop_vb_bridge(Rng& rng) {
  VBHomotopyEquivalence eq = random_vb_equivalence(rng, random_groupoid(rng, 3, 9));
  ValidationReport r;
  r.merge(homotopy_to_morita_bridge(eq).report, "bridge");
  r.merge(morita_witness_check(*eq.phi.source, *eq.phi.target, witness_from_equivalence(eq)), "witness");
  VBHomotopyEquivalence d = dual_equivalence(eq);
  r.merge(check_homotopy_equivalence(d), "dual");
  r.merge(morita_witness_check(*d.phi.source, *d.phi.target, witness_from_equivalence(d)), "dual-witness");
  return r;
}

ValidationReport prop_vb_cochain_homotopy(Rng& rng) {
  VBHomotopyEquivalence eq = random_vb_equivalence(rng, random_groupoid(rng, 3, 9));
  CoreBundle c2 = core(*eq.phi.target);
  VBHomotopyDatum h;
  for (int m = 0; m < eq.phi.source->base.n_obj; ++m)
    h.h.push_back(random_matrix(rng, c2.dim[m], eq.phi.source->dimE[m]));
  VBMorphism psi = vb_add(eq.phi, apply_vb_homotopy(eq.phi.source, eq.phi.target, h), Scalar(-1));
  ValidationReport r;
  r.merge(vb_chain_map_and_homotopy(eq.phi, psi, h, 2), "homotopy");
  r.merge(check_dual_embedding(*eq.phi.source, 2), "dual-embedding");
  return r;
}

ValidationReport prop_dictionary(Rng& rng) {
  FiniteGroupoid g = random_groupoid(rng, 4, 12);
  ValidationReport r;
  HomotopyModule2 m = random_module(rng, g);
  SplitVB sv = to_split_vb(m);
  r.merge(check_vb_groupoid(sv.v), "split");
  if (!same_module(from_split_vb(sv.v, sv.dec), m)) r.add("from-to", "module", "from_split_vb(to_split_vb(m)) != m");

  auto v = std::make_shared<const VBGroupoid>(random_vb_groupoid(rng, g));
  RightDecomposition d = random_decomposition(rng, *v);
  auto split = std::make_shared<const VBGroupoid>(to_split_vb(from_split_vb(*v, d)).v);
  VBMorphism f = split_iso(v, d, split);
  r.merge(check_vb_morphism(f), "to-from");
  for (int a = 0; a < g.n_arr; ++a)
    if (det(f.arr[a]).is_zero()) r.add("to-from", g.arr_name(a), "split iso singular");

  auto m1 = std::make_shared<const HomotopyModule2>(from_split_vb(*v, d));
  auto theta = random_theta(rng, *m1);
  auto m2 = std::make_shared<const HomotopyModule2>(from_split_vb(*v, shift_decomposition(*v, d, theta)));
  r.merge(check_hm2_morphism(decomposition_gauge(m1, m2, theta)), "decomposition-gauge");
  return r;
}

AmmRun amm_property(const MatrixLieAlgebra& g, Rng& rng, int points, int twists) {
  AmmRun out;
  ConjugationModel m = conjugation_model(g);
  FramedPolyvector Pi = amm_bivector(m);
  Section Lambda = constant_section(m, cartan_trivector(g));
  std::vector<GroupPoint> pts;
  for (int i = 0; i < points; ++i) pts.push_back(random_point(g, rng));
  std::vector<ArrowPoint> arrows;
  for (size_t i = 0; i < pts.size(); ++i) arrows.push_back({pts[i], pts[(i + 1) % pts.size()]});
  out.report.merge(check_quasi_poisson(m, Pi, Lambda, arrows), "amm");
  for (size_t i = 0; i < pts.size(); ++i) {
    std::string loc = "point " + std::to_string(i);
    RankReport rk = rank_at(m, Pi, pts[i]);
    out.ranks.push_back(rk.rank);
    if (rk.rank != 0) out.report.add("rank", loc, std::to_string(rk.rank), "0");
    const GroupPoint& c = pts[(i + 1) % pts.size()];
    GroupPoint conj = point_product(g, point_product(g, c, pts[i]), point_inverse(g, c));
    int rc = rank_at(m, Pi, conj).rank;
    if (rc != rk.rank) out.report.add("orbit-constancy", loc, std::to_string(rk.rank), std::to_string(rc));
    NondegeneracyCertificate nd = nondegenerate_at(m, Pi, pts[i]);
    out.nondegenerate.push_back(nd.quasi_iso);
    if (!nd.quasi_iso) out.report.add("nondegenerate", loc, "false", "true");
  }
  for (int t = 0; t < twists; ++t) {
    Multivector T(g.n);
    for (int a = 0; a < g.n; ++a)
      for (int b = a + 1; b < g.n; ++b) T.add((1u << a) | (1u << b), random_scalar(rng));
    for (size_t i = 0; i < pts.size(); ++i) {
      TwistRankReport tr = rank_twist_invariance(m, Pi, Lambda, T, pts[i]);
      out.report.merge(tr.report, "twist " + std::to_string(t));
      ++out.twist_checks;
      out.plus_readings += tr.plus_reading;
      out.printed_readings += tr.printed_reading;
    }
  }
  return out;
}

const std::vector<NamedProperty>& all_properties() {
  static const std::vector<NamedProperty> props = {
      {"crossed-module", "lie2", [](Rng& r) { return prop_crossed_module(r); }},
      {"inversion", "lie2", prop_inversion},
      {"gauge-is-twist", "mc", prop_gauge_is_twist},
      {"mc-functoriality", "mc", prop_mc_functoriality},
      {"lp-invariance", "mc", prop_lp_invariance},
      {"partition-inverse", "fingrpd", [](Rng& r) { return prop_partition_inverse(r); }},
      {"vb-bridge", "vbgrpd", prop_vb_bridge},
      {"vb-cochain-homotopy", "vbgrpd", prop_vb_cochain_homotopy},
      {"dictionary", "homrep", prop_dictionary},
  };
  return props;
}

}  // namespace hsw
