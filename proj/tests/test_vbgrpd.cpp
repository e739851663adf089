#include <gtest/gtest.h>

#include "hsw/homrep.hpp"

using namespace hsw;

namespace {

bool has_tag(const ValidationReport& r, const std::string& tag) {
  for (const auto& f : r.findings())
    if (f.tag == tag) return true;
  return false;
}

// strict module over the pair groupoid: R = id, Ω = 0, constant ρ
HomotopyModule2 constant_module(int n, const Matrix& rho) {
  FiniteGroupoid g = pair_groupoid(n);
  HomotopyModule2 m;
  m.base = g;
  m.dimC.assign(n, rho.cols());
  m.dimE.assign(n, rho.rows());
  m.rho.assign(n, rho);
  m.RC.assign(g.n_arr, Matrix::identity(rho.cols()));
  m.RE.assign(g.n_arr, Matrix::identity(rho.rows()));
  for (const auto& [ab, c] : g.comp) m.Omega[ab] = Matrix(rho.cols(), rho.rows());
  return m;
}

std::shared_ptr<const VBGroupoid> share(VBGroupoid v) { return std::make_shared<const VBGroupoid>(std::move(v)); }

int sum(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

}  // namespace

TEST(VBGroupoid, ZeroBundleValid) {
  EXPECT_TRUE(check_vb_groupoid(zero_vb(pair_groupoid(2))).ok());
  EXPECT_TRUE(check_vb_groupoid(zero_vb(transitive_groupoid(2, 0))).ok());
}

TEST(VBGroupoid, IdentityOverUnitsHasZeroCore) {
  VBGroupoid v = identity_vb_over_units({1, 2, 0});
  EXPECT_TRUE(check_vb_groupoid(v).ok());
  EXPECT_EQ(core(v).dim, (std::vector<int>{0, 0, 0}));
}

TEST(VBGroupoid, MisSignedMultiplicationBreaksUnitLaw) {
  VBGroupoid v = to_split_vb(constant_module(2, Matrix{{1}})).v;
  ASSERT_TRUE(check_vb_groupoid(v).ok());
  // arrow 1 goes 1 → 0; flip 1_{0}·γ
  v.mult[{0, 1}] = -v.mult[{0, 1}];
  auto r = check_vb_groupoid(v);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_tag(r, "unit-law"));
}

TEST(VBGroupoid, RandomInstancesValid) {
  Rng rng(11);
  for (int i = 0; i < 5; ++i) {
    FiniteGroupoid g = random_groupoid(rng, 4, 12);
    VBGroupoid v = random_vb_groupoid(rng, g);
    auto r = check_vb_groupoid(v);
    EXPECT_TRUE(r.ok()) << r.findings().front().tag;
  }
}

TEST(Core, SplitModelCoreIsC) {
  HomotopyModule2 m = constant_module(3, Matrix{{1, 2}});
  CoreBundle c = core(to_split_vb(m).v);
  EXPECT_EQ(c.dim, m.dimC);
}

TEST(Core, ZeroSourceOverUnitsIsEverything) {
  // E = 0: V_m is a vector space under addition
  VBGroupoid v;
  v.base = unit_groupoid(2);
  v.dimE = {0, 0};
  v.dimV = {2, 1};
  for (int m = 0; m < 2; ++m) {
    int d = v.dimV[m];
    v.s.push_back(Matrix(0, d));
    v.t.push_back(Matrix(0, d));
    v.unit.push_back(Matrix(d, 0));
    v.inv.push_back(-Matrix::identity(d));
    v.mult[{m, m}] = Matrix::hstack(Matrix::identity(d), Matrix::identity(d));
  }
  ASSERT_TRUE(check_vb_groupoid(v).ok());
  EXPECT_EQ(core(v).dim, (std::vector<int>{2, 1}));
}

TEST(Core, RankNullityOnRandom) {
  Rng rng(12);
  for (int i = 0; i < 5; ++i) {
    FiniteGroupoid g = random_groupoid(rng, 4, 12);
    VBGroupoid v = random_vb_groupoid(rng, g);
    CoreBundle c = core(v);
    for (int m = 0; m < g.n_obj; ++m) EXPECT_EQ(c.dim[m], v.dimV[g.unit[m]] - v.dimE[m]);
    EXPECT_TRUE(check_core_sequence(v).ok());
  }
}

TEST(CoreEmbeddings, UnitIsCanonicalInclusion) {
  Rng rng(13);
  VBGroupoid v = random_vb_groupoid(rng, transitive_groupoid(2, 2));
  CoreBundle c = core(v);
  CoreEmbeddings e = core_embeddings(v, c);
  for (int m = 0; m < v.base.n_obj; ++m) EXPECT_EQ(e.R[v.base.unit[m]], c.basis[m]);
}

TEST(CoreEmbeddings, SplitModelFormulas) {
  // R(c) = (c, 0); L(c) = (R^C c, −ρc)
  Rng rng(14);
  HomotopyModule2 m = random_module(rng, pair_groupoid(2));
  while (m.dimC[0] == 0 || m.dimE[0] == 0) m = random_module(rng, pair_groupoid(2));
  VBGroupoid v = to_split_vb(m).v;
  CoreEmbeddings e = core_embeddings(v);
  const auto& g = v.base;
  for (int a = 0; a < g.n_arr; ++a) {
    int dc = m.dimC[g.tgt[a]], de = m.dimE[g.src[a]];
    EXPECT_EQ(e.R[a], Matrix::vstack(Matrix::identity(dc), Matrix(de, dc)));
    EXPECT_EQ(e.L[a], Matrix::vstack(m.RC[a], -m.rho[g.src[a]]));
  }
}

TEST(Dual, DoubleDualIsomorphic) {
  Rng rng(15);
  for (int i = 0; i < 3; ++i) {
    auto v = share(random_vb_groupoid(rng, random_groupoid(rng, 3, 9)));
    auto d = dualize(*v);
    ASSERT_TRUE(check_vb_groupoid(d).ok());
    auto dd = share(dualize(d));
    VBMorphism iso = double_dual_iso(v, dd);
    auto r = check_vb_morphism(iso);
    EXPECT_TRUE(r.ok()) << r.findings().front().tag;
    for (const auto& o : iso.obj) EXPECT_FALSE(det(o).is_zero());
  }
}

TEST(Dual, ZeroCoreGivesZeroUnitBundle) {
  VBGroupoid d = dualize(identity_vb_over_units({2, 1}));
  EXPECT_TRUE(check_vb_groupoid(d).ok());
  EXPECT_EQ(d.dimE, (std::vector<int>{0, 0}));
}

TEST(Dual, SplitModelSwapsCoreAndBase) {
  HomotopyModule2 m = constant_module(2, Matrix{{1, 0}, {0, 0}, {2, 1}});
  VBGroupoid v = to_split_vb(m).v;
  VBGroupoid d = dualize(v);
  EXPECT_TRUE(check_vb_groupoid(d).ok());
  EXPECT_EQ(d.dimE, m.dimC);
  EXPECT_EQ(core(d).dim, m.dimE);
}

TEST(Dual, CoreEmbeddingsTranspose) {
  // R_V = t_{V∨}ᵀ and L_V = s_{V∨}ᵀ
  Rng rng(16);
  VBGroupoid v = random_vb_groupoid(rng, transitive_groupoid(2, 1));
  VBGroupoid d = dualize(v);
  CoreEmbeddings e = core_embeddings(v);
  for (int a = 0; a < v.base.n_arr; ++a) {
    EXPECT_EQ(e.R[a], d.t[a].transpose());
    EXPECT_EQ(e.L[a], d.s[a].transpose());
  }
}

TEST(Pullback, IdentityIsCopy) {
  Rng rng(17);
  auto v = random_vb_groupoid(rng, transitive_groupoid(2, 2));
  VBPullback P = vb_pullback(v, identity_surjection(v));
  EXPECT_TRUE(check_vb_groupoid(P.v).ok());
  EXPECT_EQ(P.v.dimV, v.dimV);
  for (const auto& p : P.proj) EXPECT_FALSE(det(p).is_zero());
}

TEST(Pullback, FoldMapCoreAndMorita) {
  Rng rng(18);
  FiniteGroupoid g = transitive_groupoid(2, 1);
  auto v = share(random_vb_groupoid(rng, g));
  BundleSurjection b;
  b.phi = {0, 1, 0, 1};
  for (int m : b.phi) {
    b.dim.push_back(v->dimE[m]);
    b.map.push_back(Matrix::identity(v->dimE[m]));
  }
  VBPullback P = vb_pullback(*v, b);
  ASSERT_TRUE(check_vb_groupoid(P.v).ok());
  CoreBundle cv = core(*v), cp = core(P.v);
  for (int x = 0; x < 4; ++x) EXPECT_EQ(cp.dim[x], cv.dim[b.phi[x]]);
  auto w = share(P.v);
  VBMorphism proj{w, v, b.phi, P.pb.proj, P.proj, b.map};
  EXPECT_TRUE(check_vb_morphism(proj).ok());
  EXPECT_TRUE(check_morita_morphism(proj).ok());
}

TEST(Pullback, NotSurjectiveThrows) {
  VBGroupoid v = to_split_vb(constant_module(2, Matrix{{1}})).v;
  BundleSurjection b{{0, 1}, {1, 0}, {Matrix{{1}}, Matrix(1, 0)}};
  EXPECT_THROW(vb_pullback(v, b), NotSurjective);
}

TEST(Pullback, DualCompatibility) {
  // V[φ*E]^∨ ≅ V^∨[φ*C^∨] through the projections to V and V^∨
  Rng rng(19);
  FiniteGroupoid g = transitive_groupoid(2, 1);
  VBGroupoid v = random_vb_groupoid(rng, g);
  VBGroupoid vd = dualize(v);
  std::vector<int> phi{0, 1, 1};
  BundleSurjection be, bc;
  be.phi = bc.phi = phi;
  for (int m : phi) {
    be.dim.push_back(v.dimE[m]);
    be.map.push_back(Matrix::identity(v.dimE[m]));
    bc.dim.push_back(vd.dimE[m]);
    bc.map.push_back(Matrix::identity(vd.dimE[m]));
  }
  VBPullback P = vb_pullback(v, be), Q = vb_pullback(vd, bc);
  auto Pd = share(dualize(P.v));
  auto Qs = share(Q.v);
  VBMorphism iso = vb_identity(Pd);
  iso.target = Qs;
  for (int a = 0; a < P.v.base.n_arr; ++a) {
    auto pinv = inverse(P.proj[a]);
    auto qinv = inverse(Q.proj[a]);
    ASSERT_TRUE(pinv && qinv);
    iso.arr[a] = *qinv * pinv->transpose();
  }
  for (int x = 0; x < static_cast<int>(phi.size()); ++x) {
    int u = P.v.base.unit[x];
    iso.obj[x] = Qs->s[u] * iso.arr[u] * Pd->unit[x];
  }
  auto r = check_vb_morphism(iso);
  EXPECT_TRUE(r.ok()) << r.findings().front().tag << " " << r.findings().front().location;
  for (const auto& o : iso.obj) EXPECT_FALSE(det(o).is_zero());
}

TEST(Homotopy, ZeroGivesZeroMorphism) {
  Rng rng(20);
  auto v = share(random_vb_groupoid(rng, transitive_groupoid(2, 1)));
  CoreBundle c = core(*v);
  VBHomotopyDatum h;
  for (int m = 0; m < v->base.n_obj; ++m) h.h.push_back(Matrix(c.dim[m], v->dimE[m]));
  VBMorphism J = apply_vb_homotopy(v, v, h);
  for (const auto& a : J.arr) EXPECT_TRUE(a.is_zero());
}

TEST(Homotopy, IsMorphismAndMatchesUnitFormula) {
  // at 1_m: J_h(v) = c_basis·h(tv − sv) + 1_{ρ h s v}
  Rng rng(21);
  for (int i = 0; i < 3; ++i) {
    auto v = share(random_vb_groupoid(rng, random_groupoid(rng, 3, 9)));
    CoreBundle c = core(*v);
    VBHomotopyDatum h;
    for (int m = 0; m < v->base.n_obj; ++m) h.h.push_back(random_matrix(rng, c.dim[m], v->dimE[m]));
    VBMorphism J = apply_vb_homotopy(v, v, h);
    EXPECT_TRUE(check_vb_morphism(J).ok());
    for (int m = 0; m < v->base.n_obj; ++m) {
      int u = v->base.unit[m];
      Matrix expect = c.basis[m] * h.h[m] * (v->t[u] - v->s[u]) + v->unit[m] * c.rho[m] * h.h[m] * v->s[u];
      EXPECT_EQ(J.arr[u], expect);
    }
  }
}

TEST(Homotopy, DualOfJIsJOfDual) {
  Rng rng(22);
  auto v = share(random_vb_groupoid(rng, transitive_groupoid(2, 2)));
  auto d = share(dualize(*v));
  CoreBundle c = core(*v);
  VBHomotopyDatum h, hd;
  auto iso = dual_core_iso(*v, *d);
  for (int m = 0; m < v->base.n_obj; ++m) {
    h.h.push_back(random_matrix(rng, c.dim[m], v->dimE[m]));
    hd.h.push_back(iso[m] * h.h[m].transpose());
  }
  VBMorphism Jd = dual_morphism(apply_vb_homotopy(v, v, h), d, d);
  VBMorphism J2 = apply_vb_homotopy(d, d, hd);
  EXPECT_TRUE(vb_equal(Jd, J2));
}

TEST(FindHomotopy, RecoversConstructedDatum) {
  Rng rng(23);
  auto v = share(random_vb_groupoid(rng, transitive_groupoid(2, 1)));
  CoreBundle c = core(*v);
  VBHomotopyDatum h0;
  for (int m = 0; m < v->base.n_obj; ++m) h0.h.push_back(random_matrix(rng, c.dim[m], v->dimE[m]));
  VBMorphism id = vb_identity(v);
  auto same = find_homotopy(id, id);
  ASSERT_TRUE(same);
  for (const auto& a : apply_vb_homotopy(v, v, *same).arr) EXPECT_TRUE(a.is_zero());
  VBMorphism phi = vb_add(id, apply_vb_homotopy(v, v, h0));
  auto h = find_homotopy(phi, id);
  ASSERT_TRUE(h);
  EXPECT_TRUE(vb_equal(apply_vb_homotopy(v, v, *h), apply_vb_homotopy(v, v, h0)));
}

TEST(FindHomotopy, InfeasibleWithoutCore) {
  auto v = share(identity_vb_over_units({1, 2}));
  VBMorphism id = vb_identity(v);
  VBMorphism two = vb_add(id, id);
  EXPECT_FALSE(find_homotopy(two, id));
}

TEST(Bridge, IdentityEquivalence) {
  Rng rng(24);
  auto v = share(random_vb_groupoid(rng, transitive_groupoid(2, 1)));
  CoreBundle c = core(*v);
  VBHomotopyDatum z;
  for (int m = 0; m < v->base.n_obj; ++m) z.h.push_back(Matrix(c.dim[m], v->dimE[m]));
  VBHomotopyEquivalence eq{vb_identity(v), vb_identity(v), z, z};
  Bridge b = homotopy_to_morita_bridge(eq);
  EXPECT_TRUE(b.report.ok());
  for (const auto& h : b.h_tilde.h) EXPECT_TRUE(h.is_zero());
  VBMorphism BA = vb_compose(b.B, b.A);
  EXPECT_TRUE(vb_equal(BA, vb_identity(b.P1)));
}

TEST(Bridge, RandomEquivalences) {
  Rng rng(25);
  for (int i = 0; i < 4; ++i) {
    auto eq = random_vb_equivalence(rng, random_groupoid(rng, 3, 9));
    ASSERT_TRUE(check_homotopy_equivalence(eq).ok());
    Bridge b = homotopy_to_morita_bridge(eq);
    EXPECT_TRUE(b.report.ok()) << b.report.findings().front().tag << " " << b.report.findings().front().location;
  }
}

TEST(Bridge, RejectsNonEquivalence) {
  Rng rng(26);
  auto eq = random_vb_equivalence(rng, transitive_groupoid(2, 1));
  eq.h1.h[0] = eq.h1.h[0] + Matrix::identity(eq.h1.h[0].rows()).block(0, 0, eq.h1.h[0].rows(), eq.h1.h[0].cols());
  if (eq.h1.h[0].rows() && eq.h1.h[0].cols()) EXPECT_THROW(homotopy_to_morita_bridge(eq), NotAHomotopyEquivalence);
}

TEST(Morita, IdentityAndNonSurjective) {
  Rng rng(27);
  auto v = share(random_vb_groupoid(rng, transitive_groupoid(2, 1)));
  EXPECT_TRUE(check_morita_morphism(vb_identity(v)).ok());
  VBMorphism zero = vb_add(vb_identity(v), vb_identity(v), Scalar(-1));
  bool nonzero_base = false;
  for (int d : v->dimE) nonzero_base |= d > 0;
  if (nonzero_base) {
    auto r = check_morita_morphism(zero);
    EXPECT_TRUE(has_tag(r, "surjective"));
  }
}

TEST(Morita, WitnessAndDualWitness) {
  Rng rng(28);
  for (int i = 0; i < 3; ++i) {
    auto eq = random_vb_equivalence(rng, random_groupoid(rng, 3, 9));
    auto r = morita_witness_check(*eq.phi.source, *eq.phi.target, witness_from_equivalence(eq));
    EXPECT_TRUE(r.ok()) << r.findings().front().tag;
    auto deq = dual_equivalence(eq);
    ASSERT_TRUE(check_homotopy_equivalence(deq).ok());
    auto rd = morita_witness_check(*deq.phi.source, *deq.phi.target, witness_from_equivalence(deq));
    EXPECT_TRUE(rd.ok());
  }
}

TEST(Morita, WitnessSelf) {
  Rng rng(29);
  auto v = share(random_vb_groupoid(rng, transitive_groupoid(2, 2)));
  CoreBundle c = core(*v);
  VBHomotopyDatum z;
  for (int m = 0; m < v->base.n_obj; ++m) z.h.push_back(Matrix(c.dim[m], v->dimE[m]));
  MoritaWitness w = witness_from_equivalence({vb_identity(v), vb_identity(v), z, z});
  EXPECT_TRUE(morita_witness_check(*v, *v, w).ok());
  w.arrow_iso[0] = w.arrow_iso[1];
  EXPECT_TRUE(has_tag(morita_witness_check(*v, *v, w), "bitorsor"));
}

TEST(VBCochains, LevelZeroIsCoreSections) {
  Rng rng(30);
  VBGroupoid v = random_vb_groupoid(rng, transitive_groupoid(2, 1));
  Nerve n(v.base, 1);
  EXPECT_EQ(vb_cochains(v, n, 0).basis.cols(), sum(core(v).dim));
}

TEST(VBCochains, UnitGroupoidLevelOneUnconstrained) {
  VBGroupoid v = to_split_vb([] {
                   HomotopyModule2 m;
                   m.base = unit_groupoid(2);
                   m.dimC = {1, 2};
                   m.dimE = {2, 1};
                   m.rho = {Matrix{{1}, {0}}, Matrix{{1, 1}}};
                   m.RC = {Matrix::identity(1), Matrix::identity(2)};
                   m.RE = {Matrix::identity(2), Matrix::identity(1)};
                   m.Omega[{0, 0}] = Matrix(1, 2);
                   m.Omega[{1, 1}] = Matrix(2, 1);
                   return m;
                 }())
                     .v;
  ASSERT_TRUE(check_vb_groupoid(v).ok());
  Nerve n(v.base, 1);
  EXPECT_EQ(vb_cochains(v, n, 1).basis.cols(), sum(v.dimV));
}

TEST(VBCochains, SplitModelDimensionsMatchModuleCochains) {
  Rng rng(31);
  for (int i = 0; i < 3; ++i) {
    FiniteGroupoid g = random_groupoid(rng, 3, 9);
    HomotopyModule2 m = random_module(rng, g);
    VBGroupoid v = to_split_vb(m).v;
    Nerve n(g, 3);
    for (int k = 0; k <= 3; ++k) EXPECT_EQ(vb_cochains(v, n, k).basis.cols(), module_cochains(m, n, k).total) << k;
  }
}

TEST(VBCoboundary, ZeroAndUnitFormula) {
  Rng rng(32);
  VBGroupoid v = random_vb_groupoid(rng, transitive_groupoid(2, 1));
  Nerve n(v.base, 2);
  CoreBundle c = core(v);
  int total = sum(c.dim);
  EXPECT_TRUE(vec_is_zero(vb_coboundary(v, n, 0, Vec(total))));
  // δσ(1_m) = −σ(m)⁻¹ − σ(m) = −1_{ρσ(m)}
  Vec sigma = random_vec(rng, total);
  Vec d = vb_coboundary(v, n, 0, sigma);
  int off = 0, doff = 0;
  std::vector<int> aoff;
  for (int a = 0; a < v.base.n_arr; ++a) {
    aoff.push_back(doff);
    doff += v.dimV[a];
  }
  for (int m = 0; m < v.base.n_obj; ++m) {
    Vec sm(sigma.begin() + off, sigma.begin() + off + c.dim[m]);
    off += c.dim[m];
    int u = v.base.unit[m];
    Vec got(d.begin() + aoff[u], d.begin() + aoff[u] + v.dimV[u]);
    EXPECT_EQ(got, vec_scale(v.unit[m] * (c.rho[m] * sm), Scalar(-1)));
  }
}

TEST(VBCoboundary, NotProjectableThrows) {
  Rng rng(33);
  HomotopyModule2 m = constant_module(2, Matrix{{1}});
  VBGroupoid v = to_split_vb(m).v;
  Nerve n(v.base, 2);
  // E component on a non-unit arrow differing from the unit at its source
  int total = 0;
  for (int a = 0; a < v.base.n_arr; ++a) total += v.dimV[a];
  Vec sigma(total);
  sigma[2 * 1 + 1] = Scalar(1);  // arrow 1, E coordinate
  EXPECT_THROW(vb_coboundary(v, n, 1, sigma), NotProjectable);
}

TEST(VBCoboundary, SquareZeroAndDualEmbedding) {
  Rng rng(34);
  for (int i = 0; i < 3; ++i) {
    VBGroupoid v = random_vb_groupoid(rng, random_groupoid(rng, 3, 9));
    auto r = check_vb_complex(v, 2);
    EXPECT_TRUE(r.ok()) << r.findings().front().tag;
    auto e = check_dual_embedding(v, 2);
    EXPECT_TRUE(e.ok()) << e.findings().front().tag;
  }
}

TEST(ChainHomotopy, ZeroHomotopy) {
  Rng rng(35);
  auto v = share(random_vb_groupoid(rng, transitive_groupoid(2, 1)));
  CoreBundle c = core(*v);
  VBHomotopyDatum z;
  for (int m = 0; m < v->base.n_obj; ++m) z.h.push_back(Matrix(c.dim[m], v->dimE[m]));
  EXPECT_TRUE(vb_chain_map_and_homotopy(vb_identity(v), vb_identity(v), z, 2).ok());
}

TEST(ChainHomotopy, LevelZeroIsHRho) {
  // (δĥ + ĥδ)σ(m) = h(t σ(m)) = h ρ σ(m)
  Rng rng(36);
  auto v = share(random_vb_groupoid(rng, transitive_groupoid(2, 2)));
  CoreBundle c = core(*v);
  VBHomotopyDatum h;
  for (int m = 0; m < v->base.n_obj; ++m) h.h.push_back(random_matrix(rng, c.dim[m], v->dimE[m]));
  Nerve n(v->base, 1);
  Vec sigma = random_vec(rng, sum(c.dim));
  Vec got = vb_hat_homotopy(*v, *v, h, n, 0, vb_coboundary(*v, n, 0, sigma));
  Vec expect;
  int off = 0;
  for (int m = 0; m < v->base.n_obj; ++m) {
    Vec sm(sigma.begin() + off, sigma.begin() + off + c.dim[m]);
    off += c.dim[m];
    Vec x = h.h[m] * (c.rho[m] * sm);
    expect.insert(expect.end(), x.begin(), x.end());
  }
  EXPECT_EQ(got, expect);
}

TEST(ChainHomotopy, RandomThroughLevelTwo) {
  Rng rng(37);
  for (int i = 0; i < 3; ++i) {
    auto eq = random_vb_equivalence(rng, random_groupoid(rng, 3, 9));
    CoreBundle c2 = core(*eq.phi.target);
    VBHomotopyDatum h;
    for (int m = 0; m < eq.phi.source->base.n_obj; ++m)
      h.h.push_back(random_matrix(rng, c2.dim[m], eq.phi.source->dimE[m]));
    VBMorphism psi = vb_add(eq.phi, apply_vb_homotopy(eq.phi.source, eq.phi.target, h), Scalar(-1));
    auto r = vb_chain_map_and_homotopy(eq.phi, psi, h, 2);
    EXPECT_TRUE(r.ok()) << r.findings().front().tag << " " << r.findings().front().location;
  }
}

TEST(Multiplicative, UnitGroupoidAndZero) {
  EXPECT_EQ(multiplicative_sections(identity_vb_over_units({2, 1}), 1).cols(), 0);
  EXPECT_EQ(multiplicative_sections(zero_vb(pair_groupoid(2)), 1).cols(), 0);
}

TEST(Multiplicative, PairGroupoidLinearFormsComeFromE) {
  // ξ_ε(v) = ε(t v) − ε(s v) for ε ∈ Γ(E^∨), compared with the cocycle solve
  Rng rng(38);
  for (int i = 0; i < 3; ++i) {
    FiniteGroupoid g = pair_groupoid(3);
    VBGroupoid v = random_vb_groupoid(rng, g);
    Matrix mult = multiplicative_sections(v, 1);
    std::vector<int> eoff(g.n_obj + 1, 0), voff(g.n_arr + 1, 0);
    for (int m = 0; m < g.n_obj; ++m) eoff[m + 1] = eoff[m] + v.dimE[m];
    for (int a = 0; a < g.n_arr; ++a) voff[a + 1] = voff[a] + v.dimV[a];
    Matrix img(voff[g.n_arr], eoff[g.n_obj]);
    for (int a = 0; a < g.n_arr; ++a) {
      img.set_block(voff[a], eoff[g.tgt[a]], img.block(voff[a], eoff[g.tgt[a]], v.dimV[a], v.dimE[g.tgt[a]]) + v.t[a].transpose());
      img.set_block(voff[a], eoff[g.src[a]], img.block(voff[a], eoff[g.src[a]], v.dimV[a], v.dimE[g.src[a]]) - v.s[a].transpose());
    }
    int r = rank(img);
    EXPECT_EQ(mult.cols(), r);
    EXPECT_EQ(rank(Matrix::hstack(img, mult)), r);
  }
}

TEST(Multiplicative, TwoFormsSolve) {
  Rng rng(39);
  VBGroupoid v = random_vb_groupoid(rng, pair_groupoid(2));
  Matrix m2 = multiplicative_sections(v, 2);
  EXPECT_GE(m2.cols(), 0);
  EXPECT_EQ(multiplicative_sections(zero_vb(pair_groupoid(2)), 2).cols(), 0);
}
