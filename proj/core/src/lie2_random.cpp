#include <algorithm>
#include <array>

#include "hsw/random.hpp"

namespace hsw {

Scalar random_scalar(Rng& rng, int range, bool fractions) {
  std::uniform_int_distribution<int> num(-range, range);
  long n = num(rng);
  if (fractions && std::uniform_int_distribution<int>(0, 5)(rng) == 0) {
    long d = std::uniform_int_distribution<int>(2, 3)(rng);
    return Scalar(n, d);
  }
  return Scalar(n);
}

Vec random_vec(Rng& rng, int n, int range) {
  Vec v(n);
  for (auto& x : v) x = random_scalar(rng, range);
  return v;
}

Matrix random_matrix(Rng& rng, int r, int c, int range) {
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = random_scalar(rng, range);
  return m;
}

Matrix random_invertible(Rng& rng, int n) {
  Matrix L = Matrix::identity(n), U = Matrix::identity(n), P(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      L(i, j) = random_scalar(rng, 2, false);
      U(j, i) = random_scalar(rng, 2, false);
    }
  for (int i = 0; i < n; ++i) {
    // nonzero diagonal scale
    int s = std::uniform_int_distribution<int>(1, 2)(rng);
    U(i, i) = std::uniform_int_distribution<int>(0, 1)(rng) ? Scalar(s) : Scalar(-s);
  }
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int i = 0; i < n; ++i) P(i, perm[i]) = 1;
  return P * L * U;
}

GradedLinearMap random_glm(Rng& rng, const GradedVectorSpace& src, const GradedVectorSpace& tgt, int shift) {
  GradedLinearMap f(src, tgt, shift);
  for (auto [d, n] : src.dims()) f.set_block(d, random_matrix(rng, tgt.dim(d + shift), n, 2));
  return f;
}

GradedLinearMap random_invertible_glm(Rng& rng, const GradedVectorSpace& v) {
  GradedLinearMap f(v, v, 0);
  for (auto [d, n] : v.dims()) f.set_block(d, random_invertible(rng, n));
  return f;
}

CrossedModule transport(const CrossedModule& cm, const GradedLinearMap& sa, const GradedLinearMap& sg) {
  GradedLinearMap ia = glm_inverse(sa), ig = glm_inverse(sg);
  GradedLieAlgebra A(sa.target()), G(sg.target());
  A.bracket = compose_left(sa, compose_right(cm.A.bracket, ia, ia));
  G.bracket = compose_left(sg, compose_right(cm.G.bracket, ig, ig));
  CrossedModule out(A, G);
  out.d = glm_compose(sg, glm_compose(cm.d, ia));
  out.action = compose_left(sa, compose_right(cm.action, ig, ia));
  return out;
}

namespace {

// block-diagonal bilinear map on direct sums, zero across summands
Bilinear bilinear_sum(const Bilinear& x, const Bilinear& y, const GradedVectorSpace& L, const GradedVectorSpace& R,
                      const GradedVectorSpace& Z) {
  Bilinear b(L, R, Z, x.shift());
  auto place = [&](const Bilinear& src, bool first) {
    src.for_each([&](int k, int i, int l, int j, const Vec& v) {
      int tk = k + l + src.shift();
      int oi = first ? 0 : x.left().dim(k);
      int oj = first ? 0 : x.right().dim(l);
      int oz = first ? 0 : x.target().dim(tk);
      Vec w(Z.dim(tk));
      for (size_t r = 0; r < v.size(); ++r) w[oz + r] = v[r];
      b.set(k, oi + i, l, oj + j, w);
    });
  };
  place(x, true);
  place(y, false);
  return b;
}

}  // namespace

CrossedModule direct_sum_cm(const CrossedModule& x, const CrossedModule& y) {
  GradedVectorSpace As = direct_sum(x.A.space, y.A.space), Gs = direct_sum(x.G.space, y.G.space);
  GradedLieAlgebra A(As), G(Gs);
  A.bracket = bilinear_sum(x.A.bracket, y.A.bracket, As, As, As);
  G.bracket = bilinear_sum(x.G.bracket, y.G.bracket, Gs, Gs, Gs);
  CrossedModule out(A, G);
  out.d = glm_direct_sum(x.d, y.d);
  out.action = bilinear_sum(x.action, y.action, Gs, As, As);
  return out;
}

CrossedModule contractible_cm(const GradedVectorSpace& v) {
  CrossedModule c{GradedLieAlgebra(v), GradedLieAlgebra(v)};
  c.d = GradedLinearMap::identity(v);
  return c;
}

namespace {

// An ordinary (degree 0) crossed module by structure constants.
struct Ordinary {
  int na = 0, ng = 0;
  // brackets and action as dense tables of vectors
  std::vector<std::vector<Vec>> ba, bg, act;
  Matrix d;

  Ordinary(int a, int g) : na(a), ng(g), d(g, a) {
    ba.assign(na, std::vector<Vec>(na, Vec(na)));
    bg.assign(ng, std::vector<Vec>(ng, Vec(ng)));
    act.assign(ng, std::vector<Vec>(na, Vec(na)));
  }
};

// structure constants of a few small Lie algebras
std::vector<std::vector<Vec>> lie_table(int which, int& n) {
  std::vector<std::vector<Vec>> t;
  auto set = [&](int i, int j, Vec v) {
    t[i][j] = v;
    t[j][i] = vec_scale(v, -1);
  };
  switch (which) {
    case 0:  // sl2: h, e, f
      n = 3;
      t.assign(n, std::vector<Vec>(n, Vec(n)));
      set(0, 1, {0, 2, 0});
      set(0, 2, {0, 0, -2});
      set(1, 2, {1, 0, 0});
      break;
    case 1:  // Heisenberg
      n = 3;
      t.assign(n, std::vector<Vec>(n, Vec(n)));
      set(0, 1, {0, 0, 1});
      break;
    case 2:  // aff(1)
      n = 2;
      t.assign(n, std::vector<Vec>(n, Vec(n)));
      set(0, 1, {0, 1});
      break;
    default:  // abelian of dimension 1 or 2
      n = which == 3 ? 1 : 2;
      t.assign(n, std::vector<Vec>(n, Vec(n)));
  }
  return t;
}

Ordinary random_ordinary(Rng& rng, int max_dim) {
  for (;;) {
    int kind = std::uniform_int_distribution<int>(0, 5)(rng);
    int which = std::uniform_int_distribution<int>(0, 4)(rng);
    int n = 0;
    auto tab = lie_table(which, n);
    switch (kind) {
      case 0: {  // adjoint: 𝔤 →id 𝔤
        if (n > max_dim) continue;
        Ordinary o(n, n);
        o.ba = tab;
        o.bg = tab;
        o.act = tab;
        o.d = Matrix::identity(n);
        return o;
      }
      case 1: {  // adjoint module with d = 0
        if (n > max_dim) continue;
        Ordinary o(n, n);
        o.bg = tab;
        o.act = tab;
        return o;
      }
      case 2: {  // centre of Heisenberg
        if (3 > max_dim) continue;
        Ordinary o(1, 3);
        o.bg = lie_table(1, n);
        o.d(2, 0) = 1;
        return o;
      }
      case 3: {  // Heisenberg → abelian plane, action through a lift
        if (3 > max_dim) continue;
        Ordinary o(3, 2);
        o.ba = lie_table(1, n);
        o.d(0, 0) = 1;
        o.d(1, 1) = 1;
        o.act[0][1] = {0, 0, 1};
        o.act[1][0] = {0, 0, -1};
        return o;
      }
      case 4: {  // derived ideal of aff(1)
        if (2 > max_dim) continue;
        Ordinary o(1, 2);
        o.bg = lie_table(2, n);
        o.d(1, 0) = 1;
        o.act[0][0] = {1};
        return o;
      }
      default: {  // abelian with an arbitrary d
        int a = std::uniform_int_distribution<int>(1, max_dim)(rng);
        int g = std::uniform_int_distribution<int>(1, max_dim)(rng);
        Ordinary o(a, g);
        o.d = random_matrix(rng, g, a, 2);
        return o;
      }
    }
  }
}

// Λ[ε₁,(ε₂)] ⊗ ℚ[η]/(η²) with |εᵢ| = ±1 and |η| = ±2. Monomials are bitmasks over
// the generators in increasing order; every generator squares to zero.
struct SmallAlgebra {
  std::vector<int> gdeg;
  std::vector<unsigned> mask;
  std::vector<int> deg;
  // (product index or -1, Koszul sign)
  std::pair<int, int> mul(int i, int j) const {
    unsigned a = mask[i], b = mask[j];
    if (a & b) return {-1, 0};
    int sign = 1;
    for (size_t x = 0; x < gdeg.size(); ++x)
      for (size_t y = 0; y < x; ++y)
        if ((a >> x & 1u) && (b >> y & 1u) && (gdeg[x] & 1) && (gdeg[y] & 1)) sign = -sign;
    for (size_t k = 0; k < mask.size(); ++k)
      if (mask[k] == (a | b)) return {static_cast<int>(k), sign};
    return {-1, 0};
  }
};

SmallAlgebra random_algebra(Rng& rng, int lo, int hi, bool allow_pair, bool force_pair) {
  for (;;) {
    SmallAlgebra c;
    int p = std::uniform_int_distribution<int>(0, 3)(rng) == 0 ? -1 : 1;
    int q = std::uniform_int_distribution<int>(0, 3)(rng) == 0 ? -2 : 2;
    int odd = std::uniform_int_distribution<int>(0, 5)(rng) != 0 ? 1 : 0;
    if (odd && allow_pair && std::uniform_int_distribution<int>(0, 2)(rng) == 0) odd = 2;
    if (force_pair) odd = 2;
    for (int k = 0; k < odd; ++k) c.gdeg.push_back(p);
    if (std::uniform_int_distribution<int>(0, 2)(rng) != 0) c.gdeg.push_back(q);
    unsigned n = 1u << c.gdeg.size();
    for (unsigned m = 0; m < n; ++m) {
      int d = 0;
      for (size_t g = 0; g < c.gdeg.size(); ++g)
        if (m >> g & 1u) d += c.gdeg[g];
      c.mask.push_back(m);
      c.deg.push_back(d);
    }
    bool fits = std::all_of(c.deg.begin(), c.deg.end(), [&](int d) { return d >= lo && d <= hi; });
    if (fits) return c;
  }
}

CrossedModule tensor(const Ordinary& o, const SmallAlgebra& c) {
  std::map<int, int> da, dg;
  // basis of 𝔄_p: pairs (c index of degree p, a index), c-major
  std::map<int, std::vector<int>> cs;
  for (size_t i = 0; i < c.deg.size(); ++i) cs[c.deg[i]].push_back(static_cast<int>(i));
  for (auto& [p, v] : cs) {
    da[p] = static_cast<int>(v.size()) * o.na;
    dg[p] = static_cast<int>(v.size()) * o.ng;
  }
  auto pos = [&](int ci) {
    int p = c.deg[ci];
    auto& v = cs[p];
    return static_cast<int>(std::find(v.begin(), v.end(), ci) - v.begin());
  };
  GradedLieAlgebra A{GradedVectorSpace(da)}, G{GradedVectorSpace(dg)};
  CrossedModule cm(A, G);
  int nc = static_cast<int>(c.deg.size());
  for (int c1 = 0; c1 < nc; ++c1)
    for (int c2 = 0; c2 < nc; ++c2) {
      auto [c3, sign] = c.mul(c1, c2);
      if (c3 < 0) continue;
      int k = c.deg[c1], l = c.deg[c2], m = c.deg[c3];
      int p1 = pos(c1), p2 = pos(c2), p3 = pos(c3);
      auto lift = [&](const Vec& v, int stride, int p) {
        Vec w(stride * static_cast<int>(cs[m].size()));
        for (int r = 0; r < stride; ++r) w[p * stride + r] = sign > 0 ? v[r] : -v[r];
        return w;
      };
      for (int i = 0; i < o.na; ++i)
        for (int j = 0; j < o.na; ++j)
          if (!vec_is_zero(o.ba[i][j])) cm.A.bracket.set(k, p1 * o.na + i, l, p2 * o.na + j, lift(o.ba[i][j], o.na, p3));
      for (int i = 0; i < o.ng; ++i)
        for (int j = 0; j < o.ng; ++j)
          if (!vec_is_zero(o.bg[i][j])) cm.G.bracket.set(k, p1 * o.ng + i, l, p2 * o.ng + j, lift(o.bg[i][j], o.ng, p3));
      for (int i = 0; i < o.ng; ++i)
        for (int j = 0; j < o.na; ++j)
          if (!vec_is_zero(o.act[i][j])) cm.action.set(k, p1 * o.ng + i, l, p2 * o.na + j, lift(o.act[i][j], o.na, p3));
    }
  cm.d = GradedLinearMap(cm.A.space, cm.G.space, 0);
  for (auto& [p, v] : cs) {
    Matrix m(dg[p], da[p]);
    for (size_t t = 0; t < v.size(); ++t) m.set_block(static_cast<int>(t) * o.ng, static_cast<int>(t) * o.na, o.d);
    cm.d.set_block(p, m);
  }
  return cm;
}

CrossedModule abelian_cm(Rng& rng, const GradedVectorSpace& a, const GradedVectorSpace& g) {
  CrossedModule c{GradedLieAlgebra(a), GradedLieAlgebra(g)};
  c.d = random_glm(rng, a, g, 0);
  return c;
}

}  // namespace

CrossedModule random_crossed_module(Rng& rng, const RandomCmParams& p) {
  for (;;) {
    SmallAlgebra c = random_algebra(rng, p.deg_lo, p.deg_hi, p.allow_pair, p.force_pair);
    std::map<int, int> count;
    for (int d : c.deg) ++count[d];
    int worst = 0;
    for (auto [d, n] : count) worst = std::max(worst, n);
    if (worst > p.max_dim) continue;
    Ordinary o = random_ordinary(rng, p.max_dim / worst);
    CrossedModule cm = tensor(o, c);
    // pad with abelian summands where there is room
    std::map<int, int> ka, kg;
    std::uniform_int_distribution<int> coin(0, 2);
    for (int d = p.deg_lo; d <= p.deg_hi; ++d) {
      int ra = p.max_dim - cm.A.space.dim(d), rg = p.max_dim - cm.G.space.dim(d);
      if (ra > 0 && coin(rng) == 0) ka[d] = std::uniform_int_distribution<int>(1, ra)(rng);
      if (rg > 0 && coin(rng) == 0) kg[d] = std::uniform_int_distribution<int>(1, rg)(rng);
    }
    cm = direct_sum_cm(cm, abelian_cm(rng, GradedVectorSpace(ka), GradedVectorSpace(kg)));
    return transport(cm, random_invertible_glm(rng, cm.A.space), random_invertible_glm(rng, cm.G.space));
  }
}

namespace {

// h_K = −d_K⁻¹ on the contractible summand, zero on the first one
GradedLinearMap contracting_homotopy(const CrossedModule& x, const GradedVectorSpace& k) {
  GradedVectorSpace Gs = direct_sum(x.G.space, k), As = direct_sum(x.A.space, k);
  GradedLinearMap h(Gs, As, 0);
  for (int d : Gs.degrees()) {
    Matrix m(As.dim(d), Gs.dim(d));
    for (int i = 0; i < k.dim(d); ++i) m(x.A.space.dim(d) + i, x.G.space.dim(d) + i) = -1;
    h.set_block(d, m);
  }
  return h;
}

}  // namespace

RetractInstance random_retract_instance(Rng& rng, const RandomCmParams& p) {
  RandomCmParams px = p;
  px.max_dim = std::max(1, p.max_dim - 1);
  auto X = std::make_shared<const CrossedModule>(random_crossed_module(rng, px));
  std::map<int, int> kd;
  for (int d = p.deg_lo; d <= p.deg_hi; ++d) {
    int room = p.max_dim - std::max(X->A.space.dim(d), X->G.space.dim(d));
    if (room > 0 && std::uniform_int_distribution<int>(0, 1)(rng)) kd[d] = std::uniform_int_distribution<int>(1, room)(rng);
  }
  GradedVectorSpace K(kd);
  auto XK = std::make_shared<const CrossedModule>(direct_sum_cm(*X, contractible_cm(K)));
  GradedLinearMap SA = random_invertible_glm(rng, XK->A.space), SG = random_invertible_glm(rng, XK->G.space);
  auto Y = std::make_shared<const CrossedModule>(transport(*XK, SA, SG));

  auto iota = Lie2Morphism::strict(X, XK, inclusion_first(X->A.space, K), inclusion_first(X->G.space, K));
  auto S = Lie2Morphism::strict(XK, Y, SA, SG);
  GradedLinearMap h = random_glm(rng, XK->G.space, XK->A.space, 0);
  auto Gh = shift_by_homotopy(Lie2Morphism::identity(XK), h);

  RetractInstance r;
  r.X = X;
  r.Y = Y;
  r.phi = compose_lie2(S, compose_lie2(Gh, iota));
  GradedLinearMap pA = projection_first(X->A.space, K), pG = projection_first(X->G.space, K);
  r.psi1A = glm_compose(pA, glm_inverse(SA));
  r.psi1G = glm_compose(pG, glm_inverse(SG));
  r.h = glm_compose(pA, glm_compose(h, inclusion_first(X->G.space, K)));
  GradedLinearMap hK = contracting_homotopy(*X, K);
  GradedLinearMap H = h + hK + glm_compose(h, glm_compose(XK->d, hK));
  r.hprime = glm_compose(SA, glm_compose(H, glm_inverse(SG)));
  return r;
}

HomotopicPair random_homotopic_pair(Rng& rng, const RandomCmParams& p) {
  RetractInstance r = random_retract_instance(rng, p);
  HomotopicPair out;
  out.phi = r.phi;
  out.h = random_glm(rng, r.X->G.space, r.Y->A.space, 0);
  out.psi = shift_by_homotopy(r.phi, out.h);
  return out;
}

}  // namespace hsw
