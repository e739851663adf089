#include "hsw/vbgrpd.hpp"

#include <functional>
#include <string>

namespace hsw {

namespace {

Matrix zeros(int r, int c) { return Matrix(r, c); }

Matrix linv(const Matrix& m, const char* what) {
  auto l = left_inverse(m);
  if (!l) throw InvalidVB(std::string(what) + ": map is not injective");
  return *l;
}

// [a | b] as a map on a ⊕ b
Matrix hcat(const Matrix& a, const Matrix& b) { return Matrix::hstack(a, b); }
Matrix vcat(const Matrix& a, const Matrix& b) { return Matrix::vstack(a, b); }

std::string pair_loc(const FiniteGroupoid& g, int a, int b) { return "(" + g.arr_name(a) + ", " + g.arr_name(b) + ")"; }

std::vector<std::vector<int>> arrows_by_target(const FiniteGroupoid& g) {
  std::vector<std::vector<int>> out(g.n_obj);
  for (int a = 0; a < g.n_arr; ++a) out[g.tgt[a]].push_back(a);
  return out;
}

int first_target(const FiniteGroupoid& g, const std::vector<int>& tuple, int k) {
  return k == 0 ? tuple[0] : g.tgt[tuple[0]];
}

}  // namespace

Matrix VBGroupoid::fiber_product(int g1, int g2) const { return nullspace(hcat(s[g1], -t[g2])); }

ValidationReport check_vb_groupoid(const VBGroupoid& v) {
  ValidationReport r;
  const auto& g = v.base;
  auto gr = check_groupoid(g);
  if (!gr.ok()) {
    r.merge(gr, "base:");
    return r;
  }
  auto n = [](const std::vector<int>& x) { return static_cast<int>(x.size()); };
  if (n(v.dimE) != g.n_obj || n(v.dimV) != g.n_arr || static_cast<int>(v.s.size()) != g.n_arr ||
      static_cast<int>(v.t.size()) != g.n_arr || static_cast<int>(v.inv.size()) != g.n_arr ||
      static_cast<int>(v.unit.size()) != g.n_obj) {
    r.add("shape", "vb", "table sizes disagree with the base groupoid");
    return r;
  }
  auto shape = [&](const Matrix& m, int rows, int cols, const std::string& loc) {
    if (m.rows() == rows && m.cols() == cols) return true;
    r.add("shape", loc, std::to_string(m.rows()) + "x" + std::to_string(m.cols()),
          std::to_string(rows) + "x" + std::to_string(cols));
    return false;
  };
  bool ok = true;
  for (int a = 0; a < g.n_arr; ++a) {
    ok &= shape(v.s[a], v.dimE[g.src[a]], v.dimV[a], "s@" + g.arr_name(a));
    ok &= shape(v.t[a], v.dimE[g.tgt[a]], v.dimV[a], "t@" + g.arr_name(a));
    ok &= shape(v.inv[a], v.dimV[g.inv[a]], v.dimV[a], "inv@" + g.arr_name(a));
  }
  for (int m = 0; m < g.n_obj; ++m) ok &= shape(v.unit[m], v.dimV[g.unit[m]], v.dimE[m], "unit@" + g.obj_name(m));
  for (const auto& [ab, c] : g.comp) {
    auto it = v.mult.find(ab);
    if (it == v.mult.end()) {
      r.add("shape", "mult@" + pair_loc(g, ab.first, ab.second), "missing");
      ok = false;
    } else {
      ok &= shape(it->second, v.dimV[c], v.dimV[ab.first] + v.dimV[ab.second], "mult@" + pair_loc(g, ab.first, ab.second));
    }
  }
  if (!ok) return r;

  for (int m = 0; m < g.n_obj; ++m) {
    int u = g.unit[m];
    Matrix id = Matrix::identity(v.dimE[m]);
    r.expect_eq(v.s[u] * v.unit[m], id, "unit-source", g.obj_name(m));
    r.expect_eq(v.t[u] * v.unit[m], id, "unit-target", g.obj_name(m));
  }
  for (int a = 0; a < g.n_arr; ++a)
    if (rank(v.s[a]) != v.dimE[g.src[a]]) r.add("source-surjective", g.arr_name(a));

  for (const auto& [ab, c] : g.comp) {
    auto [a, b] = ab;
    Matrix F = v.fiber_product(a, b);
    Matrix Fa = F.block(0, 0, v.dimV[a], F.cols()), Fb = F.block(v.dimV[a], 0, v.dimV[b], F.cols());
    Matrix M = v.mul(a, b) * F;
    r.expect_eq(v.s[c] * M, v.s[b] * Fb, "mult-source", pair_loc(g, a, b));
    r.expect_eq(v.t[c] * M, v.t[a] * Fa, "mult-target", pair_loc(g, a, b));
  }
  for (int a = 0; a < g.n_arr; ++a) {
    int ut = g.unit[g.tgt[a]], us = g.unit[g.src[a]], i = g.inv[a];
    Matrix id = Matrix::identity(v.dimV[a]);
    r.expect_eq(v.mul(ut, a) * vcat(v.unit[g.tgt[a]] * v.t[a], id), id, "unit-law", "1·" + g.arr_name(a));
    r.expect_eq(v.mul(a, us) * vcat(id, v.unit[g.src[a]] * v.s[a]), id, "unit-law", g.arr_name(a) + "·1");
    r.expect_eq(v.s[i] * v.inv[a], v.t[a], "inverse", "s(v⁻¹)@" + g.arr_name(a));
    r.expect_eq(v.t[i] * v.inv[a], v.s[a], "inverse", "t(v⁻¹)@" + g.arr_name(a));
    r.expect_eq(v.mul(a, i) * vcat(id, v.inv[a]), v.unit[g.tgt[a]] * v.t[a], "inverse", "v·v⁻¹@" + g.arr_name(a));
    r.expect_eq(v.mul(i, a) * vcat(v.inv[a], id), v.unit[g.src[a]] * v.s[a], "inverse", "v⁻¹·v@" + g.arr_name(a));
  }
  if (!r.ok()) return r;

  auto by_t = arrows_by_target(g);
  for (int a = 0; a < g.n_arr; ++a)
    for (int b : by_t[g.src[a]])
      for (int c : by_t[g.src[b]]) {
        int da = v.dimV[a], db = v.dimV[b], dc = v.dimV[c];
        int ea = v.dimE[g.src[a]], eb = v.dimE[g.src[b]];
        Matrix K(ea + eb, da + db + dc);
        K.set_block(0, 0, v.s[a]);
        K.set_block(0, da, -v.t[b]);
        K.set_block(ea, da, v.s[b]);
        K.set_block(ea, da + db, -v.t[c]);
        Matrix T = nullspace(K);
        Matrix Ta = T.block(0, 0, da, T.cols()), Tb = T.block(da, 0, db, T.cols()), Tc = T.block(da + db, 0, dc, T.cols());
        int ab = g.compose(a, b), bc = g.compose(b, c);
        Matrix lhs = v.mul(ab, c) * vcat(v.mul(a, b) * vcat(Ta, Tb), Tc);
        Matrix rhs = v.mul(a, bc) * vcat(Ta, v.mul(b, c) * vcat(Tb, Tc));
        r.expect_eq(lhs, rhs, "assoc", "(" + g.arr_name(a) + ", " + g.arr_name(b) + ", " + g.arr_name(c) + ")");
      }
  return r;
}

VBGroupoid zero_vb(const FiniteGroupoid& g) {
  VBGroupoid v;
  v.base = g;
  v.dimE.assign(g.n_obj, 0);
  v.dimV.assign(g.n_arr, 0);
  v.s.assign(g.n_arr, Matrix());
  v.t.assign(g.n_arr, Matrix());
  v.inv.assign(g.n_arr, Matrix());
  v.unit.assign(g.n_obj, Matrix());
  for (const auto& [ab, c] : g.comp) v.mult[ab] = Matrix();
  return v;
}

VBGroupoid identity_vb_over_units(const std::vector<int>& dims) {
  int n = static_cast<int>(dims.size());
  VBGroupoid v;
  v.base = unit_groupoid(n);
  v.dimE = v.dimV = dims;
  for (int m = 0; m < n; ++m) {
    Matrix id = Matrix::identity(dims[m]);
    v.s.push_back(id);
    v.t.push_back(id);
    v.inv.push_back(id);
    v.unit.push_back(id);
    v.mult[{m, m}] = hcat(id, zeros(dims[m], dims[m]));
  }
  return v;
}

CoreBundle core(const VBGroupoid& v) {
  CoreBundle c;
  for (int m = 0; m < v.base.n_obj; ++m) {
    int u = v.base.unit[m];
    Matrix K = nullspace(v.s[u]);
    auto U = inverse(hcat(K, v.unit[m]));
    if (!U) throw InvalidVB("V over the unit at " + v.base.obj_name(m) + " does not split as core plus units");
    c.dim.push_back(K.cols());
    c.proj.push_back(U->block(0, 0, K.cols(), v.dimV[u]));
    c.rho.push_back(v.t[u] * K);
    c.basis.push_back(std::move(K));
  }
  return c;
}

CoreEmbeddings core_embeddings(const VBGroupoid& v, const CoreBundle& c) {
  const auto& g = v.base;
  CoreEmbeddings e;
  for (int a = 0; a < g.n_arr; ++a) {
    int s = g.src[a], t = g.tgt[a];
    e.R.push_back(v.mul(g.unit[t], a) * vcat(c.basis[t], zeros(v.dimV[a], c.dim[t])));
    e.L.push_back(-(v.mul(a, g.unit[s]) * vcat(zeros(v.dimV[a], c.dim[s]), v.inv[g.unit[s]] * c.basis[s])));
  }
  return e;
}

CoreEmbeddings core_embeddings(const VBGroupoid& v) { return core_embeddings(v, core(v)); }

ValidationReport check_core_sequence(const VBGroupoid& v) {
  ValidationReport r;
  CoreBundle c = core(v);
  CoreEmbeddings e = core_embeddings(v, c);
  const auto& g = v.base;
  for (int a = 0; a < g.n_arr; ++a) {
    int s = g.src[a], t = g.tgt[a];
    if (v.dimV[a] != c.dim[t] + v.dimE[s])
      r.add("exact", g.arr_name(a), std::to_string(v.dimV[a]), std::to_string(c.dim[t] + v.dimE[s]));
    if (!(v.s[a] * e.R[a]).is_zero()) r.add("exact", g.arr_name(a), "s∘R ≠ 0");
    if (rank(e.R[a]) != c.dim[t]) r.add("exact", g.arr_name(a), "R not injective");
  }
  return r;
}

VBGroupoid dualize(const VBGroupoid& v) {
  CoreBundle c = core(v);
  CoreEmbeddings e = core_embeddings(v, c);
  const auto& g = v.base;
  VBGroupoid d;
  d.base = g;
  d.dimE = c.dim;
  d.dimV = v.dimV;
  for (int a = 0; a < g.n_arr; ++a) {
    d.s.push_back(e.L[a].transpose());
    d.t.push_back(e.R[a].transpose());
    d.inv.push_back(-v.inv[g.inv[a]].transpose());
  }
  for (int m = 0; m < g.n_obj; ++m) d.unit.push_back(c.proj[m].transpose());
  for (const auto& [ab, cc] : g.comp) {
    Matrix F = v.fiber_product(ab.first, ab.second);
    auto r = right_inverse(v.mul(ab.first, ab.second) * F);
    if (!r) throw InvalidVB("multiplication is not onto at " + pair_loc(g, ab.first, ab.second));
    d.mult[ab] = (F * *r).transpose();
  }
  return d;
}

std::vector<Matrix> dual_core_iso(const VBGroupoid& v, const VBGroupoid& dual) {
  CoreBundle cd = core(dual);
  std::vector<Matrix> out;
  for (int m = 0; m < v.base.n_obj; ++m) out.push_back(cd.proj[m] * v.t[v.base.unit[m]].transpose());
  return out;
}

ValidationReport check_vb_morphism(const VBMorphism& f) {
  ValidationReport r;
  const auto& S = *f.source;
  const auto& T = *f.target;
  const auto& g = S.base;
  const auto& h = T.base;
  if (static_cast<int>(f.obj_map.size()) != g.n_obj || static_cast<int>(f.arr_map.size()) != g.n_arr ||
      static_cast<int>(f.arr.size()) != g.n_arr || static_cast<int>(f.obj.size()) != g.n_obj) {
    r.add("shape", "morphism", "table sizes disagree with the source");
    return r;
  }
  for (int a = 0; a < g.n_arr; ++a) {
    int fa = f.arr_map[a];
    if (fa < 0 || fa >= h.n_arr || h.src[fa] != f.obj_map[g.src[a]] || h.tgt[fa] != f.obj_map[g.tgt[a]])
      r.add("functor", g.arr_name(a), "ends not preserved");
    else if (f.arr[a].rows() != T.dimV[fa] || f.arr[a].cols() != S.dimV[a])
      r.add("shape", g.arr_name(a));
  }
  for (int m = 0; m < g.n_obj; ++m) {
    int fm = f.obj_map[m];
    if (fm < 0 || fm >= h.n_obj || f.arr_map[g.unit[m]] != h.unit[fm]) r.add("functor", g.obj_name(m), "unit not preserved");
    else if (f.obj[m].rows() != T.dimE[fm] || f.obj[m].cols() != S.dimE[m])
      r.add("shape", g.obj_name(m));
  }
  if (!r.ok()) return r;
  for (const auto& [ab, c] : g.comp) {
    auto [a, b] = ab;
    if (h.compose(f.arr_map[a], f.arr_map[b]) != f.arr_map[c]) r.add("functor", pair_loc(g, a, b), "composite not preserved");
  }
  if (!r.ok()) return r;
  for (int a = 0; a < g.n_arr; ++a) {
    int fa = f.arr_map[a];
    r.expect_eq(T.s[fa] * f.arr[a], f.obj[g.src[a]] * S.s[a], "source", g.arr_name(a));
    r.expect_eq(T.t[fa] * f.arr[a], f.obj[g.tgt[a]] * S.t[a], "target", g.arr_name(a));
  }
  for (int m = 0; m < g.n_obj; ++m)
    r.expect_eq(f.arr[g.unit[m]] * S.unit[m], T.unit[f.obj_map[m]] * f.obj[m], "unit", g.obj_name(m));
  for (const auto& [ab, c] : g.comp) {
    auto [a, b] = ab;
    Matrix F = S.fiber_product(a, b);
    Matrix lhs = f.arr[c] * S.mul(a, b) * F;
    Matrix rhs = T.mul(f.arr_map[a], f.arr_map[b]) * Matrix::direct_sum(f.arr[a], f.arr[b]) * F;
    r.expect_eq(lhs, rhs, "mult", pair_loc(g, a, b));
  }
  return r;
}

VBMorphism vb_identity(std::shared_ptr<const VBGroupoid> v) {
  VBMorphism f{v, v, {}, {}, {}, {}};
  for (int m = 0; m < v->base.n_obj; ++m) {
    f.obj_map.push_back(m);
    f.obj.push_back(Matrix::identity(v->dimE[m]));
  }
  for (int a = 0; a < v->base.n_arr; ++a) {
    f.arr_map.push_back(a);
    f.arr.push_back(Matrix::identity(v->dimV[a]));
  }
  return f;
}

VBMorphism vb_compose(const VBMorphism& g, const VBMorphism& f) {
  VBMorphism h{f.source, g.target, {}, {}, {}, {}};
  for (size_t m = 0; m < f.obj.size(); ++m) {
    h.obj_map.push_back(g.obj_map[f.obj_map[m]]);
    h.obj.push_back(g.obj[f.obj_map[m]] * f.obj[m]);
  }
  for (size_t a = 0; a < f.arr.size(); ++a) {
    h.arr_map.push_back(g.arr_map[f.arr_map[a]]);
    h.arr.push_back(g.arr[f.arr_map[a]] * f.arr[a]);
  }
  return h;
}

VBMorphism vb_add(const VBMorphism& a, const VBMorphism& b, const Scalar& coef) {
  if (a.obj_map != b.obj_map || a.arr_map != b.arr_map) throw ShapeMismatch("vb_add over different base functors");
  VBMorphism out = a;
  for (size_t m = 0; m < a.obj.size(); ++m) out.obj[m] += b.obj[m] * coef;
  for (size_t i = 0; i < a.arr.size(); ++i) out.arr[i] += b.arr[i] * coef;
  return out;
}

bool vb_equal(const VBMorphism& a, const VBMorphism& b) {
  return a.obj_map == b.obj_map && a.arr_map == b.arr_map && a.obj == b.obj && a.arr == b.arr;
}

std::vector<Matrix> core_part(const VBMorphism& f, const CoreBundle& cs, const CoreBundle& ct) {
  std::vector<Matrix> out;
  const auto& g = f.source->base;
  for (int m = 0; m < g.n_obj; ++m) out.push_back(ct.proj[f.obj_map[m]] * f.arr[g.unit[m]] * cs.basis[m]);
  return out;
}

VBMorphism dual_morphism(const VBMorphism& f, std::shared_ptr<const VBGroupoid> src_dual,
                         std::shared_ptr<const VBGroupoid> tgt_dual) {
  auto cp = core_part(f, core(*f.source), core(*f.target));
  VBMorphism d{tgt_dual, src_dual, f.obj_map, f.arr_map, {}, {}};
  for (const auto& a : f.arr) d.arr.push_back(a.transpose());
  for (const auto& c : cp) d.obj.push_back(c.transpose());
  return d;
}

VBMorphism double_dual_iso(std::shared_ptr<const VBGroupoid> v, std::shared_ptr<const VBGroupoid> ddual) {
  VBMorphism f = vb_identity(v);
  f.target = ddual;
  for (int m = 0; m < v->base.n_obj; ++m) f.obj[m] = ddual->s[v->base.unit[m]] * v->unit[m];
  return f;
}

BundleSurjection identity_surjection(const VBGroupoid& v) {
  BundleSurjection b;
  for (int m = 0; m < v.base.n_obj; ++m) {
    b.phi.push_back(m);
    b.dim.push_back(v.dimE[m]);
    b.map.push_back(Matrix::identity(v.dimE[m]));
  }
  return b;
}

VBPullback vb_pullback(const VBGroupoid& v, const BundleSurjection& ph) {
  VBPullback P{pullback_groupoid(v.base, ph.phi), {}, {}, {}, {}};
  for (size_t x = 0; x < ph.phi.size(); ++x)
    if (ph.map[x].rows() != v.dimE[ph.phi[x]] || ph.map[x].cols() != ph.dim[x] || rank(ph.map[x]) != ph.map[x].rows())
      throw NotSurjective("bundle map at point " + std::to_string(x) + " is not onto");
  const auto& G = P.pb.g;
  auto& w = P.v;
  w.base = G;
  w.dimE = ph.dim;
  for (int i = 0; i < G.n_arr; ++i) {
    auto [x, a, y] = P.pb.triples[i];
    int dx = ph.dim[x], dv = v.dimV[a], dy = ph.dim[y];
    Matrix K(v.dimE[v.base.tgt[a]] + v.dimE[v.base.src[a]], dx + dv + dy);
    K.set_block(0, 0, ph.map[x]);
    K.set_block(0, dx, -v.t[a]);
    K.set_block(v.dimE[v.base.tgt[a]], dx, v.s[a]);
    K.set_block(v.dimE[v.base.tgt[a]], dx + dv, -ph.map[y]);
    Matrix B = nullspace(K);
    P.coords.push_back(linv(B, "pullback fiber"));
    w.dimV.push_back(B.cols());
    w.t.push_back(B.block(0, 0, dx, B.cols()));
    w.s.push_back(B.block(dx + dv, 0, dy, B.cols()));
    P.proj.push_back(B.block(dx, 0, dv, B.cols()));
    P.basis.push_back(std::move(B));
  }
  for (int x = 0; x < G.n_obj; ++x) {
    int u = G.unit[x], m = ph.phi[x];
    Matrix id = Matrix::identity(ph.dim[x]);
    w.unit.push_back(P.coords[u] * vcat(vcat(id, v.unit[m] * ph.map[x]), id));
  }
  for (int i = 0; i < G.n_arr; ++i) {
    auto [x, a, y] = P.pb.triples[i];
    int dx = ph.dim[x], dv = v.dimV[a], dy = ph.dim[y];
    const Matrix& B = P.basis[i];
    Matrix swapped = vcat(vcat(B.block(dx + dv, 0, dy, B.cols()), v.inv[a] * P.proj[i]), B.block(0, 0, dx, B.cols()));
    w.inv.push_back(P.coords[G.inv[i]] * swapped);
  }
  for (const auto& [ij, k] : G.comp) {
    auto [i, j] = ij;
    int a = std::get<1>(P.pb.triples[i]), b = std::get<1>(P.pb.triples[j]);
    int di = w.dimV[i], dj = w.dimV[j];
    int dx = ph.dim[std::get<0>(P.pb.triples[i])], dz = ph.dim[std::get<2>(P.pb.triples[j])];
    Matrix first = hcat(P.basis[i].block(0, 0, dx, di), zeros(dx, dj));
    Matrix mid = v.mul(a, b) * Matrix::direct_sum(P.proj[i], P.proj[j]);
    const Matrix& Bj = P.basis[j];
    Matrix last = hcat(zeros(dz, di), Bj.block(Bj.rows() - dz, 0, dz, dj));
    w.mult[ij] = P.coords[k] * vcat(vcat(first, mid), last);
  }
  return P;
}

VBMorphism apply_vb_homotopy(std::shared_ptr<const VBGroupoid> v1, std::shared_ptr<const VBGroupoid> v2,
                             const VBHomotopyDatum& h) {
  const auto& g = v1->base;
  if (v2->base.n_arr != g.n_arr || v2->base.n_obj != g.n_obj) throw ShapeMismatch("homotopy between different bases");
  CoreBundle c2 = core(*v2);
  CoreEmbeddings e2 = core_embeddings(*v2, c2);
  if (static_cast<int>(h.h.size()) != g.n_obj) throw ShapeMismatch("homotopy needs one map per object");
  for (int m = 0; m < g.n_obj; ++m)
    if (h.h[m].rows() != c2.dim[m] || h.h[m].cols() != v1->dimE[m])
      throw ShapeMismatch("homotopy at " + g.obj_name(m) + " must map E₁ to the core of the target");
  VBMorphism J = vb_identity(v1);
  J.target = v2;
  for (int a = 0; a < g.n_arr; ++a) {
    int s = g.src[a], t = g.tgt[a];
    J.arr[a] = e2.R[a] * h.h[t] * v1->t[a] - e2.L[a] * h.h[s] * v1->s[a];
  }
  for (int m = 0; m < g.n_obj; ++m) J.obj[m] = c2.rho[m] * h.h[m];
  return J;
}

std::optional<VBHomotopyDatum> find_homotopy(const VBMorphism& phi, const VBMorphism& psi) {
  const auto& v1 = *phi.source;
  const auto& v2 = *phi.target;
  const auto& g = v1.base;
  CoreBundle c2 = core(v2);
  CoreEmbeddings e2 = core_embeddings(v2, c2);
  std::vector<int> off(g.n_obj + 1, 0);
  for (int m = 0; m < g.n_obj; ++m) off[m + 1] = off[m] + c2.dim[m] * v1.dimE[m];
  int nvar = off[g.n_obj];
  std::vector<Vec> rows;
  Vec rhs;
  // (R h_t t − L h_s s)[p][q] is linear in the entries of h
  for (int a = 0; a < g.n_arr; ++a) {
    int s = g.src[a], t = g.tgt[a];
    Matrix diff = phi.arr[a] - psi.arr[a];
    for (int p = 0; p < v2.dimV[a]; ++p)
      for (int q = 0; q < v1.dimV[a]; ++q) {
        Vec row(nvar);
        for (int i = 0; i < c2.dim[t]; ++i)
          for (int j = 0; j < v1.dimE[t]; ++j) row[off[t] + i * v1.dimE[t] + j] += e2.R[a](p, i) * v1.t[a](j, q);
        for (int i = 0; i < c2.dim[s]; ++i)
          for (int j = 0; j < v1.dimE[s]; ++j) row[off[s] + i * v1.dimE[s] + j] -= e2.L[a](p, i) * v1.s[a](j, q);
        rows.push_back(std::move(row));
        rhs.push_back(diff(p, q));
      }
  }
  VBHomotopyDatum out;
  std::optional<Vec> x;
  if (nvar == 0) {
    if (!vec_is_zero(rhs)) return std::nullopt;
    x = Vec();
  } else {
    x = solve(Matrix::from_rows(rows, nvar), rhs);
  }
  if (!x) return std::nullopt;
  for (int m = 0; m < g.n_obj; ++m) {
    Matrix h(c2.dim[m], v1.dimE[m]);
    for (int i = 0; i < c2.dim[m]; ++i)
      for (int j = 0; j < v1.dimE[m]; ++j) h(i, j) = (*x)[off[m] + i * v1.dimE[m] + j];
    out.h.push_back(std::move(h));
  }
  return out;
}

ValidationReport check_homotopy_equivalence(const VBHomotopyEquivalence& eq) {
  ValidationReport r;
  r.merge(check_vb_morphism(eq.phi), "phi:");
  r.merge(check_vb_morphism(eq.psi), "psi:");
  if (!r.ok()) return r;
  auto v1 = eq.phi.source, v2 = eq.phi.target;
  auto check = [&](const VBMorphism& comp, std::shared_ptr<const VBGroupoid> v, const VBHomotopyDatum& h,
                   const char* tag) {
    VBMorphism rhs = vb_add(vb_identity(v), apply_vb_homotopy(v, v, h));
    const auto& g = v->base;
    for (int a = 0; a < g.n_arr; ++a) r.expect_eq(comp.arr[a], rhs.arr[a], tag, g.arr_name(a));
    for (int m = 0; m < g.n_obj; ++m) r.expect_eq(comp.obj[m], rhs.obj[m], tag, g.obj_name(m));
  };
  check(vb_compose(eq.psi, eq.phi), v1, eq.h1, "psi-phi");
  check(vb_compose(eq.phi, eq.psi), v2, eq.h2, "phi-psi");
  return r;
}

VBHomotopyEquivalence dual_equivalence(const VBHomotopyEquivalence& eq) {
  auto v1 = eq.phi.source, v2 = eq.phi.target;
  auto d1 = std::make_shared<const VBGroupoid>(dualize(*v1));
  auto d2 = std::make_shared<const VBGroupoid>(dualize(*v2));
  auto i1 = dual_core_iso(*v1, *d1), i2 = dual_core_iso(*v2, *d2);
  VBHomotopyEquivalence out{dual_morphism(eq.psi, d2, d1), dual_morphism(eq.phi, d1, d2), {}, {}};
  for (size_t m = 0; m < i1.size(); ++m) {
    out.h1.h.push_back(i1[m] * eq.h1.h[m].transpose());
    out.h2.h.push_back(i2[m] * eq.h2.h[m].transpose());
  }
  return out;
}

namespace {

// V ⊂ V[ℰ] for ℰ = E: v ↦ coordinates of (t v, v, s v)
Matrix lift(const VBPullback& P, const VBGroupoid& v, int a) {
  return P.coords[a] * vcat(vcat(v.t[a], Matrix::identity(v.dimV[a])), v.s[a]);
}

}  // namespace

Bridge homotopy_to_morita_bridge(const VBHomotopyEquivalence& eq) {
  auto chk = check_homotopy_equivalence(eq);
  if (!chk.ok()) throw NotAHomotopyEquivalence(chk.findings().front().tag + " at " + chk.findings().front().location);
  const auto& V1 = *eq.phi.source;
  const auto& V2 = *eq.phi.target;
  const auto& g = V1.base;
  CoreBundle c1 = core(V1), c2 = core(V2);
  CoreEmbeddings e1 = core_embeddings(V1, c1), e2 = core_embeddings(V2, c2);
  auto psiC = core_part(eq.psi, c2, c1);

  BundleSurjection b1, b2;
  for (int m = 0; m < g.n_obj; ++m) {
    int d1 = V1.dimE[m], d2 = V2.dimE[m];
    b1.phi.push_back(m);
    b2.phi.push_back(m);
    b1.dim.push_back(d1 + d2);
    b2.dim.push_back(d1 + d2);
    b1.map.push_back(hcat(Matrix::identity(d1), zeros(d1, d2)));
    b2.map.push_back(hcat(zeros(d2, d1), Matrix::identity(d2)));
  }
  VBPullback P1 = vb_pullback(V1, b1), P2 = vb_pullback(V2, b2);
  Bridge br;
  br.P1 = std::make_shared<const VBGroupoid>(P1.v);
  br.P2 = std::make_shared<const VBGroupoid>(P2.v);

  std::vector<Matrix> A0, B0;
  for (int m = 0; m < g.n_obj; ++m) {
    int d1 = V1.dimE[m], d2 = V2.dimE[m];
    Matrix a(d1 + d2, d1 + d2), b(d1 + d2, d1 + d2);
    a.set_block(0, 0, Matrix::identity(d1));
    a.set_block(0, d1, eq.psi.obj[m]);
    a.set_block(d1, 0, eq.phi.obj[m]);
    a.set_block(d1, d1, c2.rho[m] * eq.h2.h[m]);
    b.set_block(0, 0, -(c1.rho[m] * eq.h1.h[m]));
    b.set_block(0, d1, eq.psi.obj[m]);
    b.set_block(d1, 0, eq.phi.obj[m]);
    b.set_block(d1, d1, -Matrix::identity(d2));
    A0.push_back(a);
    B0.push_back(b);
  }
  br.A = vb_identity(br.P1);
  br.A.target = br.P2;
  br.B = vb_identity(br.P2);
  br.B.target = br.P1;
  for (int a = 0; a < g.n_arr; ++a) {
    int s = g.src[a], t = g.tgt[a];
    int dt = b1.dim[t], ds = b1.dim[s];
    int d1t = V1.dimE[t], d1s = V1.dimE[s];
    // A
    {
      const Matrix& B = P1.basis[a];
      Matrix et = B.block(0, 0, dt, B.cols()), es = B.block(B.rows() - ds, 0, ds, B.cols());
      Matrix e2t = et.block(d1t, 0, dt - d1t, B.cols()), e2s = es.block(d1s, 0, ds - d1s, B.cols());
      Matrix v = eq.phi.arr[a] * P1.proj[a] + e2.R[a] * eq.h2.h[t] * e2t - e2.L[a] * eq.h2.h[s] * e2s;
      br.A.arr[a] = P2.coords[a] * vcat(vcat(A0[t] * et, v), A0[s] * es);
    }
    // B
    {
      const Matrix& B = P2.basis[a];
      Matrix et = B.block(0, 0, dt, B.cols()), es = B.block(B.rows() - ds, 0, ds, B.cols());
      Matrix e1t = et.block(0, 0, d1t, B.cols()), e1s = es.block(0, 0, d1s, B.cols());
      Matrix v = eq.psi.arr[a] * P2.proj[a] - e1.R[a] * eq.h1.h[t] * e1t + e1.L[a] * eq.h1.h[s] * e1s;
      br.B.arr[a] = P1.coords[a] * vcat(vcat(B0[t] * et, v), B0[s] * es);
    }
  }
  br.A.obj = A0;
  br.B.obj = B0;

  // h̃(e1, e2) = ((Ψh₂ − h₁Ψ₀) e2, 0), as a core element (ρc, c, 0) of V₁[ℰ]
  CoreBundle cp = core(*br.P1);
  for (int m = 0; m < g.n_obj; ++m) {
    int d1 = V1.dimE[m], d2 = V2.dimE[m];
    Matrix c = hcat(zeros(c1.dim[m], d1), psiC[m] * eq.h2.h[m] - eq.h1.h[m] * eq.psi.obj[m]);
    Matrix elt = vcat(vcat(vcat(c1.rho[m] * c, zeros(d2, d1 + d2)), c1.basis[m] * c), zeros(d1 + d2, d1 + d2));
    int u = g.unit[m];
    br.h_tilde.h.push_back(cp.proj[m] * P1.coords[u] * elt);
  }

  br.report.merge(check_vb_morphism(br.A), "A:");
  br.report.merge(check_vb_morphism(br.B), "B:");
  if (!br.report.ok()) return br;
  VBMorphism BA = vb_compose(br.B, br.A);
  VBMorphism rhs = vb_add(vb_identity(br.P1), apply_vb_homotopy(br.P1, br.P1, br.h_tilde));
  for (int a = 0; a < g.n_arr; ++a) {
    br.report.expect_eq(BA.arr[a], rhs.arr[a], "bridge", g.arr_name(a));
    if (det(rhs.arr[a]).is_zero()) br.report.add("invertible", g.arr_name(a), "det(id + J) = 0");
  }
  for (int m = 0; m < g.n_obj; ++m) {
    br.report.expect_eq(BA.obj[m], rhs.obj[m], "bridge", g.obj_name(m));
    if (det(rhs.obj[m]).is_zero()) br.report.add("invertible", g.obj_name(m), "det(id + J) = 0");
  }
  return br;
}

ValidationReport check_morita_morphism(const VBMorphism& f) {
  ValidationReport r;
  auto base = check_vb_morphism(f);
  if (!base.ok()) {
    r.merge(base, "morphism:");
    return r;
  }
  const auto& W = *f.source;
  const auto& V = *f.target;
  for (int m = 0; m < W.base.n_obj; ++m)
    if (rank(f.obj[m]) != V.dimE[f.obj_map[m]]) r.add("surjective", W.base.obj_name(m), "Φ₀ not onto");
  if (!r.ok()) return r;
  BundleSurjection b{f.obj_map, W.dimE, f.obj};
  std::optional<VBPullback> P;
  try {
    P = vb_pullback(V, b);
  } catch (const NotSurjective& e) {
    r.add("surjective", "base", e.what());
    return r;
  }
  const auto& G = P->pb.g;
  if (G.n_arr != W.base.n_arr) {
    r.add("base-iso", "arrows", std::to_string(W.base.n_arr), std::to_string(G.n_arr));
    return r;
  }
  std::vector<int> seen(G.n_arr, 0);
  for (int a = 0; a < W.base.n_arr; ++a) {
    auto it = P->pb.index.find({W.base.tgt[a], f.arr_map[a], W.base.src[a]});
    if (it == P->pb.index.end() || seen[it->second]++) {
      r.add("base-iso", W.base.arr_name(a), "not a bijection onto Γ[X]");
      continue;
    }
    int i = it->second;
    Matrix m = P->coords[i] * vcat(vcat(W.t[a], f.arr[a]), W.s[a]);
    if (m.rows() != m.cols() || det(m).is_zero()) r.add("cartesian", W.base.arr_name(a), "W → V[ℰ] not an isomorphism");
  }
  return r;
}

namespace {

// V₂[ℰ] moved onto the arrows of Γ₁[X] along the identification
VBGroupoid relabel_onto(const VBGroupoid& w2, const FiniteGroupoid& g1, const std::vector<int>& iso) {
  VBGroupoid w;
  w.base = g1;
  w.dimE = w2.dimE;
  w.unit = w2.unit;
  for (int a = 0; a < g1.n_arr; ++a) {
    int b = iso[a];
    w.dimV.push_back(w2.dimV[b]);
    w.s.push_back(w2.s[b]);
    w.t.push_back(w2.t[b]);
    w.inv.push_back(w2.inv[b]);
  }
  for (const auto& [ab, c] : g1.comp) w.mult[ab] = w2.mul(iso[ab.first], iso[ab.second]);
  return w;
}

}  // namespace

ValidationReport morita_witness_check(const VBGroupoid& v1, const VBGroupoid& v2, const MoritaWitness& w) {
  ValidationReport r;
  auto pull = [](const VBGroupoid& v, const std::vector<int>& phi) {
    BundleSurjection b;
    b.phi = phi;
    for (int m : phi) {
      b.dim.push_back(v.dimE[m]);
      b.map.push_back(Matrix::identity(v.dimE[m]));
    }
    return vb_pullback(v, b);
  };
  std::optional<VBPullback> P1, P2;
  try {
    P1 = pull(v1, w.phi1);
    P2 = pull(v2, w.phi2);
  } catch (const NotSurjective& e) {
    r.add("bitorsor", "legs", e.what());
    return r;
  }
  const auto& G1 = P1->pb.g;
  const auto& G2 = P2->pb.g;
  if (static_cast<int>(w.arrow_iso.size()) != G1.n_arr || G1.n_arr != G2.n_arr || G1.n_obj != G2.n_obj) {
    r.add("bitorsor", "arrows", "identification has the wrong size");
    return r;
  }
  std::vector<int> seen(G2.n_arr, 0);
  for (int a = 0; a < G1.n_arr; ++a) {
    int b = w.arrow_iso[a];
    if (b < 0 || b >= G2.n_arr || seen[b]++ || G2.src[b] != G1.src[a] || G2.tgt[b] != G1.tgt[a])
      r.add("bitorsor", G1.arr_name(a), "identification is not a bijection over X");
  }
  if (!r.ok()) return r;
  for (const auto& [ab, c] : G1.comp)
    if (G2.compose(w.arrow_iso[ab.first], w.arrow_iso[ab.second]) != w.arrow_iso[c])
      r.add("bitorsor", pair_loc(G1, ab.first, ab.second), "identification does not preserve composition");
  if (!r.ok()) return r;
  auto W1 = std::make_shared<const VBGroupoid>(P1->v);
  auto W2 = std::make_shared<const VBGroupoid>(relabel_onto(P2->v, G1, w.arrow_iso));
  VBHomotopyEquivalence eq{vb_identity(W1), vb_identity(W2), {w.h1}, {w.h2}};
  eq.phi.target = W2;
  eq.phi.arr = w.phi;
  eq.phi.obj = w.phi0;
  eq.psi.target = W1;
  eq.psi.arr = w.psi;
  eq.psi.obj = w.psi0;
  try {
    r.merge(check_homotopy_equivalence(eq));
  } catch (const std::exception& e) {
    r.add("shape", "witness", e.what());
  }
  return r;
}

MoritaWitness witness_from_equivalence(const VBHomotopyEquivalence& eq) {
  const auto& V1 = *eq.phi.source;
  const auto& V2 = *eq.phi.target;
  const auto& g = V1.base;
  VBPullback P1 = vb_pullback(V1, identity_surjection(V1)), P2 = vb_pullback(V2, identity_surjection(V2));
  CoreBundle c1 = core(V1), c2 = core(V2), q1 = core(P1.v), q2 = core(P2.v);
  MoritaWitness w;
  for (int m = 0; m < g.n_obj; ++m) {
    w.phi1.push_back(m);
    w.phi2.push_back(m);
  }
  for (int a = 0; a < g.n_arr; ++a) {
    w.arrow_iso.push_back(a);
    w.phi.push_back(lift(P2, V2, a) * eq.phi.arr[a] * P1.proj[a]);
    w.psi.push_back(lift(P1, V1, a) * eq.psi.arr[a] * P2.proj[a]);
  }
  w.phi0 = eq.phi.obj;
  w.psi0 = eq.psi.obj;
  for (int m = 0; m < g.n_obj; ++m) {
    int u = g.unit[m];
    w.h1.push_back(q1.proj[m] * lift(P1, V1, u) * c1.basis[m] * eq.h1.h[m]);
    w.h2.push_back(q2.proj[m] * lift(P2, V2, u) * c2.basis[m] * eq.h2.h[m]);
  }
  return w;
}

// ---- VB cochains ----

VBCochainSpace vb_cochains(const VBGroupoid& v, const Nerve& n, int k) {
  VBCochainSpace sp;
  sp.level = k;
  const auto& g = v.base;
  CoreBundle c = k == 0 ? core(v) : CoreBundle{};
  for (const auto& tup : n.level(k)) {
    sp.offset.push_back(sp.total);
    sp.total += k == 0 ? c.dim[tup[0]] : v.dimV[tup[0]];
  }
  SparseRref rr(sp.total);
  if (k >= 1)
    for (int i = 0; i < n.size(k); ++i) {
      const auto& tup = n.level(k)[i];
      int a = tup[0];
      if (a == g.unit[g.src[a]]) continue;
      auto other = tup;
      other[0] = g.unit[g.src[a]];
      int j = n.index(k, other);
      int u = other[0];
      for (int p = 0; p < v.dimE[g.src[a]]; ++p) {
        std::map<int, Scalar> acc;
        for (int q = 0; q < v.dimV[a]; ++q) acc[sp.offset[i] + q] += v.s[a](p, q);
        for (int q = 0; q < v.dimV[u]; ++q) acc[sp.offset[j] + q] -= v.s[u](p, q);
        SparseRow row;
        for (auto& [col, val] : acc)
          if (!val.is_zero()) row.emplace_back(col, val);
        rr.add(std::move(row));
      }
    }
  sp.basis = Matrix::from_cols(rr.kernel_basis(), sp.total);
  return sp;
}

bool is_projectable(const VBGroupoid& v, const Nerve& n, int k, const Vec& sigma) {
  if (k == 0) return true;
  const auto& g = v.base;
  std::vector<int> off;
  int tot = 0;
  for (const auto& tup : n.level(k)) {
    off.push_back(tot);
    tot += v.dimV[tup[0]];
  }
  if (static_cast<int>(sigma.size()) != tot) throw ShapeMismatch("section length does not match the level");
  auto block = [&](int i, int d) { return Vec(sigma.begin() + off[i], sigma.begin() + off[i] + d); };
  for (int i = 0; i < n.size(k); ++i) {
    auto tup = n.level(k)[i];
    int a = tup[0];
    tup[0] = g.unit[g.src[a]];
    int j = n.index(k, tup);
    if (!(v.s[a] * block(i, v.dimV[a]) == v.s[tup[0]] * block(j, v.dimV[tup[0]]))) return false;
  }
  return true;
}

namespace {

struct Layout {
  std::vector<int> off;
  int total = 0;
};

Layout layout(const VBGroupoid& v, const CoreBundle& c, const Nerve& n, int k) {
  Layout l;
  for (const auto& tup : n.level(k)) {
    l.off.push_back(l.total);
    l.total += k == 0 ? c.dim[tup[0]] : v.dimV[tup[0]];
  }
  return l;
}

Vec block(const Vec& x, int off, int d) { return Vec(x.begin() + off, x.begin() + off + d); }
void add_block(Vec& x, int off, const Vec& b, const Scalar& s = Scalar(1)) {
  for (size_t i = 0; i < b.size(); ++i) x[off + i].add_mul(s, b[i]);
}

// the coboundary on level-k sections, evaluated without projectability checks
Vec coboundary_apply(const VBGroupoid& v, const CoreBundle& c, const CoreEmbeddings& e, const Nerve& n, int k,
                     const Vec& sigma) {
  const auto& g = v.base;
  Layout in = layout(v, c, n, k), out = layout(v, c, n, k + 1);
  Vec r(out.total);
  if (k == 0) {
    for (int a = 0; a < g.n_arr; ++a) {
      int s = g.src[a], t = g.tgt[a];
      Vec x = vec_sub(e.L[a] * block(sigma, in.off[s], c.dim[s]), e.R[a] * block(sigma, in.off[t], c.dim[t]));
      add_block(r, out.off[a], x);
    }
    return r;
  }
  for (int i = 0; i < n.size(k + 1); ++i) {
    const auto& T = n.level(k + 1)[i];
    int g0 = T[0], g1 = T[1];
    int c01 = g.compose(g0, g1), i1 = g.inv[g1];
    std::vector<int> f1(T.begin() + 1, T.end());
    std::vector<int> f0 = f1;
    f0[0] = c01;
    int j0 = n.index(k, f0), j1 = n.index(k, f1);
    Vec a = block(sigma, in.off[j0], v.dimV[c01]);
    Vec b = v.inv[g1] * block(sigma, in.off[j1], v.dimV[g1]);
    Vec ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    add_block(r, out.off[i], v.mul(c01, i1) * ab, Scalar(-1));
    for (int j = 2; j <= k; ++j) {
      std::vector<int> f;
      for (int q = 0; q <= k; ++q) {
        if (q == j) continue;
        f.push_back(q == j - 1 ? g.compose(T[j - 1], T[j]) : T[q]);
      }
      add_block(r, out.off[i], block(sigma, in.off[n.index(k, f)], v.dimV[g0]), Scalar(j % 2 ? -1 : 1));
    }
    std::vector<int> last(T.begin(), T.end() - 1);
    add_block(r, out.off[i], block(sigma, in.off[n.index(k, last)], v.dimV[g0]), Scalar(k % 2 ? 1 : -1));
  }
  return r;
}

}  // namespace

Matrix vb_coboundary_matrix(const VBGroupoid& v, const Nerve& n, int k) {
  CoreBundle c = core(v);
  CoreEmbeddings e = core_embeddings(v, c);
  int cols = layout(v, c, n, k).total, rows = layout(v, c, n, k + 1).total;
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j) m.set_col(j, coboundary_apply(v, c, e, n, k, unit_vec(cols, j)));
  return m;
}

Vec vb_coboundary(const VBGroupoid& v, const Nerve& n, int k, const Vec& sigma) {
  if (!is_projectable(v, n, k, sigma)) throw NotProjectable("section is not left-projectable");
  CoreBundle c = core(v);
  return coboundary_apply(v, c, core_embeddings(v, c), n, k, sigma);
}

ValidationReport check_vb_complex(const VBGroupoid& v, int max_level) {
  ValidationReport r;
  Nerve n(v.base, max_level + 2);
  CoreBundle c = core(v);
  CoreEmbeddings e = core_embeddings(v, c);
  for (int k = 0; k <= max_level; ++k) {
    VBCochainSpace sp = vb_cochains(v, n, k);
    for (int j = 0; j < sp.basis.cols(); ++j) {
      Vec d = coboundary_apply(v, c, e, n, k, sp.basis.col(j));
      std::string loc = "C^" + std::to_string(k) + "[" + std::to_string(j) + "]";
      if (!is_projectable(v, n, k + 1, d)) r.add("subcomplex", loc, "δσ not projectable");
      Vec dd = coboundary_apply(v, c, e, n, k + 1, d);
      if (!vec_is_zero(dd)) r.add("d-squared", loc, vec_str(dd), "0");
    }
  }
  return r;
}

ValidationReport check_dual_embedding(const VBGroupoid& v, int max_level) {
  ValidationReport r;
  const auto& g = v.base;
  VBGroupoid d = dualize(v);
  Nerve n(g, max_level + 1);
  CoreBundle c = core(v);
  CoreEmbeddings e = core_embeddings(v, c);
  for (int k = 0; k <= max_level; ++k) {
    VBCochainSpace sp = vb_cochains(v, n, k);
    Layout in = layout(v, c, n, k), out = layout(v, c, n, k + 1);
    // per (k+1)-tuple: composable η's in V^∨, and each face as (sign, k-tuple, map to the first slot)
    struct Face {
      int sign;
      int tuple;
      Matrix first;
    };
    struct Simplex {
      Matrix eta0;
      std::vector<Face> faces;
    };
    std::vector<Simplex> simp;
    for (const auto& T : n.level(k + 1)) {
      int q = k + 1;
      std::vector<int> off(q + 1, 0);
      for (int j = 0; j < q; ++j) off[j + 1] = off[j] + d.dimV[T[j]];
      int rows = 0;
      for (int j = 0; j + 1 < q; ++j) rows += d.dimE[g.src[T[j]]];
      Matrix K(rows, off[q]);
      for (int j = 0, row = 0; j + 1 < q; ++j) {
        K.set_block(row, off[j], d.s[T[j]]);
        K.set_block(row, off[j + 1], -d.t[T[j + 1]]);
        row += d.dimE[g.src[T[j]]];
      }
      Matrix Fd = nullspace(K);
      auto slot = [&](int j) { return Fd.block(off[j], 0, d.dimV[T[j]], Fd.cols()); };
      Simplex sx{slot(0), {}};
      if (k == 0) {
        sx.faces.push_back({1, g.src[T[0]], d.s[T[0]] * slot(0)});
        sx.faces.push_back({-1, g.tgt[T[0]], d.t[T[0]] * slot(0)});
      } else {
        sx.faces.push_back({1, n.index(k, std::vector<int>(T.begin() + 1, T.end())), slot(1)});
        for (int j = 1; j <= k; ++j) {
          std::vector<int> f;
          for (int p = 0; p <= k; ++p) {
            if (p == j) continue;
            f.push_back(p == j - 1 ? g.compose(T[j - 1], T[j]) : T[p]);
          }
          Matrix first = j == 1 ? d.mul(T[0], T[1]) * vcat(slot(0), slot(1)) : slot(0);
          sx.faces.push_back({j % 2 ? -1 : 1, n.index(k, f), first});
        }
        sx.faces.push_back({k % 2 ? 1 : -1, n.index(k, std::vector<int>(T.begin(), T.end() - 1)), slot(0)});
      }
      simp.push_back(std::move(sx));
    }
    auto dim_at = [&](int tuple) { return k == 0 ? c.dim[n.level(0)[tuple][0]] : v.dimV[n.level(k)[tuple][0]]; };
    for (int j = 0; j < sp.basis.cols(); ++j) {
      Vec sigma = sp.basis.col(j);
      Vec ds = coboundary_apply(v, c, e, n, k, sigma);
      for (size_t i = 0; i < simp.size(); ++i) {
        const auto& sx = simp[i];
        Matrix lhs = Matrix::from_rows({block(ds, out.off[i], sx.eta0.rows())}, sx.eta0.rows()) * sx.eta0;
        Matrix rhs(1, sx.eta0.cols());
        for (const auto& f : sx.faces) {
          Matrix row = Matrix::from_rows({block(sigma, in.off[f.tuple], dim_at(f.tuple))}, dim_at(f.tuple));
          rhs += row * f.first * Scalar(f.sign);
        }
        if (!(lhs == rhs)) {
          r.add("dual-embedding", "C^" + std::to_string(k) + "[" + std::to_string(j) + "] at simplex " + std::to_string(i),
                lhs.str(), rhs.str());
          break;
        }
      }
    }
  }
  return r;
}

Vec vb_hat(const VBMorphism& f, const Nerve& n, int k, const Vec& sigma) {
  const auto& v1 = *f.source;
  const auto& v2 = *f.target;
  CoreBundle c1 = core(v1), c2 = core(v2);
  Layout in = layout(v1, c1, n, k), out = layout(v2, c2, n, k);
  auto cp = k == 0 ? core_part(f, c1, c2) : std::vector<Matrix>{};
  Vec r(out.total);
  for (int i = 0; i < n.size(k); ++i) {
    int a = n.level(k)[i][0];
    const Matrix& M = k == 0 ? cp[a] : f.arr[a];
    add_block(r, out.off[i], M * block(sigma, in.off[i], M.cols()));
  }
  return r;
}

Vec vb_hat_homotopy(const VBGroupoid& v1, const VBGroupoid& v2, const VBHomotopyDatum& h, const Nerve& n, int k,
                    const Vec& sigma) {
  const auto& g = v1.base;
  CoreBundle c1 = core(v1), c2 = core(v2);
  CoreEmbeddings e2 = core_embeddings(v2, c2);
  Layout in = layout(v1, c1, n, k + 1), out = layout(v2, c2, n, k);
  Vec r(out.total);
  for (int i = 0; i < n.size(k); ++i) {
    const auto& tup = n.level(k)[i];
    int t = first_target(g, tup, k);
    int u = g.unit[t];
    std::vector<int> up{u};
    if (k > 0) up.insert(up.end(), tup.begin(), tup.end());
    int j = n.index(k + 1, up);
    Vec x = h.h[t] * (v1.s[u] * block(sigma, in.off[j], v1.dimV[u]));
    if (k > 0) x = e2.R[tup[0]] * x;
    add_block(r, out.off[i], x, Scalar(-1));
  }
  return r;
}

ValidationReport vb_chain_map_and_homotopy(const VBMorphism& phi, const VBMorphism& psi, const VBHomotopyDatum& h,
                                           int max_level) {
  ValidationReport r;
  const auto& v1 = *phi.source;
  const auto& v2 = *phi.target;
  {
    VBMorphism diff = vb_add(phi, psi, Scalar(-1));
    VBMorphism J = apply_vb_homotopy(phi.source, phi.target, h);
    for (int a = 0; a < v1.base.n_arr; ++a) r.expect_eq(diff.arr[a], J.arr[a], "homotopy-datum", v1.base.arr_name(a));
    if (!r.ok()) return r;
  }
  Nerve n(v1.base, max_level + 1);
  CoreBundle c1 = core(v1), c2 = core(v2);
  CoreEmbeddings e1 = core_embeddings(v1, c1), e2 = core_embeddings(v2, c2);
  for (int k = 0; k <= max_level; ++k) {
    VBCochainSpace sp = vb_cochains(v1, n, k);
    for (int j = 0; j < sp.basis.cols(); ++j) {
      Vec s = sp.basis.col(j);
      std::string loc = "C^" + std::to_string(k) + "[" + std::to_string(j) + "]";
      Vec d1 = coboundary_apply(v1, c1, e1, n, k, s);
      for (const VBMorphism* f : {&phi, &psi}) {
        Vec lhs = coboundary_apply(v2, c2, e2, n, k, vb_hat(*f, n, k, s));
        r.expect_eq(lhs, vb_hat(*f, n, k + 1, d1), "chain-map", loc);
      }
      Vec lhs = vb_hat_homotopy(v1, v2, h, n, k, d1);
      if (k > 0) lhs = vec_add(lhs, coboundary_apply(v2, c2, e2, n, k - 1, vb_hat_homotopy(v1, v2, h, n, k - 1, s)));
      r.expect_eq(lhs, vec_sub(vb_hat(phi, n, k, s), vb_hat(psi, n, k, s)), "homotopy", loc);
    }
  }
  return r;
}

Matrix multiplicative_sections(const VBGroupoid& v, int k) {
  const auto& g = v.base;
  if (k < 1) throw std::invalid_argument("multiplicative sections need k ≥ 1");
  // increasing k-subsets of {0..d-1}
  auto subsets = [](int d, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
      }
      for (int i = start; i < d; ++i) {
        cur.push_back(i);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
    return out;
  };
  std::vector<std::vector<std::vector<int>>> idx(g.n_arr);
  std::vector<int> off(g.n_arr + 1, 0);
  for (int a = 0; a < g.n_arr; ++a) {
    idx[a] = subsets(v.dimV[a], k);
    off[a + 1] = off[a] + static_cast<int>(idx[a].size());
  }
  int nvar = off[g.n_arr];
  auto minor = [&](const Matrix& X, const std::vector<int>& rows, const std::vector<int>& cols) {
    Matrix m(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m(i, j) = X(rows[i], cols[j]);
    return det(m);
  };
  SparseRref rr(nvar);
  for (const auto& [ab, c] : g.comp) {
    auto [a, b] = ab;
    Matrix F = v.fiber_product(a, b);
    Matrix X1 = F.block(0, 0, v.dimV[a], F.cols()), X2 = F.block(v.dimV[a], 0, v.dimV[b], F.cols());
    Matrix X12 = v.mul(a, b) * F;
    for (const auto& J : subsets(F.cols(), k)) {
      std::map<int, Scalar> acc;
      for (size_t i = 0; i < idx[c].size(); ++i) acc[off[c] + i] += minor(X12, idx[c][i], J);
      for (size_t i = 0; i < idx[a].size(); ++i) acc[off[a] + i] -= minor(X1, idx[a][i], J);
      for (size_t i = 0; i < idx[b].size(); ++i) acc[off[b] + i] -= minor(X2, idx[b][i], J);
      SparseRow row;
      for (auto& [col, val] : acc)
        if (!val.is_zero()) row.emplace_back(col, val);
      rr.add(std::move(row));
    }
  }
  return Matrix::from_cols(rr.kernel_basis(), nvar);
}

VBGroupoid vb_direct_sum(const VBGroupoid& a, const VBGroupoid& b) {
  const auto& g = a.base;
  VBGroupoid v;
  v.base = g;
  for (int m = 0; m < g.n_obj; ++m) {
    v.dimE.push_back(a.dimE[m] + b.dimE[m]);
    v.unit.push_back(Matrix::direct_sum(a.unit[m], b.unit[m]));
  }
  for (int i = 0; i < g.n_arr; ++i) {
    v.dimV.push_back(a.dimV[i] + b.dimV[i]);
    v.s.push_back(Matrix::direct_sum(a.s[i], b.s[i]));
    v.t.push_back(Matrix::direct_sum(a.t[i], b.t[i]));
    v.inv.push_back(Matrix::direct_sum(a.inv[i], b.inv[i]));
  }
  for (const auto& [xy, c] : g.comp) {
    auto [x, y] = xy;
    int ax = a.dimV[x], bx = b.dimV[x], ay = a.dimV[y], by = b.dimV[y];
    Matrix ma = a.mul(x, y), mb = b.mul(x, y);
    Matrix m(a.dimV[c] + b.dimV[c], ax + bx + ay + by);
    // input order (A_x, B_x, A_y, B_y)
    m.set_block(0, 0, ma.block(0, 0, a.dimV[c], ax));
    m.set_block(0, ax + bx, ma.block(0, ax, a.dimV[c], ay));
    m.set_block(a.dimV[c], ax, mb.block(0, 0, b.dimV[c], bx));
    m.set_block(a.dimV[c], ax + bx + ay, mb.block(0, bx, b.dimV[c], by));
    v.mult[xy] = m;
  }
  return v;
}

VBGroupoid vb_transport(const VBGroupoid& v, const std::vector<Matrix>& S, const std::vector<Matrix>& T) {
  const auto& g = v.base;
  std::vector<Matrix> Si, Ti;
  for (const auto& m : S) {
    auto i = inverse(m);
    if (!i) throw InvalidVB("transport by a singular arrow map");
    Si.push_back(*i);
  }
  for (const auto& m : T) {
    auto i = inverse(m);
    if (!i) throw InvalidVB("transport by a singular object map");
    Ti.push_back(*i);
  }
  VBGroupoid w;
  w.base = g;
  w.dimE = v.dimE;
  w.dimV = v.dimV;
  for (int a = 0; a < g.n_arr; ++a) {
    w.s.push_back(T[g.src[a]] * v.s[a] * Si[a]);
    w.t.push_back(T[g.tgt[a]] * v.t[a] * Si[a]);
    w.inv.push_back(S[g.inv[a]] * v.inv[a] * Si[a]);
  }
  for (int m = 0; m < g.n_obj; ++m) w.unit.push_back(S[g.unit[m]] * v.unit[m] * Ti[m]);
  for (const auto& [ab, c] : g.comp) w.mult[ab] = S[c] * v.mul(ab.first, ab.second) * Matrix::direct_sum(Si[ab.first], Si[ab.second]);
  return w;
}

}  // namespace hsw
