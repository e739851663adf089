#include "hsw/homrep.hpp"

#include <string>

namespace hsw {

namespace {

std::string pair_loc(const FiniteGroupoid& g, int a, int b) { return "(" + g.arr_name(a) + ", " + g.arr_name(b) + ")"; }

Matrix zeros(int r, int c) { return Matrix(r, c); }

const Matrix& omega(const HomotopyModule2& m, int a, int b) { return m.Omega.at({a, b}); }

int target_of(const FiniteGroupoid& g, const std::vector<int>& tup, int level) {
  return level == 0 ? tup[0] : g.tgt[tup[0]];
}

// faces of a (k+1)-tuple as level-k tuples (objects when k = 0)
std::vector<std::vector<int>> faces(const FiniteGroupoid& g, const std::vector<int>& T) {
  int k = static_cast<int>(T.size()) - 1;
  std::vector<std::vector<int>> out;
  if (k == 0) return {{g.src[T[0]]}, {g.tgt[T[0]]}};
  out.emplace_back(T.begin() + 1, T.end());
  for (int j = 1; j <= k; ++j) {
    std::vector<int> f;
    for (int p = 0; p <= k; ++p) {
      if (p == j) continue;
      f.push_back(p == j - 1 ? g.compose(T[j - 1], T[j]) : T[p]);
    }
    out.push_back(std::move(f));
  }
  out.emplace_back(T.begin(), T.end() - 1);
  return out;
}

}  // namespace

ValidationReport check_homotopy_module(const HomotopyModule2& m) {
  ValidationReport r;
  const auto& g = m.base;
  auto gr = check_groupoid(g);
  if (!gr.ok()) {
    r.merge(gr, "base:");
    return r;
  }
  if (static_cast<int>(m.dimC.size()) != g.n_obj || static_cast<int>(m.dimE.size()) != g.n_obj ||
      static_cast<int>(m.rho.size()) != g.n_obj || static_cast<int>(m.RE.size()) != g.n_arr ||
      static_cast<int>(m.RC.size()) != g.n_arr) {
    r.add("shape", "module", "table sizes disagree with the base groupoid");
    return r;
  }
  auto shape = [&](const Matrix& x, int rows, int cols, const std::string& loc) {
    if (x.rows() == rows && x.cols() == cols) return;
    r.add("shape", loc, std::to_string(x.rows()) + "x" + std::to_string(x.cols()),
          std::to_string(rows) + "x" + std::to_string(cols));
  };
  for (int x = 0; x < g.n_obj; ++x) shape(m.rho[x], m.dimE[x], m.dimC[x], "rho@" + g.obj_name(x));
  for (int a = 0; a < g.n_arr; ++a) {
    shape(m.RE[a], m.dimE[g.tgt[a]], m.dimE[g.src[a]], "RE@" + g.arr_name(a));
    shape(m.RC[a], m.dimC[g.tgt[a]], m.dimC[g.src[a]], "RC@" + g.arr_name(a));
  }
  for (const auto& [ab, c] : g.comp) {
    auto it = m.Omega.find(ab);
    if (it == m.Omega.end())
      r.add("shape", "Omega@" + pair_loc(g, ab.first, ab.second), "missing");
    else
      shape(it->second, m.dimC[g.tgt[ab.first]], m.dimE[g.src[ab.second]], "Omega@" + pair_loc(g, ab.first, ab.second));
  }
  if (!r.ok()) return r;

  for (int x = 0; x < g.n_obj; ++x) {
    int u = g.unit[x];
    r.expect_eq(m.RE[u], Matrix::identity(m.dimE[x]), "normalized", "RE@" + g.obj_name(x));
    r.expect_eq(m.RC[u], Matrix::identity(m.dimC[x]), "normalized", "RC@" + g.obj_name(x));
  }
  for (const auto& [ab, c] : g.comp) {
    auto [a, b] = ab;
    if ((a == g.unit[g.tgt[a]] || b == g.unit[g.src[b]]) && !omega(m, a, b).is_zero())
      r.add("normalized", "Omega@" + pair_loc(g, a, b), omega(m, a, b).str(), "0");
  }
  for (int a = 0; a < g.n_arr; ++a)
    r.expect_eq(m.RE[a] * m.rho[g.src[a]], m.rho[g.tgt[a]] * m.RC[a], "axiom-1", g.arr_name(a));
  for (const auto& [ab, c] : g.comp) {
    auto [a, b] = ab;
    const Matrix& O = omega(m, a, b);
    r.expect_eq(m.RE[a] * m.RE[b] - m.RE[c] + m.rho[g.tgt[a]] * O, zeros(m.dimE[g.tgt[a]], m.dimE[g.src[b]]), "axiom-2",
                pair_loc(g, a, b));
    r.expect_eq(m.RC[a] * m.RC[b] - m.RC[c] + O * m.rho[g.src[b]], zeros(m.dimC[g.tgt[a]], m.dimC[g.src[b]]), "axiom-3",
                pair_loc(g, a, b));
  }
  std::vector<std::vector<int>> by_t(g.n_obj);
  for (int a = 0; a < g.n_arr; ++a) by_t[g.tgt[a]].push_back(a);
  for (int a = 0; a < g.n_arr; ++a)
    for (int b : by_t[g.src[a]])
      for (int c : by_t[g.src[b]]) {
        int ab = g.compose(a, b), bc = g.compose(b, c);
        Matrix lhs = omega(m, ab, c) - omega(m, a, bc) - m.RC[a] * omega(m, b, c) + omega(m, a, b) * m.RE[c];
        if (!lhs.is_zero())
          r.add("axiom-4", "(" + g.arr_name(a) + ", " + g.arr_name(b) + ", " + g.arr_name(c) + ")", lhs.str(), "0");
      }
  return r;
}

HomotopyModule2 zero_module(const FiniteGroupoid& g) {
  HomotopyModule2 m;
  m.base = g;
  m.dimC.assign(g.n_obj, 0);
  m.dimE.assign(g.n_obj, 0);
  m.rho.assign(g.n_obj, Matrix());
  m.RE.assign(g.n_arr, Matrix());
  m.RC.assign(g.n_arr, Matrix());
  for (const auto& [ab, c] : g.comp) m.Omega[ab] = Matrix();
  return m;
}

ModuleCochains module_cochains(const HomotopyModule2& m, const Nerve& n, int k) {
  ModuleCochains mc;
  mc.level = k;
  const auto& g = m.base;
  for (const auto& tup : n.level(k)) {
    mc.c_off.push_back(mc.total);
    mc.total += m.dimC[target_of(g, tup, k)];
  }
  mc.c_total = mc.total;
  if (k >= 1)
    for (const auto& tup : n.level(k - 1)) {
      mc.e_off.push_back(mc.total);
      mc.total += m.dimE[target_of(g, tup, k - 1)];
    }
  return mc;
}

Matrix build_D(const HomotopyModule2& m, const Nerve& n, int k) {
  const auto& g = m.base;
  ModuleCochains in = module_cochains(m, n, k), out = module_cochains(m, n, k + 1);
  Matrix D(out.total, in.total);
  auto add = [&](int r0, int c0, const Matrix& blk) {
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) D(r0 + i, c0 + j) += blk(i, j);
  };
  // C part: −(twisted coboundary of c) + Ω(γ0,γ1) e(γ2..)
  for (int i = 0; i < n.size(k + 1); ++i) {
    const auto& T = n.level(k + 1)[i];
    int t = g.tgt[T[0]];
    auto fs = faces(g, T);
    for (size_t j = 0; j < fs.size(); ++j) {
      int col = in.c_off[n.index(k, fs[j])];
      if (j == 0)
        add(out.c_off[i], col, -m.RC[T[0]]);
      else
        add(out.c_off[i], col, Matrix::identity(m.dimC[t]) * Scalar((j % 2) ? 1 : -1));
    }
    if (k >= 1) {
      std::vector<int> rest(T.begin() + 2, T.end());
      if (rest.empty()) rest = {g.src[T[1]]};
      add(out.c_off[i], in.e_off[n.index(k - 1, rest)], omega(m, T[0], T[1]));
    }
  }
  // E part: ρ c + twisted coboundary of e
  for (int i = 0; i < n.size(k); ++i) {
    const auto& tup = n.level(k)[i];
    int t = target_of(g, tup, k);
    add(out.e_off[i], in.c_off[i], m.rho[t]);
    if (k >= 1) {
      auto fs = faces(g, tup);
      for (size_t j = 0; j < fs.size(); ++j) {
        int col = in.e_off[n.index(k - 1, fs[j])];
        if (j == 0)
          add(out.e_off[i], col, m.RE[tup[0]]);
        else
          add(out.e_off[i], col, Matrix::identity(m.dimE[t]) * Scalar((j % 2) ? -1 : 1));
      }
    }
  }
  return D;
}

namespace {

// ω ∪ f for a scalar p-cochain f
Matrix cup_matrix(const HomotopyModule2& m, const Nerve& n, int k, const Vec& f, int p) {
  const auto& g = m.base;
  ModuleCochains in = module_cochains(m, n, k), out = module_cochains(m, n, k + p);
  Matrix M(out.total, in.total);
  auto split = [&](const std::vector<int>& T, int cut) {
    std::vector<int> front(T.begin(), T.begin() + cut), back(T.begin() + cut, T.end());
    if (front.empty()) front = {g.tgt[T[0]]};
    if (back.empty()) back = {g.src[T.back()]};
    return std::make_pair(front, back);
  };
  for (int i = 0; i < n.size(k + p); ++i) {
    const auto& T = n.level(k + p)[i];
    int t = g.tgt[T[0]];
    auto [fc, bc] = split(T, k);
    Scalar fv = p == 0 ? Scalar(1) : f[n.index(p, bc)];
    int jc = in.c_off[n.index(k, fc)];
    for (int q = 0; q < m.dimC[t]; ++q) M(out.c_off[i] + q, jc + q) += fv;
  }
  if (k >= 1)
    for (int i = 0; i < n.size(k + p - 1); ++i) {
      const auto& T = n.level(k + p - 1)[i];
      if (T.empty()) continue;
      int t = target_of(g, T, k + p - 1);
      auto [fe, be] = split(T, k - 1);
      Scalar fv = f[n.index(p, be)];
      int je = in.e_off[n.index(k - 1, fe)];
      for (int q = 0; q < m.dimE[t]; ++q) M(out.e_off[i] + q, je + q) += fv;
    }
  return M;
}

}  // namespace

ValidationReport check_D(const HomotopyModule2& m, int max_level) {
  ValidationReport r;
  const auto& g = m.base;
  Nerve n(g, max_level + 2);
  std::vector<Matrix> D;
  for (int k = 0; k <= max_level + 1; ++k) D.push_back(build_D(m, n, k));
  for (int k = 0; k <= max_level; ++k)
    if (!(D[k + 1] * D[k]).is_zero()) r.add("d-squared", "level " + std::to_string(k));
  // Leibniz against scalar 1-cochains: indicator functions of arrows
  Matrix d1 = coboundary_matrix(g, n, 1);
  for (int k = 0; k + 1 <= max_level; ++k)
    for (int a = 0; a < g.n_arr; ++a) {
      Vec f = unit_vec(g.n_arr, a);
      Vec df = d1 * f;
      Matrix lhs = D[k + 1] * cup_matrix(m, n, k, f, 1);
      Matrix rhs = cup_matrix(m, n, k + 1, f, 1) * D[k] + cup_matrix(m, n, k, df, 2) * Scalar(k % 2 ? 1 : -1);
      if (!(lhs == rhs)) {
        r.add("leibniz", "level " + std::to_string(k) + ", f = 1_" + g.arr_name(a));
        break;
      }
    }
  return r;
}

Matrix hm2_apply(const HM2Morphism& f, const Nerve& n, int k) {
  const auto& m1 = *f.source;
  const auto& m2 = *f.target;
  const auto& g = m1.base;
  ModuleCochains in = module_cochains(m1, n, k), out = module_cochains(m2, n, k);
  Matrix M(out.total, in.total);
  for (int i = 0; i < n.size(k); ++i) {
    const auto& tup = n.level(k)[i];
    int t = target_of(g, tup, k);
    M.set_block(out.c_off[i], in.c_off[i], f.phiC[t]);
    if (k >= 1) {
      std::vector<int> rest(tup.begin() + 1, tup.end());
      if (rest.empty()) rest = {g.src[tup[0]]};
      M.set_block(out.c_off[i], in.e_off[n.index(k - 1, rest)], f.mu[tup[0]]);
    }
  }
  if (k >= 1)
    for (int i = 0; i < n.size(k - 1); ++i) {
      int t = target_of(g, n.level(k - 1)[i], k - 1);
      M.set_block(out.e_off[i], in.e_off[i], f.phiE[t]);
    }
  return M;
}

ValidationReport check_hm2_morphism(const HM2Morphism& f, int max_level) {
  ValidationReport r;
  const auto& g = f.source->base;
  Nerve n(g, max_level + 1);
  for (int k = 0; k <= max_level; ++k) {
    Matrix lhs = build_D(*f.target, n, k) * hm2_apply(f, n, k);
    Matrix rhs = hm2_apply(f, n, k + 1) * build_D(*f.source, n, k);
    if (!(lhs == rhs)) r.add("chain-map", "level " + std::to_string(k), (lhs - rhs).str(), "0");
  }
  return r;
}

HM2Morphism hm2_identity(std::shared_ptr<const HomotopyModule2> m) {
  HM2Morphism f{m, m, {}, {}, {}};
  for (int x = 0; x < m->base.n_obj; ++x) {
    f.phiC.push_back(Matrix::identity(m->dimC[x]));
    f.phiE.push_back(Matrix::identity(m->dimE[x]));
  }
  for (int a = 0; a < m->base.n_arr; ++a)
    f.mu.push_back(zeros(m->dimC[m->base.tgt[a]], m->dimE[m->base.src[a]]));
  return f;
}

HM2Morphism hm2_compose(const HM2Morphism& g, const HM2Morphism& f) {
  HM2Morphism h{f.source, g.target, {}, {}, {}};
  const auto& G = f.source->base;
  for (int x = 0; x < G.n_obj; ++x) {
    h.phiC.push_back(g.phiC[x] * f.phiC[x]);
    h.phiE.push_back(g.phiE[x] * f.phiE[x]);
  }
  for (int a = 0; a < G.n_arr; ++a) h.mu.push_back(g.phiC[G.tgt[a]] * f.mu[a] + g.mu[a] * f.phiE[G.src[a]]);
  return h;
}

Matrix hm2_homotopy_matrix(const HomotopyModule2& m1, const HomotopyModule2& m2, const std::vector<Matrix>& h,
                           const Nerve& n, int k) {
  const auto& g = m1.base;
  ModuleCochains in = module_cochains(m1, n, k), out = module_cochains(m2, n, k - 1);
  Matrix M(out.total, in.total);
  if (k == 0) return M;
  for (int i = 0; i < n.size(k - 1); ++i) {
    int t = target_of(g, n.level(k - 1)[i], k - 1);
    M.set_block(out.c_off[i], in.e_off[i], h[t]);
  }
  return M;
}

ValidationReport check_hm2_homotopy(const HM2Morphism& f, const HM2Morphism& g, const std::vector<Matrix>& h,
                                    int max_level) {
  ValidationReport r;
  const auto& m1 = *f.source;
  const auto& m2 = *f.target;
  Nerve n(m1.base, max_level + 1);
  for (int k = 0; k <= max_level; ++k) {
    Matrix lhs = hm2_apply(f, n, k) - hm2_apply(g, n, k);
    Matrix rhs = hm2_homotopy_matrix(m1, m2, h, n, k + 1) * build_D(m1, n, k);
    if (k > 0) rhs += build_D(m2, n, k - 1) * hm2_homotopy_matrix(m1, m2, h, n, k);
    if (!(lhs == rhs)) r.add("homotopy", "level " + std::to_string(k), (lhs - rhs).str(), "0");
  }
  return r;
}

HomotopyModule2 pullback_module(const HomotopyModule2& m, const std::vector<int>& phi) {
  PullbackGroupoid pb = pullback_groupoid(m.base, phi);
  HomotopyModule2 p;
  p.base = pb.g;
  for (int x : phi) {
    p.dimC.push_back(m.dimC[x]);
    p.dimE.push_back(m.dimE[x]);
    p.rho.push_back(m.rho[x]);
  }
  for (int a : pb.proj) {
    p.RE.push_back(m.RE[a]);
    p.RC.push_back(m.RC[a]);
  }
  for (const auto& [ab, c] : pb.g.comp) p.Omega[ab] = omega(m, pb.proj[ab.first], pb.proj[ab.second]);
  return p;
}

ValidationReport check_decomposition(const VBGroupoid& v, const RightDecomposition& d) {
  ValidationReport r;
  const auto& g = v.base;
  if (static_cast<int>(d.pi.size()) != g.n_arr) {
    r.add("shape", "decomposition", "one map per arrow");
    return r;
  }
  for (int a = 0; a < g.n_arr; ++a) {
    if (d.pi[a].rows() != v.dimV[a] || d.pi[a].cols() != v.dimE[g.src[a]]) {
      r.add("shape", g.arr_name(a));
      continue;
    }
    r.expect_eq(v.s[a] * d.pi[a], Matrix::identity(v.dimE[g.src[a]]), "section", g.arr_name(a));
  }
  for (int x = 0; x < g.n_obj; ++x) r.expect_eq(d.pi[g.unit[x]], v.unit[x], "canonical-on-units", g.obj_name(x));
  return r;
}

HomotopyModule2 from_split_vb(const VBGroupoid& v, const RightDecomposition& d) {
  auto rd = check_decomposition(v, d);
  if (!rd.ok()) throw InvalidDecomposition(rd.findings().front().tag + " at " + rd.findings().front().location);
  const auto& g = v.base;
  CoreBundle c = core(v);
  CoreEmbeddings e = core_embeddings(v, c);
  std::vector<Matrix> Rl;
  for (int a = 0; a < g.n_arr; ++a) {
    auto l = left_inverse(e.R[a]);
    if (!l) throw InvalidVB("right core embedding not injective at " + g.arr_name(a));
    Rl.push_back(*l);
  }
  HomotopyModule2 m;
  m.base = g;
  m.dimC = c.dim;
  m.dimE = v.dimE;
  m.rho = c.rho;
  for (int a = 0; a < g.n_arr; ++a) {
    int s = g.src[a];
    m.RE.push_back(v.t[a] * d.pi[a]);
    // π(ρc)·c lies in the image of R
    m.RC.push_back(Rl[a] * v.mul(a, g.unit[s]) * Matrix::vstack(d.pi[a] * c.rho[s], c.basis[s]));
  }
  for (const auto& [ab, cc] : g.comp) {
    auto [a, b] = ab;
    Matrix prod = v.mul(a, b) * Matrix::vstack(d.pi[a] * m.RE[b], d.pi[b]);
    m.Omega[ab] = Rl[cc] * (d.pi[cc] - prod);
  }
  return m;
}

SplitVB to_split_vb(const HomotopyModule2& m) {
  const auto& g = m.base;
  SplitVB out;
  auto& v = out.v;
  v.base = g;
  v.dimE = m.dimE;
  for (int a = 0; a < g.n_arr; ++a) {
    int s = g.src[a], t = g.tgt[a], i = g.inv[a];
    int dc = m.dimC[t], de = m.dimE[s];
    v.dimV.push_back(dc + de);
    v.s.push_back(Matrix::hstack(zeros(de, dc), Matrix::identity(de)));
    v.t.push_back(Matrix::hstack(m.rho[t], m.RE[a]));
    // (c, e) ↦ (−R^C_{γ⁻¹}c + Ω(γ⁻¹,γ)e, ρc + R^E_γ e)
    Matrix inv(m.dimC[s] + m.dimE[t], dc + de);
    inv.set_block(0, 0, -m.RC[i]);
    inv.set_block(0, dc, omega(m, i, a));
    inv.set_block(m.dimC[s], 0, m.rho[t]);
    inv.set_block(m.dimC[s], dc, m.RE[a]);
    v.inv.push_back(inv);
    out.dec.pi.push_back(Matrix::vstack(zeros(dc, de), Matrix::identity(de)));
  }
  for (int x = 0; x < g.n_obj; ++x) v.unit.push_back(Matrix::vstack(zeros(m.dimC[x], m.dimE[x]), Matrix::identity(m.dimE[x])));
  for (const auto& [ab, c] : g.comp) {
    auto [a, b] = ab;
    int c1 = m.dimC[g.tgt[a]], e1 = m.dimE[g.src[a]], c2 = m.dimC[g.tgt[b]], e2 = m.dimE[g.src[b]];
    // (c1, e1, c2, e2) ↦ (c1 + R^C c2 − Ω e2, e2)
    Matrix M(c1 + e2, c1 + e1 + c2 + e2);
    M.set_block(0, 0, Matrix::identity(c1));
    M.set_block(0, c1 + e1, m.RC[a]);
    M.set_block(0, c1 + e1 + c2, -omega(m, a, b));
    M.set_block(c1, c1 + e1 + c2, Matrix::identity(e2));
    v.mult[ab] = M;
  }
  return out;
}

VBMorphism split_iso(std::shared_ptr<const VBGroupoid> v, const RightDecomposition& d,
                     std::shared_ptr<const VBGroupoid> split) {
  const auto& g = v->base;
  CoreEmbeddings e = core_embeddings(*v);
  VBMorphism f = vb_identity(v);
  f.target = split;
  for (int a = 0; a < g.n_arr; ++a) {
    auto l = left_inverse(e.R[a]);
    if (!l) throw InvalidVB("right core embedding not injective at " + g.arr_name(a));
    Matrix id = Matrix::identity(v->dimV[a]);
    f.arr[a] = Matrix::vstack(*l * (id - d.pi[a] * v->s[a]), v->s[a]);
  }
  return f;
}

RightDecomposition shift_decomposition(const VBGroupoid& v, const RightDecomposition& d, const std::vector<Matrix>& theta) {
  CoreEmbeddings e = core_embeddings(v);
  RightDecomposition out = d;
  for (int a = 0; a < v.base.n_arr; ++a) out.pi[a] += e.R[a] * theta[a];
  return out;
}

HM2Morphism decomposition_gauge(std::shared_ptr<const HomotopyModule2> m1, std::shared_ptr<const HomotopyModule2> m2,
                                const std::vector<Matrix>& theta) {
  HM2Morphism f = hm2_identity(m1);
  f.target = m2;
  f.mu.clear();
  for (const auto& th : theta) f.mu.push_back(-th);
  return f;
}

HM2Morphism module_morphism_from_vb(const VBMorphism& f, const RightDecomposition& d1, const RightDecomposition& d2,
                                    std::shared_ptr<const HomotopyModule2> m1,
                                    std::shared_ptr<const HomotopyModule2> m2) {
  const auto& g = f.source->base;
  CoreBundle c1 = core(*f.source), c2 = core(*f.target);
  CoreEmbeddings e2 = core_embeddings(*f.target, c2);
  HM2Morphism h{m1, m2, core_part(f, c1, c2), f.obj, {}};
  for (int a = 0; a < g.n_arr; ++a) {
    auto l = left_inverse(e2.R[a]);
    if (!l) throw InvalidVB("right core embedding not injective at " + g.arr_name(a));
    h.mu.push_back(*l * (f.arr[a] * d1.pi[a] - d2.pi[a] * f.obj[g.src[a]]));
  }
  return h;
}

ValidationReport morita_module_witness(const HomotopyModule2& m1, const HomotopyModule2& m2, const ModuleWitness& w) {
  ValidationReport r;
  std::optional<HomotopyModule2> p1, p2;
  try {
    p1 = pullback_module(m1, w.phi1);
    p2 = pullback_module(m2, w.phi2);
  } catch (const NotSurjective& e) {
    r.add("bitorsor", "legs", e.what());
    return r;
  }
  const auto& G1 = p1->base;
  const auto& G2 = p2->base;
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
  HomotopyModule2 q2;
  q2.base = G1;
  q2.dimC = p2->dimC;
  q2.dimE = p2->dimE;
  q2.rho = p2->rho;
  for (int a = 0; a < G1.n_arr; ++a) {
    q2.RE.push_back(p2->RE[w.arrow_iso[a]]);
    q2.RC.push_back(p2->RC[w.arrow_iso[a]]);
  }
  for (const auto& [ab, c] : G1.comp) q2.Omega[ab] = omega(*p2, w.arrow_iso[ab.first], w.arrow_iso[ab.second]);
  auto s1 = std::make_shared<const HomotopyModule2>(*p1);
  auto s2 = std::make_shared<const HomotopyModule2>(q2);
  HM2Morphism f{s1, s2, w.fC, w.fE, w.fmu}, g{s2, s1, w.gC, w.gE, w.gmu};
  try {
    r.merge(check_hm2_morphism(f), "f:");
    r.merge(check_hm2_morphism(g), "g:");
    r.merge(check_hm2_homotopy(hm2_compose(g, f), hm2_identity(s1), w.h1), "g∘f:");
    r.merge(check_hm2_homotopy(hm2_compose(f, g), hm2_identity(s2), w.h2), "f∘g:");
  } catch (const std::exception& e) {
    r.add("shape", "witness", e.what());
  }
  return r;
}

HomotopyModule2 random_strict_module(Rng& rng, const FiniteGroupoid& g, int max_dim) {
  std::uniform_int_distribution<int> dd(0, max_dim);
  int dc = dd(rng), de = dd(rng);
  if (dc + de == 0) de = 1;
  HomotopyModule2 m;
  m.base = g;
  m.dimC.assign(g.n_obj, dc);
  m.dimE.assign(g.n_obj, de);
  Matrix rho0 = random_matrix(rng, de, dc);
  std::vector<Matrix> A, Ai, B, Bi;
  for (int x = 0; x < g.n_obj; ++x) {
    A.push_back(random_invertible(rng, dc));
    B.push_back(random_invertible(rng, de));
    Ai.push_back(*inverse(A.back()));
    Bi.push_back(*inverse(B.back()));
    m.rho.push_back(B[x] * rho0 * Ai[x]);
  }
  for (int a = 0; a < g.n_arr; ++a) {
    m.RC.push_back(A[g.tgt[a]] * Ai[g.src[a]]);
    m.RE.push_back(B[g.tgt[a]] * Bi[g.src[a]]);
  }
  for (const auto& [ab, c] : g.comp) m.Omega[ab] = zeros(dc, de);
  return m;
}

std::vector<Matrix> random_theta(Rng& rng, const HomotopyModule2& m) {
  const auto& g = m.base;
  std::vector<Matrix> th;
  for (int a = 0; a < g.n_arr; ++a) {
    int dc = m.dimC[g.tgt[a]], de = m.dimE[g.src[a]];
    th.push_back(a == g.unit[g.src[a]] ? zeros(dc, de) : random_matrix(rng, dc, de));
  }
  return th;
}

HomotopyModule2 random_module(Rng& rng, const FiniteGroupoid& g, int max_dim) {
  HomotopyModule2 strict = random_strict_module(rng, g, max_dim);
  SplitVB sv = to_split_vb(strict);
  return from_split_vb(sv.v, shift_decomposition(sv.v, sv.dec, random_theta(rng, strict)));
}

RightDecomposition random_decomposition(Rng& rng, const VBGroupoid& v) {
  const auto& g = v.base;
  CoreBundle c = core(v);
  CoreEmbeddings e = core_embeddings(v, c);
  RightDecomposition d;
  for (int a = 0; a < g.n_arr; ++a) {
    int s = g.src[a];
    if (a == g.unit[s]) {
      d.pi.push_back(v.unit[s]);
      continue;
    }
    auto r = right_inverse(v.s[a]);
    if (!r) throw InvalidVB("source map not onto at " + g.arr_name(a));
    d.pi.push_back(*r + e.R[a] * random_matrix(rng, c.dim[g.tgt[a]], v.dimE[s]));
  }
  return d;
}

VBGroupoid random_vb_groupoid(Rng& rng, const FiniteGroupoid& g, int max_dim) {
  SplitVB sv = to_split_vb(random_module(rng, g, max_dim));
  std::vector<Matrix> S, T;
  for (int a = 0; a < g.n_arr; ++a) S.push_back(random_invertible(rng, sv.v.dimV[a]));
  for (int x = 0; x < g.n_obj; ++x) T.push_back(random_invertible(rng, sv.v.dimE[x]));
  return vb_transport(sv.v, S, T);
}

VBHomotopyEquivalence random_vb_equivalence(Rng& rng, const FiniteGroupoid& g, int max_dim) {
  auto v1 = std::make_shared<const VBGroupoid>(random_vb_groupoid(rng, g, max_dim));
  // contractible: C = E, ρ = id, strict
  int k = std::uniform_int_distribution<int>(1, 2)(rng);
  HomotopyModule2 km;
  km.base = g;
  km.dimC.assign(g.n_obj, k);
  km.dimE.assign(g.n_obj, k);
  std::vector<Matrix> A, Ai;
  for (int x = 0; x < g.n_obj; ++x) {
    A.push_back(random_invertible(rng, k));
    Ai.push_back(*inverse(A.back()));
    km.rho.push_back(Matrix::identity(k));
  }
  for (int a = 0; a < g.n_arr; ++a) {
    km.RC.push_back(A[g.tgt[a]] * Ai[g.src[a]]);
    km.RE.push_back(km.RC.back());
  }
  for (const auto& [ab, c] : g.comp) km.Omega[ab] = zeros(k, k);
  VBGroupoid K = to_split_vb(km).v;
  VBGroupoid sum = vb_direct_sum(*v1, K);
  std::vector<Matrix> S, T, Si, Ti;
  for (int a = 0; a < g.n_arr; ++a) {
    S.push_back(random_invertible(rng, sum.dimV[a]));
    Si.push_back(*inverse(S.back()));
  }
  for (int x = 0; x < g.n_obj; ++x) {
    T.push_back(random_invertible(rng, sum.dimE[x]));
    Ti.push_back(*inverse(T.back()));
  }
  auto v2 = std::make_shared<const VBGroupoid>(vb_transport(sum, S, T));

  VBHomotopyEquivalence eq{vb_identity(v1), vb_identity(v2), {}, {}};
  eq.phi.target = v2;
  eq.psi.target = v1;
  for (int a = 0; a < g.n_arr; ++a) {
    int d1 = v1->dimV[a], dk = K.dimV[a];
    eq.phi.arr[a] = S[a] * Matrix::vstack(Matrix::identity(d1), zeros(dk, d1));
    eq.psi.arr[a] = Matrix::hstack(Matrix::identity(d1), zeros(d1, dk)) * Si[a];
  }
  for (int x = 0; x < g.n_obj; ++x) {
    int d1 = v1->dimE[x], dk = K.dimE[x];
    eq.phi.obj[x] = T[x] * Matrix::vstack(Matrix::identity(d1), zeros(dk, d1));
    eq.psi.obj[x] = Matrix::hstack(Matrix::identity(d1), zeros(d1, dk)) * Ti[x];
  }
  // Φ + J_q for a random q : E₁ → C₂ is still an equivalence
  CoreBundle c2 = core(*v2);
  VBHomotopyDatum q;
  for (int x = 0; x < g.n_obj; ++x) q.h.push_back(random_matrix(rng, c2.dim[x], v1->dimE[x]));
  eq.phi = vb_add(eq.phi, apply_vb_homotopy(v1, v2, q));
  auto h1 = find_homotopy(vb_compose(eq.psi, eq.phi), vb_identity(v1));
  auto h2 = find_homotopy(vb_compose(eq.phi, eq.psi), vb_identity(v2));
  if (!h1 || !h2) throw std::logic_error("random VB equivalence without homotopies");
  eq.h1 = *h1;
  eq.h2 = *h2;
  return eq;
}

}  // namespace hsw
