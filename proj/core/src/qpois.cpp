#include "hsw/qpois.hpp"

#include <functional>
#include <sstream>

namespace hsw {

namespace {

std::string ext_str(const ExteriorElement& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    if (!first) os << " + ";
    first = false;
    os << c << "*[";
    bool f2 = true;
    for (int i = 0; i < 32; ++i)
      if (m & (1u << i)) {
        os << (f2 ? "" : ",") << i;
        f2 = false;
      }
    os << "]";
  }
  return os.str();
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix require_inverse(const Matrix& m, const char* what) {
  auto inv = inverse(m);
  if (!inv) throw DegenerateForm(what);
  return *inv;
}

std::vector<int> bits_of(uint32_t m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

}  // namespace

Vec MatrixLieAlgebra::coords(const Matrix& x) const {
  int d = rep_dim;
  if (x.rows() != d || x.cols() != d) throw InvalidAlgebra("matrix size differs from the representation");
  Matrix A(d * d, n);
  Vec b(d * d);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) A(r * d + c, i) = basis[i](r, c);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) b[r * d + c] = x(r, c);
  auto v = solve(A, b);
  if (!v) throw InvalidAlgebra("matrix outside the span of the basis");
  return *v;
}

Vec MatrixLieAlgebra::bracket(const Vec& x, const Vec& y) const {
  Vec r(n);
  for (int i = 0; i < n; ++i)
    if (!x[i].is_zero()) r = vec_add(r, vec_scale(ad[i] * y, x[i]));
  return r;
}

MatrixLieAlgebra make_algebra(std::string name, std::vector<Matrix> basis, Matrix K, std::optional<Matrix> casimir) {
  MatrixLieAlgebra g;
  g.name = std::move(name);
  g.n = static_cast<int>(basis.size());
  if (g.n == 0) throw InvalidAlgebra("empty basis");
  g.rep_dim = basis[0].rows();
  for (const auto& b : basis)
    if (b.rows() != g.rep_dim || b.cols() != g.rep_dim) throw InvalidAlgebra("basis matrices of different sizes");
  if (K.rows() != g.n || K.cols() != g.n) throw InvalidAlgebra("K has the wrong size");
  g.basis = std::move(basis);
  g.K = std::move(K);
  g.casimir = std::move(casimir);
  Matrix A(g.rep_dim * g.rep_dim, g.n);
  for (int i = 0; i < g.n; ++i)
    for (int r = 0; r < g.rep_dim; ++r)
      for (int c = 0; c < g.rep_dim; ++c) A(r * g.rep_dim + c, i) = g.basis[i](r, c);
  if (rank(A) != g.n) throw InvalidAlgebra("basis matrices are linearly dependent");
  g.ad.assign(g.n, Matrix(g.n, g.n));
  for (int i = 0; i < g.n; ++i)
    for (int l = 0; l < g.n; ++l) g.ad[i].set_col(l, g.coords(commutator(g.basis[i], g.basis[l])));
  return g;
}

ValidationReport check_algebra(const MatrixLieAlgebra& g, bool nondegenerate) {
  ValidationReport rep;
  int n = g.n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // ad_[x,y] = [ad_x, ad_y] is Jacobi
      Vec xy = g.ad[i].col(j);
      Matrix lhs(n, n);
      for (int k = 0; k < n; ++k)
        if (!xy[k].is_zero()) lhs += g.ad[k] * xy[k];
      rep.expect_eq(lhs, commutator(g.ad[i], g.ad[j]), "jacobi", "(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  rep.expect_eq(g.K, g.K.transpose(), "K-symmetric", "K");
  for (int i = 0; i < n; ++i) {
    Matrix inv = g.ad[i].transpose() * g.K + g.K * g.ad[i];
    rep.expect_eq(inv, Matrix(n, n), "K-invariant", "e" + std::to_string(i));
  }
  if (nondegenerate && det(g.K).is_zero()) rep.add("K-nondegenerate", "K", "det 0");
  if (g.casimir) {
    // t must be invariant: ad_x t + t ad_xᵀ = 0
    const Matrix& t = *g.casimir;
    rep.expect_eq(t, t.transpose(), "casimir-symmetric", "t");
    for (int i = 0; i < n; ++i)
      rep.expect_eq(g.ad[i] * t + t * g.ad[i].transpose(), Matrix(n, n), "casimir-invariant", "e" + std::to_string(i));
  }
  return rep;
}

MatrixLieAlgebra sl2() {
  Matrix h{{1, 0}, {0, -1}}, e{{0, 1}, {0, 0}}, f{{0, 0}, {1, 0}};
  Matrix K{{2, 0, 0}, {0, 0, 1}, {0, 1, 0}};
  return make_algebra("sl2", {h, e, f}, K);
}

MatrixLieAlgebra so3() {
  Matrix lx{{0, 0, 0}, {0, 0, -1}, {0, 1, 0}};
  Matrix ly{{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}};
  Matrix lz{{0, -1, 0}, {1, 0, 0}, {0, 0, 0}};
  return make_algebra("so3", {lx, ly, lz}, Matrix::identity(3));
}

MatrixLieAlgebra abelian(int n) {
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i) {
    Matrix d(n, n);
    d(i, i) = 1;
    basis.push_back(d);
  }
  return make_algebra("abelian" + std::to_string(n), basis, Matrix::identity(n));
}

GroupPoint make_point(const MatrixLieAlgebra& alg, const Matrix& g) {
  if (g.rows() != alg.rep_dim || g.cols() != alg.rep_dim) throw PointNotInGroup("matrix size differs from the representation");
  auto gi = inverse(g);
  if (!gi) throw PointNotInGroup("singular matrix");
  GroupPoint p;
  p.g = g;
  p.Ad = Matrix(alg.n, alg.n);
  p.Ad_inv = Matrix(alg.n, alg.n);
  try {
    for (int x = 0; x < alg.n; ++x) {
      p.Ad.set_col(x, alg.coords(g * alg.basis[x] * *gi));
      p.Ad_inv.set_col(x, alg.coords(*gi * alg.basis[x] * g));
    }
  } catch (const InvalidAlgebra&) {
    throw PointNotInGroup("conjugation leaves the span of the basis");
  }
  return p;
}

GroupPoint point_product(const MatrixLieAlgebra& alg, const GroupPoint& a, const GroupPoint& b) {
  return make_point(alg, a.g * b.g);
}

GroupPoint point_inverse(const MatrixLieAlgebra& alg, const GroupPoint& a) {
  return make_point(alg, *inverse(a.g));
}

GroupPoint random_point(const MatrixLieAlgebra& alg, Rng& rng) {
  auto small = [&] {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    return Scalar(num(rng)) / Scalar(den(rng));
  };
  if (alg.name == "sl2") {
    for (;;) {
      Scalar a = small(), b = small(), c = small();
      if (a.is_zero()) continue;
      return make_point(alg, Matrix{{a, b}, {c, (Scalar(1) + b * c) / a}});
    }
  }
  if (alg.name == "so3") {
    // Cayley transform of a rational skew matrix
    Scalar x = small(), y = small(), z = small();
    Matrix S{{0, -z, y}, {z, 0, -x}, {-y, x, 0}};
    Matrix I = Matrix::identity(3);
    return make_point(alg, *inverse(I - S) * (I + S));
  }
  if (alg.name.rfind("abelian", 0) == 0) {
    Matrix d(alg.n, alg.n);
    for (int i = 0; i < alg.n; ++i) {
      Scalar v;
      do v = small();
      while (v.is_zero());
      d(i, i) = v;
    }
    return make_point(alg, d);
  }
  throw InvalidAlgebra("no sampler for " + alg.name);
}

Multivector cartan_trivector(const MatrixLieAlgebra& g) {
  int n = g.n;
  Matrix Ki = require_inverse(g.K, "K is degenerate");
  // φ_ijk = ¼ K(e_i, [e_j, e_k])
  std::vector<Scalar> phi(n * n * n), L(n * n * n);
  auto at = [n](int i, int j, int k) { return (i * n + j) * n + k; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Scalar s(0);
        for (int r = 0; r < n; ++r) s += g.K(i, r) * g.ad[j](r, k);
        phi[at(i, j, k)] = s / Scalar(4);
      }
  // raise one index at a time
  std::vector<Scalar> t1(n * n * n), t2(n * n * n);
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) t1[at(a, j, k)] += Ki(a, i) * phi[at(i, j, k)];
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) t2[at(a, b, k)] += Ki(b, j) * t1[at(a, j, k)];
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int k = 0; k < n; ++k) L[at(a, b, c)] += Ki(c, k) * t2[at(a, b, k)];
  Multivector out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const Scalar& v = L[at(a, b, c)];
        if (!(v == -L[at(b, a, c)]) || !(v == -L[at(a, c, b)]))
          throw InvalidAlgebra("Cartan tensor not antisymmetric; K is not invariant");
        if (a < b && b < c) out.add((1u << a) | (1u << b) | (1u << c), v);
      }
  return out;
}

std::pair<int, int> signature(const Matrix& sym) {
  Matrix a = sym;
  int n = a.rows(), pos = 0, neg = 0;
  std::vector<bool> used(n, false);
  for (;;) {
    int p = -1;
    for (int i = 0; i < n && p < 0; ++i)
      if (!used[i] && !a(i, i).is_zero()) p = i;
    if (p < 0) {
      // all remaining diagonal entries vanish: e_i ← e_i + e_j makes a(i,i) = 2a(i,j)
      int pi = -1, pj = -1;
      for (int i = 0; i < n && pi < 0; ++i)
        for (int j = 0; j < n; ++j)
          if (!used[i] && !used[j] && i != j && !a(i, j).is_zero()) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) break;
      for (int c = 0; c < n; ++c) a(pi, c) += a(pj, c);
      for (int r = 0; r < n; ++r) a(r, pi) += a(r, pj);
      p = pi;
    }
    Scalar d = a(p, p);
    (d.sign() > 0 ? pos : neg)++;
    used[p] = true;
    for (int i = 0; i < n; ++i) {
      if (used[i] || a(i, p).is_zero()) continue;
      Scalar f = a(i, p) / d;
      for (int j = 0; j < n; ++j) a(i, j) -= f * a(p, j);
    }
    for (int j = 0; j < n; ++j)
      if (!used[j]) a(p, j) = 0;
    for (int i = 0; i < n; ++i)
      if (!used[i]) a(i, p) = 0;
  }
  return {pos, neg};
}

ManinQuasiTriple double_quasitriple(const MatrixLieAlgebra& g) {
  int n = g.n;
  require_inverse(g.K, "K is degenerate");
  std::vector<Matrix> basis;
  for (int half = 0; half < 2; ++half)
    for (int i = 0; i < n; ++i) {
      Matrix z(g.rep_dim, g.rep_dim);
      basis.push_back(half == 0 ? Matrix::direct_sum(g.basis[i], z) : Matrix::direct_sum(z, g.basis[i]));
    }
  ManinQuasiTriple q{make_algebra(g.name + "+" + g.name, basis, Matrix::direct_sum(g.K, -g.K)), Matrix(2 * n, n),
                     Matrix(2 * n, n)};
  for (int i = 0; i < n; ++i) {
    q.g_basis(i, i) = 1;
    q.g_basis(n + i, i) = 1;
    q.h_basis(i, i) = 1;
    q.h_basis(n + i, i) = -1;
  }
  auto rep = check_quasi_triple(q);
  if (!rep.ok()) throw InvalidTriple("double construction failed: " + rep.findings()[0].tag);
  return q;
}

ValidationReport check_quasi_triple(const ManinQuasiTriple& q) {
  ValidationReport rep;
  rep.merge(check_algebra(q.d), "d/");
  int N = q.d.n, n = q.g_basis.cols();
  if (2 * n != N || q.h_basis.cols() != n || q.g_basis.rows() != N || q.h_basis.rows() != N) {
    rep.add("dimensions", "g, h", std::to_string(n), std::to_string(N));
    return rep;
  }
  const Matrix& B = q.d.K;
  rep.expect_eq(q.g_basis.transpose() * B * q.g_basis, Matrix(n, n), "g-isotropic", "g");
  rep.expect_eq(q.h_basis.transpose() * B * q.h_basis, Matrix(n, n), "h-isotropic", "h");
  if (rank(Matrix::hstack(q.g_basis, q.h_basis)) != N) rep.add("complement", "g+h", "", "direct sum");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec br = q.d.bracket(q.g_basis.col(i), q.g_basis.col(j));
      if (!solve(q.g_basis, br)) rep.add("g-subalgebra", "(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  if (det(q.h_basis.transpose() * B * q.g_basis).is_zero()) rep.add("pairing", "h x g", "degenerate");
  return rep;
}

Multivector phi_from_pairing(const ManinQuasiTriple& q) {
  auto rep = check_quasi_triple(q);
  if (!rep.ok()) throw InvalidTriple(rep.findings()[0].tag + " at " + rep.findings()[0].location);
  int n = q.g_basis.cols();
  const Matrix& B = q.d.K;
  Matrix P = q.h_basis.transpose() * B * q.g_basis;  // (h_a | g_j)
  Matrix Q = *inverse(P);                           // ε^i = Σ_a Q(i, a) h_a
  std::vector<Vec> hcols;
  for (int a = 0; a < n; ++a) hcols.push_back(q.h_basis.col(a));
  auto pair = [&](const Vec& u, const Vec& v) {
    Vec Bv = B * v;
    Scalar s(0);
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * Bv[i];
    return s;
  };
  std::vector<Scalar> phi(n * n * n);
  auto at = [n](int i, int j, int k) { return (i * n + j) * n + k; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Vec ab = q.d.bracket(hcols[a], hcols[b]);
      for (int c = 0; c < n; ++c) phi[at(a, b, c)] = pair(ab, hcols[c]);
    }
  Multivector out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Scalar s(0);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
              const Scalar& v = phi[at(a, b, c)];
              if (!v.is_zero()) s += Q(i, a) * Q(j, b) * Q(k, c) * v;
            }
        out.add((1u << i) | (1u << j) | (1u << k), s);
      }
  return out;
}

Matrix double_quotient_map(const Matrix& gprime, const Matrix& g) {
  auto gi = inverse(g);
  if (!gi) throw PointNotInGroup("singular matrix");
  return gprime * *gi;
}

ConjugationModel conjugation_model(const MatrixLieAlgebra& g) {
  ConjugationModel m{g, g.frame(2), {}};
  int n = g.n;
  const FrameContext& c = m.ctx;
  Matrix Ki = require_inverse(g.K, "K is degenerate");
  // Ad_{t⁻¹} = a⁻¹ b a with a = Ad_{g⁻¹}, b = Ad_{s⁻¹} and a⁻¹ = K⁻¹aᵀK
  std::vector<AdPolynomial> ainv(n * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int r = 0; r < n; ++r) {
          Scalar w = Ki(j, l) * g.K(r, k);
          if (!w.is_zero()) ainv[j * n + k] += AdPolynomial::variable(c.var(0, r, l)) * w;
        }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      AdPolynomial t;
      for (int l = 0; l < n; ++l) {
        if (ainv[j * n + l].is_zero()) continue;
        for (int r = 0; r < n; ++r)
          t += ainv[j * n + l] * (AdPolynomial::variable(c.var(1, l, r)) * AdPolynomial::variable(c.var(0, r, k)));
      }
      m.at_target[c.var(1, j, k)] = t;
    }
  return m;
}

std::vector<Scalar> arrow_values(const ConjugationModel& m, const GroupPoint& g, const GroupPoint& s) {
  int n = m.ctx.n;
  std::vector<Scalar> v(m.ctx.vars());
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      v[m.ctx.var(0, j, k)] = g.Ad_inv(j, k);
      v[m.ctx.var(1, j, k)] = s.Ad_inv(j, k);
    }
  return v;
}

Section constant_section(const ConjugationModel& m, const Multivector& a) {
  if (a.n() != m.ctx.n) throw FrameMismatch("multivector on the wrong algebra");
  Section s(m.ctx.frames());
  for (const auto& [mask, c] : a.terms()) s.add(mask, AdPolynomial::constant(c));
  return s;
}

namespace {

FramedPolyvector push(const ConjugationModel& m, const Section& a,
                      const std::function<FramedPolyvector(int)>& field, bool at_target) {
  FramedPolyvector r(m.ctx.frames());
  std::vector<FramedPolyvector> fields;
  for (int i = 0; i < m.ctx.n; ++i) fields.push_back(field(i));
  for (const auto& [mask, p] : a.terms()) {
    if (mask >> m.ctx.n) throw FrameMismatch("section has components off the acting factor");
    FramedPolyvector w(m.ctx.frames());
    w.add(0, AdPolynomial::constant(Scalar(1)));
    for (int i : bits_of(mask)) w = wedge(w, fields[i]);
    r += w.times(at_target ? p.substitute(m.at_target) : p);
  }
  return r;
}

}  // namespace

FramedPolyvector right_invariant(const ConjugationModel& m, const Section& a) {
  return push(m, a, [&](int i) { return right_field(m.ctx, 0, unit_vec(m.ctx.n, i)); }, true);
}

// arrows ending at s(γ) generated by +ξ: ←ξ = ξ¹ + ξ² − →ξ²
FramedPolyvector left_invariant(const ConjugationModel& m, const Section& a) {
  return push(
      m, a,
      [&](int i) {
        Vec x = unit_vec(m.ctx.n, i);
        return left_field(m.ctx, 0, x) + left_field(m.ctx, 1, x) - right_field(m.ctx, 1, x);
      },
      false);
}

FramedPolyvector exact_polyvector(const ConjugationModel& m, const Section& a) {
  return left_invariant(m, a) - right_invariant(m, a);
}

Section right_invariant_part(const ConjugationModel& m, const FramedPolyvector& X) {
  std::map<int, AdPolynomial> unit;
  int n = m.ctx.n;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) unit[m.ctx.var(0, j, k)] = AdPolynomial::constant(Scalar(j == k ? 1 : 0));
  Section s(m.ctx.frames());
  // along the units →b has no factor-1 part; what is left there vanishes on the group
  for (const auto& [mask, p] : X.terms())
    if (!(mask >> n)) s.add(mask, p.substitute(unit));
  return s;
}

Section delta(const ConjugationModel& m, const FramedPolyvector& P, const Section& a) {
  return right_invariant_part(m, schouten(m.ctx, P, right_invariant(m, a)));
}

Section section_bracket(const ConjugationModel& m, const Section& a, const Section& b) {
  return right_invariant_part(m, schouten(m.ctx, right_invariant(m, a), right_invariant(m, b)));
}

FramedPolyvector amm_bivector(const ConjugationModel& m) {
  const FrameContext& c = m.ctx;
  int n = c.n;
  Matrix Ki = require_inverse(m.alg.K, "K is degenerate");
  FramedPolyvector P(c.frames());
  for (int i = 0; i < n; ++i) {
    Vec ei = unit_vec(n, i);
    // →(Ad_{g⁻¹}e_i)²
    FramedPolyvector R(c.frames());
    for (int r = 0; r < n; ++r)
      R += right_field(c, 1, unit_vec(n, r)).times(AdPolynomial::variable(c.var(0, r, i)));
    for (int j = 0; j < n; ++j) {
      if (Ki(i, j).is_zero()) continue;
      Vec ej = unit_vec(n, j);
      FramedPolyvector t = wedge(left_field(c, 1, ei), right_field(c, 1, ej)) -
                           wedge(left_field(c, 1, ei), left_field(c, 0, ej)) - wedge(R, right_field(c, 0, ej));
      P += (Ki(i, j) / Scalar(2)) * t;
    }
  }
  return P;
}

ValidationReport check_quasi_poisson(const ConjugationModel& m, const FramedPolyvector& Pi, const Section& Lambda,
                                     const std::vector<ArrowPoint>& points) {
  ValidationReport rep;
  FramedPolyvector half = Scalar(1, 2) * schouten(m.ctx, Pi, Pi);
  FramedPolyvector rl = right_invariant(m, Lambda);
  FramedPolyvector d = left_invariant(m, Lambda) - rl;
  FramedPolyvector dl = schouten(m.ctx, Pi, rl);
  for (size_t p = 0; p < points.size(); ++p) {
    auto v = arrow_values(m, points[p].g, points[p].s);
    ExteriorElement a = half.eval(v), b = d.eval(v), c = dl.eval(v);
    if (!(a == b)) rep.add("mc-bracket", "point " + std::to_string(p), ext_str(a), ext_str(b));
    if (!c.is_zero()) rep.add("delta-lambda", "point " + std::to_string(p), ext_str(c), "0");
  }
  return rep;
}

ValidationReport check_units_coisotropic(const ConjugationModel& m, const FramedPolyvector& Pi,
                                         const std::vector<GroupPoint>& points) {
  ValidationReport rep;
  GroupPoint e{Matrix::identity(m.alg.rep_dim), Matrix::identity(m.ctx.n), Matrix::identity(m.ctx.n)};
  for (size_t p = 0; p < points.size(); ++p) {
    ExteriorElement v = Pi.eval(arrow_values(m, e, points[p]));
    for (const auto& [mask, c] : v.terms())
      if (popcount(mask) == 2 && !(mask >> m.ctx.n))
        rep.add("units-coisotropic", "point " + std::to_string(p), c.str(), "0");
  }
  return rep;
}

std::pair<FramedPolyvector, Section> twist_framed(const ConjugationModel& m, const FramedPolyvector& Pi,
                                                  const Section& Lambda, const Section& T) {
  FramedPolyvector PiT = Pi - exact_polyvector(m, T);
  Section LT = Lambda - delta(m, Pi, T) - Scalar(1, 2) * section_bracket(m, T, T);
  return {PiT, LT};
}

AnchorData anchor_and_rho_star(const ConjugationModel& m, const FramedPolyvector& Pi, const GroupPoint& s) {
  int n = m.ctx.n;
  if (s.Ad_inv.rows() != n) throw PointNotInGroup("point on another algebra");
  AnchorData a{s.Ad_inv - Matrix::identity(n), Matrix(n, n)};
  GroupPoint e{Matrix::identity(m.alg.rep_dim), Matrix::identity(n), Matrix::identity(n)};
  ExteriorElement v = Pi.eval(arrow_values(m, e, s));
  // conormal covector ε^j on factor 0, tangent component along factor 1
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) a.rho_star(k, j) = v.coeff((1u << j) | (1u << (n + k)));
  return a;
}

AnchorData point_quotient_anchors(int n) { return {Matrix(0, n), Matrix(0, n)}; }

RankReport rank_from_anchors(const AnchorData& a) {
  RankReport r;
  r.dim_M = a.rho.rows();
  r.rk_A = a.rho.cols();
  r.dim_im_rho = rank(a.rho);
  r.dim_im_rho_star = rank(a.rho_star);
  r.dim_sum = rank(Matrix::hstack(a.rho, a.rho_star));
  r.dim_common_kernel = r.dim_M == 0 ? 0 : nullspace(Matrix::vstack(a.rho.transpose(), a.rho_star.transpose())).cols();
  r.rank = r.dim_sum - r.rk_A;
  r.dim_stack = r.dim_M - r.rk_A;
  r.forms_agree = r.rank == r.dim_stack - r.dim_common_kernel;
  return r;
}

RankReport rank_at(const ConjugationModel& m, const FramedPolyvector& Pi, const GroupPoint& s) {
  return rank_from_anchors(anchor_and_rho_star(m, Pi, s));
}

NondegeneracyCertificate nondegenerate_from_anchors(const AnchorData& a) {
  NondegeneracyCertificate c;
  const Matrix& rho = a.rho;
  int dM = rho.rows(), n = rho.cols(), rr = rank(rho);
  Matrix fm1 = -a.rho_star.transpose();  // T^∨M → A
  const Matrix& f0 = a.rho_star;         // A^∨ → TM
  c.chain_map = rho * fm1 == f0 * rho.transpose();
  c.h_minus1_cot = dM - rr;
  c.h0_cot = n - rr;
  c.h_minus1_tan = n - rr;
  c.h0_tan = dM - rr;
  if (c.h_minus1_cot > 0) c.rank_minus1 = rank(fm1 * nullspace(rho.transpose()));
  c.rank0 = rank(Matrix::hstack(f0, rho)) - rr;
  c.quasi_iso = c.chain_map && c.h_minus1_cot == c.h_minus1_tan && c.h0_cot == c.h0_tan &&
                c.rank_minus1 == c.h_minus1_cot && c.rank0 == c.h0_cot;
  RankReport r = rank_from_anchors(a);
  c.rank = r.rank;
  c.dim_stack = r.dim_stack;
  c.consistent = !c.quasi_iso || (c.rank == 0 && c.dim_stack == 0);
  return c;
}

NondegeneracyCertificate nondegenerate_at(const ConjugationModel& m, const FramedPolyvector& Pi, const GroupPoint& s) {
  return nondegenerate_from_anchors(anchor_and_rho_star(m, Pi, s));
}

Matrix sharp(const Multivector& T, int n) {
  Matrix S(n, n);
  for (const auto& [mask, c] : T.terms()) {
    auto b = bits_of(mask);
    if (b.size() != 2) throw FrameMismatch("sharp needs a bivector");
    S(b[1], b[0]) = c;   // α = ε^i gives Σ_j T^{ij} e_j
    S(b[0], b[1]) = -c;
  }
  return S;
}

TwistRankReport rank_twist_invariance(const ConjugationModel& m, const FramedPolyvector& Pi, const Section& Lambda,
                                      const Multivector& T, const GroupPoint& s) {
  TwistRankReport out;
  int n = m.ctx.n;
  Section Ts = constant_section(m, T);
  (void)Lambda;  // Λ_T does not enter the anchors
  FramedPolyvector PiT = Pi - exact_polyvector(m, Ts);
  AnchorData a0 = anchor_and_rho_star(m, Pi, s), a1 = anchor_and_rho_star(m, PiT, s);
  out.before = rank_from_anchors(a0);
  out.after = rank_from_anchors(a1);
  if (out.before.rank != out.after.rank)
    out.report.add("rank-twist", "point", std::to_string(out.before.rank), std::to_string(out.after.rank));
  Matrix Ts_ = sharp(T, n);
  Matrix rT = a0.rho * Ts_;
  out.plus_reading = a1.rho_star == a0.rho_star + rT;
  out.minus_reading = a1.rho_star == a0.rho_star - rT;
  out.printed_reading = a1.rho_star == a0.rho + rT;
  // Φ^T − Φ = (hρ^∨, ρh)
  Matrix d0 = a1.rho_star - a0.rho_star;
  Matrix dm1 = -a1.rho_star.transpose() + a0.rho_star.transpose();
  for (int sign : {1, -1}) {
    Matrix h = Ts_ * Scalar(sign);
    if (d0 == a0.rho * h && dm1 == h * a0.rho.transpose()) {
      out.homotopy_sign = sign;
      break;
    }
  }
  if (out.homotopy_sign == 0) out.report.add("twist-homotopy", "point", "T^# is not a homotopy");
  return out;
}

}  // namespace hsw
