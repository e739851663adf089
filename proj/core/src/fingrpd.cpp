#include "hsw/fingrpd.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hsw {

int FiniteGroupoid::compose(int g, int h) const {
  auto it = comp.find({g, h});
  if (it == comp.end()) throw std::out_of_range("arrows " + arr_name(g) + ", " + arr_name(h) + " are not composable");
  return it->second;
}

std::string FiniteGroupoid::obj_name(int m) const {
  return m >= 0 && m < static_cast<int>(obj_names.size()) ? obj_names[m] : "m" + std::to_string(m);
}

std::string FiniteGroupoid::arr_name(int g) const {
  return g >= 0 && g < static_cast<int>(arr_names.size()) ? arr_names[g] : "g" + std::to_string(g);
}

ValidationReport check_groupoid(const FiniteGroupoid& g) {
  ValidationReport r;
  auto sz = [](const std::vector<int>& v) { return static_cast<int>(v.size()); };
  if (sz(g.src) != g.n_arr || sz(g.tgt) != g.n_arr || sz(g.inv) != g.n_arr || sz(g.unit) != g.n_obj) {
    r.add("shape", "structure maps", "table sizes disagree with object/arrow counts");
    return r;
  }
  auto in_arr = [&](int a) { return a >= 0 && a < g.n_arr; };
  auto in_obj = [&](int m) { return m >= 0 && m < g.n_obj; };
  for (int a = 0; a < g.n_arr; ++a)
    if (!in_obj(g.src[a]) || !in_obj(g.tgt[a]) || !in_arr(g.inv[a])) {
      r.add("shape", g.arr_name(a), "structure map out of range");
      return r;
    }
  for (int m = 0; m < g.n_obj; ++m) {
    int u = g.unit[m];
    if (!in_arr(u) || g.src[u] != m || g.tgt[u] != m) r.add("unit", g.obj_name(m), "unit is not a loop at the object");
  }
  if (!r.ok()) return r;
  for (const auto& [ab, c] : g.comp) {
    auto [a, b] = ab;
    if (!in_arr(a) || !in_arr(b) || !in_arr(c)) {
      r.add("shape", "comp", "arrow index out of range");
      return r;
    }
    if (!g.composable(a, b)) r.add("comp-domain", "(" + g.arr_name(a) + ", " + g.arr_name(b) + ")", "defined on a non-composable pair");
  }
  auto get = [&](int a, int b) {
    auto it = g.comp.find({a, b});
    return it == g.comp.end() ? -1 : it->second;
  };
  for (int a = 0; a < g.n_arr; ++a)
    for (int b = 0; b < g.n_arr; ++b) {
      if (!g.composable(a, b)) continue;
      std::string loc = "(" + g.arr_name(a) + ", " + g.arr_name(b) + ")";
      int c = get(a, b);
      if (c < 0) {
        r.add("comp-domain", loc, "composable pair without a composite");
        continue;
      }
      if (g.src[c] != g.src[b] || g.tgt[c] != g.tgt[a]) r.add("comp-ends", loc, g.arr_name(c));
    }
  for (int a = 0; a < g.n_arr; ++a)
    for (int b = 0; b < g.n_arr; ++b) {
      if (!g.composable(a, b)) continue;
      int ab = get(a, b);
      for (int c = 0; c < g.n_arr; ++c) {
        if (!g.composable(b, c) || ab < 0) continue;
        int bc = get(b, c);
        int l = get(ab, c), rr = bc < 0 ? -1 : get(a, bc);
        if (l != rr || l < 0)
          r.add("assoc", "(" + g.arr_name(a) + ", " + g.arr_name(b) + ", " + g.arr_name(c) + ")", g.arr_name(l), g.arr_name(rr));
      }
    }
  for (int a = 0; a < g.n_arr; ++a) {
    if (get(g.unit[g.tgt[a]], a) != a || get(a, g.unit[g.src[a]]) != a) r.add("unit-law", g.arr_name(a));
    int i = g.inv[a];
    if (g.src[i] != g.tgt[a] || get(a, i) != g.unit[g.tgt[a]] || get(i, a) != g.unit[g.src[a]])
      r.add("inverse", g.arr_name(a), g.arr_name(i));
  }
  return r;
}

namespace {

// group given by a multiplication table with identity 0
struct Group {
  std::vector<std::vector<int>> mul;
  int size() const { return static_cast<int>(mul.size()); }
  int inv(int a) const {
    for (int b = 0; b < size(); ++b)
      if (mul[a][b] == 0) return b;
    throw std::logic_error("group element without inverse");
  }
};

Group cyclic(int k) {
  Group g;
  g.mul.assign(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) g.mul[a][b] = (a + b) % k;
  return g;
}

Group s3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  Group g;
  g.mul.assign(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{perms[a][perms[b][0]], perms[a][perms[b][1]], perms[a][perms[b][2]]};
      g.mul[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return g;
}

FiniteGroupoid transitive(int n, const Group& G) {
  FiniteGroupoid g;
  int k = G.size();
  g.n_obj = n;
  g.n_arr = n * n * k;
  auto id = [&](int x, int a, int y) { return (x * k + a) * n + y; };
  g.src.resize(g.n_arr);
  g.tgt.resize(g.n_arr);
  g.inv.resize(g.n_arr);
  g.unit.resize(n);
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < k; ++a)
      for (int y = 0; y < n; ++y) {
        int i = id(x, a, y);
        g.tgt[i] = x;
        g.src[i] = y;
        g.inv[i] = id(y, G.inv(a), x);
        for (int b = 0; b < k; ++b)
          for (int z = 0; z < n; ++z) g.comp[{i, id(y, b, z)}] = id(x, G.mul[a][b], z);
      }
  for (int x = 0; x < n; ++x) g.unit[x] = id(x, 0, x);
  return g;
}

}  // namespace

FiniteGroupoid unit_groupoid(int n) {
  FiniteGroupoid g;
  g.n_obj = g.n_arr = n;
  for (int m = 0; m < n; ++m) {
    g.src.push_back(m);
    g.tgt.push_back(m);
    g.unit.push_back(m);
    g.inv.push_back(m);
    g.comp[{m, m}] = m;
  }
  return g;
}

FiniteGroupoid pair_groupoid(int n) { return transitive(n, cyclic(1)); }
FiniteGroupoid cyclic_group_groupoid(int n) { return transitive(1, cyclic(n)); }
FiniteGroupoid transitive_groupoid(int n, int k) { return transitive(n, k == 0 ? s3() : cyclic(k)); }

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  FiniteGroupoid g = a;
  g.obj_names.clear();
  g.arr_names.clear();
  int no = a.n_obj, na = a.n_arr;
  g.n_obj += b.n_obj;
  g.n_arr += b.n_arr;
  for (int i = 0; i < b.n_arr; ++i) {
    g.src.push_back(b.src[i] + no);
    g.tgt.push_back(b.tgt[i] + no);
    g.inv.push_back(b.inv[i] + na);
  }
  for (int m = 0; m < b.n_obj; ++m) g.unit.push_back(b.unit[m] + na);
  for (const auto& [xy, z] : b.comp) g.comp[{xy.first + na, xy.second + na}] = z + na;
  return g;
}

FiniteGroupoid relabel(const FiniteGroupoid& g, const std::vector<int>& op, const std::vector<int>& ap) {
  FiniteGroupoid h;
  h.n_obj = g.n_obj;
  h.n_arr = g.n_arr;
  h.src.resize(g.n_arr);
  h.tgt.resize(g.n_arr);
  h.inv.resize(g.n_arr);
  h.unit.resize(g.n_obj);
  for (int a = 0; a < g.n_arr; ++a) {
    h.src[ap[a]] = op[g.src[a]];
    h.tgt[ap[a]] = op[g.tgt[a]];
    h.inv[ap[a]] = ap[g.inv[a]];
  }
  for (int m = 0; m < g.n_obj; ++m) h.unit[op[m]] = ap[g.unit[m]];
  for (const auto& [xy, z] : g.comp) h.comp[{ap[xy.first], ap[xy.second]}] = ap[z];
  return h;
}

FiniteGroupoid random_groupoid(std::mt19937_64& rng, int max_obj, int max_arr) {
  static const int kGroupSizes[] = {1, 1, 2, 3, 0};
  FiniteGroupoid g;
  for (int tries = 0; tries < 20; ++tries) {
    int n = std::uniform_int_distribution<int>(1, 3)(rng);
    int k = kGroupSizes[std::uniform_int_distribution<int>(0, 4)(rng)];
    int arrows = n * n * (k == 0 ? 6 : k);
    if (g.n_obj + n > max_obj || g.n_arr + arrows > max_arr) continue;
    g = g.n_obj ? disjoint_union(g, transitive_groupoid(n, k)) : transitive_groupoid(n, k);
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) break;
  }
  if (g.n_obj == 0) g = unit_groupoid(1);
  std::vector<int> op(g.n_obj), ap(g.n_arr);
  std::iota(op.begin(), op.end(), 0);
  std::iota(ap.begin(), ap.end(), 0);
  std::shuffle(op.begin(), op.end(), rng);
  std::shuffle(ap.begin(), ap.end(), rng);
  return relabel(g, op, ap);
}

Nerve::Nerve(const FiniteGroupoid& g, int max_level) {
  std::vector<std::vector<int>> by_target(g.n_obj);
  for (int a = 0; a < g.n_arr; ++a) by_target[g.tgt[a]].push_back(a);
  levels_.resize(max_level + 1);
  for (int m = 0; m < g.n_obj; ++m) levels_[0].push_back({m});
  if (max_level >= 1)
    for (int a = 0; a < g.n_arr; ++a) levels_[1].push_back({a});
  for (int p = 2; p <= max_level; ++p)
    for (const auto& t : levels_[p - 1])
      for (int a : by_target[g.src[t.back()]]) {
        auto u = t;
        u.push_back(a);
        levels_[p].push_back(std::move(u));
      }
  index_.resize(max_level + 1);
  for (int p = 0; p <= max_level; ++p)
    for (size_t i = 0; i < levels_[p].size(); ++i) index_[p][levels_[p][i]] = static_cast<int>(i);
}

int Nerve::index(int p, const std::vector<int>& t) const {
  auto it = index_.at(p).find(t);
  return it == index_[p].end() ? -1 : it->second;
}

std::vector<std::vector<int>> nerve(const FiniteGroupoid& g, int p) { return Nerve(g, p).level(p); }

std::vector<SparseRow> coboundary_rows(const FiniteGroupoid& g, const Nerve& n, int p) {
  if (p + 1 > n.max_level()) throw std::out_of_range("nerve not built to level " + std::to_string(p + 1));
  std::vector<SparseRow> rows;
  rows.reserve(n.size(p + 1));
  for (const auto& sg : n.level(p + 1)) {
    std::map<int, Scalar> acc;
    auto add = [&](const std::vector<int>& face, int sign) {
      int j = n.index(p, face);
      acc[j] += Scalar(sign);
    };
    if (p == 0) {
      add({g.src[sg[0]]}, 1);
      add({g.tgt[sg[0]]}, -1);
    } else {
      add(std::vector<int>(sg.begin() + 1, sg.end()), 1);
      for (int j = 1; j <= p; ++j) {
        std::vector<int> f;
        for (int i = 0; i <= p; ++i) {
          if (i == j) continue;
          f.push_back(i == j - 1 ? g.compose(sg[j - 1], sg[j]) : sg[i]);
        }
        add(f, (j % 2) ? -1 : 1);
      }
      add(std::vector<int>(sg.begin(), sg.end() - 1), (p % 2) ? 1 : -1);
    }
    SparseRow row;
    for (auto& [j, v] : acc)
      if (!v.is_zero()) row.emplace_back(j, v);
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix coboundary_matrix(const FiniteGroupoid& g, const Nerve& n, int p) {
  auto rows = coboundary_rows(g, n, p);
  Matrix m(static_cast<int>(rows.size()), n.size(p));
  for (size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, v] : rows[i]) m(static_cast<int>(i), j) = v;
  return m;
}

Cochain coboundary(const FiniteGroupoid& g, const Nerve& n, const Cochain& c) {
  if (static_cast<int>(c.values.size()) != n.size(c.level)) throw ShapeMismatch("cochain length does not match the nerve");
  auto rows = coboundary_rows(g, n, c.level);
  Cochain out{c.level + 1, Vec(rows.size())};
  for (size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, v] : rows[i]) out.values[i].add_mul(v, c.values[j]);
  return out;
}

Cochain coboundary(const FiniteGroupoid& g, const Cochain& c) { return coboundary(g, Nerve(g, c.level + 1), c); }

std::vector<int> cohomology_dims(const FiniteGroupoid& g, int max_level) {
  Nerve n(g, max_level + 1);
  std::vector<int> rk(max_level + 1);
  for (int p = 0; p <= max_level; ++p) {
    SparseRref s(n.size(p));
    for (auto& row : coboundary_rows(g, n, p)) s.add(std::move(row));
    rk[p] = s.rank();
  }
  std::vector<int> out;
  for (int p = 0; p <= max_level; ++p) out.push_back(n.size(p) - rk[p] - (p ? rk[p - 1] : 0));
  return out;
}

PullbackGroupoid pullback_groupoid(const FiniteGroupoid& g, const std::vector<int>& phi) {
  std::vector<std::vector<int>> fib(g.n_obj);
  for (size_t x = 0; x < phi.size(); ++x) {
    if (phi[x] < 0 || phi[x] >= g.n_obj) throw NotSurjective("map X -> M has a value outside M");
    fib[phi[x]].push_back(static_cast<int>(x));
  }
  for (int m = 0; m < g.n_obj; ++m)
    if (fib[m].empty()) throw NotSurjective("object " + g.obj_name(m) + " has an empty fibre");
  PullbackGroupoid pb;
  pb.phi = phi;
  auto& h = pb.g;
  h.n_obj = static_cast<int>(phi.size());
  for (int a = 0; a < g.n_arr; ++a)
    for (int x : fib[g.tgt[a]])
      for (int y : fib[g.src[a]]) {
        pb.index[{x, a, y}] = static_cast<int>(pb.triples.size());
        pb.triples.emplace_back(x, a, y);
        pb.proj.push_back(a);
        h.tgt.push_back(x);
        h.src.push_back(y);
      }
  h.n_arr = static_cast<int>(pb.triples.size());
  for (int x = 0; x < h.n_obj; ++x) h.unit.push_back(pb.index.at({x, g.unit[phi[x]], x}));
  std::vector<std::vector<int>> by_target(h.n_obj);
  for (int i = 0; i < h.n_arr; ++i) {
    auto [x, a, y] = pb.triples[i];
    h.inv.push_back(pb.index.at({y, g.inv[a], x}));
    by_target[x].push_back(i);
  }
  for (int i = 0; i < h.n_arr; ++i) {
    auto [x, a, y] = pb.triples[i];
    for (int j : by_target[y]) {
      auto [y2, b, z] = pb.triples[j];
      h.comp[{i, j}] = pb.index.at({x, g.compose(a, b), z});
    }
  }
  return pb;
}

Matrix multiplicative_functions(const FiniteGroupoid& g) {
  Nerve n(g, 2);
  SparseRref s(g.n_arr);
  for (auto& row : coboundary_rows(g, n, 1)) s.add(std::move(row));
  return Matrix::from_cols(s.kernel_basis(), g.n_arr);
}

TwoTermGroupoidComplex truncated_two_term(const FiniteGroupoid& g) {
  TwoTermGroupoidComplex c;
  c.dim_c0 = g.n_obj;
  c.z_basis = multiplicative_functions(g);
  Matrix d0 = coboundary_matrix(g, Nerve(g, 1), 0);
  auto coords = solve(c.z_basis, d0);
  if (!coords) throw std::logic_error("image of the coboundary is not multiplicative");
  c.delta = *coords;
  int r = rank(d0);
  c.dim_ker = g.n_obj - r;
  c.dim_coker = c.z_basis.cols() - r;
  return c;
}

ValidationReport check_covered_surjection(const FiniteGroupoid& g, int n_x, const CoveredSurjection& cs) {
  ValidationReport r;
  if (static_cast<int>(cs.phi.size()) != n_x) r.add("shape", "phi", "length differs from |X|");
  std::vector<int> hit(g.n_obj, 0);
  for (int m : cs.phi) {
    if (m < 0 || m >= g.n_obj) {
      r.add("shape", "phi", "value outside M");
      return r;
    }
    hit[m] = 1;
  }
  for (int m = 0; m < g.n_obj; ++m)
    if (!hit[m]) r.add("surjective", g.obj_name(m), "empty fibre");
  size_t k = cs.cover.size();
  if (cs.sections.size() != k || cs.weights.size() != k) {
    r.add("shape", "cover", "cover, sections and weights have different lengths");
    return r;
  }
  std::vector<Scalar> total(g.n_obj);
  for (size_t i = 0; i < k; ++i) {
    std::string si = "U" + std::to_string(i);
    if (static_cast<int>(cs.sections[i].size()) != g.n_obj || static_cast<int>(cs.weights[i].size()) != g.n_obj) {
      r.add("shape", si, "section or weight table has the wrong length");
      continue;
    }
    std::vector<int> in(g.n_obj, 0);
    for (int m : cs.cover[i]) {
      if (m < 0 || m >= g.n_obj) {
        r.add("shape", si, "cover element outside M");
        continue;
      }
      in[m] = 1;
    }
    for (int m = 0; m < g.n_obj; ++m) {
      int x = cs.sections[i][m];
      if (in[m] && (x < 0 || x >= n_x || cs.phi[x] != m)) r.add("section", si + "@" + g.obj_name(m), "phi(sigma(m)) != m");
      if (!in[m] && !cs.weights[i][m].is_zero()) r.add("support", si + "@" + g.obj_name(m), cs.weights[i][m].str(), "0");
      total[m] += cs.weights[i][m];
    }
  }
  for (int m = 0; m < g.n_obj; ++m)
    if (!(total[m] == Scalar(1))) r.add("partition", g.obj_name(m), total[m].str(), "1");
  return r;
}

CoveredSurjection random_covered_surjection(std::mt19937_64& rng, const FiniteGroupoid& g, int extra_points,
                                            int max_sets) {
  CoveredSurjection cs;
  int nx = g.n_obj + extra_points;
  std::vector<int> phi(nx);
  for (int m = 0; m < g.n_obj; ++m) phi[m] = m;
  for (int x = g.n_obj; x < nx; ++x) phi[x] = std::uniform_int_distribution<int>(0, g.n_obj - 1)(rng);
  std::vector<int> perm(nx);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  cs.phi.resize(nx);
  for (int x = 0; x < nx; ++x) cs.phi[perm[x]] = phi[x];
  std::vector<std::vector<int>> fib(g.n_obj);
  for (int x = 0; x < nx; ++x) fib[cs.phi[x]].push_back(x);

  int k = std::uniform_int_distribution<int>(1, max_sets)(rng);
  cs.cover.assign(k, {});
  cs.sections.assign(k, std::vector<int>(g.n_obj, -1));
  cs.weights.assign(k, Vec(g.n_obj));
  for (int m = 0; m < g.n_obj; ++m) {
    std::vector<int> sets;
    while (sets.empty())
      for (int i = 0; i < k; ++i)
        if (std::uniform_int_distribution<int>(0, 1)(rng)) sets.push_back(i);
    Scalar sum(0);
    std::vector<Scalar> w;
    for (size_t t = 0; t < sets.size(); ++t) {
      w.emplace_back(std::uniform_int_distribution<int>(1, 4)(rng));
      sum += w.back();
    }
    for (size_t t = 0; t < sets.size(); ++t) {
      int i = sets[t];
      cs.cover[i].push_back(m);
      cs.sections[i][m] = fib[m][std::uniform_int_distribution<size_t>(0, fib[m].size() - 1)(rng)];
      cs.weights[i][m] = w[t] / sum;
    }
  }
  return cs;
}

int SectionMaps::at_arrow(int gamma) const {
  int v = sigma_hat.at(gamma);
  if (v < 0) throw DomainViolation("arrow " + std::to_string(gamma) + " leaves the cover sets");
  return v;
}

int SectionMaps::at_point(int x) const {
  int v = tau.at(x);
  if (v < 0) throw DomainViolation("point " + std::to_string(x) + " lies over an object outside the cover set");
  return v;
}

SectionMaps section_maps(const FiniteGroupoid& g, const PullbackGroupoid& pb, const CoveredSurjection& cs, int i, int j) {
  SectionMaps s;
  const auto& si = cs.sections.at(i);
  const auto& sj = cs.sections.at(j);
  s.sigma_hat.assign(g.n_arr, -1);
  for (int a = 0; a < g.n_arr; ++a) {
    int x = si[g.tgt[a]], y = sj[g.src[a]];
    if (x >= 0 && y >= 0) s.sigma_hat[a] = pb.index.at({x, a, y});
  }
  s.tau.assign(cs.phi.size(), -1);
  for (size_t x = 0; x < cs.phi.size(); ++x) {
    int m = cs.phi[x];
    if (si[m] >= 0) s.tau[x] = pb.index.at({static_cast<int>(x), g.unit[m], si[m]});
  }
  return s;
}

PartitionInverse partition_inverse(const FiniteGroupoid& g, const CoveredSurjection& cs) {
  int nx = static_cast<int>(cs.phi.size());
  auto chk = check_covered_surjection(g, nx, cs);
  if (!chk.ok()) throw InvalidCover(chk.findings().front().tag + " at " + chk.findings().front().location);
  PartitionInverse pi{pullback_groupoid(g, cs.phi), {}, {}, {}, {}, {}};
  const auto& pb = pi.pb;
  int na = pb.g.n_arr;
  pi.Phi0 = Matrix(nx, g.n_obj);
  for (int x = 0; x < nx; ++x) pi.Phi0(x, cs.phi[x]) = 1;
  pi.Phi1 = Matrix(na, g.n_arr);
  for (int a = 0; a < na; ++a) pi.Phi1(a, pb.proj[a]) = 1;

  int k = static_cast<int>(cs.cover.size());
  pi.I0 = Matrix(g.n_obj, nx);
  for (int i = 0; i < k; ++i)
    for (int m : cs.cover[i]) pi.I0(m, cs.sections[i][m]) += cs.weights[i][m];
  pi.I1 = Matrix(g.n_arr, na);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      SectionMaps s = section_maps(g, pb, cs, i, j);
      for (int a = 0; a < g.n_arr; ++a)
        if (s.sigma_hat[a] >= 0) pi.I1(a, s.sigma_hat[a]) += cs.weights[i][g.tgt[a]] * cs.weights[j][g.src[a]];
    }
  pi.H = Matrix(nx, na);
  for (int i = 0; i < k; ++i) {
    SectionMaps s = section_maps(g, pb, cs, i, i);
    for (int x = 0; x < nx; ++x)
      if (s.tau[x] >= 0) pi.H(x, s.tau[x]) += cs.weights[i][cs.phi[x]];
  }
  return pi;
}

ValidationReport check_partition_inverse(const FiniteGroupoid& g, const PartitionInverse& pi) {
  ValidationReport r;
  const auto& X = pi.pb.g;
  Nerve ng(g, 2), nx(X, 2);
  Matrix d0 = coboundary_matrix(g, ng, 0), d1 = coboundary_matrix(g, ng, 1);
  Matrix d0x = coboundary_matrix(X, nx, 0);
  Matrix zx = multiplicative_functions(X), zg = multiplicative_functions(g);

  r.expect_eq(d0 * pi.I0, pi.I1 * d0x, "chain-map", "delta I0 = I1 delta");
  if (zx.cols()) r.expect_eq(d1 * (pi.I1 * zx), Matrix(d1.rows(), zx.cols()), "multiplicative", "I1 on Z(Gamma[X])");
  r.expect_eq(pi.I0 * pi.Phi0, Matrix::identity(g.n_obj), "left-inverse-0", "I0 Phi0*");
  if (zg.cols()) r.expect_eq(pi.I1 * (pi.Phi1 * zg), zg, "left-inverse-1", "I1 Phi1* on Z(Gamma)");
  Matrix lhs0 = pi.Phi0 * pi.I0 - Matrix::identity(X.n_obj);
  r.expect_eq(lhs0, pi.H * d0x, "homotopy-0", "Phi0* I0 - id = H delta");
  if (zx.cols()) {
    Matrix lhs1 = (pi.Phi1 * pi.I1 - Matrix::identity(X.n_arr)) * zx;
    r.expect_eq(lhs1, d0x * (pi.H * zx), "homotopy-1", "Phi1* I1 - id = delta H on Z");
  }
  return r;
}

}  // namespace hsw
