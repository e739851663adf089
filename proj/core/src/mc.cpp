#include "hsw/mc.hpp"

#include <string>

namespace hsw {

namespace {

void check_len(const Vec& v, int n, const char* what) {
  if (static_cast<int>(v.size()) != n)
    throw DegreeMismatch(std::string(what) + ": expected " + std::to_string(n) + " coordinates, got " +
                         std::to_string(v.size()));
}

const Scalar kHalf = Scalar::parse("1/2");

}  // namespace

ValidationReport mc_check(const CrossedModule& cm, const Vec& Lambda, const Vec& Pi) {
  check_len(Lambda, cm.A.space.dim(2), "Lambda in A_2");
  check_len(Pi, cm.G.space.dim(1), "Pi in G_1");
  ValidationReport r;
  Vec lhs = vec_add(cm.d.apply(2, Lambda), vec_scale(cm.G.br(1, Pi, 1, Pi), kHalf));
  r.expect_eq(lhs, Vec(lhs.size()), "d-lambda", "dL + 1/2[P,P]");
  Vec act = cm.act(1, Pi, 2, Lambda);
  r.expect_eq(act, Vec(act.size()), "pi-lambda", "P.L");
  return r;
}

MCElement twist(const MCElement& m, const Vec& T) {
  const auto& cm = *m.cm;
  check_len(T, cm.A.space.dim(1), "T in A_1");
  check_len(m.Lambda, cm.A.space.dim(2), "Lambda in A_2");
  check_len(m.Pi, cm.G.space.dim(1), "Pi in G_1");
  MCElement out{m.cm, m.Lambda, vec_add(m.Pi, cm.d.apply(1, T))};
  out.Lambda = vec_sub(out.Lambda, cm.act(1, m.Pi, 1, T));
  out.Lambda = vec_sub(out.Lambda, vec_scale(cm.A.br(1, T, 1, T), kHalf));
  return out;
}

Vec gauge(const Dgla& g, const Vec& m, const Vec& b, int nilpotency_bound) {
  check_len(m, g.V.dim(1), "m in V_1");
  check_len(b, g.V.dim(0), "b in V_0");
  Vec out = m;
  Vec term = vec_sub(g.br(0, b, 1, m), g.d(0, b));
  Scalar fact(1);
  for (int n = 0; !vec_is_zero(term); ++n) {
    if (n > nilpotency_bound)
      throw NotNilpotent("gauge series did not terminate within " + std::to_string(nilpotency_bound) + " terms");
    fact = fact * Scalar(n + 1);
    out = vec_add(out, vec_scale(term, Scalar(1) / fact));
    term = g.br(0, b, 1, term);
  }
  return out;
}

MCElement mc_pushforward(const Lie2Morphism& phi, const MCElement& m, bool validate) {
  if (validate) {
    auto r = check_lie2_morphism(phi);
    if (!r.ok()) throw InvalidMorphism("pushforward along an invalid morphism: " + r.findings().front().tag);
    if (!(*m.cm == *phi.source)) throw InvalidMC("MC element does not live on the morphism's source");
    auto rm = mc_check(m);
    if (!rm.ok()) throw InvalidMC("not a Maurer-Cartan element: " + rm.findings().front().tag);
  }
  MCElement out{phi.target, phi.phi1A.apply(2, m.Lambda), phi.phi1G.apply(1, m.Pi)};
  out.Lambda = vec_add(out.Lambda, vec_scale(phi.phi2.apply(1, m.Pi, 1, m.Pi), kHalf));
  return out;
}

ValidationReport mc_homotopy_transport(const Lie2Homotopy& hty, const MCElement& m) {
  ValidationReport r;
  MCElement lhs = mc_pushforward(hty.to, m, false);
  MCElement rhs = twist(mc_pushforward(hty.from, m, false), hty.h.apply(1, m.Pi));
  r.expect_eq(lhs.Lambda, rhs.Lambda, "transport-lambda", "MC(Psi)m vs MC(Phi)m twisted by h(P)");
  r.expect_eq(lhs.Pi, rhs.Pi, "transport-pi", "MC(Psi)m vs MC(Phi)m twisted by h(P)");
  return r;
}

LPComplex lp_differential(const MCElement& m) {
  auto rm = mc_check(m);
  if (!rm.ok()) throw InvalidMC("lp_differential needs a Maurer-Cartan element: " + rm.findings().front().tag);
  Dgla g = associated_dgla(*m.cm);
  Vec mv = m.as_v();
  LPComplex c{m, g.V, GradedLinearMap(g.V, g.V, 1)};
  for (int k : g.V.degrees()) {
    int n = g.V.dim(k), nt = g.V.dim(k + 1);
    if (nt == 0) continue;
    Matrix blk(nt, n);
    for (int i = 0; i < n; ++i) {
      Vec x = unit_vec(n, i);
      blk.set_col(i, vec_add(g.d(k, x), g.br(1, mv, k, x)));
    }
    if (!blk.is_zero()) c.diff.set_block(k, blk);
  }
  return c;
}

ValidationReport check_lp_square_zero(const LPComplex& c) {
  ValidationReport r;
  for (int k : c.V.degrees()) {
    Matrix sq = c.diff.block(k + 1) * c.diff.block(k);
    if (!sq.is_zero()) r.add("lp-d-squared", "V_" + std::to_string(k), sq.str(), "0");
  }
  return r;
}

std::map<int, int> lp_cohomology(const MCElement& m) {
  LPComplex c = lp_differential(m);
  std::map<int, int> out;
  for (int k : c.V.degrees()) {
    int n = c.V.dim(k);
    int rk_out = c.V.dim(k + 1) ? rank(c.diff.block(k)) : 0;
    int rk_in = c.V.dim(k - 1) ? rank(c.diff.block(k - 1)) : 0;
    out[k] = n - rk_out - rk_in;
  }
  return out;
}

bool twist_witness_check(const MCElement& m1, const MCElement& m2, const Vec& T) {
  if (!(*m1.cm == *m2.cm)) return false;
  if (static_cast<int>(T.size()) != m1.cm->A.space.dim(1)) return false;
  return twist(m1, T) == m2;
}

std::optional<Vec> twist_search(const MCElement& m1, const MCElement& m2, const std::vector<Scalar>& values,
                                long max_tries) {
  if (values.empty()) return std::nullopt;
  int n = m1.cm->A.space.dim(1);
  std::vector<size_t> idx(n, 0);
  for (long tries = 0; tries < max_tries; ++tries) {
    Vec T(n);
    for (int i = 0; i < n; ++i) T[i] = values[idx[i]];
    if (twist_witness_check(m1, m2, T)) return T;
    int i = 0;
    while (i < n && ++idx[i] == values.size()) idx[i++] = 0;
    if (i == n) break;
  }
  return std::nullopt;
}

std::shared_ptr<const CrossedModule> random_mc_crossed_module(Rng& rng) {
  RandomCmParams p{-1, 3, 6};
  p.force_pair = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  return std::make_shared<const CrossedModule>(random_crossed_module(rng, p));
}

MCElement random_mc(Rng& rng, std::shared_ptr<const CrossedModule> cm) {
  const auto& c = *cm;
  int na = c.A.space.dim(2), ng = c.G.space.dim(1);
  MCElement m{cm, Vec(na), Vec(ng)};
  Matrix d2 = na ? c.d.block(2) : Matrix(c.G.space.dim(2), 0);
  Matrix K = nullspace(d2);
  for (int attempt = 0; attempt < 4 && ng > 0; ++attempt) {
    Vec pi = random_vec(rng, ng);
    Vec rhs = vec_scale(c.G.br(1, pi, 1, pi), Scalar::parse("-1/2"));
    std::optional<Vec> lam0 = na ? solve(d2, rhs) : (vec_is_zero(rhs) ? std::optional<Vec>(Vec()) : std::nullopt);
    if (!lam0) continue;
    // Π·(Λ₀ + K c) = 0, a linear condition on c
    Vec base = c.act(1, pi, 2, *lam0);
    Matrix M(static_cast<int>(base.size()), K.cols());
    for (int j = 0; j < K.cols(); ++j) M.set_col(j, c.act(1, pi, 2, K.col(j)));
    Vec neg = vec_scale(base, -1);
    auto coeff = solve(M, neg);
    if (!coeff) continue;
    Vec lam = *lam0;
    // add a random kernel element that keeps Π·Λ = 0
    Matrix KM = nullspace(M);
    Vec extra = random_vec(rng, KM.cols());
    Vec cvec = vec_add(*coeff, KM * extra);
    if (K.cols()) lam = vec_add(lam, K * cvec);
    m.Pi = pi;
    m.Lambda = lam;
    break;
  }
  if (vec_is_zero(m.Pi) && K.cols()) m.Lambda = K * random_vec(rng, K.cols());
  return twist(m, random_vec(rng, c.A.space.dim(1)));
}

}  // namespace hsw
