#include <bit>
#include <filesystem>
#include <limits>

#include "cli.hpp"

namespace hsw::cli {

namespace {

struct QpOptions {
  std::string algebra = "sl2";
  std::string points;
  int samples = 10;
  std::string model = "conjugation";
  std::string twist;
  int expect_rank = std::numeric_limits<int>::min();
  bool check = false, rank = false, nondeg = false;
};

MatrixLieAlgebra load_algebra(const std::string& a) {
  if (std::filesystem::exists(a)) return algebra_from_json(read_json_file(a));
  if (a == "sl2") return sl2();
  if (a == "so3") return so3();
  if (a.rfind("abelian", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(a.substr(7));
    } catch (const std::exception&) {
    }
    if (n >= 1 && n <= 6) return abelian(n);
  }
  throw SchemaError("unknown algebra '" + a + "' (sl2, so3, abelianN or a lie_algebra file)");
}

std::string rank_str(const RankReport& r) {
  return "rank " + std::to_string(r.rank) + " (im ρ " + std::to_string(r.dim_im_rho) + ", im ρ* " +
         std::to_string(r.dim_im_rho_star) + ", sum " + std::to_string(r.dim_sum) + ", rk A " + std::to_string(r.rk_A) +
         ")";
}

struct Loaded {
  MatrixLieAlgebra alg;
  std::vector<GroupPoint> pts;
};

Loaded load(Context& ctx, const QpOptions& o) {
  Loaded l{load_algebra(o.algebra), {}};
  ctx.report.add(check_algebra(l.alg), "algebra");
  ctx.report.params["algebra"] = l.alg.name;
  if (!o.points.empty()) {
    for (const auto& g : points_from_json(read_json_file(o.points))) l.pts.push_back(make_point(l.alg, g));
    ctx.report.params["points"] = o.points;
  } else {
    Rng rng = ctx.rng();
    for (int i = 0; i < o.samples; ++i) l.pts.push_back(random_point(l.alg, rng));
    ctx.report.params["samples"] = o.samples;
    ctx.report.params["seed"] = ctx.cfg.seed;
  }
  if (l.pts.empty()) throw SchemaError("no sample points");
  return l;
}

// arrows (p_i, p_{i+1}), so every point is used as an arrow and as a base point
std::vector<ArrowPoint> arrows_of(const std::vector<GroupPoint>& pts) {
  std::vector<ArrowPoint> a;
  for (size_t i = 0; i < pts.size(); ++i) a.push_back({pts[i], pts[(i + 1) % pts.size()]});
  return a;
}

void run_point_model(Context& ctx, const QpOptions& o, int n) {
  AnchorData a = point_quotient_anchors(n);
  ctx.report.params["model"] = "point";
  ctx.report.params["dim_g"] = n;
  if (o.rank) {
    RankReport r = rank_from_anchors(a);
    ctx.report.result["rank"] = r.rank;
    ctx.report.result["dim_stack"] = r.dim_stack;
    if (o.expect_rank != std::numeric_limits<int>::min() && r.rank != o.expect_rank)
      ctx.report.fail("rank", "point", std::to_string(r.rank), std::to_string(o.expect_rank));
  }
  if (o.nondeg) {
    NondegeneracyCertificate c = nondegenerate_from_anchors(a);
    ctx.report.result["nondegenerate"] = c.quasi_iso;
    ctx.report.result["dim_stack"] = c.dim_stack;
    if (!c.quasi_iso)
      ctx.report.fail("degenerate", "point", "dim X = " + std::to_string(c.dim_stack), "non-degenerate needs dim X = 0");
  }
}

void run_qp(Context& ctx, const QpOptions& o) {
  MatrixLieAlgebra alg = load_algebra(o.algebra);
  if (o.model == "point") {
    run_point_model(ctx, o, alg.n);
    return;
  }
  Loaded l = load(ctx, o);
  if (ctx.report.violations) return;
  ConjugationModel m = conjugation_model(l.alg);
  FramedPolyvector Pi = amm_bivector(m);
  Section Lambda = constant_section(m, cartan_trivector(l.alg));
  if (o.check) {
    ctx.report.add(check_quasi_poisson(m, Pi, Lambda, arrows_of(l.pts)), "amm");
    ctx.report.add(check_units_coisotropic(m, Pi, l.pts), "amm");
  }
  if (o.rank) {
    json ranks = json::array();
    for (size_t i = 0; i < l.pts.size(); ++i) {
      RankReport r = rank_at(m, Pi, l.pts[i]);
      ranks.push_back(r.rank);
      std::string loc = "point " + std::to_string(i);
      if (!r.forms_agree) ctx.report.fail("rank-forms", loc, rank_str(r));
      if (o.expect_rank != std::numeric_limits<int>::min() && r.rank != o.expect_rank)
        ctx.report.fail("rank", loc, std::to_string(r.rank), std::to_string(o.expect_rank));
      // the orbit through s, sampled by conjugating with the next point
      const GroupPoint& g = l.pts[(i + 1) % l.pts.size()];
      GroupPoint c = point_product(l.alg, point_product(l.alg, g, l.pts[i]), point_inverse(l.alg, g));
      RankReport rc = rank_at(m, Pi, c);
      if (rc.rank != r.rank) ctx.report.fail("orbit-constancy", loc, rank_str(r), rank_str(rc));
    }
    ctx.report.result["ranks"] = ranks;
  }
  if (o.nondeg) {
    json nd = json::array();
    for (size_t i = 0; i < l.pts.size(); ++i) {
      NondegeneracyCertificate c = nondegenerate_at(m, Pi, l.pts[i]);
      nd.push_back(c.quasi_iso);
      std::string loc = "point " + std::to_string(i);
      if (!c.consistent) ctx.report.fail("nondeg-consistency", loc);
      if (!c.quasi_iso) ctx.report.fail("degenerate", loc, "dim X = " + std::to_string(c.dim_stack));
    }
    ctx.report.result["nondegenerate"] = nd;
  }
  if (!o.twist.empty()) {
    Multivector T = multivector_from_json(read_json_file(o.twist));
    if (T.n() != l.alg.n) throw SchemaError("twist lives in ∧²g with dim g = " + std::to_string(l.alg.n));
    for (const auto& [mask, c] : T.terms())
      if (std::popcount(mask) != 2) throw SchemaError("twist must be a bivector");
    auto [PT, LT] = twist_framed(m, Pi, Lambda, constant_section(m, T));
    ctx.report.add(check_quasi_poisson(m, PT, LT, arrows_of(l.pts)), "twisted");
    json readings = json::array();
    for (size_t i = 0; i < l.pts.size(); ++i) {
      TwistRankReport r = rank_twist_invariance(m, Pi, Lambda, T, l.pts[i]);
      ctx.report.add(r.report, "twist-rank");
      readings.push_back({{"plus", r.plus_reading},
                          {"minus", r.minus_reading},
                          {"printed", r.printed_reading},
                          {"homotopy_sign", r.homotopy_sign}});
    }
    ctx.report.result["rho_star_readings"] = readings;
  }
}

void add_common(CLI::App* c, QpOptions& o) {
  c->add_option("--algebra", o.algebra, "sl2, so3, abelianN or a lie_algebra file")->capture_default_str();
  c->add_option("--points", o.points, "points file (random points from --seed when omitted)")
      ->check(CLI::ExistingFile);
  c->add_option("--samples", o.samples, "number of random points")->capture_default_str()->check(CLI::Range(1, 1000));
}

}  // namespace

void add_qp(CLI::App& app, Context& ctx) {
  auto* g = app.add_subcommand("qp", "quasi-Poisson structures on matrix groups");
  g->require_subcommand(1);

  auto alg = std::make_shared<std::string>("sl2");
  auto* c = leaf(g, ctx, "cartan", "Cartan trivector ¼K(x,[y,z]) with indices raised", [&ctx, alg] {
    MatrixLieAlgebra a = load_algebra(*alg);
    ctx.report.add(check_algebra(a));
    if (ctx.report.violations) return;
    ctx.produce("trivector", to_json(cartan_trivector(a)));
  });
  c->add_option("--algebra", *alg, "sl2, so3, abelianN or a lie_algebra file")->capture_default_str();
  add_out(c, ctx);

  auto dalg = std::make_shared<std::string>("sl2");
  c = leaf(g, ctx, "double", "Manin quasi-triple of the double g ⊕ g", [&ctx, dalg] {
    MatrixLieAlgebra a = load_algebra(*dalg);
    ctx.report.add(check_algebra(a), "algebra");
    if (ctx.report.violations) return;
    ManinQuasiTriple q = double_quasitriple(a);
    ctx.report.add(check_quasi_triple(q), "triple");
    auto [p, n] = signature(q.d.K);
    ctx.report.result["signature"] = {p, n};
    Multivector phi = phi_from_pairing(q), cartan = cartan_trivector(a);
    if (!(phi == cartan)) ctx.report.fail("phi-is-cartan", "∧³g", to_json(phi).dump(), to_json(cartan).dump());
  });
  c->add_option("--algebra", *dalg, "sl2, so3, abelianN or a lie_algebra file")->capture_default_str();

  struct Variant {
    const char* name;
    const char* desc;
    bool check, rank, nondeg;
  };
  for (Variant s : {Variant{"amm", "AMM structure on G⋉G: any of --check --rank --nondeg --twist", false, false, false},
                 Variant{"check", "½[Π,Π] = ←Λ − →Λ, δ_ΠΛ = 0 and coisotropic units", true, false, false},
                 Variant{"rank", "rank at each point and along conjugation orbits", false, true, false},
                 Variant{"nondeg", "cotangent-to-tangent quasi-isomorphism at each point", false, false, true},
                 Variant{"twist", "twist by a bivector T: MC identities and rank invariance", false, false, false}}) {
    auto o = std::make_shared<QpOptions>();
    o->check = s.check;
    o->rank = s.rank;
    o->nondeg = s.nondeg;
    std::string name = s.name;
    c = leaf(g, ctx, name, s.desc, [&ctx, o, name] {
      if (name == "amm" && !o->check && !o->rank && !o->nondeg && o->twist.empty()) o->check = o->rank = o->nondeg = true;
      if (name == "twist" && o->twist.empty()) throw SchemaError("qp twist needs --twist T.json");
      run_qp(ctx, *o);
    });
    add_common(c, *o);
    if (name == "amm") {
      c->add_flag("--check", o->check, "MC identities");
      c->add_flag("--rank", o->rank, "ranks");
      c->add_flag("--nondeg", o->nondeg, "non-degeneracy");
    }
    if (name == "amm" || name == "twist")
      c->add_option("--twist", o->twist, "multivector file with T ∈ ∧²g")->check(CLI::ExistingFile);
    if (name == "rank" || name == "nondeg")
      c->add_option("--model", o->model, "conjugation (G⋉G ⇉ G) or point (G ⇉ pt)")
          ->capture_default_str()
          ->check(CLI::IsMember({"conjugation", "point"}));
    if (name == "rank" || name == "amm") c->add_option("--expect-rank", o->expect_rank, "report points of other rank");
  }
}

}  // namespace hsw::cli
