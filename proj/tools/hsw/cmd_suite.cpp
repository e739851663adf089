#include <iostream>

#include "cli.hpp"
#include "hsw/properties.hpp"

namespace hsw::cli {

namespace {

// each property gets its own stream, so `suite lie2` replays the lie2 part of `suite all`
Rng property_rng(std::uint64_t seed, const std::string& name) {
  std::seed_seq s(name.begin(), name.end());
  std::vector<std::uint32_t> mix(2);
  s.generate(mix.begin(), mix.end());
  return Rng(seed ^ (static_cast<std::uint64_t>(mix[0]) << 32 | mix[1]));
}

ValidationReport core_algebra_property(Rng& rng) {
  ValidationReport r;
  int n = 1 + static_cast<int>(rng() % 4);
  GradedVectorSpace v{{-1, n}, {0, 1 + static_cast<int>(rng() % 3)}};
  GradedLinearMap f = random_invertible_glm(rng, v);
  GradedLinearMap id = GradedLinearMap::identity(v);
  if (!(glm_compose(f, glm_inverse(f)) == id)) r.add("inverse", "f∘f⁻¹");
  Matrix a = random_matrix(rng, n, n + 1);
  if (rank(a) + nullspace(a).cols() != n + 1) r.add("rank-nullity", std::to_string(n) + "x" + std::to_string(n + 1));
  return r;
}

ValidationReport qpois_property(Rng& rng) {
  ValidationReport r = amm_property(sl2(), rng, 2, 1).report;
  RankReport pt = rank_from_anchors(point_quotient_anchors(3));
  if (pt.rank != -3) r.add("point-quotient-rank", "g = sl2", std::to_string(pt.rank), "-3");
  if (nondegenerate_from_anchors(point_quotient_anchors(3)).quasi_iso) r.add("point-quotient-nondeg", "g = sl2");
  return r;
}

struct SuiteEntry {
  std::string name, module;
  std::function<ValidationReport(Rng&)> run;
};

const std::vector<SuiteEntry>& entries() {
  static const std::vector<SuiteEntry> e = [] {
    std::vector<SuiteEntry> v{{"glm-inverse", "core_algebra", core_algebra_property}};
    for (const auto& p : all_properties()) v.push_back({p.name, p.module, p.run});
    v.push_back({"amm", "qpois", qpois_property});
    return v;
  }();
  return e;
}

}  // namespace

const std::vector<std::string>& suite_modules() {
  static const std::vector<std::string> m = {"core_algebra", "lie2", "mc", "fingrpd", "vbgrpd", "homrep", "qpois"};
  return m;
}

void suite_module(const std::string& name, Context& ctx, int count) {
  for (const auto& e : entries()) {
    if (e.module != name) continue;
    Rng rng = property_rng(ctx.cfg.seed, e.name);
    size_t before = ctx.report.violations;
    int n = e.module == "qpois" ? 1 : count;
    for (int i = 0; i < n; ++i) {
      ValidationReport r;
      try {
        r = e.run(rng);
      } catch (const std::exception& ex) {
        r.add("exception", "", ex.what());
      }
      ctx.report.add(r, e.name + "#" + std::to_string(i));
    }
    ctx.report.result[e.name] = {{"module", e.module},
                                 {"instances", n},
                                 {"violations", ctx.report.violations - before}};
  }
}

void add_suite(CLI::App& app, Context& ctx) {
  auto* s = app.add_subcommand("suite", "randomized property suites");
  s->require_subcommand(1);
  auto count = std::make_shared<int>(5);
  auto params = [&ctx, count](const std::string& which) {
    ctx.report.params["seed"] = ctx.cfg.seed;
    ctx.report.params["instances_per_property"] = *count;
    ctx.report.params["suite"] = which;
  };
  auto* c = leaf(s, ctx, "all", "every module", [&ctx, count, params] {
    params("all");
    for (const auto& m : suite_modules()) suite_module(m, ctx, *count);
  });
  c->add_option("--count", *count, "instances per property")->capture_default_str()->check(CLI::Range(1, 1000));
  for (const auto& mod : suite_modules()) {
    c = leaf(s, ctx, mod, "the " + mod + " properties", [&ctx, count, params, mod] {
      params(mod);
      suite_module(mod, ctx, *count);
    });
    c->add_option("--count", *count, "instances per property")->capture_default_str()->check(CLI::Range(1, 1000));
  }
}

namespace {

std::shared_ptr<const CrossedModule> sl2_eps() {
  MatrixLieAlgebra a = sl2();
  GradedVectorSpace v({{0, 3}, {1, 3}});
  GradedLieAlgebra g(v);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vec t = a.ad[i].col(j);
      if (vec_is_zero(t)) continue;
      g.bracket.set(0, i, 0, j, t);
      g.bracket.set(0, i, 1, j, t);
      g.bracket.set(1, i, 0, j, t);
    }
  CrossedModule cm(g, g);
  cm.d = GradedLinearMap::identity(v);
  cm.action = g.bracket;
  return std::make_shared<const CrossedModule>(cm);
}

json element(int deg, const Vec& v) { return document("element", {{"components", {{std::to_string(deg), to_json(v)}}}}); }

}  // namespace

void add_gen(CLI::App& app, Context& ctx) {
  auto kind = std::make_shared<std::string>();
  auto n = std::make_shared<int>(0);
  auto alg = std::make_shared<std::string>("sl2");
  auto over = std::make_shared<std::string>();
  static const std::vector<std::string> kinds = {
      "crossed_module", "lie2_morphism", "retract",  "mc",         "twist",       "groupoid", "covered_surjection",
      "vb_groupoid",    "vb_equivalence", "homotopy_module", "lie_algebra", "points", "bivector", "sl2eps_mc",
      "sl2eps_b"};
  auto* c = app.add_subcommand("gen", "print a sample input document (random ones follow --seed)");
  c->add_option("kind", *kind, "what to generate")->required()->check(CLI::IsMember(kinds));
  c->add_option("-n", *n, "size: points for `points`, coordinates for `twist`");
  c->add_option("--algebra", *alg, "sl2 or so3, for lie_algebra, points and bivector")
      ->capture_default_str()
      ->check(CLI::IsMember({"sl2", "so3"}));
  c->add_option("--over", *over, "mc: draw it over this crossed_module, or the source of this lie2_morphism")
      ->check(CLI::ExistingFile);
  add_out(c, ctx);
  c->callback([&ctx, kind, n, alg, over] {
    ctx.report.command = "gen " + *kind;
    ctx.action = [&ctx, kind, n, alg, over] {
      Rng rng = ctx.rng();
      const std::string& k = *kind;
      MatrixLieAlgebra a = *alg == "so3" ? so3() : sl2();
      json doc;
      if (k == "crossed_module") doc = to_json(random_crossed_module(rng));
      else if (k == "lie2_morphism") doc = to_json(random_homotopic_pair(rng, {-1, 3, 6}).phi);
      else if (k == "retract") doc = to_json(random_retract_instance(rng));
      else if (k == "mc") {
        std::shared_ptr<const CrossedModule> cm;
        if (over->empty()) {
          cm = random_mc_crossed_module(rng);
        } else {
          json j = read_json_file(*over);
          cm = j.value("kind", "") == "lie2_morphism" ? lie2_morphism_from_json(j).source
                                                       : std::make_shared<const CrossedModule>(crossed_module_from_json(j));
        }
        doc = to_json(random_mc(rng, cm));
      }
      else if (k == "twist") doc = element(1, random_vec(rng, *n));
      else if (k == "groupoid") doc = to_json(random_groupoid(rng, 4, 12));
      else if (k == "covered_surjection") {
        FiniteGroupoid g = random_groupoid(rng, 4, 12);
        doc = to_json(random_covered_surjection(rng, g));  // over `gen groupoid` with the same seed
      } else if (k == "vb_groupoid") doc = to_json(random_vb_groupoid(rng, random_groupoid(rng, 3, 9)));
      else if (k == "vb_equivalence") doc = to_json(random_vb_equivalence(rng, random_groupoid(rng, 3, 9)));
      else if (k == "homotopy_module") doc = to_json(random_module(rng, random_groupoid(rng, 3, 9)));
      else if (k == "lie_algebra") doc = to_json(a);
      else if (k == "points") {
        std::vector<Matrix> pts;
        for (int i = 0; i < std::max(*n, 1); ++i) pts.push_back(random_point(a, rng).g);
        doc = points_to_json(pts);
      } else if (k == "bivector") {
        Multivector T(a.n);
        for (int i = 0; i < a.n; ++i)
          for (int j = i + 1; j < a.n; ++j) T.add((1u << i) | (1u << j), random_scalar(rng));
        doc = to_json(T);
      } else if (k == "sl2eps_mc") doc = to_json(MCElement{sl2_eps(), Vec(0), Vec{0, 1, 0}});
      else if (k == "sl2eps_b") doc = element(0, Vec{0, 0, 0, 1, 0, 0});
      if (ctx.out.empty()) {
        ctx.raw = doc;
      } else {
        ctx.produce(k, doc);
      }
    };
  });
}

}  // namespace hsw::cli
