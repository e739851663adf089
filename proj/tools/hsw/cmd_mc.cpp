#include "cli.hpp"

namespace hsw::cli {

namespace {

// {"components": {"1": [...]}}, the element file format
Vec component(const std::string& path, int deg, int dim, const std::string& what) {
  json j = read_json_file(path);
  if (j.contains("schema")) expect_document(j, "element");
  const json& c = j.at("components");
  std::string key = std::to_string(deg);
  if (!c.contains(key)) throw SchemaError(what + " needs a degree " + key + " component");
  Vec v = vec_from_json(c.at(key));
  if (static_cast<int>(v.size()) != dim)
    throw SchemaError(what + " has " + std::to_string(v.size()) + " coordinates, expected " + std::to_string(dim));
  return v;
}

json mc_summary(const MCElement& m) { return {{"Lambda", to_json(m.Lambda)}, {"Pi", to_json(m.Pi)}}; }

}  // namespace

void add_mc(CLI::App& app, Context& ctx) {
  auto* g = app.add_subcommand("mc", "Maurer-Cartan elements");
  g->require_subcommand(1);

  auto file = std::make_shared<std::string>();
  auto* c = leaf(g, ctx, "check", "dΛ + ½[Π,Π] = 0 and Π·Λ = 0", [&ctx, file] {
    MCElement m = mc_from_json(read_json_file(*file));
    ctx.report.add(check_crossed_module(*m.cm), "crossed-module");
    ctx.report.add(mc_check(m));
  });
  add_file(c, "file", file, "mc");

  auto tfile = std::make_shared<std::string>(), tm = std::make_shared<std::string>();
  c = leaf(g, ctx, "twist", "twist by T in A_1", [&ctx, tfile, tm] {
    MCElement m = mc_from_json(read_json_file(*tm));
    Vec T = component(*tfile, 1, m.cm->A.space.dim(1), "T");
    ctx.report.add(mc_check(m), "input");
    MCElement mt = twist(m, T);
    ctx.report.add(mc_check(mt), "twisted");
    ctx.report.result = mc_summary(mt);
    ctx.produce("mc", to_json(mt));
  });
  c->add_option("--T", *tfile, "element file with the degree 1 component of A")->required()->check(CLI::ExistingFile);
  add_file(c, "file", tm, "mc");
  add_out(c, ctx);

  auto bfile = std::make_shared<std::string>(), gm = std::make_shared<std::string>();
  auto bound = std::make_shared<int>(8);
  c = leaf(g, ctx, "gauge", "exp(b)·m for b in V_0 = A_1 ⊕ G_0", [&ctx, bfile, gm, bound] {
    MCElement m = mc_from_json(read_json_file(*gm));
    Dgla d = associated_dgla(*m.cm);
    Vec b = component(*bfile, 0, d.V.dim(0), "b");
    Vec out = gauge(d, m.as_v(), b, *bound);
    auto [L, P] = split_v(*m.cm, 1, out);
    MCElement mg{m.cm, L, P};
    ctx.report.add(mc_check(m), "input");
    ctx.report.add(mc_check(mg), "gauged");
    ctx.report.result = mc_summary(mg);
    ctx.produce("mc", to_json(mg));
  });
  c->add_option("--b", *bfile, "element file with the degree 0 component of V")->required()->check(CLI::ExistingFile);
  c->add_option("--nilpotency", *bound, "give up after this many powers of ad_b")->capture_default_str();
  add_file(c, "file", gm, "mc");
  add_out(c, ctx);

  auto pfile = std::make_shared<std::string>(), pm = std::make_shared<std::string>();
  c = leaf(g, ctx, "push", "push forward along a Lie 2-algebra morphism", [&ctx, pfile, pm] {
    Lie2Morphism phi = lie2_morphism_from_json(read_json_file(*pfile));
    MCElement m = mc_from_json(read_json_file(*pm));
    if (!(*phi.source == *m.cm)) {
      ctx.report.fail("SourceTargetMismatch", "morphism source vs element crossed module");
      return;
    }
    MCElement pushed = mc_pushforward(phi, m);
    ctx.report.add(mc_check(pushed), "pushed");
    ctx.report.result = mc_summary(pushed);
    ctx.produce("mc", to_json(pushed));
  });
  c->add_option("--phi", *pfile, "lie2_morphism")->required()->check(CLI::ExistingFile);
  add_file(c, "file", pm, "mc");
  add_out(c, ctx);

  auto lm = std::make_shared<std::string>(), lt = std::make_shared<std::string>();
  c = leaf(g, ctx, "lp", "cohomology of d + [m, ·]", [&ctx, lm, lt] {
    MCElement m = mc_from_json(read_json_file(*lm));
    ctx.report.add(mc_check(m), "input");
    if (ctx.report.violations) return;
    ctx.report.add(check_lp_square_zero(lp_differential(m)), "d-squared");
    auto dims = lp_cohomology(m);
    ctx.report.result["cohomology"] = dims_str(dims);
    if (!lt->empty()) {
      auto dt = lp_cohomology(twist(m, component(*lt, 1, m.cm->A.space.dim(1), "T")));
      ctx.report.result["twisted_cohomology"] = dims_str(dt);
      if (dt != dims) ctx.report.fail("twist-invariance", "T", dims_str(dims), dims_str(dt));
    }
  });
  c->add_option("--T", *lt, "also compare with the twist by T")->check(CLI::ExistingFile);
  add_file(c, "file", lm, "mc");
}

}  // namespace hsw::cli
