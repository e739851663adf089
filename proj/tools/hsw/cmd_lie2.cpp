#include "cli.hpp"

namespace hsw::cli {

namespace {

json cm_summary(const CrossedModule& cm) {
  json t = json::object();
  for (const auto& [k, d] : two_term_cohomology(cm)) t[std::to_string(k)] = {{"ker", d.ker}, {"coker", d.coker}};
  return {{"A", dims_str(cm.A.space.dims())}, {"G", dims_str(cm.G.space.dims())}, {"two_term_cohomology", t}};
}

void check_retract(Report& rep, const RetractInstance& r) {
  rep.add(check_lie2_morphism(r.phi), "phi");
  rep.add(check_chain_map(*r.Y, *r.X, r.psi1A, r.psi1G), "psi1");
  auto idA = GradedLinearMap::identity(r.X->A.space), idG = GradedLinearMap::identity(r.X->G.space);
  rep.add(check_chain_homotopy(*r.X, *r.X, glm_compose(r.psi1A, r.phi.phi1A), glm_compose(r.psi1G, r.phi.phi1G), idA,
                               idG, r.h),
          "h");
  auto idA2 = GradedLinearMap::identity(r.Y->A.space), idG2 = GradedLinearMap::identity(r.Y->G.space);
  rep.add(check_chain_homotopy(*r.Y, *r.Y, glm_compose(r.phi.phi1A, r.psi1A), glm_compose(r.phi.phi1G, r.psi1G), idA2,
                               idG2, r.hprime),
          "hprime");
}

}  // namespace

void add_lie2(CLI::App& app, Context& ctx) {
  auto* g = app.add_subcommand("lie2", "crossed modules and Lie 2-algebra morphisms");
  g->require_subcommand(1);

  auto file = std::make_shared<std::string>();
  auto* c = leaf(g, ctx, "check", "validate a crossed module, morphism or retract", [&ctx, file] {
    json j = read_json_file(*file);
    std::string kind = j.value("kind", "");
    if (kind == "lie2_morphism") {
      Lie2Morphism m = lie2_morphism_from_json(j);
      ctx.report.add(check_crossed_module(*m.source), "source");
      ctx.report.add(check_crossed_module(*m.target), "target");
      ctx.report.add(check_lie2_morphism(m));
    } else if (kind == "retract") {
      RetractInstance r = retract_from_json(j);
      ctx.report.add(check_crossed_module(*r.X), "X");
      ctx.report.add(check_crossed_module(*r.Y), "Y");
      check_retract(ctx.report, r);
    } else {
      CrossedModule cm = crossed_module_from_json(j);
      ctx.report.add(check_crossed_module(cm));
      ctx.report.result = cm_summary(cm);
    }
  });
  add_file(c, "file", file, "crossed_module, lie2_morphism or retract");

  auto dfile = std::make_shared<std::string>();
  c = leaf(g, ctx, "dgla", "build the associated dgla and check it", [&ctx, dfile] {
    CrossedModule cm = crossed_module_from_json(read_json_file(*dfile));
    ctx.report.add(check_crossed_module(cm), "crossed-module");
    Dgla d = associated_dgla(cm);
    ctx.report.add(check_dgla(d), "dgla");
    ctx.report.result = cm_summary(cm);
    ctx.report.result["V"] = dims_str(d.V.dims());
  });
  add_file(c, "file", dfile, "crossed_module");

  auto outer = std::make_shared<std::string>(), inner = std::make_shared<std::string>();
  c = leaf(g, ctx, "compose", "compose two morphisms (outer after inner)", [&ctx, outer, inner] {
    Lie2Morphism f = lie2_morphism_from_json(read_json_file(*outer));
    Lie2Morphism h = lie2_morphism_from_json(read_json_file(*inner));
    if (!(*f.source == *h.target)) {
      ctx.report.fail("SourceTargetMismatch", "outer.source vs inner.target");
      return;
    }
    Lie2Morphism fh = compose_lie2(f, h);
    ctx.report.add(check_lie2_morphism(fh), "composite");
    ctx.produce("morphism", to_json(fh));
  });
  add_file(c, "outer", outer, "lie2_morphism applied second");
  add_file(c, "inner", inner, "lie2_morphism applied first");
  add_out(c, ctx);

  auto rfile = std::make_shared<std::string>();
  c = leaf(g, ctx, "invert", "homotopy inverse of a morphism with chain-level retract data", [&ctx, rfile] {
    RetractInstance r = retract_from_json(read_json_file(*rfile));
    check_retract(ctx.report, r);
    if (ctx.report.violations) return;
    Lie2Morphism psi = invert_lie2_morphism(r.phi, r.psi1A, r.psi1G, r.h, r.hprime);
    ctx.report.add(check_lie2_morphism(psi), "psi");
    ctx.report.add(check_inversion_constraints(r.phi, psi, r.h, r.hprime), "constraints");
    ctx.produce("inverse", to_json(psi));
  });
  add_file(c, "file", rfile, "retract");
  add_out(c, ctx);
}

}  // namespace hsw::cli
