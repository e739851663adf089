#include "cli.hpp"

namespace hsw::cli {

void add_rep(CLI::App& app, Context& ctx) {
  auto* g = app.add_subcommand("rep", "2-term homotopy modules");
  g->require_subcommand(1);

  auto file = std::make_shared<std::string>();
  auto* c = leaf(g, ctx, "check", "module axioms and D² = 0 up to --max-level", [&ctx, file] {
    HomotopyModule2 m = module_from_json(read_json_file(*file));
    ctx.report.add(check_groupoid(m.base), "groupoid");
    if (ctx.report.violations) return;
    ctx.report.add(check_homotopy_module(m));
    if (ctx.report.violations) return;
    ctx.report.add(check_D(m, ctx.cfg.max_level), "D");
  });
  add_file(c, "file", file, "homotopy_module");

  auto vfile = std::make_shared<std::string>(), dec = std::make_shared<std::string>();
  c = leaf(g, ctx, "from-vb", "module of a VB groupoid with a right decomposition", [&ctx, vfile, dec] {
    VBGroupoid v = vb_from_json(read_json_file(*vfile));
    ctx.report.add(check_vb_groupoid(v), "vb");
    if (ctx.report.violations) return;
    RightDecomposition d;
    if (dec->empty()) {
      Rng rng = ctx.rng();
      d = random_decomposition(rng, v);
      ctx.report.params["decomposition"] = "random";
      ctx.report.params["seed"] = ctx.cfg.seed;
    } else {
      d = decomposition_from_json(read_json_file(*dec));
    }
    ctx.report.add(check_decomposition(v, d), "decomposition");
    if (ctx.report.violations) return;
    HomotopyModule2 m = from_split_vb(v, d);
    ctx.report.add(check_homotopy_module(m), "module");
    ctx.produce("homotopy_module", to_json(m));
  });
  add_file(c, "file", vfile, "vb_groupoid");
  c->add_option("--decomposition", *dec, "right decomposition (random from --seed when omitted)")
      ->check(CLI::ExistingFile);
  add_out(c, ctx);

  auto pfile = std::make_shared<std::string>(), phi = std::make_shared<std::string>();
  c = leaf(g, ctx, "pullback", "pull a module back along X → M", [&ctx, pfile, phi] {
    HomotopyModule2 m = module_from_json(read_json_file(*pfile));
    ctx.report.add(check_homotopy_module(m), "input");
    if (ctx.report.violations) return;
    std::vector<int> p = parse_int_list(*phi);
    for (int x : p)
      if (x < 0 || x >= m.base.n_obj) throw SchemaError("--phi value " + std::to_string(x) + " is not an object");
    HomotopyModule2 pm = pullback_module(m, p);
    ctx.report.add(check_homotopy_module(pm), "pullback");
    ctx.produce("homotopy_module", to_json(pm));
  });
  add_file(c, "file", pfile, "homotopy_module");
  c->add_option("--phi", *phi, "comma separated objects, one per point of X")->required();
  add_out(c, ctx);

  auto m1 = std::make_shared<std::string>(), m2 = std::make_shared<std::string>(), w = std::make_shared<std::string>();
  c = leaf(g, ctx, "morita", "homotopy equivalence of pullbacks over a common X", [&ctx, m1, m2, w] {
    HomotopyModule2 a = module_from_json(read_json_file(*m1));
    HomotopyModule2 b = module_from_json(read_json_file(*m2));
    ctx.report.add(morita_module_witness(a, b, module_witness_from_json(read_json_file(*w))));
  });
  add_file(c, "m1", m1, "homotopy_module");
  add_file(c, "m2", m2, "homotopy_module");
  add_file(c, "witness", w, "module_witness");
}

}  // namespace hsw::cli
