#include "cli.hpp"

namespace hsw::cli {

namespace {

FiniteGroupoid load_valid(Context& ctx, const std::string& path) {
  FiniteGroupoid g = groupoid_from_json(read_json_file(path));
  ctx.report.add(check_groupoid(g), "groupoid");
  ctx.report.result["objects"] = g.n_obj;
  ctx.report.result["arrows"] = g.n_arr;
  return g;
}

}  // namespace

void add_grpd(CLI::App& app, Context& ctx) {
  auto* g = app.add_subcommand("grpd", "finite groupoids and their cohomology");
  g->require_subcommand(1);

  auto file = std::make_shared<std::string>();
  auto* c = leaf(g, ctx, "check", "groupoid axioms", [&ctx, file] { load_valid(ctx, *file); });
  add_file(c, "file", file, "groupoid");

  auto cfile = std::make_shared<std::string>();
  c = leaf(g, ctx, "cohomology", "nerve cohomology up to --max-level", [&ctx, cfile] {
    FiniteGroupoid gr = load_valid(ctx, *cfile);
    if (ctx.report.violations) return;
    ctx.report.result["cohomology"] = cohomology_dims(gr, ctx.cfg.max_level);
    TwoTermGroupoidComplex t = truncated_two_term(gr);
    ctx.report.result["two_term"] = {{"ker", t.dim_ker}, {"coker", t.dim_coker}};
  });
  add_file(c, "file", cfile, "groupoid");

  auto pfile = std::make_shared<std::string>(), phi = std::make_shared<std::string>();
  c = leaf(g, ctx, "pullback", "Γ[X] along a map X → M", [&ctx, pfile, phi] {
    FiniteGroupoid gr = load_valid(ctx, *pfile);
    if (ctx.report.violations) return;
    std::vector<int> p = parse_int_list(*phi);
    for (int m : p)
      if (m < 0 || m >= gr.n_obj) throw SchemaError("--phi value " + std::to_string(m) + " is not an object");
    PullbackGroupoid pb = pullback_groupoid(gr, p);
    ctx.report.add(check_groupoid(pb.g), "pullback");
    ctx.produce("groupoid", to_json(pb.g));
  });
  add_file(c, "file", pfile, "groupoid");
  c->add_option("--phi", *phi, "comma separated objects, one per point of X")->required();
  add_out(c, ctx);

  auto afile = std::make_shared<std::string>(), cover = std::make_shared<std::string>();
  c = leaf(g, ctx, "appendixB", "partition-of-unity inverse of Φ* and its homotopy", [&ctx, afile, cover] {
    FiniteGroupoid gr = load_valid(ctx, *afile);
    CoveredSurjection cs = cover_from_json(read_json_file(*cover));
    ctx.report.add(check_covered_surjection(gr, static_cast<int>(cs.phi.size()), cs), "cover");
    if (ctx.report.violations) return;
    PartitionInverse pi = partition_inverse(gr, cs);
    ctx.report.add(check_partition_inverse(gr, pi));
    ctx.report.result["pullback_arrows"] = pi.pb.g.n_arr;
  });
  add_file(c, "file", afile, "groupoid");
  c->add_option("--cover", *cover, "covered_surjection")->required()->check(CLI::ExistingFile);
}

}  // namespace hsw::cli
