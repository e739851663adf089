#include <fstream>

#include "cli.hpp"

namespace hsw::cli {

namespace {

void check_vb(Report& rep, const VBGroupoid& v, const std::string& scope) {
  rep.add(check_vb_groupoid(v), scope);
  rep.add(check_core_sequence(v), scope);
}

void check_equivalence(Report& rep, const VBHomotopyEquivalence& eq) {
  check_vb(rep, *eq.phi.source, "V1");
  check_vb(rep, *eq.phi.target, "V2");
  if (rep.violations) return;
  rep.add(check_homotopy_equivalence(eq));
}

void write_doc(const std::string& path, const json& doc) {
  std::ofstream f(path);
  if (!f) throw SchemaError("cannot write " + path);
  f << doc.dump(2) << "\n";
}

}  // namespace

void add_vb(CLI::App& app, Context& ctx) {
  auto* g = app.add_subcommand("vb", "VB groupoids, their morphisms and cochains");
  g->require_subcommand(1);

  auto file = std::make_shared<std::string>();
  auto* c = leaf(g, ctx, "check", "VB groupoid axioms and the core sequence, or a VB morphism", [&ctx, file] {
    json j = read_json_file(*file);
    if (j.value("kind", "") == "vb_morphism") {
      VBMorphism f = vb_morphism_from_json(j);
      check_vb(ctx.report, *f.source, "source");
      check_vb(ctx.report, *f.target, "target");
      ctx.report.add(check_vb_morphism(f));
      return;
    }
    VBGroupoid v = vb_from_json(j);
    check_vb(ctx.report, v, "");
    if (ctx.report.violations) return;
    ctx.report.result["core"] = core(v).dim;
  });
  add_file(c, "file", file, "vb_groupoid or vb_morphism");

  auto dfile = std::make_shared<std::string>();
  c = leaf(g, ctx, "dual", "V^∨ over the dual core", [&ctx, dfile] {
    VBGroupoid v = vb_from_json(read_json_file(*dfile));
    check_vb(ctx.report, v, "input");
    if (ctx.report.violations) return;
    VBGroupoid d = dualize(v);
    check_vb(ctx.report, d, "dual");
    ctx.produce("vb_groupoid", to_json(d));
  });
  add_file(c, "file", dfile, "vb_groupoid");
  add_out(c, ctx);

  auto sfile = std::make_shared<std::string>(), dec_out = std::make_shared<std::string>();
  c = leaf(g, ctx, "split", "split VB groupoid of a 2-term homotopy module", [&ctx, sfile, dec_out] {
    HomotopyModule2 m = module_from_json(read_json_file(*sfile));
    ctx.report.add(check_homotopy_module(m), "module");
    if (ctx.report.violations) return;
    SplitVB s = to_split_vb(m);
    check_vb(ctx.report, s.v, "split");
    ctx.report.add(check_decomposition(s.v, s.dec), "decomposition");
    ctx.produce("vb_groupoid", to_json(s.v));
    if (dec_out->empty())
      ctx.report.result["decomposition"] = to_json(s.dec);
    else
      write_doc(*dec_out, to_json(s.dec));
  });
  add_file(c, "file", sfile, "homotopy_module");
  add_out(c, ctx);
  c->add_option("--decomposition-out", *dec_out, "write the right decomposition here");

  auto pfile = std::make_shared<std::string>(), surj = std::make_shared<std::string>();
  c = leaf(g, ctx, "pullback", "V[ℰ] along a bundle surjection", [&ctx, pfile, surj] {
    VBGroupoid v = vb_from_json(read_json_file(*pfile));
    check_vb(ctx.report, v, "input");
    if (ctx.report.violations) return;
    BundleSurjection b = surj->empty() ? identity_surjection(v) : bundle_surjection_from_json(read_json_file(*surj));
    VBPullback pb = vb_pullback(v, b);
    check_vb(ctx.report, pb.v, "pullback");
    ctx.produce("vb_groupoid", to_json(pb.v));
  });
  add_file(c, "file", pfile, "vb_groupoid");
  c->add_option("--surjection", *surj, "bundle_surjection (identity when omitted)")->check(CLI::ExistingFile);
  add_out(c, ctx);

  auto hfile = std::make_shared<std::string>();
  c = leaf(g, ctx, "homotopy", "Ψ∘Φ = id + J_h1 and Φ∘Ψ = id + J_h2", [&ctx, hfile] {
    check_equivalence(ctx.report, vb_equivalence_from_json(read_json_file(*hfile)));
  });
  add_file(c, "file", hfile, "vb_equivalence");

  auto bfile = std::make_shared<std::string>();
  c = leaf(g, ctx, "bridge", "Morita bridge of a homotopy equivalence", [&ctx, bfile] {
    VBHomotopyEquivalence eq = vb_equivalence_from_json(read_json_file(*bfile));
    check_equivalence(ctx.report, eq);
    if (ctx.report.violations) return;
    Bridge b = homotopy_to_morita_bridge(eq);
    ctx.report.add(b.report, "bridge");
    ctx.report.result["P1_arrows"] = b.P1->base.n_arr;
  });
  add_file(c, "file", bfile, "vb_equivalence");

  auto mfiles = std::make_shared<std::vector<std::string>>();
  auto dual = std::make_shared<bool>(false);
  c = leaf(g, ctx, "morita", "Morita morphism, or a witness between two VB groupoids", [&ctx, mfiles, dual] {
    if (mfiles->size() == 3) {
      VBGroupoid v1 = vb_from_json(read_json_file((*mfiles)[0]));
      VBGroupoid v2 = vb_from_json(read_json_file((*mfiles)[1]));
      ctx.report.add(morita_witness_check(v1, v2, vb_witness_from_json(read_json_file((*mfiles)[2]))));
      return;
    }
    if (mfiles->size() != 1) throw SchemaError("vb morita takes one file, or V1 V2 WITNESS");
    json j = read_json_file(mfiles->front());
    if (j.value("kind", "") == "vb_morphism") {
      VBMorphism f = vb_morphism_from_json(j);
      ctx.report.add(check_vb_morphism(f), "morphism");
      ctx.report.add(check_morita_morphism(f));
      return;
    }
    VBHomotopyEquivalence eq = vb_equivalence_from_json(j);
    check_equivalence(ctx.report, eq);
    if (ctx.report.violations) return;
    ctx.report.add(morita_witness_check(*eq.phi.source, *eq.phi.target, witness_from_equivalence(eq)), "witness");
    if (*dual) {
      VBHomotopyEquivalence d = dual_equivalence(eq);
      ctx.report.add(morita_witness_check(*d.phi.source, *d.phi.target, witness_from_equivalence(d)), "dual-witness");
    }
  });
  c->add_option("files", *mfiles, "vb_morphism | vb_equivalence | V1 V2 vb_witness")->required()->check(CLI::ExistingFile);
  c->add_flag("--dual", *dual, "also check the dual witness (equivalence input)");

  auto cfile = std::make_shared<std::string>();
  c = leaf(g, ctx, "cochains", "VB cochain complex, or the cochain homotopy of an equivalence", [&ctx, cfile] {
    json j = read_json_file(*cfile);
    int lvl = ctx.cfg.max_level;
    if (j.value("kind", "") == "vb_equivalence") {
      VBHomotopyEquivalence eq = vb_equivalence_from_json(j);
      check_equivalence(ctx.report, eq);
      if (ctx.report.violations) return;
      ctx.report.add(vb_chain_map_and_homotopy(vb_compose(eq.psi, eq.phi), vb_identity(eq.phi.source), eq.h1, lvl),
                     "psi-phi");
      ctx.report.add(vb_chain_map_and_homotopy(vb_compose(eq.phi, eq.psi), vb_identity(eq.phi.target), eq.h2, lvl),
                     "phi-psi");
      return;
    }
    VBGroupoid v = vb_from_json(j);
    check_vb(ctx.report, v, "input");
    if (ctx.report.violations) return;
    ctx.report.add(check_vb_complex(v, lvl), "complex");
    ctx.report.add(check_dual_embedding(v, lvl), "dual-embedding");
    Nerve n(v.base, lvl + 1);
    json dims = json::array();
    for (int k = 0; k <= lvl; ++k) dims.push_back(vb_cochains(v, n, k).basis.cols());
    ctx.report.result["projectable_cochains"] = dims;
  });
  add_file(c, "file", cfile, "vb_groupoid or vb_equivalence");
}

}  // namespace hsw::cli
