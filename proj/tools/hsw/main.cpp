#include <chrono>
#include <iostream>

#include "cli.hpp"

using namespace hsw;
using namespace hsw::cli;

namespace {

// "lo:hi"
DegreeWindow parse_window(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw SchemaError("--degree-window wants lo:hi, got '" + s + "'");
  try {
    DegreeWindow w{std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
    if (w.lo > w.hi) throw SchemaError("--degree-window has lo > hi");
    return w;
  } catch (const std::logic_error&) {
    throw SchemaError("--degree-window wants lo:hi, got '" + s + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hsw: checks for shifted Poisson structures, Lie 2-algebras and VB groupoids"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  RunConfig& cfg = ctx.cfg;
  app.add_option("--scalar", cfg.scalar, "rational or float")->capture_default_str()->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--tol", cfg.tol, "comparison tolerance for the float backend")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for random instances and sample points")->capture_default_str();
  app.add_option("--format", cfg.format, "text or json")->capture_default_str()->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-level", cfg.max_level, "nerve level cap")->capture_default_str();
  app.add_option("--degree-window", cfg.degree_window, "allowed degrees, lo:hi")->capture_default_str();
  app.footer("Exit status: 0 pass, 1 violations found, 2 input or usage error. HSW_COLOR=never|always|auto.");

  add_lie2(app, ctx);
  add_mc(app, ctx);
  add_grpd(app, ctx);
  add_vb(app, ctx);
  add_rep(app, ctx);
  add_qp(app, ctx);
  add_suite(app, ctx);
  add_gen(app, ctx);

  try {
    app.parse(argc, argv);
    if (cfg.tol <= 0) throw CLI::ValidationError("--tol", "must be positive");
    if (cfg.max_level < 1) throw CLI::ValidationError("--max-level", "must be at least 1");
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    if (code == 0) return 0;
    std::cerr << "\n" << schema_help();
    return 2;
  }

  try {
    set_degree_window(parse_window(cfg.degree_window));
  } catch (const SchemaError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  set_json_float_mode(cfg.scalar == "float");
  set_float_tolerance(cfg.tol);

  auto t0 = std::chrono::steady_clock::now();
  if (ctx.action) run_guarded(ctx, ctx.action);
  ctx.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (ctx.raw && ctx.report.exit_code() == 0) {
    std::cout << ctx.raw->dump(2) << "\n";
    return 0;
  }
  emit_report(ctx.report, cfg, std::cout);
  return ctx.report.exit_code();
}
