#pragma once

#include <CLI11.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hsw/random.hpp"
#include "hsw/serialize.hpp"

namespace hsw::cli {

struct RunConfig {
  std::string scalar = "rational";
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::string format = "text";
  int max_level = 2;
  std::string degree_window = "-6:6";
};

struct Report {
  std::string command;
  std::string error;  // set for input and usage problems
  std::vector<Finding> findings;
  size_t violations = 0;
  json params = json::object();  // generation parameters, so random runs can be replayed
  json result = json::object();
  double seconds = 0;  // text output only

  std::string status() const { return !error.empty() ? "error" : violations ? "fail" : "pass"; }
  int exit_code() const { return !error.empty() ? 2 : violations ? 1 : 0; }
  // findings are prefixed with `scope` when it is not empty
  void add(const ValidationReport& r, const std::string& scope = {});
  void fail(std::string tag, std::string location, std::string lhs = {}, std::string rhs = {});
};

json report_to_json(const Report& r);
Report report_from_json(const json& j);
void emit_report(const Report& r, const RunConfig& cfg, std::ostream& os);
std::string schema_help();

// One parsed command line. Subcommand callbacks store the work in `action`,
// main runs it after parsing so exceptions stay out of CLI11.
struct Context {
  RunConfig cfg;
  Report report;
  std::function<void()> action;
  std::string out;  // --out file for commands that build something
  std::optional<json> raw;  // gen prints this instead of a report

  Rng rng() const { return Rng(cfg.seed); }
  // writes the document to --out, or into the result when no file was given
  void produce(const std::string& key, const json& doc);
};

// runs f and turns domain exceptions into findings named after the exception
void run_guarded(Context& ctx, const std::function<void()>& f);

// registers `parent name`; the body runs after parsing
template <class F>
CLI::App* leaf(CLI::App* parent, Context& ctx, const std::string& name, const std::string& desc, F body) {
  CLI::App* c = parent->add_subcommand(name, desc);
  std::string cmd = parent->get_name() + " " + name;
  c->callback([&ctx, cmd, body] {
    ctx.report.command = cmd;
    ctx.action = body;
  });
  return c;
}

inline void add_file(CLI::App* c, const std::string& name, std::shared_ptr<std::string> into, const std::string& desc,
                     bool required = true) {
  auto* o = c->add_option(name, *into, desc)->check(CLI::ExistingFile);
  if (required) o->required();
}

inline void add_out(CLI::App* c, Context& ctx) {
  c->add_option("-o,--out", ctx.out, "write the constructed document here instead of into the report");
}

std::vector<int> parse_int_list(const std::string& s);
std::string dims_str(const std::map<int, int>& d);

void add_lie2(CLI::App& app, Context& ctx);
void add_mc(CLI::App& app, Context& ctx);
void add_grpd(CLI::App& app, Context& ctx);
void add_vb(CLI::App& app, Context& ctx);
void add_rep(CLI::App& app, Context& ctx);
void add_qp(CLI::App& app, Context& ctx);
void add_suite(CLI::App& app, Context& ctx);
void add_gen(CLI::App& app, Context& ctx);

// used by suite all
void suite_module(const std::string& name, Context& ctx, int count);
const std::vector<std::string>& suite_modules();

}  // namespace hsw::cli
