#include <cxxabi.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "cli.hpp"

namespace hsw::cli {

void Report::add(const ValidationReport& r, const std::string& scope) {
  for (auto f : r.findings()) {
    if (!scope.empty()) f.tag = scope + "/" + f.tag;
    findings.push_back(std::move(f));
  }
  violations += r.total();
}

void Report::fail(std::string tag, std::string location, std::string lhs, std::string rhs) {
  findings.push_back({std::move(tag), std::move(location), std::move(lhs), std::move(rhs)});
  ++violations;
}

json report_to_json(const Report& r) {
  json f = json::array();
  for (const auto& x : r.findings)
    f.push_back({{"tag", x.tag}, {"location", x.location}, {"lhs", x.lhs}, {"rhs", x.rhs}});
  json b = {{"command", r.command}, {"status", r.status()}, {"violations", r.violations}, {"findings", f}};
  if (!r.error.empty()) b["error"] = r.error;
  if (!r.params.empty()) b["params"] = r.params;
  if (!r.result.empty()) b["result"] = r.result;
  return document("report", b);
}

Report report_from_json(const json& j) {
  expect_document(j, "report");
  Report r;
  r.command = j.at("command").get<std::string>();
  r.violations = j.at("violations").get<size_t>();
  for (const auto& x : j.at("findings"))
    r.findings.push_back({x.at("tag"), x.at("location"), x.at("lhs"), x.at("rhs")});
  if (j.contains("error")) r.error = j.at("error");
  if (j.contains("params")) r.params = j.at("params");
  if (j.contains("result")) r.result = j.at("result");
  if (r.status() != j.at("status")) throw SchemaError("report status disagrees with its findings");
  return r;
}

namespace {

bool use_color() {
  const char* c = std::getenv("HSW_COLOR");
  std::string mode = c ? c : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return isatty(STDOUT_FILENO);
}

std::string paint(const std::string& s, const char* code, bool on) {
  return on ? std::string("\033[") + code + "m" + s + "\033[0m" : s;
}

std::string plain(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

void emit_report(const Report& r, const RunConfig& cfg, std::ostream& os) {
  if (cfg.format == "json") {
    os << report_to_json(r).dump(2) << "\n";
    return;
  }
  bool color = use_color();
  std::string st = r.status();
  const char* code = st == "pass" ? "32" : st == "fail" ? "31" : "33";
  std::string head = st == "pass" ? "PASS" : st == "fail" ? "FAIL" : "ERROR";
  os << paint(head, code, color) << " " << r.command;
  if (r.violations) os << " (" << r.violations << " violation" << (r.violations == 1 ? "" : "s") << ")";
  os << std::fixed << std::setprecision(3) << "  [" << r.seconds << " s]\n";
  if (!r.error.empty()) os << "  " << r.error << "\n";
  for (const auto& f : r.findings) {
    os << "  " << paint(f.tag, "1", color);
    if (!f.location.empty()) os << " at " << f.location;
    os << "\n";
    if (!f.rhs.empty())
      os << "    lhs " << f.lhs << "\n    rhs " << f.rhs << "\n";
    else if (!f.lhs.empty())
      os << "    " << f.lhs << "\n";
  }
  if (r.findings.size() < r.violations) os << "  ... " << r.violations - r.findings.size() << " more\n";
  for (const auto& [k, v] : r.params.items()) os << "  param " << k << " = " << plain(v) << "\n";
  for (const auto& [k, v] : r.result.items()) {
    std::string s = plain(v);
    if (s.size() > 160) s = s.substr(0, 157) + "...";
    os << "  " << k << ": " << s << "\n";
  }
}

std::string schema_help() {
  return R"(File formats (JSON, every document carries "schema": "hsw/1" and a "kind"):
  crossed_module   {"A": gla, "G": gla, "d": glm, "action": [[[k,i],[l,j],coeffs], ...]}
                   gla = {"dims": {"-1": 2, "0": 3}, "bracket": [[[k,i],[l,j],coeffs], ...]}
                   glm = {"source": dims, "target": dims, "shift": 0, "blocks": {"0": [[...]]}}
  lie2_morphism    {"source": crossed_module, "target": crossed_module, "phi1A": glm, "phi1G": glm, "phi2": bilinear}
  retract          {"phi": lie2_morphism, "psi1A": glm, "psi1G": glm, "h": glm, "hprime": glm}
  mc               {"crossed_module": ..., "Lambda": [coords in A_2], "Pi": [coords in G_1]}
  element          {"components": {"1": [coords]}}   (T in A_1 for twists, b in V_0 = A_1+G_0 for gauges)
  groupoid         {"objects": [...], "arrows": [{"id","src","tgt"}], "comp": [[g,h,gh]], "inv": [[g,ginv]], "units": {obj: arrow}}
  covered_surjection {"phi": [...], "cover": [[...]], "sections": [[...]], "weights": [[...]]}
  vb_groupoid      {"base": groupoid, "dimE": [...], "dimV": [...], "sV","tV","unit","invV": [matrices], "mV": [[g1,g2,M]]}
  vb_morphism, vb_equivalence, vb_witness, bundle_surjection, decomposition
  homotopy_module  {"base": groupoid, "dimC", "dimE", "rho", "RE", "RC", "Omega": [[g1,g2,M]]}
  module_witness
  lie_algebra      {"name", "basis": [matrices], "K": matrix, "casimir"?: matrix}
  points           {"points": [matrices]}
  multivector      {"n": 3, "terms": [[[0,1,2], "1/4"]]}
Scalars are "p/q" strings or JSON numbers; matrices are arrays of rows.
`hsw gen <kind>` prints a sample of each kind.
)";
}

void Context::produce(const std::string& key, const json& doc) {
  if (out.empty()) {
    report.result[key] = doc;
    return;
  }
  std::ofstream f(out);
  if (!f) throw SchemaError("cannot write " + out);
  f << doc.dump(2) << "\n";
  report.result[key] = "written to " + out;
}

namespace {

std::string type_name(const std::exception& e) {
  int status = 0;
  std::unique_ptr<char, void (*)(void*)> p(abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status), std::free);
  std::string n = status == 0 ? p.get() : typeid(e).name();
  if (n.rfind("hsw::", 0) == 0) n = n.substr(5);
  return n;
}

}  // namespace

void run_guarded(Context& ctx, const std::function<void()>& f) {
  try {
    f();
  } catch (const SchemaError& e) {
    ctx.report.error = std::string("input: ") + e.what();
  } catch (const json::exception& e) {
    ctx.report.error = std::string("input: ") + e.what();
  } catch (const DegreeOutOfWindow& e) {
    ctx.report.error = std::string("input: ") + e.what() + " (see --degree-window)";
  } catch (const std::exception& e) {
    ctx.report.fail(type_name(e), "", e.what());
  }
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stoi(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw SchemaError("bad integer list '" + s + "'");
    }
  }
  return out;
}

std::string dims_str(const std::map<int, int>& d) {
  std::string s;
  for (const auto& [k, n] : d) s += (s.empty() ? "" : " ") + std::to_string(k) + ":" + std::to_string(n);
  return s.empty() ? "0" : s;
}

}  // namespace hsw::cli
