#include "hsw/serialize.hpp"

#include <atomic>
#include <fstream>

namespace hsw {

namespace {

std::atomic<bool> g_float{false};

template <class T, class F>
json list(const std::vector<T>& v, F&& f) {
  json a = json::array();
  for (const auto& x : v) a.push_back(f(x));
  return a;
}

template <class F>
auto list_from(const json& j, F&& f) {
  using T = decltype(f(j));
  std::vector<T> out;
  if (!j.is_array()) throw SchemaError("expected an array");
  for (const auto& x : j) out.push_back(f(x));
  return out;
}

std::vector<int> ints(const json& j) {
  return list_from(j, [](const json& x) { return x.get<int>(); });
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

// accepts a full document or a bare body
const json& body(const json& j, const std::string& kind) {
  if (j.is_object() && j.contains("schema")) return expect_document(j, kind);
  return j;
}

int degree_key(const std::string& k) {
  try {
    size_t pos = 0;
    int d = std::stoi(k, &pos);
    if (pos == k.size()) return d;
  } catch (const std::exception&) {
  }
  throw SchemaError("bad degree key '" + k + "'");
}

// sparse tensor as [[deg, idx], [deg, idx], coeffs]
json triplets(const Bilinear& b) {
  json a = json::array();
  b.for_each([&](int k, int i, int l, int jj, const Vec& v) {
    a.push_back(json::array({json::array({k, i}), json::array({l, jj}), to_json(v)}));
  });
  return a;
}

void fill_triplets(Bilinear& b, const json& entries) {
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 3) throw SchemaError("tensor entry must be [[deg, i], [deg, j], coeffs]");
    int k = e[0].at(0).get<int>(), i = e[0].at(1).get<int>(), l = e[1].at(0).get<int>(), jj = e[1].at(1).get<int>();
    Vec v = vec_from_json(e[2]);
    if (i < 0 || i >= b.left().dim(k) || jj < 0 || jj >= b.right().dim(l) ||
        static_cast<int>(v.size()) != b.target().dim(k + l + b.shift()))
      throw SchemaError("tensor entry out of range: " + e.dump());
    b.set(k, i, l, jj, v);
  }
}

json pair_map(const std::map<std::pair<int, int>, Matrix>& m) {
  json a = json::array();
  for (const auto& [k, v] : m) a.push_back(json::array({k.first, k.second, to_json(v)}));
  return a;
}

std::map<std::pair<int, int>, Matrix> pair_map_from(const json& j) {
  std::map<std::pair<int, int>, Matrix> m;
  for (const auto& e : j) m[{e.at(0).get<int>(), e.at(1).get<int>()}] = matrix_from_json(e.at(2));
  return m;
}

json lie_json(const GradedLieAlgebra& g) {
  json j = to_json(g.space);
  j["bracket"] = triplets(g.bracket);
  return j;
}

GradedLieAlgebra lie_from(const json& j) {
  GradedLieAlgebra g(space_from_json(j));
  fill_triplets(g.bracket, field(j, "bracket"));
  return g;
}

json morphism_maps(const VBMorphism& f) {
  return {{"obj_map", f.obj_map}, {"arr_map", f.arr_map}, {"arr", to_json(f.arr)}, {"obj", to_json(f.obj)}};
}

VBMorphism morphism_maps_from(const json& j, std::shared_ptr<const VBGroupoid> s, std::shared_ptr<const VBGroupoid> t) {
  VBMorphism f;
  f.source = std::move(s);
  f.target = std::move(t);
  f.obj_map = ints(field(j, "obj_map"));
  f.arr_map = ints(field(j, "arr_map"));
  f.arr = matrices_from_json(field(j, "arr"));
  f.obj = matrices_from_json(field(j, "obj"));
  return f;
}

json lie2_maps(const Lie2Morphism& m) {
  return {{"phi1A", to_json(m.phi1A)}, {"phi1G", to_json(m.phi1G)}, {"phi2", to_json(m.phi2)}};
}

}  // namespace

void set_json_float_mode(bool on) { g_float = on; }
bool json_float_mode() { return g_float; }

json document(const std::string& kind, json b) {
  json j = {{"schema", kSchema}, {"kind", kind}};
  for (auto& [k, v] : b.items()) j[k] = std::move(v);
  return j;
}

const json& expect_document(const json& j, const std::string& kind) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  if (!j.contains("schema") || j.at("schema") != kSchema) throw SchemaError("missing or unknown schema (want hsw/1)");
  if (!j.contains("kind") || j.at("kind") != kind)
    throw SchemaError("expected kind '" + kind + "'" + (j.contains("kind") ? ", got " + j.at("kind").dump() : ""));
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

json to_json(const Scalar& s) {
  if (s.is_float()) return s.to_double();
  return s.str();
}

Scalar scalar_from_json(const json& j) {
  Scalar s;
  if (j.is_string())
    try {
      s = Scalar::parse(j.get<std::string>());
    } catch (const MathError& e) {
      throw SchemaError(e.what());
    }
  else if (j.is_number_integer())
    s = Scalar(j.get<long>());
  else if (j.is_number())
    s = Scalar::from_double(j.get<double>());
  else
    throw SchemaError("expected a scalar, got " + j.dump());
  if (g_float && !s.is_float()) s = Scalar::from_double(s.to_double());
  return s;
}

json to_json(const Vec& v) { return list(v, [](const Scalar& s) { return to_json(s); }); }
Vec vec_from_json(const json& j) { return list_from(j, scalar_from_json); }

// empty shapes keep their dimensions
json to_json(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {{"rows", m.rows()}, {"cols", m.cols()}};
  json a = json::array();
  for (int i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Matrix matrix_from_json(const json& j) {
  if (j.is_object()) return Matrix(field(j, "rows").get<int>(), field(j, "cols").get<int>());
  auto rows = list_from(j, vec_from_json);
  if (rows.empty()) throw SchemaError("matrix with no rows must give its shape");
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw SchemaError("ragged matrix");
  return Matrix::from_rows(rows, static_cast<int>(rows[0].size()));
}

json to_json(const std::vector<Matrix>& ms) { return list(ms, [](const Matrix& m) { return to_json(m); }); }
std::vector<Matrix> matrices_from_json(const json& j) { return list_from(j, matrix_from_json); }

json to_json(const GradedVectorSpace& v) {
  json dims = json::object();
  for (const auto& [d, n] : v.dims()) dims[std::to_string(d)] = n;
  return {{"dims", dims}};
}

GradedVectorSpace space_from_json(const json& j) {
  std::map<int, int> dims;
  for (const auto& [k, n] : field(j, "dims").items()) {
    int d = degree_key(k);
    if (n.get<int>() < 0) throw SchemaError("negative dimension");
    dims[d] = n.get<int>();
  }
  return GradedVectorSpace(dims);
}

json to_json(const GradedLinearMap& f) {
  json blocks = json::object();
  for (const auto& [d, m] : f.blocks()) blocks[std::to_string(d)] = to_json(m);
  return {{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"shift", f.shift()}, {"blocks", blocks}};
}

GradedLinearMap glm_from_json(const json& j) {
  GradedLinearMap f(space_from_json(field(j, "source")), space_from_json(field(j, "target")),
                    field(j, "shift").get<int>());
  for (const auto& [k, m] : field(j, "blocks").items()) {
    int d = degree_key(k);
    Matrix b = matrix_from_json(m);
    if (b.rows() != f.target().dim(d + f.shift()) || b.cols() != f.source().dim(d))
      throw SchemaError("block " + k + " has the wrong shape");
    f.set_block(d, std::move(b));
  }
  return f;
}

json to_json(const Bilinear& b) {
  return {{"left", to_json(b.left())},
          {"right", to_json(b.right())},
          {"target", to_json(b.target())},
          {"shift", b.shift()},
          {"entries", triplets(b)}};
}

Bilinear bilinear_from_json(const json& j) {
  Bilinear b(space_from_json(field(j, "left")), space_from_json(field(j, "right")), space_from_json(field(j, "target")),
             field(j, "shift").get<int>());
  fill_triplets(b, field(j, "entries"));
  return b;
}

json to_json(const GradedElement& e) {
  json comps = json::array();
  for (const auto& [d, v] : e.components()) comps.push_back(json::array({d, to_json(v)}));
  return {{"space", to_json(e.space())}, {"components", comps}};
}

GradedElement element_from_json(const json& j) {
  GradedElement e(space_from_json(field(j, "space")));
  for (const auto& c : field(j, "components")) e.set_component(c.at(0).get<int>(), vec_from_json(c.at(1)));
  return e;
}

json to_json(const CrossedModule& cm) {
  return document("crossed_module",
                  {{"A", lie_json(cm.A)}, {"G", lie_json(cm.G)}, {"d", to_json(cm.d)}, {"action", triplets(cm.action)}});
}

CrossedModule crossed_module_from_json(const json& jj) {
  const json& j = body(jj, "crossed_module");
  CrossedModule cm(lie_from(field(j, "A")), lie_from(field(j, "G")));
  cm.d = glm_from_json(field(j, "d"));
  fill_triplets(cm.action, field(j, "action"));
  return cm;
}

json to_json(const Lie2Morphism& m) {
  json b = lie2_maps(m);
  b["source"] = to_json(*m.source);
  b["target"] = to_json(*m.target);
  return document("lie2_morphism", b);
}

Lie2Morphism lie2_morphism_from_json(const json& jj) {
  const json& j = body(jj, "lie2_morphism");
  Lie2Morphism m;
  m.source = std::make_shared<const CrossedModule>(crossed_module_from_json(field(j, "source")));
  m.target = std::make_shared<const CrossedModule>(crossed_module_from_json(field(j, "target")));
  m.phi1A = glm_from_json(field(j, "phi1A"));
  m.phi1G = glm_from_json(field(j, "phi1G"));
  m.phi2 = bilinear_from_json(field(j, "phi2"));
  return m;
}

json to_json(const RetractInstance& r) {
  return document("retract", {{"phi", to_json(r.phi)},
                              {"psi1A", to_json(r.psi1A)},
                              {"psi1G", to_json(r.psi1G)},
                              {"h", to_json(r.h)},
                              {"hprime", to_json(r.hprime)}});
}

RetractInstance retract_from_json(const json& jj) {
  const json& j = body(jj, "retract");
  RetractInstance r;
  r.phi = lie2_morphism_from_json(field(j, "phi"));
  r.X = r.phi.source;
  r.Y = r.phi.target;
  r.psi1A = glm_from_json(field(j, "psi1A"));
  r.psi1G = glm_from_json(field(j, "psi1G"));
  r.h = glm_from_json(field(j, "h"));
  r.hprime = glm_from_json(field(j, "hprime"));
  return r;
}

json to_json(const MCElement& m) {
  return document("mc", {{"crossed_module", to_json(*m.cm)}, {"Lambda", to_json(m.Lambda)}, {"Pi", to_json(m.Pi)}});
}

MCElement mc_from_json(const json& jj) {
  const json& j = body(jj, "mc");
  MCElement m;
  m.cm = std::make_shared<const CrossedModule>(crossed_module_from_json(field(j, "crossed_module")));
  m.Lambda = vec_from_json(field(j, "Lambda"));
  m.Pi = vec_from_json(field(j, "Pi"));
  if (static_cast<int>(m.Lambda.size()) != m.cm->A.space.dim(2) || static_cast<int>(m.Pi.size()) != m.cm->G.space.dim(1))
    throw SchemaError("Lambda must live in A_2 and Pi in G_1");
  return m;
}

json to_json(const FiniteGroupoid& g) {
  json objects = json::array(), arrows = json::array(), comp = json::array(), inv = json::array(), units = json::object();
  for (int m = 0; m < g.n_obj; ++m) objects.push_back(g.obj_name(m));
  for (int a = 0; a < g.n_arr; ++a) {
    json e = {{"id", a}, {"src", g.src[a]}, {"tgt", g.tgt[a]}};
    if (!g.arr_names.empty()) e["name"] = g.arr_names[a];
    arrows.push_back(e);
    inv.push_back(json::array({a, g.inv[a]}));
  }
  for (const auto& [gh, c] : g.comp) comp.push_back(json::array({gh.first, gh.second, c}));
  for (int m = 0; m < g.n_obj; ++m) units[g.obj_name(m)] = g.unit[m];
  return document("groupoid", {{"objects", objects}, {"arrows", arrows}, {"comp", comp}, {"inv", inv}, {"units", units}});
}

// objects may be referenced by position or by name
FiniteGroupoid groupoid_from_json(const json& jj) {
  const json& j = body(jj, "groupoid");
  FiniteGroupoid g;
  std::map<std::string, int> by_name;
  for (const auto& o : field(j, "objects")) {
    std::string nm = o.is_string() ? o.get<std::string>() : o.dump();
    if (!by_name.emplace(nm, g.n_obj).second) throw SchemaError("duplicate object " + nm);
    g.obj_names.push_back(nm);
    ++g.n_obj;
  }
  auto obj = [&](const json& o) {
    if (o.is_number_integer()) {
      int m = o.get<int>();
      if (m < 0 || m >= g.n_obj) throw SchemaError("object index out of range");
      return m;
    }
    auto it = by_name.find(o.is_string() ? o.get<std::string>() : o.dump());
    if (it == by_name.end()) throw SchemaError("unknown object " + o.dump());
    return it->second;
  };
  const json& arrows = field(j, "arrows");
  g.n_arr = static_cast<int>(arrows.size());
  g.src.assign(g.n_arr, -1);
  g.tgt.assign(g.n_arr, -1);
  g.inv.assign(g.n_arr, -1);
  g.unit.assign(g.n_obj, -1);
  bool named = false;
  std::vector<std::string> names(g.n_arr);
  auto arrow = [&](const json& a) {
    int id = a.get<int>();
    if (id < 0 || id >= g.n_arr) throw SchemaError("arrow id out of range");
    return id;
  };
  for (const auto& a : arrows) {
    int id = arrow(field(a, "id"));
    g.src[id] = obj(field(a, "src"));
    g.tgt[id] = obj(field(a, "tgt"));
    if (a.contains("name")) {
      names[id] = a.at("name").get<std::string>();
      named = true;
    }
  }
  for (int a = 0; a < g.n_arr; ++a)
    if (g.src[a] < 0) throw SchemaError("arrow ids must be 0..n-1 without gaps");
  if (named) g.arr_names = names;
  for (const auto& e : field(j, "inv")) g.inv[arrow(e.at(0))] = arrow(e.at(1));
  for (const auto& [k, a] : field(j, "units").items()) g.unit[obj(json(k))] = arrow(a);
  for (const auto& e : field(j, "comp")) g.comp[{arrow(e.at(0)), arrow(e.at(1))}] = arrow(e.at(2));
  for (int a = 0; a < g.n_arr; ++a)
    if (g.inv[a] < 0) throw SchemaError("missing inverse for arrow " + std::to_string(a));
  for (int m = 0; m < g.n_obj; ++m)
    if (g.unit[m] < 0) throw SchemaError("missing unit for object " + g.obj_names[m]);
  return g;
}

json to_json(const CoveredSurjection& cs) {
  return document("covered_surjection", {{"phi", cs.phi},
                                         {"cover", cs.cover},
                                         {"sections", cs.sections},
                                         {"weights", list(cs.weights, [](const Vec& v) { return to_json(v); })}});
}

CoveredSurjection cover_from_json(const json& jj) {
  const json& j = body(jj, "covered_surjection");
  CoveredSurjection cs;
  cs.phi = ints(field(j, "phi"));
  cs.cover = field(j, "cover").get<std::vector<std::vector<int>>>();
  cs.sections = field(j, "sections").get<std::vector<std::vector<int>>>();
  cs.weights = list_from(field(j, "weights"), vec_from_json);
  return cs;
}

json to_json(const VBGroupoid& v) {
  return document("vb_groupoid", {{"base", to_json(v.base)},
                                  {"dimE", v.dimE},
                                  {"dimV", v.dimV},
                                  {"sV", to_json(v.s)},
                                  {"tV", to_json(v.t)},
                                  {"unit", to_json(v.unit)},
                                  {"mV", pair_map(v.mult)},
                                  {"invV", to_json(v.inv)}});
}

VBGroupoid vb_from_json(const json& jj) {
  const json& j = body(jj, "vb_groupoid");
  VBGroupoid v;
  v.base = groupoid_from_json(field(j, "base"));
  v.dimE = ints(field(j, "dimE"));
  v.dimV = ints(field(j, "dimV"));
  v.s = matrices_from_json(field(j, "sV"));
  v.t = matrices_from_json(field(j, "tV"));
  v.unit = matrices_from_json(field(j, "unit"));
  v.mult = pair_map_from(field(j, "mV"));
  v.inv = matrices_from_json(field(j, "invV"));
  int na = v.base.n_arr, no = v.base.n_obj;
  if (static_cast<int>(v.dimE.size()) != no || static_cast<int>(v.dimV.size()) != na ||
      static_cast<int>(v.s.size()) != na || static_cast<int>(v.t.size()) != na ||
      static_cast<int>(v.inv.size()) != na || static_cast<int>(v.unit.size()) != no)
    throw SchemaError("VB groupoid arrays have inconsistent lengths");
  return v;
}

json to_json(const VBMorphism& f) {
  json b = morphism_maps(f);
  b["source"] = to_json(*f.source);
  b["target"] = to_json(*f.target);
  return document("vb_morphism", b);
}

VBMorphism vb_morphism_from_json(const json& jj) {
  const json& j = body(jj, "vb_morphism");
  return morphism_maps_from(j, std::make_shared<const VBGroupoid>(vb_from_json(field(j, "source"))),
                            std::make_shared<const VBGroupoid>(vb_from_json(field(j, "target"))));
}

json to_json(const VBHomotopyEquivalence& eq) {
  return document("vb_equivalence", {{"V1", to_json(*eq.phi.source)},
                                     {"V2", to_json(*eq.phi.target)},
                                     {"phi", morphism_maps(eq.phi)},
                                     {"psi", morphism_maps(eq.psi)},
                                     {"h1", to_json(eq.h1.h)},
                                     {"h2", to_json(eq.h2.h)}});
}

VBHomotopyEquivalence vb_equivalence_from_json(const json& jj) {
  const json& j = body(jj, "vb_equivalence");
  auto v1 = std::make_shared<const VBGroupoid>(vb_from_json(field(j, "V1")));
  auto v2 = std::make_shared<const VBGroupoid>(vb_from_json(field(j, "V2")));
  VBHomotopyEquivalence eq;
  eq.phi = morphism_maps_from(field(j, "phi"), v1, v2);
  eq.psi = morphism_maps_from(field(j, "psi"), v2, v1);
  eq.h1.h = matrices_from_json(field(j, "h1"));
  eq.h2.h = matrices_from_json(field(j, "h2"));
  return eq;
}

json to_json(const BundleSurjection& b) {
  return document("bundle_surjection", {{"phi", b.phi}, {"dim", b.dim}, {"map", to_json(b.map)}});
}

BundleSurjection bundle_surjection_from_json(const json& jj) {
  const json& j = body(jj, "bundle_surjection");
  return {ints(field(j, "phi")), ints(field(j, "dim")), matrices_from_json(field(j, "map"))};
}

json to_json(const RightDecomposition& d) { return document("decomposition", {{"pi", to_json(d.pi)}}); }

RightDecomposition decomposition_from_json(const json& jj) {
  return {matrices_from_json(field(body(jj, "decomposition"), "pi"))};
}

json to_json(const MoritaWitness& w) {
  return document("vb_witness", {{"phi1", w.phi1},
                                 {"phi2", w.phi2},
                                 {"arrow_iso", w.arrow_iso},
                                 {"phi", to_json(w.phi)},
                                 {"psi", to_json(w.psi)},
                                 {"phi0", to_json(w.phi0)},
                                 {"psi0", to_json(w.psi0)},
                                 {"h1", to_json(w.h1)},
                                 {"h2", to_json(w.h2)}});
}

MoritaWitness vb_witness_from_json(const json& jj) {
  const json& j = body(jj, "vb_witness");
  MoritaWitness w;
  w.phi1 = ints(field(j, "phi1"));
  w.phi2 = ints(field(j, "phi2"));
  w.arrow_iso = ints(field(j, "arrow_iso"));
  w.phi = matrices_from_json(field(j, "phi"));
  w.psi = matrices_from_json(field(j, "psi"));
  w.phi0 = matrices_from_json(field(j, "phi0"));
  w.psi0 = matrices_from_json(field(j, "psi0"));
  w.h1 = matrices_from_json(field(j, "h1"));
  w.h2 = matrices_from_json(field(j, "h2"));
  return w;
}

json to_json(const HomotopyModule2& m) {
  return document("homotopy_module", {{"base", to_json(m.base)},
                                      {"dimC", m.dimC},
                                      {"dimE", m.dimE},
                                      {"rho", to_json(m.rho)},
                                      {"RE", to_json(m.RE)},
                                      {"RC", to_json(m.RC)},
                                      {"Omega", pair_map(m.Omega)}});
}

HomotopyModule2 module_from_json(const json& jj) {
  const json& j = body(jj, "homotopy_module");
  HomotopyModule2 m;
  m.base = groupoid_from_json(field(j, "base"));
  m.dimC = ints(field(j, "dimC"));
  m.dimE = ints(field(j, "dimE"));
  m.rho = matrices_from_json(field(j, "rho"));
  m.RE = matrices_from_json(field(j, "RE"));
  m.RC = matrices_from_json(field(j, "RC"));
  m.Omega = pair_map_from(field(j, "Omega"));
  int na = m.base.n_arr, no = m.base.n_obj;
  if (static_cast<int>(m.dimC.size()) != no || static_cast<int>(m.dimE.size()) != no ||
      static_cast<int>(m.rho.size()) != no || static_cast<int>(m.RE.size()) != na ||
      static_cast<int>(m.RC.size()) != na)
    throw SchemaError("module arrays have inconsistent lengths");
  return m;
}

json to_json(const ModuleWitness& w) {
  return document("module_witness", {{"phi1", w.phi1},
                                     {"phi2", w.phi2},
                                     {"arrow_iso", w.arrow_iso},
                                     {"fC", to_json(w.fC)},
                                     {"fE", to_json(w.fE)},
                                     {"fmu", to_json(w.fmu)},
                                     {"gC", to_json(w.gC)},
                                     {"gE", to_json(w.gE)},
                                     {"gmu", to_json(w.gmu)},
                                     {"h1", to_json(w.h1)},
                                     {"h2", to_json(w.h2)}});
}

ModuleWitness module_witness_from_json(const json& jj) {
  const json& j = body(jj, "module_witness");
  ModuleWitness w;
  w.phi1 = ints(field(j, "phi1"));
  w.phi2 = ints(field(j, "phi2"));
  w.arrow_iso = ints(field(j, "arrow_iso"));
  w.fC = matrices_from_json(field(j, "fC"));
  w.fE = matrices_from_json(field(j, "fE"));
  w.fmu = matrices_from_json(field(j, "fmu"));
  w.gC = matrices_from_json(field(j, "gC"));
  w.gE = matrices_from_json(field(j, "gE"));
  w.gmu = matrices_from_json(field(j, "gmu"));
  w.h1 = matrices_from_json(field(j, "h1"));
  w.h2 = matrices_from_json(field(j, "h2"));
  return w;
}

json to_json(const MatrixLieAlgebra& g) {
  json b = {{"name", g.name}, {"basis", to_json(g.basis)}, {"K", to_json(g.K)}};
  if (g.casimir) b["casimir"] = to_json(*g.casimir);
  return document("lie_algebra", b);
}

MatrixLieAlgebra algebra_from_json(const json& jj) {
  const json& j = body(jj, "lie_algebra");
  std::optional<Matrix> cas;
  if (j.contains("casimir")) cas = matrix_from_json(j.at("casimir"));
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : "custom";
  try {
    return make_algebra(name, matrices_from_json(field(j, "basis")), matrix_from_json(field(j, "K")), cas);
  } catch (const InvalidAlgebra& e) {
    throw SchemaError(e.what());
  }
}

json to_json(const Multivector& a) {
  json terms = json::array();
  for (const auto& [m, c] : a.terms()) {
    std::vector<int> idx;
    for (int i = 0; i < a.n(); ++i)
      if (m & (1u << i)) idx.push_back(i);
    terms.push_back(json::array({idx, to_json(c)}));
  }
  return document("multivector", {{"n", a.n()}, {"terms", terms}});
}

Multivector multivector_from_json(const json& jj) {
  const json& j = body(jj, "multivector");
  int n = field(j, "n").get<int>();
  Multivector a(n);
  for (const auto& t : field(j, "terms")) {
    auto idx = ints(t.at(0));
    for (int i : idx)
      if (i < 0 || i >= n) throw SchemaError("multivector index out of range");
    a += ExteriorElement::monomial(n, idx, scalar_from_json(t.at(1)));
  }
  return a;
}

json points_to_json(const std::vector<Matrix>& pts) { return document("points", {{"points", to_json(pts)}}); }

std::vector<Matrix> points_from_json(const json& jj) { return matrices_from_json(field(body(jj, "points"), "points")); }

json to_json(const ValidationReport& r) {
  json f = json::array();
  for (const auto& x : r.findings())
    f.push_back({{"tag", x.tag}, {"location", x.location}, {"lhs", x.lhs}, {"rhs", x.rhs}});
  return {{"status", r.ok() ? "pass" : "fail"}, {"violations", r.total()}, {"findings", f}};
}

}  // namespace hsw
