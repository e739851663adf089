#pragma once

#include <nlohmann/json.hpp>

#include "hsw/homrep.hpp"
#include "hsw/mc.hpp"
#include "hsw/qpois.hpp"

namespace hsw {

using json = nlohmann::json;

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kSchema = "hsw/1";

// numbers parse as floats when set (the float backend)
void set_json_float_mode(bool on);
bool json_float_mode();

// {"schema": "hsw/1", "kind": kind, ...body}
json document(const std::string& kind, json body);
// checks schema and kind, throws SchemaError
const json& expect_document(const json& j, const std::string& kind);
json read_json_file(const std::string& path);

// rationals as "p/q" strings, integers as "p"
json to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);
json to_json(const Vec& v);
Vec vec_from_json(const json& j);
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
json to_json(const std::vector<Matrix>& ms);
std::vector<Matrix> matrices_from_json(const json& j);

json to_json(const GradedVectorSpace& v);
GradedVectorSpace space_from_json(const json& j);
json to_json(const GradedLinearMap& f);
GradedLinearMap glm_from_json(const json& j);
json to_json(const Bilinear& b);
Bilinear bilinear_from_json(const json& j);
json to_json(const GradedElement& e);
GradedElement element_from_json(const json& j);

json to_json(const CrossedModule& cm);
CrossedModule crossed_module_from_json(const json& j);
json to_json(const Lie2Morphism& m);
Lie2Morphism lie2_morphism_from_json(const json& j);
json to_json(const RetractInstance& r);
RetractInstance retract_from_json(const json& j);
json to_json(const MCElement& m);
MCElement mc_from_json(const json& j);

json to_json(const FiniteGroupoid& g);
FiniteGroupoid groupoid_from_json(const json& j);
json to_json(const CoveredSurjection& cs);
CoveredSurjection cover_from_json(const json& j);

json to_json(const VBGroupoid& v);
VBGroupoid vb_from_json(const json& j);
// source and target stored inline
json to_json(const VBMorphism& f);
VBMorphism vb_morphism_from_json(const json& j);
json to_json(const VBHomotopyEquivalence& eq);
VBHomotopyEquivalence vb_equivalence_from_json(const json& j);
json to_json(const BundleSurjection& b);
BundleSurjection bundle_surjection_from_json(const json& j);
json to_json(const RightDecomposition& d);
RightDecomposition decomposition_from_json(const json& j);
json to_json(const MoritaWitness& w);
MoritaWitness vb_witness_from_json(const json& j);

json to_json(const HomotopyModule2& m);
HomotopyModule2 module_from_json(const json& j);
json to_json(const ModuleWitness& w);
ModuleWitness module_witness_from_json(const json& j);

json to_json(const MatrixLieAlgebra& g);
MatrixLieAlgebra algebra_from_json(const json& j);
json to_json(const Multivector& a);
Multivector multivector_from_json(const json& j);
json points_to_json(const std::vector<Matrix>& pts);
std::vector<Matrix> points_from_json(const json& j);

json to_json(const ValidationReport& r);

}  // namespace hsw
