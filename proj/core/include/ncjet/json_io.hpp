#pragma once

#include "ncjet/calculus.hpp"
#include "ncjet/module.hpp"

#include <json.hpp>

#include <string>

namespace ncjet {

using Json = nlohmann::ordered_json;

/// Raised on malformed input documents (CLI exit code 2).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Raised on well-formed input that violates axioms (CLI exit code 1).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json vec_to_json(const Mat& col);
Mat vec_from_json(const Json& j);
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

/// {name, dim, basis, unit, mult}; validates the axioms after parsing.
Json algebra_to_json(const Algebra& a);
AlgebraPtr algebra_from_json(const Json& j);

/// {dim, left_action, right_action?}; validates against the algebra.
Json module_to_json(const Module& m);
ModulePtr module_from_json(const AlgebraPtr& a, const Json& j);

/// {"type":"universal"} | {"type":"quotient","N_generators":[...]} |
/// {"type":"terminal","elements":[...]}. Quotient generators are coordinate
/// vectors in A⊗A that must lie in the universal one-forms.
Calculus calculus_from_json(const AlgebraPtr& a, const Json& j);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace ncjet
