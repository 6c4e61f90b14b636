#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "piconn/scalar.hpp"
#include "piconn/structure.hpp"
#include "piconn/tensor.hpp"

namespace piconn {

// Malformed input file or inadmissible substitution; the CLI maps this to
// exit code 2.  The message names the offending file and location.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Parses the JSON instance schema (dimension / parameters / basis /
// brackets / phi / xi / eta / metric).  Bracket pairs may be given in either
// slot order and are antisymmetrized; a repeated or diagonal pair, an
// unknown basis label, or an unparsable coefficient raises InputError.
PiManifoldInstance load_instance(std::istream& in, const std::string& origin = "<stream>");
PiManifoldInstance load_instance_file(const std::string& path);

// {"param": "rational", ...}; values may be strings or JSON integers.
// Binding an undeclared parameter raises InputError.
Substitution load_substitution(std::istream& in, const ParamTablePtr& params,
                               const std::string& origin = "<stream>");
Substitution load_substitution_file(const std::string& path, const ParamTablePtr& params);

// Command-line form "k=v,k=v,...".
Substitution parse_substitution_arg(const std::string& text, const ParamTablePtr& params);

// Nonzero components as {"index":[i,j,...],"value":"<expression>"} in
// lexicographic index order.  Key order is fixed, so serialization is
// byte-stable.
nlohmann::ordered_json tensor_component_list(const Tensor& t);

// "name[i,j,...] = value" lines in index order, or a single
// "name: all components zero" line.
std::string tensor_to_text(const std::string& name, const Tensor& t);

}  // namespace piconn
