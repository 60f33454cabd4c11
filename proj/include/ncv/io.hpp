#ifndef NCV_IO_HPP
#define NCV_IO_HPP

#include <string>

#include <json.hpp>

#include "ncv/evaluation.hpp"
#include "ncv/hilbert.hpp"
#include "ncv/operators.hpp"
#include "ncv/symdata.hpp"

namespace ncv::io {

using Json = nlohmann::json;

/// Sorted keys, no whitespace, doubles printed with 17 significant digits.
/// Identical values always serialize to identical bytes.
std::string canonical_dump(const Json& j);

Json to_json(const Complexd& c);
Json to_json(const Vectord& v);
Json to_json(const Matrixd& m);
Json to_json(const StateVectord& s);
Json to_json(const Observabled& op);
Json to_json(const SymmetryDatad& sd);
Json to_json(const MomentReportd& report);
Json to_json(const Reconstruction<double>& rec);

// Parsers throw Error(ParseError) on malformed input and let the domain
// constructors report domain violations (zero vectors, non-square matrices).
Complexd complex_from_json(const Json& j);
Vectord vector_from_json(const Json& j);
Matrixd matrix_from_json(const Json& j);
StateVectord state_from_json(const Json& j);
Observabled observable_from_json(const Json& j);
SymmetryDatad symdata_from_json(const Json& j);

Json parse(const std::string& text);
Json read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// Builders addressable by name: identity, ladder, ladder_dag, x, p, number.
bool is_builder_name(const std::string& name);
Observabled named_operator(const std::string& name, Eigen::Index dim, double hbar);

}  // namespace ncv::io

#endif  // NCV_IO_HPP
