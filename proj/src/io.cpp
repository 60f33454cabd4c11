#include "ncv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ncv::io {

namespace {

void dump_number(double x, std::string& out) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "cannot serialize a non-finite number");
  if (x == 0) x = 0;  // -0 and 0 compare equal, so they print alike
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void dump(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      // nlohmann's default object type is an ordered std::map, so iteration is key-sorted.
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      dump_number(j.get<double>(), out);
      break;
    default:
      out += j.dump();
  }
}

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

double json_number(const Json& j, const char* what) {
  if (!j.is_number()) parse_fail(std::string(what) + " must be a number");
  return j.get<double>();
}

Eigen::Index positive_int(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1) parse_fail(std::string(what) + " must be a positive integer");
  return static_cast<Eigen::Index>(j.get<long long>());
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump(j, out);
  return out;
}

Json to_json(const Complexd& c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const Vectord& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const Matrixd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const StateVectord& s) {
  return {{"dim", s.dim()}, {"hbar", s.hbar()}, {"z", to_json(s.coords())}};
}

Json to_json(const Observabled& op) {
  return {{"dim", op.dim()}, {"hbar", op.hbar()}, {"B", to_json(op.matrix())}};
}

Json to_json(const SymmetryDatad& sd) {
  return {{"chart", chart_tag(sd.chart)}, {"f", to_json(sd.f)},         {"X", to_json(sd.X)},
          {"Xbar", to_json(sd.Xbar)},    {"K", to_json(sd.K)},          {"state", to_json(sd.state)}};
}

Json to_json(const MomentReportd& report) {
  return {{"exact", report.exact},
          {"spectral", report.spectral},
          {"p", report.probabilities},
          {"K", report.order},
          {"eigenvalues", report.eigenvalues},
          {"scale", report.scale},
          {"chain_residual", report.chain_residual}};
}

Json to_json(const Reconstruction<double>& rec) {
  Json out = to_json(rec.state.state());
  out["residual"] = rec.residual;
  out["condition"] = rec.condition;
  return out;
}

Complexd complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) parse_fail("complex numbers are [re, im] pairs");
  return {json_number(j[0], "real part"), json_number(j[1], "imaginary part")};
}

Vectord vector_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("expected an array of complex numbers");
  Vectord v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

Matrixd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) parse_fail("expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrixd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) parse_fail("matrix rows must have equal length");
    m.row(static_cast<Eigen::Index>(r)) = vector_from_json(j[r]).transpose();
  }
  return m;
}

StateVectord state_from_json(const Json& j) {
  const Eigen::Index dim = positive_int(field(j, "dim"), "dim");
  const double hbar = json_number(field(j, "hbar"), "hbar");
  Vectord z = vector_from_json(field(j, "z"));
  if (z.size() != dim) throw Error(ErrorCode::DimensionMismatch, "state 'dim' does not match length of 'z'");
  return StateVectord(std::move(z), hbar);
}

Observabled observable_from_json(const Json& j) {
  const Eigen::Index dim = positive_int(field(j, "dim"), "dim");
  const double hbar = json_number(field(j, "hbar"), "hbar");
  Matrixd B = matrix_from_json(field(j, "B"));
  if (B.rows() != dim || B.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "operator 'dim' does not match shape of 'B'");
  }
  return Observabled(std::move(B), hbar);
}

SymmetryDatad symdata_from_json(const Json& j) {
  const auto& tag = field(j, "chart");
  if (!tag.is_string()) parse_fail("'chart' must be a string");
  SymmetryDatad sd{chart_from_tag(tag.get<std::string>()),
                   complex_from_json(field(j, "f")),
                   vector_from_json(field(j, "X")),
                   vector_from_json(field(j, "Xbar")),
                   matrix_from_json(field(j, "K")),
                   state_from_json(field(j, "state"))};
  const Eigen::Index n = sd.chart == Chart::AffineFS ? sd.state.dim() - 1 : sd.state.dim();
  if (sd.X.size() != n || sd.Xbar.size() != n || sd.K.rows() != n || sd.K.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "symmetry data components do not match the state dimension");
  }
  return sd;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << contents;
}

bool is_builder_name(const std::string& name) {
  return name == "identity" || name == "ladder" || name == "ladder_dag" || name == "x" || name == "p" ||
         name == "number";
}

Observabled named_operator(const std::string& name, Eigen::Index dim, double hbar) {
  if (name == "identity") return identity(dim, hbar);
  if (name == "ladder") return ladder(dim, hbar).first;
  if (name == "ladder_dag") return ladder(dim, hbar).second;
  if (name == "x") return position_momentum(dim, hbar).first;
  if (name == "p") return position_momentum(dim, hbar).second;
  if (name == "number") return ncv::number(dim, hbar);
  throw Error(ErrorCode::ParseError, "unknown operator builder '" + name + "'");
}

}  // namespace ncv::io
