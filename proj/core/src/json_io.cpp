#include "ncjet/json_io.hpp"

#include <fstream>

namespace ncjet {

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw ParseError("scalar must be a string like \"p/q\"");
  auto q = parse_rational(j.get<std::string>());
  if (!q) throw ParseError("malformed scalar: " + j.get<std::string>());
  return *q;
}

Json vec_to_json(const Mat& col) {
  Json out = Json::array();
  for (int r = 0; r < col.rows(); ++r) out.push_back(rational_to_json(col.at(r, 0)));
  return out;
}

Mat vec_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("coordinate vector must be an array");
  Mat v(int(j.size()), 1);
  for (size_t r = 0; r < j.size(); ++r) v.at(int(r), 0) = rational_from_json(j[r]);
  return v;
}

Json matrix_to_json(const Mat& m) {
  Json out = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m.at(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Mat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& jr : j) {
    if (!jr.is_array()) throw ParseError("matrix row must be an array");
    std::vector<Rational> row;
    for (const auto& e : jr) row.push_back(rational_from_json(e));
    rows.push_back(std::move(row));
    if (rows.back().size() != rows[0].size()) throw ParseError("ragged matrix");
  }
  return Mat::from_rows(rows);
}

Json algebra_to_json(const Algebra& a) {
  Json j;
  j["name"] = a.name;
  j["dim"] = a.dim;
  j["basis"] = a.basis;
  j["unit"] = vec_to_json(a.unit);
  Json mult = Json::array();
  for (int i = 0; i < a.dim; ++i) {
    Json row = Json::array();
    for (int k = 0; k < a.dim; ++k) row.push_back(vec_to_json(a.mult[i][k]));
    mult.push_back(std::move(row));
  }
  j["mult"] = std::move(mult);
  return j;
}

AlgebraPtr algebra_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("algebra spec must be an object");
  Algebra a;
  try {
    a.name = j.value("name", std::string("algebra"));
    a.dim = j.at("dim").get<int>();
    if (a.dim <= 0) throw ParseError("algebra dim must be positive");
    if (j.contains("basis"))
      a.basis = j.at("basis").get<std::vector<std::string>>();
    else
      for (int i = 0; i < a.dim; ++i) a.basis.push_back("e" + std::to_string(i));
    if (int(a.basis.size()) != a.dim) throw ParseError("basis labels do not match dim");
    a.unit = vec_from_json(j.at("unit"));
    if (a.unit.rows() != a.dim) throw ParseError("unit vector has wrong length");
    const Json& mult = j.at("mult");
    if (!mult.is_array() || int(mult.size()) != a.dim) throw ParseError("mult table shape");
    a.mult.assign(size_t(a.dim), std::vector<Mat>(size_t(a.dim)));
    for (int i = 0; i < a.dim; ++i) {
      if (!mult[size_t(i)].is_array() || int(mult[size_t(i)].size()) != a.dim)
        throw ParseError("mult table shape");
      for (int k = 0; k < a.dim; ++k) {
        a.mult[size_t(i)][size_t(k)] = vec_from_json(mult[size_t(i)][size_t(k)]);
        if (a.mult[size_t(i)][size_t(k)].rows() != a.dim)
          throw ParseError("mult entry has wrong length");
      }
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("algebra spec: ") + e.what());
  }
  AlgebraReport rep = validate_algebra(a);
  if (!rep.pass()) {
    std::string msg = "algebra axioms fail:";
    for (const auto& fail : rep.failures) msg += "\n  " + fail;
    throw ValidationError(msg);
  }
  return std::make_shared<Algebra>(std::move(a));
}

Json module_to_json(const Module& m) {
  Json j;
  j["dim"] = m.dim;
  if (m.has_left()) {
    Json acts = Json::array();
    for (const Mat& l : m.left) acts.push_back(matrix_to_json(l));
    j["left_action"] = std::move(acts);
  }
  if (m.has_right()) {
    Json acts = Json::array();
    for (const Mat& r : m.right) acts.push_back(matrix_to_json(r));
    j["right_action"] = std::move(acts);
  }
  return j;
}

ModulePtr module_from_json(const AlgebraPtr& a, const Json& j) {
  if (!j.is_object()) throw ParseError("module spec must be an object");
  Module m;
  m.alg = a;
  try {
    m.dim = j.at("dim").get<int>();
    if (m.dim < 0) throw ParseError("module dim must be nonnegative");
    auto read_actions = [&](const char* key, std::vector<Mat>& out) {
      if (!j.contains(key)) return;
      const Json& acts = j.at(key);
      if (!acts.is_array() || int(acts.size()) != a->dim)
        throw ParseError(std::string(key) + " must list one matrix per algebra basis element");
      for (const auto& am : acts) {
        out.push_back(m.dim == 0 ? Mat(0, 0) : matrix_from_json(am));
        if (out.back().rows() != m.dim || out.back().cols() != m.dim)
          throw ParseError(std::string(key) + " matrix has wrong shape");
      }
    };
    read_actions("left_action", m.left);
    read_actions("right_action", m.right);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("module spec: ") + e.what());
  }
  if (!m.has_left() && !m.has_right())
    throw ParseError("module spec needs left_action or right_action");
  ModuleReport rep = validate_module(m);
  if (!rep.ok) {
    std::string msg = "module axioms fail:";
    for (const auto& fail : rep.failures) msg += "\n  " + fail;
    throw ValidationError(msg);
  }
  return make_module(std::move(m));
}

Calculus calculus_from_json(const AlgebraPtr& a, const Json& j) {
  if (!j.is_object() || !j.contains("type")) throw ParseError("calculus spec needs a type");
  std::string type = j.at("type").get<std::string>();
  Calculus u = universal_calculus(a);
  if (type == "universal") return u;
  if (type == "quotient") {
    std::vector<Mat> gens;
    for (const auto& g : j.value("N_generators", Json::array())) {
      Mat v = vec_from_json(g);
      if (v.rows() != a->dim * a->dim)
        throw ParseError("quotient generator must have dim² coordinates (A⊗A)");
      Mat in_univ = u.retr_univ * v;
      if (u.incl_univ * in_univ != v)
        throw ValidationError("quotient generator is not a universal one-form");
      gens.push_back(std::move(in_univ));
    }
    return quotient_calculus(u, gens);
  }
  if (type == "terminal") {
    std::vector<Mat> els;
    for (const auto& g : j.value("elements", Json::array())) {
      Mat v = vec_from_json(g);
      if (v.rows() != a->dim) throw ParseError("terminal element has wrong length");
      els.push_back(std::move(v));
    }
    if (els.empty()) throw ParseError("terminal calculus needs at least one element");
    return terminal_calculus(a, els).calc;
  }
  throw ParseError("unknown calculus type: " + type);
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace ncjet
