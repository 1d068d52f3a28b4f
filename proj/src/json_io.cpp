// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#include "qcomp/json_io.hpp"

#include <fstream>

namespace qcomp {

Json field_to_json(const FieldSpec& fs) {
  if (fs.is_rationals()) return Json{{"kind", "Q"}};
  return Json{{"kind", "Fp"}, {"p", fs.p()}};
}

FieldSpec field_from_json(const Json& j) {
  check(j.is_object() && j.contains("kind"), errc::bad_input,
        "field spec needs a 'kind'");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "Q") return FieldSpec::Q();
  check(kind == "Fp", errc::bad_input, "unknown field kind '" + kind + "'");
  check(j.contains("p"), errc::bad_input, "prime field needs 'p'");
  return FieldSpec::Fp(j.at("p").get<long>());
}

Json scalar_to_json(const Scalar& s) {
  if (s.field().is_prime_field()) return Json(s.residue());
  return Json(s.str());
}

Scalar scalar_from_json(const Json& j, const FieldSpec& fs) {
  if (j.is_number_integer()) return Scalar::from_int(fs, j.get<long long>());
  check(j.is_string(), errc::bad_input, "scalar must be a string or integer");
  return scalar_from_string(fs, j.get<std::string>());
}

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (const Scalar& s : v) a.push_back(scalar_to_json(s));
  return a;
}

Vec vec_from_json(const Json& j, const FieldSpec& fs) {
  check(j.is_array(), errc::bad_input, "vector must be an array");
  Vec v;
  for (const Json& e : j) v.push_back(scalar_from_json(e, fs));
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json a = Json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a.push_back(scalar_to_json(m.at(i, j)));
  return a;
}

Matrix matrix_from_json(const Json& j, const FieldSpec& fs, int rows,
                        int cols) {
  Vec v = vec_from_json(j, fs);
  return unflatten(fs, rows, cols, v);
}

Json quadform_to_json(const QuadForm& q) {
  Json upper = Json::array();
  for (int i = 0; i < q.dim(); ++i)
    for (int j = i; j < q.dim(); ++j)
      if (!q.coeff(i, j).is_zero())
        upper.push_back(Json{i, j, scalar_to_json(q.coeff(i, j))});
  return Json{{"field", field_to_json(q.field())},
              {"dim", q.dim()},
              {"upper", upper}};
}

QuadForm quadform_from_json(const Json& j) {
  check(j.is_object() && j.contains("field") && j.contains("dim") &&
            j.contains("upper"),
        errc::bad_input, "quadratic form needs field/dim/upper");
  FieldSpec fs = field_from_json(j.at("field"));
  int dim = j.at("dim").get<int>();
  std::map<std::pair<int, int>, Scalar> upper;
  for (const Json& e : j.at("upper")) {
    check(e.is_array() && e.size() == 3, errc::bad_input,
          "upper entries are [i, j, coeff] triples");
    upper[{e.at(0).get<int>(), e.at(1).get<int>()}] =
        scalar_from_json(e.at(2), fs);
  }
  return QuadForm(fs, dim, upper);
}

Json composition_to_json(const Composition& c) {
  Json tensor = Json::array();
  int n = c.dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!c.tensor().at(k, i, j).is_zero())
          tensor.push_back(
              Json{k, i, j, scalar_to_json(c.tensor().at(k, i, j))});
  return Json{{"q1", quadform_to_json(c.q(1))},
              {"q2", quadform_to_json(c.q(2))},
              {"q3", quadform_to_json(c.q(3))},
              {"tensor", tensor}};
}

Composition composition_from_json(const Json& j) {
  check(j.is_object() && j.contains("q1") && j.contains("q2") &&
            j.contains("q3") && j.contains("tensor"),
        errc::bad_input, "composition needs q1/q2/q3/tensor");
  QuadForm q1 = quadform_from_json(j.at("q1"));
  QuadForm q2 = quadform_from_json(j.at("q2"));
  QuadForm q3 = quadform_from_json(j.at("q3"));
  Tensor3 t(q1.field(), q1.dim());
  for (const Json& e : j.at("tensor")) {
    check(e.is_array() && e.size() == 4, errc::bad_input,
          "tensor entries are [k, i, j, scalar] tuples");
    int k = e.at(0).get<int>(), i = e.at(1).get<int>(), jj = e.at(2).get<int>();
    check(0 <= k && k < t.dim() && 0 <= i && i < t.dim() && 0 <= jj &&
              jj < t.dim(),
          errc::bad_input, "tensor index out of range");
    t.at(k, i, jj) = scalar_from_json(e.at(3), q1.field());
  }
  return Composition(q1, q2, q3, t);
}

Json algebra_to_json(const CompositionAlgebra& a) {
  Json j = composition_to_json(a.composition());
  j["unit"] = a.unital() ? vec_to_json(a.unit()) : Json(nullptr);
  return j;
}

CompositionAlgebra algebra_from_json(const Json& j) {
  Composition c = composition_from_json(j);
  std::optional<Vec> unit;
  if (j.contains("unit") && !j.at("unit").is_null())
    unit = vec_from_json(j.at("unit"), c.field());
  return CompositionAlgebra(c, unit);
}

Json report_to_json(const Report& r) {
  Json cases = Json::array();
  for (const IdentityCase& c : r.cases) {
    Json e{{"identity", c.id}, {"indices", c.indices}, {"pass", c.pass}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    cases.push_back(std::move(e));
  }
  return Json{{"ok", r.ok},
              {"checked", r.cases.size()},
              {"failures", r.failures()},
              {"cases", cases}};
}

std::string canonical_dump(const Json& j) { return j.dump(); }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  check(in.good(), errc::bad_input, "cannot read '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    fail(errc::bad_input, "JSON parse error in '" + path + "': " + e.what());
  }
  return j;
}

}  // namespace qcomp
