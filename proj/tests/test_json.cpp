// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcomp/json_io.hpp"

using namespace qcomp;

namespace {
const FieldSpec Q = FieldSpec::Q();
const FieldSpec F2 = FieldSpec::Fp(2);
const FieldSpec F7 = FieldSpec::Fp(7);
}  // namespace

TEST_CASE("field specs round trip") {
  for (const FieldSpec& fs : {Q, F2, F7}) {
    CHECK(field_from_json(field_to_json(fs)) == fs);
  }
  CHECK_THROWS_AS(field_from_json(Json{{"kind", "R"}}), Error);
  CHECK_THROWS_AS(field_from_json(Json{{"kind", "Fp"}, {"p", 6}}), Error);
}

TEST_CASE("scalars round trip and stay canonical") {
  Scalar a = Scalar::from_fraction(Q, -6, 4);
  Json j = scalar_to_json(a);
  CHECK(j.get<std::string>() == "-3/2");
  CHECK(scalar_from_json(j, Q) == a);
  Scalar b = Scalar::from_int(F7, 12);
  CHECK(scalar_to_json(b).get<long long>() == 5);
  CHECK(scalar_from_json(scalar_to_json(b), F7) == b);
  // integers are accepted for rationals too
  CHECK(scalar_from_json(Json(3), Q) == Scalar::from_int(Q, 3));
}

TEST_CASE("quadratic forms round trip") {
  for (const FieldSpec& fs : {Q, F2, F7}) {
    QuadForm q = QuadForm::hyperbolic(fs, 4);
    QuadForm back = quadform_from_json(quadform_to_json(q));
    CHECK(back == q);
  }
  QuadForm d = QuadForm::diagonal(
      Q, {Scalar::from_fraction(Q, 1, 2), Scalar::from_int(Q, -3)});
  CHECK(quadform_from_json(quadform_to_json(d)) == d);
}

TEST_CASE("compositions and algebras round trip, dumps are canonical") {
  for (const FieldSpec& fs : {Q, F2, F7}) {
    CAPTURE(fs.str());
    for (int n : {2, 4, 8}) {
      CompositionAlgebra a = make_split(n, fs);
      Json j = algebra_to_json(a);
      CompositionAlgebra back = algebra_from_json(j);
      CHECK(back.composition() == a.composition());
      CHECK(back.unit() == a.unit());
      // byte-stable canonical dump
      CHECK(canonical_dump(j) == canonical_dump(algebra_to_json(back)));
    }
    // non-unital round trip
    CompositionAlgebra p = para(make_split(8, fs));
    CompositionAlgebra pback = algebra_from_json(algebra_to_json(p));
    CHECK_FALSE(pback.unital());
    CHECK(pback.composition() == p.composition());
  }
}

TEST_CASE("derive three times is byte-identical") {
  CompositionAlgebra a = make_split(8, F7);
  Composition c = a.composition();
  std::string before = canonical_dump(composition_to_json(c));
  Composition d3 = derive(derive(derive(c)));
  CHECK(canonical_dump(composition_to_json(d3)) == before);
}

TEST_CASE("reports serialize with per-case identities") {
  CompositionAlgebra a = make_split(2, F2);
  Tensor3 z(F2, 2);
  Report r = verify(Composition(a.form(), a.form(), a.form(), z));
  Json j = report_to_json(r);
  CHECK_FALSE(j.at("ok").get<bool>());
  CHECK(j.at("failures").get<int>() > 0);
  CHECK(j.at("cases").is_array());
  CHECK(j.at("cases").size() == r.cases.size());
}

TEST_CASE("malformed input is rejected as bad input") {
  CHECK_THROWS_AS(quadform_from_json(Json{{"dim", 2}}), Error);
  CHECK_THROWS_AS(load_json_file("/nonexistent/definitely-missing.json"),
                  Error);
  CHECK_THROWS_AS(
      composition_from_json(Json{{"q1", quadform_to_json(
                                            QuadForm::hyperbolic(Q, 2))}}),
      Error);
}
