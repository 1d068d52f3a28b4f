// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcomp/compalg.hpp"

using namespace qcomp;

namespace {
const FieldSpec Q = FieldSpec::Q();
const FieldSpec F2 = FieldSpec::Fp(2);
const FieldSpec F3 = FieldSpec::Fp(3);
const FieldSpec F5 = FieldSpec::Fp(5);
const FieldSpec F7 = FieldSpec::Fp(7);
std::vector<FieldSpec> all_fields() { return {Q, F2, F3, F5, F7}; }
}  // namespace

TEST_CASE("verify accepts the split compositions and rejects corruption") {
  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    for (int n : {2, 4, 8}) {
      CompositionAlgebra a = make_split(n, fs);
      CHECK(verify_ok(a.composition()));
    }
    // zero tensor on dim 2 is reported as a violation
    CompositionAlgebra a2 = make_split(2, fs);
    Tensor3 zero(fs, 2);
    Composition broken(a2.form(), a2.form(), a2.form(), zero);
    Report r = verify(broken);
    CHECK_FALSE(r.ok);
    CHECK(r.failures() > 0);
    // single perturbed entry: some identity fails
    Tensor3 t = a2.composition().tensor();
    t.at(0, 0, 0) += Scalar::one(fs);
    Report r2 = verify(Composition(a2.form(), a2.form(), a2.form(), t));
    CHECK_FALSE(r2.ok);
  }
  // with anisotropic basis vectors the zero tensor violates the value
  // identity itself
  QuadForm d11 = QuadForm::diagonal(Q, {Scalar::one(Q), Scalar::one(Q)});
  Report rq = verify(Composition(d11, d11, d11, Tensor3(Q, 2)));
  CHECK_FALSE(rq.ok);
  CHECK(rq.first_failure() == "norm");
}

TEST_CASE("derive has period three and preserves validity") {
  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    CompositionAlgebra a = make_split(8, fs);
    Composition c = a.composition();
    Composition d1 = derive(c);
    CHECK(verify_ok(d1));
    Composition d2 = derive(d1);
    CHECK(verify_ok(d2));
    CHECK(derive(d2) == c);
  }
}

TEST_CASE("para-octonion composition is a fixed point of derive") {
  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    CompositionAlgebra p = para(make_split(8, fs));
    CHECK(p.symmetric());
    CHECK(derive(p.composition()) == p.composition());
  }
}

TEST_CASE("unital derived products match their closed forms") {
  // x o1 y = y prod bar(x) checked inside derived_products
  for (const FieldSpec& fs : {Q, F3, F2}) {
    for (int n : {2, 4, 8}) {
      CompositionAlgebra a = make_split(n, fs);
      auto [o1, o2] = derived_products(a);
      // x o1 e = bar(x) = e o2 x on every basis vector
      Matrix bar = a.bar_matrix();
      for (int i = 0; i < n; ++i) {
        Vec x = basis_vec(fs, n, i);
        Composition d1(a.form(), a.form(), a.form(), o1);
        Composition d2(a.form(), a.form(), a.form(), o2);
        CHECK(d1.mul(x, a.unit()) == bar.col(i));
        CHECK(d2.mul(a.unit(), x) == bar.col(i));
      }
    }
  }
}

TEST_CASE("identity suite passes for split and para compositions") {
  for (const FieldSpec& fs : {F5, F2}) {
    CAPTURE(fs.str());
    for (int n : {4, 8}) {
      CompTriple t = CompTriple::of(make_split(n, fs).composition());
      CHECK(identity_suite(t).ok);
    }
    CompTriple tp = CompTriple::of(para(make_split(8, fs)).composition());
    CHECK(identity_suite(tp).ok);
  }
}

TEST_CASE("dimension guard: no dim-3 composition, dim-1 only in char != 2") {
  // char 2 rejects the 1-dimensional space outright
  CHECK_THROWS_AS(make_dim1(F2, Scalar::one(F2), Scalar::one(F2)), Error);
  Composition c1 = make_dim1(Q, Scalar::from_int(Q, 2), Scalar::from_int(Q, 3));
  CHECK(verify_ok(c1));
  CHECK(derive(derive(derive(c1))) == c1);

  // seeded random dim-3 bilinear maps never satisfy multiplicativity
  for (const FieldSpec& fs : {Q, F3, F5, F7}) {
    CAPTURE(fs.str());
    Rng rng(2024);
    int built = 0;
    for (int seed = 0; built < 250 && seed < 4000; ++seed) {
      std::map<std::pair<int, int>, Scalar> u;
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) u[{i, j}] = rng.scalar(fs);
      Tensor3 t(fs, 3);
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) t.at(k, i, j) = rng.scalar(fs);
      try {
        Composition c(QuadForm(fs, 3, u), QuadForm(fs, 3, u),
                      QuadForm(fs, 3, u), t);
        ++built;
        CHECK_FALSE(verify_ok(c));
      } catch (const Error&) {
        // singular polar form; reroll
      }
    }
    CHECK(built == 250);
  }
}

TEST_CASE("clifford alpha: relations, blocks, bijectivity") {
  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    CompTriple t = CompTriple::of(make_split(8, fs).composition());
    CliffordRep alpha = clifford_alpha(t);  // relations checked inside
    CHECK(alpha.rep_dim() == 16);
    // C0(alpha) is block diagonal on even elements
    auto alg = alpha.algebra();
    CliffordElem even = alg->mul(alg->generator(0), alg->generator(1));
    CHECK_NOTHROW(alpha.even_blocks(even));
  }
  // a corrupted tensor fails the Clifford relations
  CompositionAlgebra a = make_split(8, F3);
  Tensor3 bad = a.composition().tensor();
  bad.at(3, 2, 5) += Scalar::one(F3);
  Composition cbad(a.form(), a.form(), a.form(), bad);
  CompTriple tbad{cbad, derive(cbad), derive(derive(cbad))};
  CHECK_THROWS_AS(clifford_alpha(tbad), Error);
}

TEST_CASE("verify_quadpair_iso over Q and F2") {
  for (const FieldSpec& fs : {Q, F2}) {
    CAPTURE(fs.str());
    CompTriple t = CompTriple::of(make_split(8, fs).composition());
    Report r = verify_quadpair_iso(t);
    CHECK(r.ok);
  }
}

TEST_CASE("pfister data") {
  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    for (int n : {2, 4, 8}) {
      CompTriple t = CompTriple::of(make_split(n, fs).composition());
      PfisterData pd = pfister_data(t);
      CHECK(pd.l1 * pd.l2 * pd.l3 == Scalar::one(fs));
      CHECK(pd.n_class.hyperbolic);  // split algebras have hyperbolic norms
      // unital: all forms represent 1, so every l_i is trivial up to
      // squares; the class of n_C is the class of q1
      CHECK(pd.n_class.same_class(classify(t.q(1))));
    }
  }
}

TEST_CASE("similitude multipliers of composition triples") {
  for (const FieldSpec& fs : {Q, F3, F2}) {
    CAPTURE(fs.str());
    CompTriple t = CompTriple::of(make_split(8, fs).composition());
    int n = 8;
    Matrix id = Matrix::identity(fs, n);
    auto lam = similitude_multiplier(t.C, t.C, id, id, id);
    REQUIRE(lam.has_value());
    CHECK((*lam)[0].is_one());
    CHECK((*lam)[1].is_one());
    CHECK((*lam)[2].is_one());

    // homothety (n1, n2, n3) has multiplier (n2 n3 / n1, n3 n1 / n2,
    // n1 n2 / n3)
    Rng rng(5);
    Scalar n1 = rng.nonzero_scalar(fs), n2 = rng.nonzero_scalar(fs),
           n3 = rng.nonzero_scalar(fs);
    auto lam2 = similitude_multiplier(t.C, t.C, id.scaled(n1), id.scaled(n2),
                                      id.scaled(n3));
    REQUIRE(lam2.has_value());
    CHECK((*lam2)[0] == n2 * n3 * n1.inverse());
    CHECK((*lam2)[1] == n3 * n1 * n2.inverse());
    CHECK((*lam2)[2] == n1 * n2 * n3.inverse());

    // a non-similitude triple is rejected
    Matrix g = id;
    g.at(0, 1) += Scalar::one(fs);
    CHECK_FALSE(similitude_multiplier(t.C, t.C, g, id, id).has_value());
  }
}

TEST_CASE("rho similitudes") {
  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    CompTriple t = CompTriple::of(make_split(8, fs).composition());
    Rng rng(7);
    int done = 0;
    while (done < 5) {
      Vec u;
      for (int i = 0; i < 8; ++i) u.push_back(rng.scalar(fs));
      if (t.q(3).eval(u).is_zero()) continue;
      auto [fwd, back] = rho_similitude(t, u);  // verified internally
      CHECK(fwd.lambda[2] == t.q(3).eval(u));
      ++done;
    }
    CHECK_THROWS_AS(rho_similitude(t, zero_vec(fs, 8)), Error);
    // composing the two rho-triples multiplies the third component
    Vec u = *find_anisotropic(t.q(3));
    Vec v = *find_vector_with_value(t.q(3), Scalar::one(fs));
    auto [a, aback] = rho_similitude(t, u);
    auto [b, bback] = rho_similitude(t, v);
    auto lam = similitude_multiplier(t.C, t.C, bback.g1 * a.g1,
                                     bback.g2 * a.g2, bback.g3 * a.g3);
    REQUIRE(lam.has_value());
    CHECK((*lam)[2] == t.q(3).eval(u) * t.q(3).eval(v));
  }
}

TEST_CASE("shift of a similitude carries the cycled multiplier") {
  for (const FieldSpec& fs : {Q, F3, F2}) {
    CAPTURE(fs.str());
    CompTriple t = CompTriple::of(make_split(8, fs).composition());
    Composition cp = swapped(t.C);
    Vec u = *find_anisotropic(t.q(3));
    auto [g, gback] = rho_similitude(t, u);
    // lambda(dg) = (l2, l3, l1) on the derived compositions
    auto cycled = similitude_multiplier(derive(t.C), derive(cp), g.g2, g.g3,
                                        g.g1);
    REQUIRE(cycled.has_value());
    CHECK((*cycled)[0] == g.lambda[1]);
    CHECK((*cycled)[1] == g.lambda[2]);
    CHECK((*cycled)[2] == g.lambda[0]);
    // mu(g1) mu(g2) mu(g3) = (l1 l2 l3)^2
    Scalar m1 = *similitude_multiplier_of(t.q(1), cp.q(1), g.g1);
    Scalar m2 = *similitude_multiplier_of(t.q(2), cp.q(2), g.g2);
    Scalar m3 = *similitude_multiplier_of(t.q(3), cp.q(3), g.g3);
    Scalar rho = g.lambda[0] * g.lambda[1] * g.lambda[2];
    CHECK(m1 * m2 * m3 == rho * rho);
    // and the lambda-mu relations themselves
    CHECK(m1 == g.lambda[1] * g.lambda[2]);
    CHECK(m2 == g.lambda[2] * g.lambda[0]);
    CHECK(m3 == g.lambda[0] * g.lambda[1]);
  }
}

TEST_CASE("multiplier witness over F7") {
  CompTriple t = CompTriple::of(make_split(8, F7).composition());
  CHECK(multiplier_witness(t, {Scalar::one(F7), Scalar::one(F7),
                               Scalar::one(F7)})
            .lambda[0]
            .is_one());
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<Scalar, 3> lam = {rng.nonzero_scalar(F7),
                                 rng.nonzero_scalar(F7),
                                 rng.nonzero_scalar(F7)};
    SimTriple w = multiplier_witness(t, lam);  // verified internally
    CHECK(w.lambda[0] == lam[0]);
    CHECK(w.lambda[1] == lam[1]);
    CHECK(w.lambda[2] == lam[2]);
  }
}

TEST_CASE("pointed suite for the split octonions") {
  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    CompositionAlgebra a = make_split(8, fs);
    CompTriple t = CompTriple::of(a.composition());
    PointedComposition p(t, a.unit(), a.unit(), a.unit());
    PointedReport rep = pointed_suite(p);
    CHECK(rep.ok);
    CHECK(rep.s_self_derived);
    // Delta components are isometries
    CHECK(similitude_multiplier_of(t.q(1), t.q(2), rep.delta.g1)->is_one());
    CHECK(similitude_multiplier_of(t.q(2), t.q(3), rep.delta.g2)->is_one());
    CHECK(similitude_multiplier_of(t.q(3), t.q(1), rep.delta.g3)->is_one());
  }
  // a non-pointed tuple is rejected
  CompositionAlgebra a = make_split(8, Q);
  CompTriple t = CompTriple::of(a.composition());
  Vec bad = a.unit();
  bad[1] = Scalar::one(Q);
  CHECK_THROWS_AS(PointedComposition(t, bad, a.unit(), a.unit()), Error);

  // rho at the distinguished vector is the conjugation of the pointed
  // space (q(e3) = 1 makes the two formulas coincide)
  PointedComposition p(t, a.unit(), a.unit(), a.unit());
  CHECK(rho_reflection(t.q(3), p.e(3)) == p.bar_mat(3));
}

TEST_CASE("S of the para-octonions stays self-derived") {
  CompositionAlgebra u = make_split(8, F3);
  CompositionAlgebra p = para(u);
  // the para-unit is the original unit
  CompTriple t = CompTriple::of(p.composition());
  PointedComposition pp(t, u.unit(), u.unit(),
                        t.mul3(u.unit(), u.unit()));
  PointedReport rep = pointed_suite(pp);
  CHECK(rep.ok);
  CHECK(rep.s_self_derived);
}
