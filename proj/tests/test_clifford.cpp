// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcomp/clifford.hpp"

using namespace qcomp;

namespace {
const FieldSpec Q = FieldSpec::Q();
const FieldSpec F2 = FieldSpec::Fp(2);
const FieldSpec F3 = FieldSpec::Fp(3);
const FieldSpec F5 = FieldSpec::Fp(5);
const FieldSpec F7 = FieldSpec::Fp(7);

std::vector<FieldSpec> all_fields() { return {Q, F2, F3, F5, F7}; }

CliffordElem random_elem(const CliffordAlgebraPtr& alg, Rng& rng,
                         int terms, bool even_only) {
  CliffordElem x = alg->zero();
  unsigned total = alg->mask_count();
  for (int t = 0; t < terms; ++t) {
    unsigned m = static_cast<unsigned>(rng.below(total));
    if (even_only && __builtin_popcount(m) % 2 != 0) continue;
    x = x + alg->monomial(m, rng.scalar(alg->form().field()));
  }
  return x;
}
}  // namespace

TEST_CASE("generator relations") {
  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(fs, 4));
    const QuadForm& q = alg->form();
    for (int i = 0; i < 4; ++i) {
      CliffordElem ei = alg->generator(i);
      CHECK(ei * ei == alg->scalar_elem(q.coeff(i, i)));
      for (int j = 0; j < 4; ++j) {
        CliffordElem ej = alg->generator(j);
        if (i != j)
          CHECK(ei * ej + ej * ei ==
                alg->scalar_elem(q.polar_matrix().at(i, j)));
      }
    }
  }
}

TEST_CASE("hyperbolic plane: (e1 e2)^2 = e1 e2") {
  auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(Q, 2));
  CliffordElem e12 = alg->generator(0) * alg->generator(1);
  CHECK(e12 * e12 == e12);
}

TEST_CASE("associativity of the Clifford product") {
  // exhaustive on monomial triples for n <= 4
  for (const FieldSpec& fs : {Q, F2, F3}) {
    CAPTURE(fs.str());
    auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(fs, 4));
    unsigned total = alg->mask_count();
    Scalar one = Scalar::one(fs);
    for (unsigned a = 0; a < total; ++a)
      for (unsigned b = 0; b < total; ++b)
        for (unsigned c = 0; c < total; ++c) {
          CliffordElem ea = alg->monomial(a, one), eb = alg->monomial(b, one),
                       ec = alg->monomial(c, one);
          CHECK((ea * eb) * ec == ea * (eb * ec));
        }
  }
  // seeded random triples for n = 8
  for (const FieldSpec& fs : {F2, F5}) {
    auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(fs, 8));
    Rng rng(101);
    for (int t = 0; t < 40; ++t) {
      CliffordElem a = random_elem(alg, rng, 3, false);
      CliffordElem b = random_elem(alg, rng, 3, false);
      CliffordElem c = random_elem(alg, rng, 3, false);
      CHECK((a * b) * c == a * (b * c));
    }
  }
}

TEST_CASE("tau is an anti-automorphism of order 2") {
  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(fs, 4));
    CHECK(alg->tau(alg->generator(0)) == alg->generator(0));
    CliffordElem e12 = alg->generator(0) * alg->generator(1);
    CliffordElem expect =
        alg->scalar_elem(alg->form().polar_matrix().at(0, 1)) - e12;
    CHECK(alg->tau(e12) == expect);
    // tau(e1 e2 e3) = e3 e2 e1
    CliffordElem e123 = e12 * alg->generator(2);
    CliffordElem rev =
        alg->generator(2) * alg->generator(1) * alg->generator(0);
    CHECK(alg->tau(e123) == rev);
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
      CliffordElem x = random_elem(alg, rng, 4, false);
      CliffordElem y = random_elem(alg, rng, 4, false);
      CHECK(alg->tau(alg->tau(x)) == x);
      CHECK(alg->tau(x * y) == alg->tau(y) * alg->tau(x));
    }
  }
}

TEST_CASE("even center and polarization of the hyperbolic plane") {
  auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(Q, 2));
  Polarization p = alg->center_idempotents();
  CliffordElem e12 = alg->generator(0) * alg->generator(1);
  bool match = (p.zplus == e12 && p.zminus == alg->one() - e12) ||
               (p.zminus == e12 && p.zplus == alg->one() - e12);
  CHECK(match);
  CHECK(p.zplus + p.zminus == alg->one());
  CHECK((p.zplus * p.zminus).is_zero());
}

TEST_CASE("center idempotents for dim 8 over every field") {
  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(fs, 8));
    Polarization p = alg->center_idempotents();
    CHECK(p.zplus + p.zminus == alg->one());
    CHECK(p.zplus * p.zplus == p.zplus);
    CHECK((p.zplus * p.zminus).is_zero());
    // centrality against all e_i e_j
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j) {
        CliffordElem g = alg->generator(i) * alg->generator(j);
        CHECK(p.zplus * g == g * p.zplus);
      }
    // tau0 fixes the idempotents when dim = 0 mod 4
    CHECK(alg->tau(p.zplus) == p.zplus);
  }
}

TEST_CASE("nontrivial discriminant is rejected") {
  // <1, -2> over Q has discriminant 2: no split center
  QuadForm q = QuadForm::diagonal(Q, {Scalar::one(Q), Scalar::from_int(Q, -2)});
  auto alg = CliffordAlgebra::make(q);
  CHECK_THROWS_AS(alg->center_idempotents(), Error);
  // Arf = 1 over F2
  std::map<std::pair<int, int>, Scalar> u;
  u[{0, 0}] = u[{0, 1}] = u[{1, 1}] = Scalar::one(F2);
  auto alg2 = CliffordAlgebra::make(QuadForm(F2, 2, u));
  CHECK_THROWS_AS(alg2->center_idempotents(), Error);
}

TEST_CASE("hyperbolic representation") {
  // dim 2: the creation/annihilation pair
  auto alg2 = CliffordAlgebra::make(QuadForm::hyperbolic(Q, 2));
  CliffordRep rep2 = CliffordRep::hyperbolic_rep(alg2);
  CHECK(rep2.rep_dim() == 2);
  Matrix anti = rep2.gen_image(0) * rep2.gen_image(1) +
                rep2.gen_image(1) * rep2.gen_image(0);
  CHECK(anti.is_identity());
  CHECK(rep2.trd(alg2->one()) == Scalar::from_int(Q, 2));
  CHECK(rep2.trd(alg2->generator(0)).is_zero());

  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(fs, 8));
    CliffordRep rep = CliffordRep::hyperbolic_rep(alg);
    CHECK(rep.rep_dim() == 16);
    CHECK(rep.trd(alg->one()) == Scalar::from_int(fs, 16));
    // the representation is faithful on a sample: apply is multiplicative
    Rng rng(13);
    for (int t = 0; t < 8; ++t) {
      CliffordElem a = random_elem(alg, rng, 3, false);
      CliffordElem b = random_elem(alg, rng, 3, false);
      CHECK(rep.apply(a * b) == rep.apply(a) * rep.apply(b));
    }
  }
  // not hyperbolic: error
  QuadForm ani = QuadForm::diagonal(Q, {Scalar::one(Q), Scalar::one(Q)});
  CHECK_THROWS_AS(CliffordRep::hyperbolic_rep(CliffordAlgebra::make(ani)),
                  Error);
}

TEST_CASE("semitraces") {
  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(fs, 8));
    CliffordRep rep = CliffordRep::hyperbolic_rep(alg);
    // s = 1: Trd(e e'), which equals 8 in char != 2
    Scalar g1 = semitrace_full(rep, alg->one());
    if (fs.characteristic() != 2)
      CHECK(g1 == Scalar::from_int(fs, 8));
    else
      CHECK(g1 == Scalar::zero(fs));  // 8 = 0 mod 2, pinned by hand
    // s = x + tau(x): the defining property gives Trd(x)
    Rng rng(19);
    for (int t = 0; t < 10; ++t) {
      CliffordElem x = random_elem(alg, rng, 4, false);
      CliffordElem s = x + alg->tau(x);
      CHECK(semitrace_full(rep, s) == rep.trd(x));
    }
    // e1 e2 (a Witt pair, b = 1) is never tau-symmetric: tau(e1 e2) =
    // 1 - e1 e2
    CHECK_THROWS_AS(semitrace_full(rep, alg->generator(0) * alg->generator(1)),
                    Error);
  }
}

TEST_CASE("even semitrace is independent of the hyperbolic pair (F2)") {
  auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(F2, 8));
  Polarization pol = alg->center_idempotents();
  WittDecomposition w = witt_decompose(alg->form());
  // two different pairs from the decomposition
  CliffordRep repA = CliffordRep::hyperbolic_rep(alg);
  // rebuild with another (e, e') by rotating the Witt pairs
  std::vector<Matrix> gens;
  for (int i = 0; i < 8; ++i) gens.push_back(repA.gen_image(i));
  CliffordRep repB(alg, gens, repA.block_a(), repA.block_b(),
                   w.pairs[1].first, w.pairs[1].second);
  Rng rng(29);
  for (int t = 0; t < 8; ++t) {
    CliffordElem x = random_elem(alg, rng, 4, true);
    CliffordElem s = x + alg->tau(x);
    if (!s.is_even()) continue;
    auto [a1, b1] = semitrace_even(repA, pol, s);
    auto [a2, b2] = semitrace_even(repB, pol, s);
    CHECK(a1 == a2);
    CHECK(b1 == b2);
  }
  // full semitrace likewise pair-independent; s = e e' + e' e = 1
  CHECK(semitrace_full(repA, alg->one()) == semitrace_full(repB, alg->one()));
}

TEST_CASE("omega membership") {
  for (const FieldSpec& fs : {Q, F2, F3, F5}) {
    CAPTURE(fs.str());
    auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(fs, 8));
    const QuadForm& q = alg->form();

    // xi = 1
    auto om1 = omega_membership(alg, alg->one());
    REQUIRE(om1.has_value());
    CHECK(om1->chi0.is_identity());
    CHECK(spin_membership(*om1));

    // xi = z central unit: chi0(z) = N(z) * identity
    const EvenCenter& ec = alg->even_center();
    CliffordElem z = alg->one() + ec.w;  // often a unit; skip if not
    auto omz = omega_membership(alg, z);
    if (omz.has_value()) {
      Scalar n = alg->center_norm(z);
      CHECK(omz->chi0 == Matrix::identity(fs, 8).scaled(n));
    }

    // xi = v w for anisotropic v, w: chi(xi) = r_v r_w, chi0 = mu_bar chi
    Rng rng(37);
    for (int t = 0; t < 5; ++t) {
      Vec v, w;
      do {
        v.clear();
        for (int i = 0; i < 8; ++i) v.push_back(rng.scalar(fs));
      } while (q.eval(v).is_zero());
      do {
        w.clear();
        for (int i = 0; i < 8; ++i) w.push_back(rng.scalar(fs));
      } while (q.eval(w).is_zero());
      CliffordElem xi = alg->from_vector(v) * alg->from_vector(w);
      auto om = omega_membership(alg, xi);
      REQUIRE(om.has_value());
      Matrix chi = reflection(q, v) * reflection(q, w);
      auto mc = alg->center_coords(om->mu_bar);
      REQUIRE(mc.has_value());
      CHECK(mc->second.is_zero());  // mu_bar is scalar on Gamma+
      CHECK(om->chi0 == chi.scaled(mc->first));
      // spin membership iff q(v) q(w) = 1
      CHECK(spin_membership(*om) == (q.eval(v) * q.eval(w)).is_one());
    }
  }
}

TEST_CASE("gamma Lie algebra") {
  // n = 2: dimension 2
  auto alg2 = CliffordAlgebra::make(QuadForm::hyperbolic(Q, 2));
  CHECK(lie_gamma_basis(alg2).elems.size() == 2);

  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(fs, 8));
    GammaBasis gb = lie_gamma_basis(alg);
    CHECK(gb.elems.size() == 29);  // m(2m-1)+1
    // c is consistent with the recorded preimages
    for (size_t k = 0; k < gb.elems.size(); ++k)
      CHECK(alg->c_of_matrix(gb.pre[k]) == gb.elems[k]);
    // closure under brackets
    SpanSolver span(fs, static_cast<int>(alg->mask_count()) / 2);
    for (const CliffordElem& e : gb.elems) span.add(alg->dense_even(e));
    Rng rng(41);
    for (int t = 0; t < 30; ++t) {
      const CliffordElem& a = gb.elems[rng.below(gb.elems.size())];
      const CliffordElem& b = gb.elems[rng.below(gb.elems.size())];
      CHECK(span.contains(alg->dense_even(a * b - b * a)));
    }
  }
}

TEST_CASE("omega Lie algebra: dimensions and kernel of chi0dot") {
  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(fs, 8));
    const QuadForm& q = alg->form();
    OmegaLieBasis ob = lie_omega_basis(alg);
    CHECK(ob.xi.size() == 30);  // m(2m-1)+2

    // images lie in go(q) and assemble to the full go (dim 29 image span
    // with kernel Z^0 of dimension 1)
    GoBasis go(q);
    SpanSolver img(fs, 64);
    for (const Matrix& m : ob.chi0dot) {
      CHECK(in_go(q, m));
      img.add(flatten(m));
    }
    CHECK(img.dim() == 29);

    // kernel of chi0dot = Z^0 = ker(Tr: Z -> F)
    Matrix sys(fs, 64, static_cast<int>(ob.xi.size()));
    for (size_t k = 0; k < ob.xi.size(); ++k) {
      Vec f = flatten(ob.chi0dot[k]);
      for (int r = 0; r < 64; ++r) sys.at(r, static_cast<int>(k)) = f[r];
    }
    std::vector<Vec> ker = kernel_basis(sys);
    CHECK(ker.size() == 1);
    // the kernel element lies in Z and has zero trace there
    CliffordElem kz = alg->zero();
    for (size_t k = 0; k < ob.xi.size(); ++k)
      if (!ker[0][k].is_zero()) kz = kz + ob.xi[k].scaled(ker[0][k]);
    auto cc = alg->center_coords(kz);
    REQUIRE(cc.has_value());
    // Tr_{Z/F}(a + b w) = 2 a + b beta
    const EvenCenter& ec = alg->even_center();
    Scalar tr = Scalar::from_int(fs, 2) * cc->first + cc->second * ec.beta;
    CHECK(tr.is_zero());

    // chi0dot(z) = Tr(z) for central z
    CliffordElem z = alg->one().scaled(Scalar::from_int(fs, 2)) + ec.w;
    Matrix img_z = chi0dot_of(alg, z);
    Scalar trz = Scalar::from_int(fs, 2) * Scalar::from_int(fs, 2) +
                 Scalar::one(fs) * ec.beta;
    CHECK(img_z == Matrix::identity(fs, 8).scaled(trz));
  }
}

TEST_CASE("omega = gamma + Z in characteristic != 2") {
  for (const FieldSpec& fs : {Q, F3, F5, F7}) {
    CAPTURE(fs.str());
    auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(fs, 8));
    OmegaLieBasis ob = lie_omega_basis(alg);
    GammaBasis gb = lie_gamma_basis(alg);
    int d = static_cast<int>(alg->mask_count()) / 2;
    SpanSolver sum(fs, d);
    for (const CliffordElem& e : gb.elems) sum.add(alg->dense_even(e));
    sum.add(alg->dense_even(alg->one()));
    sum.add(alg->dense_even(alg->even_center().w));
    SpanSolver om(fs, d);
    for (const CliffordElem& e : ob.xi) om.add(alg->dense_even(e));
    CHECK(om.same_span(sum));
  }
}

TEST_CASE("spin dimension and char-2 inclusions") {
  for (const FieldSpec& fs : all_fields()) {
    CAPTURE(fs.str());
    auto alg = CliffordAlgebra::make(QuadForm::hyperbolic(fs, 8));
    OmegaLieBasis ob = lie_omega_basis(alg);
    // spin = ker(mudot_bar : omega -> Z): rows are the two Z coordinates
    Matrix sys(fs, 2, static_cast<int>(ob.xi.size()));
    for (size_t k = 0; k < ob.xi.size(); ++k) {
      auto [a, b] = mudot_bar_of(alg, ob.xi[k]);
      sys.at(0, static_cast<int>(k)) = a;
      sys.at(1, static_cast<int>(k)) = b;
    }
    std::vector<Vec> spin = kernel_basis(sys);
    CHECK(spin.size() == 28);
    if (fs.characteristic() == 2) {
      // Z is contained in spin
      int d = static_cast<int>(alg->mask_count()) / 2;
      SpanSolver spin_span(fs, d);
      for (const Vec& lam : spin) {
        CliffordElem e = alg->zero();
        for (size_t k = 0; k < ob.xi.size(); ++k)
          if (!lam[k].is_zero()) e = e + ob.xi[k].scaled(lam[k]);
        spin_span.add(alg->dense_even(e));
      }
      CHECK(spin_span.contains(alg->dense_even(alg->one())));
      CHECK(spin_span.contains(alg->dense_even(alg->even_center().w)));
    }
  }
}
