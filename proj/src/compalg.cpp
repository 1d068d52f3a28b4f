// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#include "qcomp/compalg.hpp"

#include <functional>

namespace qcomp {

CompositionAlgebra::CompositionAlgebra(Composition c, std::optional<Vec> unit)
    : c_(std::move(c)), unit_(std::move(unit)) {
  check(c_.q(1) == c_.q(2) && c_.q(2) == c_.q(3), errc::bad_input,
        "composition algebra needs one shared quadratic space");
  if (unit_) {
    check(form().eval(*unit_).is_one(), errc::not_unital, "q(e) != 1");
    int n = dim();
    for (int i = 0; i < n; ++i) {
      Vec x = basis_vec(field(), n, i);
      check(product(*unit_, x) == x && product(x, *unit_) == x,
            errc::not_unital, "unit fails on a basis vector");
    }
  }
}

const Vec& CompositionAlgebra::unit() const {
  check(unit_.has_value(), errc::not_unital, "algebra has no unit");
  return *unit_;
}

bool CompositionAlgebra::symmetric() const {
  return derive(c_) == c_;
}

Vec CompositionAlgebra::bar(const Vec& x) const {
  const Vec& e = unit();
  return vsub(vscale(form().polar(e, x), e), x);
}

Matrix CompositionAlgebra::bar_matrix() const {
  int n = dim();
  std::vector<Vec> cols;
  for (int j = 0; j < n; ++j) cols.push_back(bar(basis_vec(field(), n, j)));
  return Matrix::from_cols(field(), cols);
}

// --- split constructors ---

namespace {

Tensor3 tensor_from_products(const FieldSpec& fs, int n,
                             const std::function<Vec(int, int)>& prod) {
  Tensor3 t(fs, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec v = prod(i, j);
      for (int k = 0; k < n; ++k) t.at(k, i, j) = v[k];
    }
  return t;
}

}  // namespace

CompositionAlgebra make_split(int n, const FieldSpec& fs) {
  check(n == 2 || n == 4 || n == 8, errc::bad_input,
        "split algebras exist in dimensions 2, 4, 8");
  Scalar one = Scalar::one(fs);
  if (n == 2) {
    // F x F with coordinatewise product, q(x) = x0 x1
    std::map<std::pair<int, int>, Scalar> u;
    u[{0, 1}] = one;
    QuadForm q(fs, 2, u);
    Tensor3 t = tensor_from_products(fs, 2, [&](int i, int j) {
      Vec v = zero_vec(fs, 2);
      if (i == j) v[i] = one;
      return v;
    });
    return CompositionAlgebra(Composition(q, q, q, t), Vec{one, one});
  }
  if (n == 4) {
    // 2x2 matrices (a, b; c, d) ~ coordinates (a, b, c, d), q = det
    std::map<std::pair<int, int>, Scalar> u;
    u[{0, 3}] = one;
    u[{1, 2}] = -one;
    QuadForm q(fs, 4, u);
    auto mat_mul = [&](int i, int j) {
      // E_i * E_j in the (a, b, c, d) coordinates
      int ri = i / 2, ci = i % 2, rj = j / 2, cj = j % 2;
      Vec v = zero_vec(fs, 4);
      if (ci == rj) v[ri * 2 + cj] = one;
      return v;
    };
    Vec e = {one, Scalar::zero(fs), Scalar::zero(fs), one};
    return CompositionAlgebra(
        Composition(q, q, q, tensor_from_products(fs, 4, mat_mul)), e);
  }
  // Zorn vector matrices (a, v; w, b), coordinates (a, v1, v2, v3, w1, w2,
  // w3, b), q = a b - v.w
  std::map<std::pair<int, int>, Scalar> u;
  u[{0, 7}] = one;
  for (int i = 0; i < 3; ++i) u[{1 + i, 4 + i}] = -one;
  QuadForm q(fs, 8, u);
  auto cross = [&](const Vec& x, const Vec& y) {
    Vec v = zero_vec(fs, 3);
    v[0] = x[1] * y[2] - x[2] * y[1];
    v[1] = x[2] * y[0] - x[0] * y[2];
    v[2] = x[0] * y[1] - x[1] * y[0];
    return v;
  };
  auto dot3 = [&](const Vec& x, const Vec& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
  };
  auto zorn = [&](const Vec& x, const Vec& y) {
    Scalar a = x[0], b = x[7], ap = y[0], bp = y[7];
    Vec v = {x[1], x[2], x[3]}, w = {x[4], x[5], x[6]};
    Vec vp = {y[1], y[2], y[3]}, wp = {y[4], y[5], y[6]};
    Vec out = zero_vec(fs, 8);
    out[0] = a * ap + dot3(v, wp);
    Vec top = vadd(vadd(vscale(a, vp), vscale(bp, v)), vneg(cross(w, wp)));
    Vec bot = vadd(vadd(vscale(ap, w), vscale(b, wp)), cross(v, vp));
    for (int i = 0; i < 3; ++i) {
      out[1 + i] = top[i];
      out[4 + i] = bot[i];
    }
    out[7] = b * bp + dot3(w, vp);
    return out;
  };
  Tensor3 t = tensor_from_products(fs, 8, [&](int i, int j) {
    return zorn(basis_vec(fs, 8, i), basis_vec(fs, 8, j));
  });
  Vec e = zero_vec(fs, 8);
  e[0] = e[7] = one;
  return CompositionAlgebra(Composition(q, q, q, t), e);
}

Composition make_dim1(const FieldSpec& fs, const Scalar& l1,
                      const Scalar& l2) {
  check(!l1.is_zero() && !l2.is_zero(), errc::bad_input, "singular form");
  // q1 = <l1>, q2 = <l2>, q3 = <l1 l2>, x *3 y = x y (coordinates)
  QuadForm q1 = QuadForm::diagonal(fs, {l1});
  QuadForm q2 = QuadForm::diagonal(fs, {l2});
  QuadForm q3 = QuadForm::diagonal(fs, {l1 * l2});
  Tensor3 t(fs, 1);
  t.at(0, 0, 0) = Scalar::one(fs);
  return Composition(q1, q2, q3, t);
}

CompositionAlgebra para(const CompositionAlgebra& a) {
  check(a.unital(), errc::not_unital, "para of a non-unital algebra");
  const FieldSpec& fs = a.field();
  int n = a.dim();
  Matrix bar = a.bar_matrix();
  Tensor3 t = tensor_from_products(fs, n, [&](int i, int j) {
    return a.product(bar.col(i), bar.col(j));
  });
  Composition c(a.form(), a.form(), a.form(), t);
  CompositionAlgebra out(c, std::nullopt);
  check(out.symmetric(), errc::inconsistent, "para algebra is not symmetric");
  // para-unit: e * x = x * e = bar(x)
  for (int i = 0; i < n; ++i) {
    Vec x = basis_vec(fs, n, i);
    check(out.product(a.unit(), x) == a.bar(x) &&
              out.product(x, a.unit()) == a.bar(x),
          errc::inconsistent, "para-unit identity failed");
  }
  return out;
}

std::pair<Tensor3, Tensor3> derived_products(const CompositionAlgebra& a) {
  check(a.unital(), errc::not_unital, "derived products of non-unital input");
  const FieldSpec& fs = a.field();
  int n = a.dim();
  Composition d1 = derive(a.composition());
  Composition d2 = derive(d1);
  Matrix bar = a.bar_matrix();
  Tensor3 closed1 = tensor_from_products(fs, n, [&](int i, int j) {
    // x o1 y = y prod bar(x)
    return a.product(basis_vec(fs, n, j), bar.col(i));
  });
  Tensor3 closed2 = tensor_from_products(fs, n, [&](int i, int j) {
    // x o2 y = bar(y) prod x
    return a.product(bar.col(j), basis_vec(fs, n, i));
  });
  check(d1.tensor() == closed1, errc::inconsistent,
        "first derived product differs from its closed form");
  check(d2.tensor() == closed2, errc::inconsistent,
        "second derived product differs from its closed form");
  return {closed1, closed2};
}

KaplanskyResult kaplansky(const CompositionAlgebra& a, long bound) {
  const FieldSpec& fs = a.field();
  int n = a.dim();
  auto u = find_vector_with_value(a.form(), Scalar::one(fs), bound);
  check(u.has_value(), errc::no_norm_one_vector,
        "no vector of norm 1 within the search bound");
  Matrix lmat = a.composition().left_mat(*u);
  Matrix rmat = a.composition().right_mat(*u);
  Matrix linv = inverse(lmat), rinv = inverse(rmat);
  Tensor3 t = tensor_from_products(fs, n, [&](int i, int j) {
    return a.product(rinv.apply(basis_vec(fs, n, i)),
                     linv.apply(basis_vec(fs, n, j)));
  });
  Composition c(a.form(), a.form(), a.form(), t);
  Vec e = a.product(*u, *u);
  CompositionAlgebra unital(c, e);  // validates the unit laws
  // (r_u, l_u, id) is an isomorphism of compositions
  auto lam = similitude_multiplier(a.composition(), c, rmat, lmat,
                                   Matrix::identity(fs, n));
  check(lam.has_value(), errc::inconsistent,
        "unitalization triple is not a similitude");
  Scalar one = Scalar::one(fs);
  check((*lam)[0] == one && (*lam)[1] == one && (*lam)[2] == one,
        errc::inconsistent, "unitalization multiplier is not (1,1,1)");
  return {unital, SimTriple{rmat, lmat, Matrix::identity(fs, n), *lam}, *u};
}

IsotopyVerdict isotopy_dictionary(const CompositionAlgebra& a,
                                  const CompositionAlgebra& b,
                                  const Matrix& f1, const Matrix& f2,
                                  const Matrix& f3) {
  check(!determinant(f1).is_zero() && !determinant(f2).is_zero() &&
            !determinant(f3).is_zero(),
        errc::bad_input, "isotopy components must be invertible");
  IsotopyVerdict out;
  int n = a.dim();
  const FieldSpec& fs = a.field();
  out.isotopy = true;
  for (int i = 0; i < n && out.isotopy; ++i)
    for (int j = 0; j < n && out.isotopy; ++j) {
      Vec lhs = f3.apply(a.composition().mul_basis(i, j));
      Vec rhs = b.product(f1.col(i), f2.col(j));
      out.isotopy = lhs == rhs;
    }
  auto lam =
      similitude_multiplier(a.composition(), b.composition(), f1, f2, f3);
  out.similitude = lam.has_value() && (*lam)[2].is_one();
  if (lam) out.lambda = *lam;
  // the two notions agree, and accepted triples have the multiplier shape
  // (mu(f2), mu(f1), 1)
  check(out.isotopy == out.similitude, errc::inconsistent,
        "isotopy and similitude verdicts disagree");
  if (out.isotopy) {
    Scalar mu1 = *similitude_multiplier_of(a.form(), b.form(), f1);
    Scalar mu2 = *similitude_multiplier_of(a.form(), b.form(), f2);
    check((*lam)[0] == mu2 && (*lam)[1] == mu1 && (*lam)[2] == Scalar::one(fs),
          errc::inconsistent, "isotopy multiplier shape violated");
  }
  return out;
}

bool automorphism_check(const CompositionAlgebra& a, const Matrix& f) {
  check(!determinant(f).is_zero(), errc::bad_input,
        "automorphism candidate must be invertible");
  int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec lhs = f.apply(a.composition().mul_basis(i, j));
      Vec rhs = a.product(f.col(i), f.col(j));
      if (!(lhs == rhs)) return false;
    }
  // multiplicativity forces mu(f) = 1 and membership in all three
  // automorphism groups; certify rather than assume
  auto mu = similitude_multiplier_of(a.form(), a.form(), f);
  check(mu.has_value() && mu->is_one(), errc::inconsistent,
        "multiplicative map with multiplier != 1");
  Composition d1 = derive(a.composition());
  Composition d2 = derive(d1);
  auto l0 = similitude_multiplier(a.composition(), a.composition(), f, f, f);
  auto l1 = similitude_multiplier(d1, d1, f, f, f);
  auto l2 = similitude_multiplier(d2, d2, f, f, f);
  auto is111 = [&](const std::optional<std::array<Scalar, 3>>& l) {
    return l.has_value() && (*l)[0].is_one() && (*l)[1].is_one() &&
           (*l)[2].is_one();
  };
  check(is111(l0) && is111(l1) && is111(l2), errc::inconsistent,
        "automorphism fails on a derived composition");
  return true;
}

}  // namespace qcomp
