// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "qcomp/composition.hpp"

namespace qcomp {

/// A composition algebra (A, q, prod): a composition whose three spaces
/// coincide, with optional unit. Zorn vector-matrix convention for the
/// split octonions:
///   (a, v; w, b) (a', v'; w', b') =
///     (a a' + v.w', a v' + b' v - w x w'; a' w + b w' + v x v',
///      b b' + w.v')
/// with norm q = a b - v.w. Coordinates: (a, v1, v2, v3, w1, w2, w3, b).
class CompositionAlgebra {
 public:
  CompositionAlgebra(Composition c, std::optional<Vec> unit);

  const Composition& composition() const { return c_; }
  const QuadForm& form() const { return c_.q(1); }
  int dim() const { return c_.dim(); }
  const FieldSpec& field() const { return c_.field(); }
  Vec product(const Vec& x, const Vec& y) const { return c_.mul(x, y); }

  bool unital() const { return unit_.has_value(); }
  const Vec& unit() const;
  /// Whether the derived composition equals the composition itself.
  bool symmetric() const;
  /// Conjugation of the pointed space (A, q, unit); requires a unit.
  Vec bar(const Vec& x) const;
  Matrix bar_matrix() const;

 private:
  Composition c_;
  std::optional<Vec> unit_;
};

/// The split unital composition algebra of dimension 2 (F x F), 4 (2x2
/// matrices under determinant), or 8 (Zorn vector matrices).
CompositionAlgebra make_split(int n, const FieldSpec& fs);

/// The one-dimensional composition <l1> x <l2> -> <l1 l2> (char != 2 only;
/// rejected over F_2 by the singular polar form).
Composition make_dim1(const FieldSpec& fs, const Scalar& l1, const Scalar& l2);

/// The para-algebra x * y = bar(x) prod bar(y): a symmetric composition
/// algebra with para-unit e.
CompositionAlgebra para(const CompositionAlgebra& a);

/// The two derived products of a unital algebra, computed generically and
/// against the closed forms x o1 y = y prod bar(x), x o2 y = bar(y) prod x;
/// the two computations are asserted equal.
std::pair<Tensor3, Tensor3> derived_products(const CompositionAlgebra& a);

/// Unitalization: new product x * y = r_u^{-1}(x) prod l_u^{-1}(y) for a
/// norm-one u, with unit u prod u; the triple (r_u, l_u, id) is returned
/// as a verified isomorphism of compositions.
struct KaplanskyResult {
  CompositionAlgebra unital;
  SimTriple iso;  // composition isomorphism, multiplier (1,1,1)
  Vec u;
};
KaplanskyResult kaplansky(const CompositionAlgebra& a,
                          long bound = kDefaultHeightBound);

/// Isotopy test f3(x prod y) = f1(x) prod' f2(y) against the similitude
/// test; accepted triples carry multiplier (mu(f2), mu(f1), 1).
struct IsotopyVerdict {
  bool isotopy = false;
  bool similitude = false;
  std::optional<std::array<Scalar, 3>> lambda;
};
IsotopyVerdict isotopy_dictionary(const CompositionAlgebra& a,
                                  const CompositionAlgebra& b,
                                  const Matrix& f1, const Matrix& f2,
                                  const Matrix& f3);

/// Whether f is an algebra automorphism; equivalently (f, f, f) is an
/// automorphism of the composition and of both derived compositions.
bool automorphism_check(const CompositionAlgebra& a, const Matrix& f);

}  // namespace qcomp
