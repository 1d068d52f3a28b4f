// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <string>

#include "qcomp/clifford.hpp"

namespace qcomp {

/// Structure tensor of a bilinear map V1 x V2 -> V3 over a common field:
/// e_i * f_j = sum_k c[k][i][j] g_k.
class Tensor3 {
 public:
  Tensor3() : n_(0) {}
  Tensor3(const FieldSpec& fs, int n)
      : fs_(fs), n_(n),
        a_(static_cast<size_t>(n) * n * n, Scalar::zero(fs)) {}

  int dim() const { return n_; }
  const FieldSpec& field() const { return fs_; }
  Scalar& at(int k, int i, int j) {
    return a_[(static_cast<size_t>(k) * n_ + i) * n_ + j];
  }
  const Scalar& at(int k, int i, int j) const {
    return a_[(static_cast<size_t>(k) * n_ + i) * n_ + j];
  }
  bool operator==(const Tensor3& o) const {
    return n_ == o.n_ && fs_ == o.fs_ && a_ == o.a_;
  }

 private:
  FieldSpec fs_;
  int n_;
  std::vector<Scalar> a_;
};

/// One checked identity instance in a report.
struct IdentityCase {
  std::string id;            // stable identity tag, e.g. "compp5"
  std::vector<int> indices;  // basis tuple
  bool pass = true;
  std::string detail;
};

struct Report {
  std::vector<IdentityCase> cases;
  bool ok = true;
  void add(IdentityCase c) {
    ok = ok && c.pass;
    cases.push_back(std::move(c));
  }
  int failures() const {
    int f = 0;
    for (const auto& c : cases) f += c.pass ? 0 : 1;
    return f;
  }
  std::string first_failure() const {
    for (const auto& c : cases)
      if (!c.pass) return c.id;
    return "";
  }
};

/// A composition of quadratic spaces: three equal-dimensional forms over a
/// common field and the structure tensor of *3 : V1 x V2 -> V3. Dimension
/// is restricted to 1, 2, 4, 8 (1 only in characteristic != 2, where the
/// one-dimensional form is already rejected by QuadForm).
class Composition {
 public:
  Composition(QuadForm q1, QuadForm q2, QuadForm q3, Tensor3 tensor);

  const QuadForm& q(int i) const;  // i in {1, 2, 3}
  const Tensor3& tensor() const { return c_; }
  int dim() const { return q1_.dim(); }
  const FieldSpec& field() const { return q1_.field(); }

  Vec mul(const Vec& x1, const Vec& x2) const;
  Vec mul_basis(int i, int j) const;
  /// Matrix of the left multiplication x2 -> x1 * x2 (V2 -> V3).
  Matrix left_mat(const Vec& x1) const;
  /// Matrix of x1 -> x1 * x2 (V1 -> V3).
  Matrix right_mat(const Vec& x2) const;

  bool operator==(const Composition& o) const;

 private:
  QuadForm q1_, q2_, q3_;
  Tensor3 c_;
};

/// Exact multiplicativity check: the full polarized coefficient-identity
/// set, complete in every characteristic. Reports violations.
Report verify(const Composition& c);
bool verify_ok(const Composition& c);

/// The derived composition: spaces cycled to (q2, q3, q1) and the tensor
/// of *1 solved from b1(x1, x2 *1 x3) = b3(x3, x1 *3 x2).
Composition derive(const Composition& c);

/// A composition bundled with both of its derivatives. mul1/mul2/mul3
/// follow the index-of-target convention; l_i / r_i are the one-sided
/// multiplications V_{i+1} -> V_{i+2} and V_{i+2} -> V_{i+1}.
struct CompTriple {
  Composition C, dC, ddC;

  static CompTriple of(const Composition& c);

  Vec mul3(const Vec& x1, const Vec& x2) const { return C.mul(x1, x2); }
  Vec mul1(const Vec& x2, const Vec& x3) const { return dC.mul(x2, x3); }
  Vec mul2(const Vec& x3, const Vec& x1) const { return ddC.mul(x3, x1); }
  const QuadForm& q(int i) const { return C.q(i); }

  Matrix l1(const Vec& x1) const { return C.left_mat(x1); }     // V2 -> V3
  Matrix r1(const Vec& x1) const { return ddC.right_mat(x1); }  // V3 -> V2
  Matrix l2(const Vec& x2) const { return dC.left_mat(x2); }    // V3 -> V1
  Matrix r2(const Vec& x2) const { return C.right_mat(x2); }    // V1 -> V3
  Matrix l3(const Vec& x3) const { return ddC.left_mat(x3); }   // V1 -> V2
  Matrix r3(const Vec& x3) const { return dC.right_mat(x3); }   // V2 -> V1
};

/// The eighteen derived-composition identities, checked exhaustively on
/// basis tuples together with their polarized companions.
Report identity_suite(const CompTriple& t);

/// The Clifford map of a dimension-8 composition: C(V1, q1) represented on
/// V2 + V3 through alpha(x1) = [[0, r], [l, 0]].
CliffordRep clifford_alpha(const CompTriple& t);

/// Checks that C(alpha) and C_0(alpha) respect the canonical involutions
/// and semitraces on both sides (including bijectivity of C(alpha)).
Report verify_quadpair_iso(const CompTriple& t);

struct PfisterData {
  Scalar l1, l2, l3;      // q_i isometric to <l_i> n_C, l1 l2 l3 = 1
  ClassRecord n_class;    // isometry class of n_C
  QuadForm n_form;        // a concrete representative <l1^{-1}> q1
  std::string choice;     // which anisotropic vector fixed l1
};
PfisterData pfister_data(const CompTriple& t, long bound = kDefaultHeightBound);

/// lambda_3 with l3 g3(x1 *3 x2) = g1(x1) *3' g2(x2) on all basis pairs,
/// extended to the full multiplier triple; nullopt when the equation is
/// inconsistent or the g_i are not similitudes.
std::optional<std::array<Scalar, 3>> similitude_multiplier(
    const Composition& src, const Composition& dst, const Matrix& g1,
    const Matrix& g2, const Matrix& g3);

struct SimTriple {
  Matrix g1, g2, g3;
  std::array<Scalar, 3> lambda;
};

/// The composition with the first two spaces swapped:
/// x2 *'3 x1 = x1 *3 x2 on (V2, V1, V3).
Composition swapped(const Composition& c);

/// The two rho-similitudes attached to an anisotropic u3: (l, r, rho) from
/// C to swapped(C) and (r, l, rho) back, both with multiplier (1,1,q3(u3)).
std::pair<SimTriple, SimTriple> rho_similitude(const CompTriple& t,
                                               const Vec& u3);

/// An auto-similitude of C with the prescribed composition multiplier,
/// built from rho-pairs and a homothety (not_in_multiplier_group when a
/// needed value is not represented).
SimTriple multiplier_witness(const CompTriple& t,
                             const std::array<Scalar, 3>& lambda,
                             long bound = kDefaultHeightBound);

/// Pointed composition: distinguished unit-norm vectors with e1 *3 e2 = e3.
class PointedComposition {
 public:
  PointedComposition(CompTriple t, Vec e1, Vec e2, Vec e3);
  const CompTriple& triple() const { return t_; }
  const Vec& e(int i) const;
  /// bar(x) = e b(e, x) - x on the i-th space.
  Vec bar(int i, const Vec& x) const;
  Matrix bar_mat(int i) const;

 private:
  CompTriple t_;
  Vec e1_, e2_, e3_;
};

struct PointedReport {
  Report identities;      // the bar/unit identity family
  SimTriple delta;        // isomorphism C -> dC
  Composition s_tensor;   // S(C): the self-derived composition on V3
  SimTriple s_iso;        // isomorphism S(C) -> C
  bool s_self_derived = false;
  bool ok = false;
};
PointedReport pointed_suite(const PointedComposition& p);

struct IsoDecision {
  bool similar = false;
  bool isomorphic = false;
  std::optional<SimTriple> witness;  // finite fields only
};
/// Similarity (Pfister-class) and isomorphism (componentwise isometry)
/// decision; over a finite field an explicit isomorphism witness is built
/// through the triality machinery (see triality module).
IsoDecision iso_decision(const CompTriple& a, const CompTriple& b,
                         bool want_witness = true,
                         long bound = kDefaultHeightBound);

}  // namespace qcomp
