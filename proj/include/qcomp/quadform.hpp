// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "qcomp/linalg.hpp"

namespace qcomp {

/// Default max-norm bound for integer isotropic-vector search over Q.
inline constexpr long kDefaultHeightBound = 25;

/// A quadratic form q(x) = sum_{i<=j} Q[i][j] x_i x_j with nonsingular
/// polar form b = Q + Q^T. The form is stored by its upper-triangular
/// coefficient table: in characteristic 2 the table carries strictly more
/// information than the polar form, so it is the primary datum.
class QuadForm {
 public:
  QuadForm(const FieldSpec& fs, int dim,
           const std::map<std::pair<int, int>, Scalar>& upper);

  static QuadForm hyperbolic(const FieldSpec& fs, int n);
  static QuadForm diagonal(const FieldSpec& fs, const std::vector<Scalar>& d);
  static QuadForm orthogonal_sum(const QuadForm& a, const QuadForm& b);

  int dim() const { return n_; }
  const FieldSpec& field() const { return fs_; }

  const Scalar& coeff(int i, int j) const;  // i <= j
  Scalar eval(const Vec& x) const;
  Scalar polar(const Vec& x, const Vec& y) const;

  const Matrix& coeff_matrix() const { return qmat_; }   // upper triangular
  const Matrix& polar_matrix() const { return bmat_; }   // B = Q + Q^T
  const Matrix& polar_inverse() const { return binv_; }

  /// The form <c>q (all coefficients scaled by c).
  QuadForm scaled(const Scalar& c) const;
  /// The form q(g x) as an upper-triangular table.
  QuadForm pullback(const Matrix& g) const;

  bool operator==(const QuadForm& o) const;

 private:
  FieldSpec fs_;
  int n_;
  Matrix qmat_, bmat_, binv_;
};

// --- adjoint quadratic pair on End V ---

/// sigma_b(a) = B^{-1} a^T B.
Matrix adjoint_involution(const QuadForm& q, const Matrix& a);
/// Semitrace f_q(s) = trace(Q s B^{-1}); requires sigma_b(s) = s.
Scalar semitrace_endv(const QuadForm& q, const Matrix& s);

// --- similitudes and reflections ---

/// Multiplier mu with dst(g x) = mu src(x), when g is a similitude.
std::optional<Scalar> similitude_multiplier_of(const QuadForm& src,
                                               const QuadForm& dst,
                                               const Matrix& g);

/// rho_u(x) = u q(u)^{-1} b(u,x) - x; an isometry fixing u.
Matrix rho_reflection(const QuadForm& q, const Vec& u);
/// r_v(x) = x - b(x,v) q(v)^{-1} v; the hyperplane reflection along v.
Matrix reflection(const QuadForm& q, const Vec& v);

/// Writes a proper isometry as an even-length product of reflections
/// r_{v_1} ... r_{v_2k} (leftmost factor applied last... the returned list
/// satisfies g = reflection(v[0]) * reflection(v[1]) * ... exactly).
std::vector<Vec> factor_into_reflections(const QuadForm& q, const Matrix& g);

// --- Witt decomposition and classification ---

struct WittDecomposition {
  std::vector<std::pair<Vec, Vec>> pairs;  // q(e)=q(e')=0, b(e,e')=1
  std::vector<Vec> anisotropic;            // basis of the complement
};

WittDecomposition witt_decompose(const QuadForm& q,
                                 long bound = kDefaultHeightBound);

std::optional<Vec> find_isotropic(const QuadForm& q,
                                  long bound = kDefaultHeightBound);
std::optional<Vec> find_anisotropic(const QuadForm& q);
/// Some v with q(v) = value (exhaustive over F_p, bounded over Q).
std::optional<Vec> find_vector_with_value(const QuadForm& q,
                                          const Scalar& value,
                                          long bound = kDefaultHeightBound);

/// Isometry-class invariants. Over F_p (p odd) dim + discriminant decide
/// the class; over F_2 dim + Arf; over Q the record carries signature,
/// discriminant and Hasse symbols, enough to decide isometry.
struct ClassRecord {
  FieldSpec fs;
  int dim = 0;
  int witt_index = 0;
  bool hyperbolic = false;
  // F_p, p odd: canonical square-class representative of
  // (-1)^{n(n-1)/2} det(B/2): 0 -> square class of 1, 1 -> non-square.
  int disc_class = 0;
  // F_2: Arf invariant in {0,1}.
  int arf = 0;
  // Q:
  int sig_pos = 0, sig_neg = 0;
  mpz_class disc_sqfree;                 // signed squarefree discriminant
  std::vector<std::pair<long, int>> hasse;  // (prime, symbol in {+1,-1})

  bool same_class(const ClassRecord& o) const;
  std::string str() const;
};

ClassRecord classify(const QuadForm& q, long bound = kDefaultHeightBound);

struct IsometryResult {
  bool isometric = false;
  std::optional<Matrix> witness;  // F_p only
};

IsometryResult is_isometric(const QuadForm& a, const QuadForm& b,
                            long bound = kDefaultHeightBound);

/// Whether the similitude g is proper, i.e. C_0(g) fixes the center of the
/// even Clifford algebra elementwise. Defined in the clifford module.
bool proper_test(const QuadForm& q, const Matrix& g);

// --- Lie data of the orthogonal similitude group ---

/// g in go(q) iff b(g u, u) = mu q(u) for all u, for a scalar mu = mudot(g).
bool in_go(const QuadForm& q, const Matrix& g);
Scalar mudot_of(const QuadForm& q, const Matrix& g);  // throws not_in_go

/// Basis of go(q), dimension m(2m-1)+1; the identity matrix is element 0,
/// so pgo(q) coordinates are the coefficients over elements 1..dim-1.
struct GoBasis {
  QuadForm q;
  std::vector<Matrix> mats;  // mats[0] = I
  SpanSolver span;           // over flattened matrices

  explicit GoBasis(const QuadForm& q_);
  int pgo_dim() const { return static_cast<int>(mats.size()) - 1; }
  /// pgo coordinates of g (coefficients over mats[1..]); throws not_in_go.
  Vec pgo_coords(const Matrix& g) const;
  /// A representative matrix with the given pgo coordinates.
  Matrix from_pgo_coords(const Vec& c) const;
};

std::vector<Matrix> o_basis(const QuadForm& q);   // Alt(sigma_b)
std::vector<Matrix> so_basis(const QuadForm& q);  // {a - sigma(a) : tr a = 0}
/// Pfaffian trace (char 2): Trp(a - sigma(a)) = trace(a).
Scalar trp(const QuadForm& q, const Matrix& x);
/// An ell with semitrace_endv(s) = trace(ell s) on Sym(sigma_b); determined
/// only modulo Alt(sigma_b).
Matrix find_ell(const QuadForm& q);

Vec flatten(const Matrix& m);
Matrix unflatten(const FieldSpec& fs, int rows, int cols, const Vec& v);

}  // namespace qcomp
