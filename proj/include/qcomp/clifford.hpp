// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "qcomp/quadform.hpp"

namespace qcomp {

class CliffordAlgebra;
using CliffordAlgebraPtr = std::shared_ptr<const CliffordAlgebra>;

/// Element of C(V, q): a sparse map from basis-index subsets (bitmasks over
/// the n generators) to scalars. The empty mask is the unit monomial.
class CliffordElem {
 public:
  CliffordElem() = default;
  CliffordElem(CliffordAlgebraPtr alg, std::map<unsigned, Scalar> coeffs);

  const CliffordAlgebraPtr& algebra() const { return alg_; }
  const std::map<unsigned, Scalar>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(unsigned mask) const;

  CliffordElem operator+(const CliffordElem& o) const;
  CliffordElem operator-(const CliffordElem& o) const;
  CliffordElem operator-() const;
  CliffordElem operator*(const CliffordElem& o) const;  // Clifford product
  CliffordElem scaled(const Scalar& c) const;
  bool operator==(const CliffordElem& o) const;
  bool operator!=(const CliffordElem& o) const { return !(*this == o); }

  bool is_even() const;   // supported on even-popcount masks
  bool is_odd() const;
  /// Lexicographic comparison of coefficient vectors (mask-ascending);
  /// the canonical tie-break for polarization labels.
  static int cmp(const CliffordElem& a, const CliffordElem& b);

  std::string str() const;

 private:
  CliffordAlgebraPtr alg_;
  std::map<unsigned, Scalar> c_;
};

/// Z = span{1, w} with w^2 = alpha + beta w: the center of the even part.
struct EvenCenter {
  CliffordElem w;
  Scalar alpha, beta;
};

/// A labeling (z+, z-) of the primitive central idempotents of C_0.
struct Polarization {
  CliffordElem zplus, zminus;
};

/// The Clifford algebra C(V, q) with product by monomial rewriting:
/// e_j e_i = b(e_i, e_j) - e_i e_j for j > i and e_i^2 = q(e_i).
/// Generator-product tables are built eagerly, so a constructed algebra is
/// immutable; the even-center solve is cached behind a once-flag.
class CliffordAlgebra : public std::enable_shared_from_this<CliffordAlgebra> {
 public:
  static CliffordAlgebraPtr make(const QuadForm& q);

  const QuadForm& form() const { return q_; }
  int gen_count() const { return q_.dim(); }
  unsigned mask_count() const { return 1u << q_.dim(); }

  CliffordElem zero() const;
  CliffordElem one() const;
  CliffordElem scalar_elem(const Scalar& c) const;
  CliffordElem generator(int i) const;
  CliffordElem monomial(unsigned mask, const Scalar& c) const;
  CliffordElem from_vector(const Vec& x) const;
  /// The degree-1 part as coordinates, when the element is a vector.
  std::optional<Vec> as_vector(const CliffordElem& x) const;

  CliffordElem mul(const CliffordElem& a, const CliffordElem& b) const;
  /// Reversal anti-automorphism: fixes vectors, tau(xy) = tau(y) tau(x).
  CliffordElem tau(const CliffordElem& x) const;

  /// Inverse inside the even part, by solving left-multiplication.
  std::optional<CliffordElem> inverse_even(const CliffordElem& x) const;

  /// Center of C_0 (works for any discriminant).
  const EvenCenter& even_center() const;
  /// The nontrivial automorphism of Z: a + b w -> a + b (beta - w).
  CliffordElem iota(const CliffordElem& z) const;
  /// Scalar c with z * iota(z) = c * 1 (norm of a central element).
  Scalar center_norm(const CliffordElem& z) const;
  /// Exact scalar pair (s, t) with x = s + t w, when x lies in Z.
  std::optional<std::pair<Scalar, Scalar>> center_coords(
      const CliffordElem& x) const;

  /// Primitive central idempotents of C_0. Requires a split center, i.e.
  /// trivial discriminant/Arf invariant (nontrivial_discriminant else).
  /// Tie-break: z+ has the lexicographically smaller coefficient vector.
  Polarization center_idempotents() const;

  /// c(a) for a in End V: the image of a under the standard identification
  /// followed by Clifford multiplication, c(x (x) y) = x . y.
  CliffordElem c_of_matrix(const Matrix& a) const;

  /// Dense coordinates over all masks, and back.
  Vec dense(const CliffordElem& x) const;
  CliffordElem from_dense(const Vec& v) const;
  /// Dense coordinates over even masks only (dimension 2^{n-1}).
  Vec dense_even(const CliffordElem& x) const;
  CliffordElem from_dense_even(const Vec& v) const;
  unsigned even_mask(int index) const { return even_masks_[index]; }
  int even_index(unsigned mask) const;

 private:
  explicit CliffordAlgebra(const QuadForm& q);
  void build_tables();
  CliffordElem mul_mono_gen(unsigned mask, int i) const;  // e_mask * e_i

  QuadForm q_;
  // gen_table_[mask * n + i] = dense coords of e_mask * e_i
  std::vector<std::map<unsigned, Scalar>> gen_table_;
  std::vector<unsigned> even_masks_;
  std::vector<int> even_index_;
  mutable std::once_flag center_once_;
  mutable std::unique_ptr<EvenCenter> center_;
};

/// A matrix representation of C(V, q): images of the n generators,
/// extended multiplicatively, with rho(x)^2 = q(x) and
/// rho(x) rho(y) + rho(y) rho(x) = b(x, y). Monomial images are tabulated
/// at construction. For even elements the representation is block-diagonal
/// with respect to the stored block index sets.
class CliffordRep {
 public:
  CliffordRep(CliffordAlgebraPtr alg, std::vector<Matrix> gen_images,
              std::vector<int> block_a, std::vector<int> block_b, Vec e,
              Vec eprime);

  /// The standard representation of a hyperbolic form on the exterior
  /// algebra of a maximal isotropic subspace (dimension 2^{n/2}).
  static CliffordRep hyperbolic_rep(const CliffordAlgebraPtr& alg,
                                    long bound = kDefaultHeightBound);

  const CliffordAlgebraPtr& algebra() const { return alg_; }
  int rep_dim() const { return dim_; }
  const Matrix& gen_image(int i) const { return gens_[i]; }
  const Matrix& mono_image(unsigned mask) const { return table_[mask]; }

  Matrix apply(const CliffordElem& x) const;
  /// Reduced trace through this representation.
  Scalar trd(const CliffordElem& x) const;

  const std::vector<int>& block_a() const { return block_a_; }
  const std::vector<int>& block_b() const { return block_b_; }
  /// Blocks of rho(x) for even x (throws bad_parity if x has odd part or
  /// the image is not block-diagonal).
  std::pair<Matrix, Matrix> even_blocks(const CliffordElem& x) const;

  const Vec& e() const { return e_; }
  const Vec& eprime() const { return eprime_; }

 private:
  CliffordAlgebraPtr alg_;
  int dim_;
  std::vector<Matrix> gens_;
  std::vector<Matrix> table_;
  std::vector<int> block_a_, block_b_;
  Vec e_, eprime_;
};

enum class SemitraceParity { full, even };

/// g(s) = Trd(e e' s) for tau-symmetric s (parity full), or the pair of
/// block components of g_0(s) = Trd_{C_0}(e e' s) in Z for tau_0-symmetric
/// even s (parity even). The block pair is labeled by the polarization:
/// first component through z+, second through z-.
Scalar semitrace_full(const CliffordRep& rep, const CliffordElem& s);
std::pair<Scalar, Scalar> semitrace_even(const CliffordRep& rep,
                                         const Polarization& pol,
                                         const CliffordElem& s);

/// Member of the extended Clifford group: even invertible xi with
/// tau_0(xi) xi in Z and x -> iota(mu(xi)) xi x xi^{-1} preserving V.
struct OmegaElem {
  CliffordElem xi;
  CliffordElem xi_inv;
  CliffordElem mu_bar;  // tau_0(xi) xi, central
  Matrix chi0;          // the induced proper similitude of (V, q)
  Scalar chi0_multiplier;
};

std::optional<OmegaElem> omega_membership(const CliffordAlgebraPtr& alg,
                                          const CliffordElem& xi);
inline bool spin_membership(const OmegaElem& om) {
  return om.mu_bar == om.xi.algebra()->one();
}

/// Basis of the Clifford Lie algebra c(End V) = span{e_i e_j}, together
/// with preimages under c. Dimension m(2m-1)+1.
struct GammaBasis {
  std::vector<CliffordElem> elems;
  std::vector<Matrix> pre;  // c(pre[k]) = elems[k]
};
GammaBasis lie_gamma_basis(const CliffordAlgebraPtr& alg);

/// Basis of the extended Clifford Lie algebra omega(q) = {xi in C_0 :
/// tau_0(xi) + xi in Z, tau_0(xi) x + x xi in V for all x in V}, with the
/// differential chi0dot: omega(q) -> go(q). Dimension m(2m-1)+2.
struct OmegaLieBasis {
  std::vector<CliffordElem> xi;
  std::vector<Matrix> chi0dot;
};
OmegaLieBasis lie_omega_basis(const CliffordAlgebraPtr& alg);

/// chi0dot of a single omega(q) element (throws not_in_omega when the
/// defining conditions fail).
Matrix chi0dot_of(const CliffordAlgebraPtr& alg, const CliffordElem& xi);

/// mudot(xi) = tau_0(xi) + xi as an element of Z (coords over {1, w}).
std::pair<Scalar, Scalar> mudot_bar_of(const CliffordAlgebraPtr& alg,
                                       const CliffordElem& xi);

}  // namespace qcomp
