// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <memory>

#include "qcomp/compalg.hpp"
#include "qcomp/composition.hpp"

namespace qcomp {

/// The split trialitarian triple of a dimension-8 composition: the three
/// endomorphism algebras with their adjoint quadratic pairs, glued by the
/// even Clifford map of the first space. Carries the polarization induced
/// by the composition (z+ is the idempotent acting as the identity on the
/// V2 block) and caches the Lie-algebra data its operations need.
class TrialTriple {
 public:
  static TrialTriple make(const Composition& c,
                          long bound = kDefaultHeightBound);

  const CompTriple& comps() const { return t_; }
  const CliffordAlgebraPtr& alg() const { return alg1_; }
  const CliffordRep& alpha() const { return *alpha_; }
  const CliffordElem& zplus() const { return pol_.zplus; }
  const CliffordElem& zminus() const { return pol_.zminus; }
  const Polarization& polarization() const { return pol_; }

  TrialTriple derived() const { return make(t_.dC, bound_); }

  /// C+(alpha)(xi) and C-(alpha)(xi): the V2 and V3 blocks.
  std::pair<Matrix, Matrix> c_blocks(const CliffordElem& xi) const;

  const GoBasis& go(int i);               // go(q_i), i in {1,2,3}
  const OmegaLieBasis& omega1();          // omega(q_1)
  /// Matrix of C_0(alpha) on even dense coordinates, and its inverse.
  const Matrix& c0_alpha_matrix();
  const Matrix& c0_alpha_inverse();
  /// Rows of the homogeneous local-lift system (cached).
  const Matrix& local_system();

  long bound() const { return bound_; }

 private:
  TrialTriple(CompTriple t, CliffordAlgebraPtr alg,
              std::shared_ptr<CliffordRep> alpha, Polarization pol,
              long bound)
      : t_(std::move(t)), alg1_(std::move(alg)), alpha_(std::move(alpha)),
        pol_(std::move(pol)), bound_(bound) {}

  CompTriple t_;
  CliffordAlgebraPtr alg1_;
  std::shared_ptr<CliffordRep> alpha_;
  Polarization pol_;
  long bound_;

  std::shared_ptr<GoBasis> go_[3];
  std::shared_ptr<OmegaLieBasis> om1_;
  std::shared_ptr<Matrix> c0mat_, c0inv_, localsys_;
};

/// The two triality maps on projective similitude Lie algebras, as 28x28
/// matrices over the pgo coordinate bases of GoBasis(q_i).
struct ThetaMaps {
  Matrix plus;   // pgo(q1) -> pgo(q2)
  Matrix minus;  // pgo(q1) -> pgo(q3)
};

/// Computes theta+/theta- from a basis of omega(q1) through chi0dot and
/// the alpha blocks; certifies both are bijective (rank 28) and
/// well-defined (rank_deficient on failure).
ThetaMaps theta_maps(TrialTriple& t);

/// The derived-triple relations between theta maps of T, dT, d2T, the
/// composite (hexagon) consistency, bracket preservation on sampled pairs,
/// and the commutation pi_2 = theta+ pi_1 on pgo(C).
Report verify_theta_relations(TrialTriple& t, uint64_t seed = 1729);

/// The commutator-generation certificate behind lift uniqueness: the four
/// commutator identities on a Witt basis, and the generated-subalgebra
/// span reaching the full even Clifford algebra.
struct LiftUniqueness {
  bool commutators_ok = false;
  int span_dim = 0;  // must be 2^{n-1}
  bool ok() const { return commutators_ok && span_dim > 0; }
};
LiftUniqueness lift_uniqueness_test(TrialTriple& t);

/// Dimension of the subalgebra generated by the given even elements
/// (used for the negative control of the span certificate).
int generated_subalgebra_dim(const CliffordAlgebraPtr& alg,
                             const std::vector<CliffordElem>& gens);

/// Triality lift of a proper isometry g1: factors g1 into reflections,
/// forms xi in the even Clifford algebra, reads g2, g3 off the alpha
/// blocks and certifies g1(x2 *1 x3) = g2(x2) *1 g3(x3) exactly.
struct LiftResult {
  Matrix g2, g3;
  std::vector<Vec> reflection_vectors;
  CliffordElem xi;
  bool certified = false;
};
LiftResult triality_lift_isometry(TrialTriple& t, const Matrix& g1);

/// Local triality: solves g1(x2 *1 x3) = g2(x2) *1 x3 + x2 *1 g3(x3) +
/// mudot(g1) x2 *1 x3 for (g2, g3) by linear_solve; the solution space
/// kernel is exactly {(a I, -a I)}.
struct LocalLift {
  Matrix g2, g3;
  std::vector<std::pair<Matrix, Matrix>> kernel;
  bool certified = false;
};
LocalLift local_triality_solve(TrialTriple& t, const Matrix& g1);

/// Extends a polarization-preserving similitude g1 : (V1,q1) -> (V1',q1')
/// to a similitude triple, through Skolem-Noether intertwiners of the
/// transported even Clifford blocks. Components normalized so the first
/// nonzero entry is 1.
std::pair<Matrix, Matrix> extend_similitude(TrialTriple& t,
                                            TrialTriple& ttilde,
                                            const Matrix& g1);

/// The central-idempotent formulas: psi_T(z) = (N(z), phi+(z), phi-(z)) on
/// sign pairs, and the shift action Sigma_T(a+ z1+ + a- z1-) =
/// a- z2+ + a+ a- z2-, checked through the alpha blocks of T and dT.
Report psi_center_formulas(TrialTriple& t);

struct Autotopy {
  Matrix f1, f2, f3;
};

/// The structure-group map of a dimension-8 composition algebra:
/// psi_A(xi) = (C+(alpha'')(xi), C-(alpha'')(xi), chi0(xi)), certified as
/// an autotopy of (A, prod).
Autotopy psi_A_structure(const CompositionAlgebra& a, const OmegaElem& om);

/// Inverse direction: reconstructs xi from an autotopy via the inverse of
/// C_0(alpha'') and certifies chi0(xi) = f3 (not_autotopy on failure).
OmegaElem psi_A_inverse(const CompositionAlgebra& a, const Autotopy& f);

/// Helper shared by psi_A_* : the triple whose alpha is alpha'' of C(A).
TrialTriple second_derived_triple(const CompositionAlgebra& a);

/// Batch variants reusing a cached second-derived triple.
Autotopy psi_A_structure_cached(TrialTriple& t2, const CompositionAlgebra& a,
                                const OmegaElem& om);
OmegaElem psi_A_inverse_cached(TrialTriple& t2, const CompositionAlgebra& a,
                               const Autotopy& f);

}  // namespace qcomp
