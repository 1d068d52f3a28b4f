// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#include "qcomp/selftest.hpp"

#include <chrono>
#include <future>
#include <map>
#include <sstream>

#include "qcomp/json_io.hpp"
#include "qcomp/triality.hpp"

namespace qcomp {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CellResult {
  bool pass = true;
  std::string detail;
  double seconds = 0;
};

struct FieldReport {
  FieldSpec fs;
  std::map<int, CellResult> cells;
};

Vec random_vector(Rng& rng, const FieldSpec& fs, int n) {
  Vec v;
  for (int i = 0; i < n; ++i) v.push_back(rng.scalar(fs));
  return v;
}

Vec random_anisotropic(Rng& rng, const QuadForm& q) {
  for (;;) {
    Vec v = random_vector(rng, q.field(), q.dim());
    if (!q.eval(v).is_zero()) return v;
  }
}

Matrix random_invertible(Rng& rng, const FieldSpec& fs, int n) {
  for (;;) {
    Matrix m(fs, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = rng.scalar(fs);
    if (!determinant(m).is_zero()) return m;
  }
}

std::string join_fail(std::vector<std::string> parts) {
  std::string s;
  for (const std::string& p : parts) {
    if (p.empty()) continue;
    if (!s.empty()) s += "; ";
    s += p;
  }
  return s;
}

FieldReport run_field(const FieldSpec& fs, std::uint64_t seed, long bound) {
  FieldReport fr;
  fr.fs = fs;
  std::uint64_t fseed =
      seed * 1000003ULL + static_cast<std::uint64_t>(fs.characteristic());
  const Scalar one = Scalar::one(fs);

  // shared fixtures
  CompositionAlgebra etale = make_split(2, fs);
  CompositionAlgebra quat = make_split(4, fs);
  CompositionAlgebra oct = make_split(8, fs);
  CompositionAlgebra paraoct = para(oct);
  std::vector<const CompositionAlgebra*> algebras = {&etale, &quat, &oct,
                                                     &paraoct};
  std::vector<std::string> names = {"etale2", "quaternion4", "octonion8",
                                    "para-octonion8"};
  CompTriple oct_t = CompTriple::of(oct.composition());
  TrialTriple T = TrialTriple::make(oct.composition(), bound);
  const QuadForm& q1 = T.comps().q(1);

  // 1: composition axiom + identity calculus
  {
    auto t0 = Clock::now();
    CellResult& c = fr.cells[1];
    std::ostringstream os;
    int cases = 0;
    for (size_t i = 0; i < algebras.size(); ++i) {
      const Composition& comp = algebras[i]->composition();
      bool v = verify_ok(comp);
      Report suite = identity_suite(CompTriple::of(comp));
      cases += static_cast<int>(suite.cases.size());
      if (!v || !suite.ok) {
        c.pass = false;
        os << names[i] << " failed (" << suite.first_failure() << ") ";
      }
    }
    c.seconds = since(t0);
    std::ostringstream d;
    d << "4 compositions, " << cases << " identity cases" << os.str();
    c.detail = d.str();
  }

  // 2: cyclic derivative, byte-equal tensors
  {
    auto t0 = Clock::now();
    CellResult& c = fr.cells[2];
    for (size_t i = 0; i < algebras.size(); ++i) {
      const Composition& comp = algebras[i]->composition();
      Composition d3 = derive(derive(derive(comp)));
      if (canonical_dump(composition_to_json(d3)) !=
          canonical_dump(composition_to_json(comp)))
        c.pass = false;
    }
    const Composition& pc = paraoct.composition();
    if (canonical_dump(composition_to_json(derive(pc))) !=
        canonical_dump(composition_to_json(pc)))
      c.pass = false;
    c.detail = "d^3 = id on 4 compositions, d-fixed para-octonions";
    c.seconds = since(t0);
  }

  // 3: dimension theorem guard
  {
    auto t0 = Clock::now();
    CellResult& c = fr.cells[3];
    std::ostringstream os;
    if (fs.characteristic() == 2) {
      bool rejected = false;
      try {
        make_dim1(fs, one, one);
      } catch (const Error&) {
        rejected = true;
      }
      if (!rejected) {
        c.pass = false;
        os << "dim-1 not rejected in char 2 ";
      }
      os << "dim-1 rejected; random dim-3 nonsingular forms do not exist "
            "in char 2";
    } else {
      Composition c1 = make_dim1(fs, Scalar::from_int(fs, 2), one);
      if (!verify_ok(c1) || !(derive(derive(derive(c1))) == c1)) {
        c.pass = false;
        os << "dim-1 composition broken ";
      }
      Rng rng(fseed + 3);
      int built = 0, passed = 0;
      while (built < 250) {
        std::map<std::pair<int, int>, Scalar> u;
        for (int i = 0; i < 3; ++i)
          for (int j = i; j < 3; ++j) u[{i, j}] = rng.scalar(fs);
        Tensor3 t(fs, 3);
        for (int k = 0; k < 3; ++k)
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t.at(k, i, j) = rng.scalar(fs);
        try {
          Composition cand(QuadForm(fs, 3, u), QuadForm(fs, 3, u),
                           QuadForm(fs, 3, u), t);
          ++built;
          if (verify_ok(cand)) ++passed;
        } catch (const Error&) {
        }
      }
      if (passed != 0) c.pass = false;
      os << "250 seeded dim-3 maps, " << passed << " passed verify";
    }
    for (int n : {2, 4, 8})
      if (!verify_ok(make_split(n, fs).composition())) c.pass = false;
    c.detail = os.str();
    c.seconds = since(t0);
  }

  // 4: Clifford quadratic-pair isomorphism
  {
    auto t0 = Clock::now();
    CellResult& c = fr.cells[4];
    Report r = verify_quadpair_iso(oct_t);
    c.pass = r.ok;
    c.seconds = since(t0);
    std::ostringstream os;
    os << r.cases.size() << " checks in " << c.seconds << "s";
    if (!r.ok) os << ", first failure " << r.first_failure();
    if (c.seconds >= 60.0) {
      c.pass = false;
      os << " (budget 60s exceeded)";
    }
    c.detail = os.str();
  }

  // 5: Lie dimension ledger
  {
    auto t0 = Clock::now();
    CellResult& c = fr.cells[5];
    std::vector<std::string> fails;
    const CliffordAlgebraPtr& alg = T.alg();
    const GoBasis& go1 = T.go(1);
    if (static_cast<int>(o_basis(q1).size()) != 28) fails.push_back("dim o");
    if (static_cast<int>(go1.mats.size()) != 29) fails.push_back("dim go");
    if (go1.pgo_dim() != 28) fails.push_back("dim pgo");
    GammaBasis gamma = lie_gamma_basis(alg);
    if (gamma.elems.size() != 29) fails.push_back("dim gamma");
    const OmegaLieBasis& om = T.omega1();
    if (om.xi.size() != 30) fails.push_back("dim omega");

    // spin = ker(mudot_bar: omega -> Z)
    Matrix spin_sys(fs, 2, static_cast<int>(om.xi.size()));
    for (size_t k = 0; k < om.xi.size(); ++k) {
      auto [a, b] = mudot_bar_of(alg, om.xi[k]);
      spin_sys.at(0, static_cast<int>(k)) = a;
      spin_sys.at(1, static_cast<int>(k)) = b;
    }
    std::vector<Vec> spin = kernel_basis(spin_sys);
    if (spin.size() != 28) fails.push_back("dim spin");

    // ker chi0dot = Z^0 = ker(Tr: Z -> F)
    {
      Matrix sys(fs, 64, static_cast<int>(om.xi.size()));
      for (size_t k = 0; k < om.xi.size(); ++k) {
        Vec f = flatten(om.chi0dot[k]);
        for (int r = 0; r < 64; ++r) sys.at(r, static_cast<int>(k)) = f[r];
      }
      std::vector<Vec> ker = kernel_basis(sys);
      bool ok = ker.size() == 1;
      if (ok) {
        CliffordElem kz = alg->zero();
        for (size_t k = 0; k < om.xi.size(); ++k)
          if (!ker[0][k].is_zero()) kz = kz + om.xi[k].scaled(ker[0][k]);
        auto cc = alg->center_coords(kz);
        ok = cc.has_value();
        if (ok) {
          const EvenCenter& ec = alg->even_center();
          Scalar tr =
              Scalar::from_int(fs, 2) * cc->first + cc->second * ec.beta;
          ok = tr.is_zero() && !kz.is_zero();
        }
      }
      if (!ok) fails.push_back("ker chi0dot != Z0");
    }

    // ker chidot = F on gamma
    {
      Matrix sys(fs, 64, static_cast<int>(gamma.elems.size()));
      for (size_t k = 0; k < gamma.elems.size(); ++k) {
        Vec f = flatten(gamma.pre[k] - adjoint_involution(q1, gamma.pre[k]));
        for (int r = 0; r < 64; ++r) sys.at(r, static_cast<int>(k)) = f[r];
      }
      std::vector<Vec> ker = kernel_basis(sys);
      bool ok = ker.size() == 1;
      if (ok) {
        CliffordElem kz = alg->zero();
        for (size_t k = 0; k < gamma.elems.size(); ++k)
          if (!ker[0][k].is_zero())
            kz = kz + gamma.elems[k].scaled(ker[0][k]);
        auto cc = alg->center_coords(kz);
        ok = cc.has_value() && cc->second.is_zero() && !cc->first.is_zero();
      }
      if (!ok) fails.push_back("ker chidot != F");
    }

    if (fs.characteristic() == 2) {
      // four-term sequence 0 -> Z -> spin -> pgo -> Z -> 0 and the
      // pfaffian-trace diagram
      int d = static_cast<int>(alg->mask_count()) / 2;
      const EvenCenter& ec = alg->even_center();
      SpanSolver spin_span(fs, d);
      std::vector<CliffordElem> spin_elems;
      for (const Vec& lam : spin) {
        CliffordElem e = alg->zero();
        for (size_t k = 0; k < om.xi.size(); ++k)
          if (!lam[k].is_zero()) e = e + om.xi[k].scaled(lam[k]);
        spin_elems.push_back(e);
        spin_span.add(alg->dense_even(e));
      }
      if (!spin_span.contains(alg->dense_even(alg->one())) ||
          !spin_span.contains(alg->dense_even(ec.w)))
        fails.push_back("Z not inside spin");
      // image of spin in pgo has dimension 26 (kernel Z of dimension 2)
      SpanSolver img(fs, go1.pgo_dim());
      for (const CliffordElem& e : spin_elems)
        img.add(go1.pgo_coords(chi0dot_of(alg, e)));
      if (img.dim() != 26) fails.push_back("spin image in pgo != 26");
      // S-dot: pgo -> Z is onto with kernel the image of spin; compute it
      // on a basis of pgo through omega preimages
      Matrix chi_sys(fs, go1.pgo_dim(), static_cast<int>(om.xi.size()));
      for (size_t k = 0; k < om.xi.size(); ++k) {
        Vec cc = go1.pgo_coords(om.chi0dot[k]);
        for (int r = 0; r < go1.pgo_dim(); ++r)
          chi_sys.at(r, static_cast<int>(k)) = cc[r];
      }
      SpanSolver sdot_img(fs, 2);
      int sdot_kernel = 0;
      for (int r = 0; r < go1.pgo_dim(); ++r) {
        LinearSolution sol = linear_solve(chi_sys, basis_vec(fs, go1.pgo_dim(), r));
        if (!sol.consistent) {
          fails.push_back("chi' not onto pgo");
          break;
        }
        CliffordElem xi = alg->zero();
        for (size_t k = 0; k < om.xi.size(); ++k)
          if (!sol.particular[k].is_zero())
            xi = xi + om.xi[k].scaled(sol.particular[k]);
        auto [a, b] = mudot_bar_of(alg, xi);
        Vec val = {a, b};
        sdot_img.add(val);
        // kernel test: S-dot vanishes iff the pgo element lifts to spin
        if (a.is_zero() && b.is_zero()) ++sdot_kernel;
      }
      if (sdot_img.dim() != 2) fails.push_back("S-dot not onto Z");
      // exactness at pgo: ker(S-dot) = image of spin; both are
      // 26-dimensional subspaces and the image lies inside the kernel
      for (const CliffordElem& e : spin_elems) {
        auto [a, b] = mudot_bar_of(alg, e);
        if (!a.is_zero() || !b.is_zero())
          fails.push_back("spin image outside ker S-dot");
      }
      (void)sdot_kernel;
      // pfaffian-trace diagram: Trp(chidot(c(a))) = mudot_bar(c(a)) and
      // Trp kills brackets
      Rng rng(fseed + 5);
      for (int trial = 0; trial < 10; ++trial) {
        size_t idx = rng.below(gamma.elems.size());
        Matrix alt =
            gamma.pre[idx] - adjoint_involution(q1, gamma.pre[idx]);
        auto [a, b] = mudot_bar_of(alg, gamma.elems[idx]);
        if (!(trp(q1, alt) == a) || !b.is_zero())
          fails.push_back("Trp vs mudot mismatch");
      }
      std::vector<Matrix> ob = o_basis(q1);
      for (int trial = 0; trial < 20; ++trial) {
        const Matrix& x = ob[rng.below(ob.size())];
        const Matrix& y = ob[rng.below(ob.size())];
        if (!trp(q1, x * y - y * x).is_zero())
          fails.push_back("Trp of a bracket is nonzero");
      }
      if (static_cast<int>(so_basis(q1).size()) != 27)
        fails.push_back("dim so != 27");
    }
    c.pass = fails.empty();
    c.detail = c.pass ? "o=28 go=29 pgo=28 gamma=29 spin=28 omega=30"
                      : join_fail(fails);
    c.seconds = since(t0);
  }

  // 6: lift uniqueness span
  {
    auto t0 = Clock::now();
    CellResult& c = fr.cells[6];
    LiftUniqueness lu = lift_uniqueness_test(T);
    c.pass = lu.commutators_ok && lu.span_dim == 128;
    std::ostringstream os;
    os << "commutators " << (lu.commutators_ok ? "ok" : "FAIL") << ", span "
       << lu.span_dim << "/128";
    c.detail = os.str();
    c.seconds = since(t0);
  }

  // 7: theta-map suite
  {
    auto t0 = Clock::now();
    CellResult& c = fr.cells[7];
    try {
      Report r = verify_theta_relations(T, fseed + 7);
      c.pass = r.ok;
      std::ostringstream os;
      os << r.cases.size() << " exact matrix checks";
      if (!r.ok) os << ", first failure " << r.first_failure();
      c.detail = os.str();
    } catch (const Error& e) {
      c.pass = false;
      c.detail = e.what();
    }
    c.seconds = since(t0);
  }

  // 8: principle of triality, global and local
  {
    auto t0 = Clock::now();
    CellResult& c = fr.cells[8];
    std::vector<std::string> fails;
    Rng rng(fseed + 8);
    if (fs.is_prime_field()) {
      for (int trial = 0; trial < 20; ++trial) {
        Matrix g1 = Matrix::identity(fs, 8);
        int count = 2 * (1 + static_cast<int>(rng.below(2)));
        for (int r = 0; r < count; ++r)
          g1 = g1 * reflection(q1, random_anisotropic(rng, q1));
        try {
          LiftResult lr = triality_lift_isometry(T, g1);
          if (!lr.certified) fails.push_back("lift certificate failed");
        } catch (const Error& e) {
          fails.push_back(std::string("lift: ") + e.what());
        }
      }
    }
    const GoBasis& go1 = T.go(1);
    for (int trial = 0; trial < 20; ++trial) {
      Vec coords;
      for (int i = 0; i < go1.pgo_dim(); ++i) coords.push_back(rng.scalar(fs));
      Matrix g1 = go1.from_pgo_coords(coords);
      LocalLift ll = local_triality_solve(T, g1);
      bool ok = ll.certified && ll.kernel.size() == 1;
      if (ok) {
        const auto& [k2, k3] = ll.kernel[0];
        Scalar a0 = k2.at(0, 0);
        ok = k2 == Matrix::identity(fs, 8).scaled(a0) &&
             k3 == Matrix::identity(fs, 8).scaled(-a0) && !a0.is_zero();
      }
      if (!ok) fails.push_back("local lift failed");
    }
    c.pass = fails.empty();
    c.detail = c.pass ? (fs.is_prime_field()
                             ? "20 global lifts + 20 local lifts certified"
                             : "20 local lifts certified")
                      : join_fail(fails);
    c.seconds = since(t0);
  }

  // 9: rho-similitudes and the multiplier group
  {
    auto t0 = Clock::now();
    CellResult& c = fr.cells[9];
    std::vector<std::string> fails;
    Rng rng(fseed + 9);
    for (int trial = 0; trial < 10; ++trial) {
      Vec u3 = random_anisotropic(rng, T.comps().q(3));
      try {
        auto [fwd, back] = rho_similitude(T.comps(), u3);
        if (!(fwd.lambda[2] == T.comps().q(3).eval(u3)))
          fails.push_back("rho multiplier mismatch");
      } catch (const Error& e) {
        fails.push_back(std::string("rho: ") + e.what());
      }
    }
    if (fs.is_prime_field() && fs.p() == 7) {
      for (int trial = 0; trial < 20; ++trial) {
        std::array<Scalar, 3> lam = {rng.nonzero_scalar(fs),
                                     rng.nonzero_scalar(fs),
                                     rng.nonzero_scalar(fs)};
        try {
          multiplier_witness(T.comps(), lam, bound);
        } catch (const Error& e) {
          fails.push_back(std::string("witness: ") + e.what());
        }
      }
    }
    c.pass = fails.empty();
    c.detail = c.pass ? "10 rho triples certified" : join_fail(fails);
    c.seconds = since(t0);
  }

  // 10: isotopy dictionary and the structure group
  {
    auto t0 = Clock::now();
    CellResult& c = fr.cells[10];
    std::vector<std::string> fails;
    Rng rng(fseed + 10);
    TrialTriple T2 = second_derived_triple(oct);
    CliffordAlgebraPtr alg = T2.alg();
    int accepted = 0, rejected = 0;
    for (int trial = 0; trial < 50; ++trial) {
      try {
        if (trial % 5 == 4) {
          // homothety isotopy (a, b, ab): always accepted
          Scalar a = rng.nonzero_scalar(fs), b = rng.nonzero_scalar(fs);
          IsotopyVerdict v = isotopy_dictionary(
              oct, oct, Matrix::identity(fs, 8).scaled(a),
              Matrix::identity(fs, 8).scaled(b),
              Matrix::identity(fs, 8).scaled(a * b));
          if (!v.isotopy) fails.push_back("homothety isotopy rejected");
          ++accepted;
        } else if (trial % 5 == 3 && fs.is_prime_field()) {
          // a structure-group element through psi_A
          CliffordElem xi =
              alg->mul(alg->from_vector(random_anisotropic(rng, q1)),
                       alg->from_vector(random_anisotropic(rng, q1)));
          auto om = omega_membership(alg, xi);
          if (!om) {
            fails.push_back("vector pair outside Omega");
            continue;
          }
          Autotopy f = psi_A_structure_cached(T2, oct, *om);
          IsotopyVerdict v = isotopy_dictionary(oct, oct, f.f1, f.f2, f.f3);
          if (!v.isotopy) fails.push_back("psi_A image rejected");
          ++accepted;
        } else {
          // random invertible triple: verdicts agree (checked inside)
          IsotopyVerdict v = isotopy_dictionary(
              oct, oct, random_invertible(rng, fs, 8),
              random_invertible(rng, fs, 8), random_invertible(rng, fs, 8));
          (v.isotopy ? accepted : rejected)++;
          if (v.isotopy && !(*v.lambda)[2].is_one())
            fails.push_back("accepted triple with lambda3 != 1");
        }
      } catch (const Error& e) {
        fails.push_back(std::string("isotopy: ") + e.what());
      }
    }
    int roundtrips = 0;
    if (fs.is_prime_field()) {
      for (int trial = 0; trial < 20; ++trial) {
        int pairs = 1 + static_cast<int>(rng.below(2));
        CliffordElem xi = alg->one();
        for (int p = 0; p < 2 * pairs; ++p)
          xi = alg->mul(xi, alg->from_vector(random_anisotropic(rng, q1)));
        auto om = omega_membership(alg, xi);
        if (!om) {
          fails.push_back("Gamma+ element outside Omega");
          continue;
        }
        try {
          Autotopy f = psi_A_structure_cached(T2, oct, *om);
          OmegaElem back = psi_A_inverse_cached(T2, oct, f);
          Autotopy f2 = psi_A_structure_cached(T2, oct, back);
          if (f2.f1 == f.f1 && f2.f2 == f.f2 && f2.f3 == f.f3)
            ++roundtrips;
          else
            fails.push_back("psi_A round trip moved the autotopy");
        } catch (const Error& e) {
          fails.push_back(std::string("psi_A: ") + e.what());
        }
      }
    }
    c.pass = fails.empty();
    std::ostringstream os;
    os << "50 triples (" << accepted << " accepted, " << rejected
       << " rejected)";
    if (fs.is_prime_field()) os << ", " << roundtrips << "/20 round trips";
    c.detail = c.pass ? os.str() : join_fail(fails);
    c.seconds = since(t0);
  }

  // 11: pointed calculus and the Kaplansky round trip
  {
    auto t0 = Clock::now();
    CellResult& c = fr.cells[11];
    std::vector<std::string> fails;
    try {
      PointedComposition p(oct_t, oct.unit(), oct.unit(), oct.unit());
      PointedReport rep = pointed_suite(p);
      if (!rep.ok) fails.push_back("pointed identity " +
                                   rep.identities.first_failure());
      if (!rep.s_self_derived) fails.push_back("S not self-derived");
    } catch (const Error& e) {
      fails.push_back(std::string("pointed: ") + e.what());
    }
    try {
      KaplanskyResult k = kaplansky(paraoct, bound);
      if (!k.unital.unital()) fails.push_back("Kaplansky output not unital");
    } catch (const Error& e) {
      fails.push_back(std::string("kaplansky: ") + e.what());
    }
    c.pass = fails.empty();
    c.detail = c.pass ? "pointed identities, Delta, S, Kaplansky round trip"
                      : join_fail(fails);
    c.seconds = since(t0);
  }

  // 12: central idempotent formulas
  {
    auto t0 = Clock::now();
    CellResult& c = fr.cells[12];
    Report r = psi_center_formulas(T);
    c.pass = r.ok;
    std::ostringstream os;
    os << r.cases.size() << " sign-pair checks"
       << (fs.characteristic() == 2 ? " (degenerate single pair)" : "");
    if (!r.ok) os << ", first failure " << r.first_failure();
    c.detail = os.str();
    c.seconds = since(t0);
  }

  return fr;
}

const char* criterion_name(int id) {
  switch (id) {
    case 1: return "composition axiom and identity calculus";
    case 2: return "cyclic derivative (byte-equal tensors)";
    case 3: return "dimension theorem guard";
    case 4: return "Clifford quadratic-pair isomorphism";
    case 5: return "Lie dimension ledger and kernel checks";
    case 6: return "lift-uniqueness commutator span";
    case 7: return "theta-map suite";
    case 8: return "principle of triality (global and local)";
    case 9: return "rho-similitudes and multiplier group";
    case 10: return "isotopy dictionary and structure group";
    case 11: return "pointed calculus";
    case 12: return "central-idempotent formulas";
  }
  return "?";
}

}  // namespace

std::vector<FieldSpec> default_fields() {
  return {FieldSpec::Q(), FieldSpec::Fp(2), FieldSpec::Fp(3), FieldSpec::Fp(5),
          FieldSpec::Fp(7)};
}

SelftestReport run_selftest(const std::vector<FieldSpec>& fields,
                            std::uint64_t seed, int jobs, long bound) {
  auto t0 = Clock::now();
  std::vector<FieldReport> reports(fields.size());
  if (jobs > 1) {
    std::vector<std::future<FieldReport>> futures;
    for (const FieldSpec& fs : fields)
      futures.push_back(std::async(std::launch::async, run_field, fs, seed,
                                   bound));
    for (size_t i = 0; i < futures.size(); ++i) reports[i] = futures[i].get();
  } else {
    for (size_t i = 0; i < fields.size(); ++i)
      reports[i] = run_field(fields[i], seed, bound);
  }

  SelftestReport out;
  out.all_pass = true;
  for (int id = 1; id <= 12; ++id) {
    CriterionResult cr;
    cr.id = id;
    cr.name = criterion_name(id);
    cr.pass = true;
    std::ostringstream detail;
    double total = 0, worst = 0;
    for (const FieldReport& fr : reports) {
      auto it = fr.cells.find(id);
      if (it == fr.cells.end()) continue;
      const CellResult& cell = it->second;
      total += cell.seconds;
      worst = std::max(worst, cell.seconds);
      if (!cell.pass) {
        cr.pass = false;
        detail << "[" << fr.fs.str() << "] " << cell.detail << " ";
      }
    }
    cr.seconds = total;
    // pinned runtime budgets
    if (id == 1 && total >= 30.0) {
      cr.pass = false;
      detail << "runtime budget 30s exceeded (" << total << "s) ";
    }
    if (id == 4 && worst >= 60.0) {
      cr.pass = false;
      detail << "per-field budget 60s exceeded (" << worst << "s) ";
    }
    if (cr.pass && !reports.empty())
      cr.detail = reports[0].cells.count(id) ? reports[0].cells.at(id).detail
                                             : "";
    else
      cr.detail = detail.str();
    out.all_pass = out.all_pass && cr.pass;
    out.criteria.push_back(std::move(cr));
  }
  out.total_seconds = since(t0);
  return out;
}

}  // namespace qcomp
