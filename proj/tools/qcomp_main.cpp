// Copyright 2026 The quadcomp authors.
// Distributed WITHOUT ANY WARRANTY. Licensed under the Apache License,
// Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0
//
// qcomp: construct, verify and manipulate compositions of quadratic
// spaces, their Clifford data and the attached trialitarian triples,
// entirely in exact arithmetic. See SCHEMAS.md for the input formats.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>

#include "qcomp/json_io.hpp"
#include "qcomp/selftest.hpp"
#include "qcomp/triality.hpp"

using namespace qcomp;

namespace {

constexpr std::uint64_t kDefaultSeed = 1729;

struct GlobalOpts {
  std::string out;
  long bound = kDefaultHeightBound;
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
};

void emit(const GlobalOpts& g, const Json& j) {
  std::string text = j.dump(2);
  if (!g.out.empty()) {
    std::ofstream f(g.out);
    check(f.good(), errc::bad_input, "cannot write '" + g.out + "'");
    f << text << "\n";
  } else {
    std::cout << text << "\n";
  }
}

// exit 0 all pass, 1 certificate failure, 2 parse error, 3 internal fault
int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    Json j{{"ok", false},
           {"error", errc_name(e.code())},
           {"message", e.what()}};
    std::cout << j.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    if (errc_is_internal_fault(e.code())) return 3;
    return e.code() == errc::bad_input ? 2 : 1;
  } catch (const Json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }
}

// FNV-1a of the canonical dump: lets reports reference a composition by
// content instead of repeating it
std::string content_hash(const Json& j) {
  std::string s = canonical_dump(j);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

Json sim_triple_to_json(const SimTriple& s) {
  return Json{{"g1", matrix_to_json(s.g1)},
              {"g2", matrix_to_json(s.g2)},
              {"g3", matrix_to_json(s.g3)},
              {"lambda",
               Json{scalar_to_json(s.lambda[0]), scalar_to_json(s.lambda[1]),
                    scalar_to_json(s.lambda[2])}}};
}

int report_exit(const Report& r) { return r.ok ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact-arithmetic compositions of quadratic spaces, Clifford data "
      "and split trialitarian triples"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--out", g.out, "write the JSON report to this file");
  app.add_option("--bound", g.bound, "height bound for searches over Q");
  app.add_option("--seed", g.seed, "seed for randomized batches");
  app.add_option("--jobs", g.jobs, "parallel field workers for selftest");

  std::string in_path;
  std::vector<std::string> field_names;

  auto* c_verify = app.add_subcommand("verify", "multiplicativity check");
  c_verify->add_option("input", in_path)->required();
  auto* c_derive =
      app.add_subcommand("derive", "emit the derived composition");
  c_derive->add_option("input", in_path)->required();
  auto* c_suite =
      app.add_subcommand("identity-suite", "the eighteen derived identities");
  c_suite->add_option("input", in_path)->required();
  auto* c_cliff = app.add_subcommand(
      "clifford-iso", "Clifford map compatibility for a dim-8 composition");
  c_cliff->add_option("input", in_path)->required();
  auto* c_pfister =
      app.add_subcommand("pfister", "norm form class and multipliers");
  c_pfister->add_option("input", in_path)->required();
  auto* c_pointed =
      app.add_subcommand("pointed", "pointed-composition certificate suite");
  c_pointed->add_option("input", in_path)->required();
  auto* c_para = app.add_subcommand("para", "para-algebra of a unital input");
  c_para->add_option("input", in_path)->required();
  auto* c_kaplansky =
      app.add_subcommand("kaplansky", "unitalization with isomorphism");
  c_kaplansky->add_option("input", in_path)->required();
  auto* c_isot =
      app.add_subcommand("isot", "isotopy versus similitude dictionary");
  c_isot->add_option("input", in_path)->required();
  auto* c_lift = app.add_subcommand(
      "lift", "triality lift of a proper isometry of the first space");
  c_lift->add_option("input", in_path)->required();
  auto* c_local =
      app.add_subcommand("local-lift", "local triality linear solve");
  c_local->add_option("input", in_path)->required();
  auto* c_theta =
      app.add_subcommand("theta", "theta maps and derived-triple relations");
  c_theta->add_option("input", in_path)->required();
  auto* c_extend = app.add_subcommand(
      "extend", "extend a polarization-preserving similitude");
  c_extend->add_option("input", in_path)->required();
  auto* c_psia =
      app.add_subcommand("psi-a", "structure-group map of an algebra");
  c_psia->add_option("input", in_path)->required();
  auto* c_classify =
      app.add_subcommand("classify", "quadratic form invariants");
  c_classify->add_option("input", in_path)->required();
  auto* c_selftest =
      app.add_subcommand("selftest", "run the acceptance criterion suite");
  c_selftest->add_option(
      "--field", field_names,
      "field (Q or a prime p), repeatable; default Q,2,3,5,7");

  int split_n = 8;
  std::string split_field = "Q";
  bool split_para = false;
  auto* c_make = app.add_subcommand(
      "make-split", "emit a split composition algebra as JSON");
  c_make->add_option("-n,--dim", split_n, "dimension (2, 4 or 8)");
  c_make->add_option("--field", split_field, "Q or a prime p");
  c_make->add_flag("--para", split_para, "emit the para-algebra instead");

  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  return run_guarded([&]() -> int {
    if (*c_verify) {
      Composition c = composition_from_json(load_json_file(in_path));
      Report r = verify(c);
      Json j = report_to_json(r);
      j["command"] = "verify";
      emit(g, j);
      return report_exit(r);
    }
    if (*c_derive) {
      Composition c = composition_from_json(load_json_file(in_path));
      check(verify_ok(c), errc::relation_violation,
            "input is not a composition");
      emit(g, composition_to_json(derive(c)));
      return 0;
    }
    if (*c_suite) {
      CompTriple t =
          CompTriple::of(composition_from_json(load_json_file(in_path)));
      Report r = identity_suite(t);
      Json j = report_to_json(r);
      j["command"] = "identity-suite";
      emit(g, j);
      return report_exit(r);
    }
    if (*c_cliff) {
      CompTriple t =
          CompTriple::of(composition_from_json(load_json_file(in_path)));
      Report r = verify_quadpair_iso(t);
      Json j = report_to_json(r);
      j["command"] = "clifford-iso";
      emit(g, j);
      return report_exit(r);
    }
    if (*c_pfister) {
      CompTriple t =
          CompTriple::of(composition_from_json(load_json_file(in_path)));
      PfisterData pd = pfister_data(t, g.bound);
      emit(g, Json{{"command", "pfister"},
                   {"l1", scalar_to_json(pd.l1)},
                   {"l2", scalar_to_json(pd.l2)},
                   {"l3", scalar_to_json(pd.l3)},
                   {"n_class", pd.n_class.str()},
                   {"n_form", quadform_to_json(pd.n_form)},
                   {"choice", pd.choice}});
      return 0;
    }
    if (*c_pointed) {
      Json j = load_json_file(in_path);
      Composition c = composition_from_json(j);
      check(j.contains("e1") && j.contains("e2") && j.contains("e3"),
            errc::bad_input, "pointed input needs e1/e2/e3");
      PointedComposition p(CompTriple::of(c),
                           vec_from_json(j.at("e1"), c.field()),
                           vec_from_json(j.at("e2"), c.field()),
                           vec_from_json(j.at("e3"), c.field()));
      PointedReport rep = pointed_suite(p);
      Json out = report_to_json(rep.identities);
      out["command"] = "pointed";
      out["delta"] = sim_triple_to_json(rep.delta);
      out["s_composition"] = composition_to_json(rep.s_tensor);
      out["s_self_derived"] = rep.s_self_derived;
      emit(g, out);
      return rep.ok ? 0 : 1;
    }
    if (*c_para) {
      CompositionAlgebra a = algebra_from_json(load_json_file(in_path));
      emit(g, algebra_to_json(para(a)));
      return 0;
    }
    if (*c_kaplansky) {
      CompositionAlgebra a = algebra_from_json(load_json_file(in_path));
      KaplanskyResult k = kaplansky(a, g.bound);
      emit(g, Json{{"command", "kaplansky"},
                   {"algebra", algebra_to_json(k.unital)},
                   {"u", vec_to_json(k.u)},
                   {"iso", sim_triple_to_json(k.iso)}});
      return 0;
    }
    if (*c_isot) {
      Json j = load_json_file(in_path);
      CompositionAlgebra a = algebra_from_json(j.at("a"));
      CompositionAlgebra b = algebra_from_json(j.at("b"));
      int n = a.dim();
      Matrix f1 = matrix_from_json(j.at("f1"), a.field(), n, n);
      Matrix f2 = matrix_from_json(j.at("f2"), a.field(), n, n);
      Matrix f3 = matrix_from_json(j.at("f3"), a.field(), n, n);
      IsotopyVerdict v = isotopy_dictionary(a, b, f1, f2, f3);
      Json out{{"command", "isot"},
               {"isotopy", v.isotopy},
               {"similitude", v.similitude}};
      if (v.lambda)
        out["lambda"] = Json{scalar_to_json((*v.lambda)[0]),
                             scalar_to_json((*v.lambda)[1]),
                             scalar_to_json((*v.lambda)[2])};
      emit(g, out);
      return 0;
    }
    if (*c_lift) {
      Json j = load_json_file(in_path);
      Composition c = composition_from_json(j.at("composition"));
      TrialTriple t = TrialTriple::make(c, g.bound);
      Matrix g1 = matrix_from_json(j.at("g1"), c.field(), 8, 8);
      LiftResult lr = triality_lift_isometry(t, g1);
      Json refl = Json::array();
      for (const Vec& v : lr.reflection_vectors)
        refl.push_back(vec_to_json(v));
      Json xi = Json::array();
      for (const auto& [mask, coeff] : lr.xi.coeffs())
        xi.push_back(Json{mask, scalar_to_json(coeff)});
      emit(g, Json{{"command", "lift"},
                   {"composition_hash", content_hash(j.at("composition"))},
                   {"certified", lr.certified},
                   {"g2", matrix_to_json(lr.g2)},
                   {"g3", matrix_to_json(lr.g3)},
                   {"reflections", refl},
                   {"xi", xi}});
      return lr.certified ? 0 : 1;
    }
    if (*c_local) {
      Json j = load_json_file(in_path);
      Composition c = composition_from_json(j.at("composition"));
      TrialTriple t = TrialTriple::make(c, g.bound);
      Matrix g1 = matrix_from_json(j.at("g1"), c.field(), 8, 8);
      LocalLift ll = local_triality_solve(t, g1);
      Json kernel = Json::array();
      for (const auto& [k2, k3] : ll.kernel)
        kernel.push_back(
            Json{{"g2", matrix_to_json(k2)}, {"g3", matrix_to_json(k3)}});
      emit(g, Json{{"command", "local-lift"},
                   {"composition_hash", content_hash(j.at("composition"))},
                   {"certified", ll.certified},
                   {"g2", matrix_to_json(ll.g2)},
                   {"g3", matrix_to_json(ll.g3)},
                   {"kernel", kernel}});
      return ll.certified ? 0 : 1;
    }
    if (*c_theta) {
      Composition c = composition_from_json(load_json_file(in_path));
      TrialTriple t = TrialTriple::make(c, g.bound);
      Report r = verify_theta_relations(t, g.seed);
      Json j = report_to_json(r);
      j["command"] = "theta";
      j["composition_hash"] = content_hash(composition_to_json(c));
      emit(g, j);
      return report_exit(r);
    }
    if (*c_extend) {
      Json j = load_json_file(in_path);
      Composition c = composition_from_json(j.at("composition"));
      Composition ct = composition_from_json(j.at("target"));
      TrialTriple t = TrialTriple::make(c, g.bound);
      TrialTriple tt = TrialTriple::make(ct, g.bound);
      Matrix g1 = matrix_from_json(j.at("g1"), c.field(), 8, 8);
      auto [g2, g3] = extend_similitude(t, tt, g1);
      emit(g, Json{{"command", "extend"},
                   {"composition_hash", content_hash(j.at("composition"))},
                   {"target_hash", content_hash(j.at("target"))},
                   {"g2", matrix_to_json(g2)},
                   {"g3", matrix_to_json(g3)}});
      return 0;
    }
    if (*c_psia) {
      Json j = load_json_file(in_path);
      CompositionAlgebra a = algebra_from_json(j.at("algebra"));
      auto alg = CliffordAlgebra::make(a.form());
      std::map<unsigned, Scalar> coeffs;
      for (const Json& e : j.at("xi"))
        coeffs[e.at(0).get<unsigned>()] =
            scalar_from_json(e.at(1), a.field());
      CliffordElem xi(alg, coeffs);
      auto om = omega_membership(alg, xi);
      check(om.has_value(), errc::not_in_omega,
            "xi is outside the extended Clifford group");
      Autotopy f = psi_A_structure(a, *om);
      OmegaElem back = psi_A_inverse(a, f);
      bool roundtrip = back.xi == om->xi;
      emit(g, Json{{"command", "psi-a"},
                   {"f1", matrix_to_json(f.f1)},
                   {"f2", matrix_to_json(f.f2)},
                   {"f3", matrix_to_json(f.f3)},
                   {"roundtrip", roundtrip}});
      return roundtrip ? 0 : 1;
    }
    if (*c_classify) {
      QuadForm q = quadform_from_json(load_json_file(in_path));
      ClassRecord r = classify(q, g.bound);
      Json j{{"command", "classify"},
             {"dim", r.dim},
             {"witt_index", r.witt_index},
             {"hyperbolic", r.hyperbolic},
             {"summary", r.str()}};
      if (q.field().is_prime_field()) {
        if (q.field().p() == 2)
          j["arf"] = r.arf;
        else
          j["disc_square"] = r.disc_class == 0;
      } else {
        j["signature"] = Json{r.sig_pos, r.sig_neg};
        j["disc"] = r.disc_sqfree.get_str();
        Json hs = Json::array();
        for (auto& [p, s] : r.hasse) hs.push_back(Json{p, s});
        j["hasse"] = hs;
      }
      emit(g, j);
      return 0;
    }
    if (*c_make) {
      FieldSpec fs = (split_field == "Q" || split_field == "q")
                         ? FieldSpec::Q()
                         : FieldSpec::Fp(std::stol(split_field));
      CompositionAlgebra a = make_split(split_n, fs);
      emit(g, algebra_to_json(split_para ? para(a) : a));
      return 0;
    }
    if (*c_selftest) {
      std::vector<FieldSpec> fields;
      for (const std::string& name : field_names) {
        if (name == "Q" || name == "q")
          fields.push_back(FieldSpec::Q());
        else
          fields.push_back(FieldSpec::Fp(std::stol(name)));
      }
      if (fields.empty()) fields = default_fields();
      SelftestReport rep = run_selftest(fields, g.seed, g.jobs, g.bound);
      Json crits = Json::array();
      for (const CriterionResult& c : rep.criteria) {
        std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id
                  << ": " << c.name << " (" << c.detail << ") [" << c.seconds
                  << "s]\n";
        crits.push_back(Json{{"id", c.id},
                             {"name", c.name},
                             {"pass", c.pass},
                             {"detail", c.detail},
                             {"seconds", c.seconds}});
      }
      std::cout << (rep.all_pass ? "PASS" : "FAIL") << " all criteria in "
                << rep.total_seconds << "s\n";
      if (!g.out.empty())
        emit(g, Json{{"command", "selftest"},
                     {"all_pass", rep.all_pass},
                     {"criteria", crits},
                     {"seed", g.seed},
                     {"seconds", rep.total_seconds}});
      return rep.all_pass ? 0 : 1;
    }
    return 2;
  });
}
