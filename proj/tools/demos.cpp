#include "demos.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "qbrst/basis.hpp"
#include "qbrst/brst.hpp"
#include "qbrst/error.hpp"
#include "qbrst/fock.hpp"
#include "qbrst/models.hpp"
#include "qbrst/oracle.hpp"
#include "qbrst/parse.hpp"
#include "qbrst/specfile.hpp"

namespace qbrst::cli {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

Check timed(std::string name, int criterion, const std::function<Outcome()>& f) {
  Check c;
  c.name = std::move(name);
  c.criterion = criterion;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = f();
    c.passed = o.passed;
    c.detail = std::move(o.detail);
  } catch (const Error& e) {
    c.passed = false;
    c.detail = std::string("error: ") + e.what();
  }
  c.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

std::string render(const Poly& p) { return p.is_zero() ? "0" : p.to_string(); }

Poly text(const Presentation& p, const std::string& t) {
  return parse_expression(t, p.alphabet(), p.parameters());
}

Poly nf(const Presentation& p, const Poly& x) {
  return RewriteSystem::from_presentation(p).normal_form(x);
}

bool all_pass(const std::vector<CheckResult>& rs, std::string& detail) {
  bool ok = true;
  for (const auto& r : rs) {
    if (!detail.empty()) detail += ", ";
    detail += r.name + (r.passed ? " ok" : " FAILED");
    ok = ok && r.passed;
  }
  return ok;
}

const Scalar& alpha() {
  static const Scalar a = Scalar::parameter("a");
  return a;
}

const Scalar& chi0() {
  static const Scalar c = Scalar::parameter("C");
  return c;
}

ParameterSet s4_parameters() { return ParameterSet({"a", "C"}); }

Presentation omega4() {
  return build_ghost_presentation(models::three_generator_qla(alpha()),
                                  TensorSquareOp::permutation(3), GhostMode::Twisted,
                                  GhostNames::indexed(3), chi0(), s4_parameters());
}

/// The ghost-extended algebra written out relation by relation.
Presentation omega4_from_text(const Presentation& like) {
  return presentation_from_text(
      like.alphabet()->generators(), s4_parameters(),
      {{"c1*c1", "a*c3*c1"},
       {"c2*c2", "0"},
       {"c3*c3", "0"},
       {"c1*c3 + c3*c1", "0"},
       {"c2*c3 + c3*c2", "0"},
       {"c1*c2 + c2*c1", "a*c3*c2"},
       {"b1*b1", "0"},
       {"b2*b2", "0"},
       {"b3*b3", "0"},
       {"b1*b2 + b2*b1", "0"},
       {"b1*b3 + b3*b1", "0"},
       {"b2*b3 + b3*b2", "a*b1*b2"},
       {"b1*c1 + c1*b1", "-a*c3*b1 + 1"},
       {"b2*c2 + c2*b2", "1"},
       {"b3*c3 + c3*b3", "1"},
       {"b3*c2 + c2*b3", "a*c2*b1"},
       {"b2*c1 + c1*b2", "-a*c3*b2"},
       {"b3*c1 + c1*b3", "a*c1*b1"},
       {"b1*c2 + c2*b1", "0"},
       {"b1*c3 + c3*b1", "0"},
       {"b2*c3 + c3*b2", "0"},
       {"chi2*chi1", "chi1*chi2"},
       {"chi3*chi1", "chi1*chi3 - a*chi1^2 - C*chi2"},
       {"chi3*chi2", "chi2*chi3 - a*chi1*chi2"},
       {"c1*chi1", "chi1*c1"}, {"c1*chi2", "chi2*c1"}, {"c1*chi3", "chi3*c1"},
       {"c2*chi1", "chi1*c2"}, {"c2*chi2", "chi2*c2"}, {"c2*chi3", "chi3*c2"},
       {"c3*chi1", "chi1*c3"}, {"c3*chi2", "chi2*c3"}, {"c3*chi3", "chi3*c3"},
       {"b1*chi1", "chi1*b1"}, {"b1*chi2", "chi2*b1"}, {"b1*chi3", "chi3*b1"},
       {"b2*chi1", "chi1*b2"}, {"b2*chi2", "chi2*b2"}, {"b2*chi3", "chi3*b2"},
       {"b3*chi1", "chi1*b3"}, {"b3*chi2", "chi2*b3"}, {"b3*chi3", "chi3*b3"}});
}

std::string confluence_detail(const ConfluenceReport& r) {
  std::ostringstream s;
  s << r.pairs_checked << " critical pairs, " << r.unresolved.size() << " unresolved";
  return s.str();
}

}  // namespace

std::vector<Check> demo_s4() {
  std::vector<Check> out;
  const StructureData s = models::three_generator_qla(alpha());
  const TensorSquareOp r = assemble_R(s);
  const TensorSquareOp perm = TensorSquareOp::permutation(3);
  const GhostNames names = GhostNames::indexed(3);

  out.push_back(timed("R satisfies the braid relation", 1, [&] {
    CheckResult y = ybe_check(r);
    std::string d = std::to_string(y.components) + " components";
    if (y.first_failure) d += ", first failure " + y.first_failure->to_string();
    return Outcome{y.passed && y.components == 4096, d};
  }));

  out.push_back(timed("sigma and C satisfy the quantum Lie algebra axioms", 2, [&] {
    std::string d;
    bool ok = all_pass(qla_axioms(structure_of(r)), d);
    return Outcome{ok, d};
  }));

  Presentation om = omega4();
  out.push_back(timed("ghost-extended algebra equals the written relation set", 3, [&] {
    Presentation expected = omega4_from_text(om);
    bool ok = same_relations(om, expected);
    return Outcome{ok, std::to_string(om.relations().size()) + " relations"};
  }));

  BrstCharge q;
  out.push_back(timed("Proposition charge is sum c^i chi_i - C c1 c3 b2 and squares to zero", 4, [&] {
    Poly c0 = build_c0(s, perm, om, names, chi0());
    q = build_Q(om, names, c0);
    Poly expected = nf(om, text(om, "c1*chi1 + c2*chi2 + c3*chi3 - C*c1*c3*b2"));
    Poly residual = verify_nilpotent(q);
    bool ok = c0 == nf(om, text(om, "-C*c1*c3*b2")) && q.q == expected && residual.is_zero();
    return Outcome{ok, "Q = " + render(q.q) + "; Q^2 = " + render(residual)};
  }));

  out.push_back(timed("X tensors at rank 1 reproduce c0 uniquely", 10, [&] {
    TensorSquareOp f = assemble_F(perm);
    XTensorSolution sol = x_tensors_solve(r, f, 1);
    Presentation omf = omega_presentation(r, f, names, Scalar(1), ParameterSet({"a"}));
    bool ok = sol.status == SolveStatus::Unique && sol.c0_parts.size() == 1 &&
              sol.c0_parts[0] == build_c0(s, perm, omf, names, Scalar(1));
    return Outcome{ok, "status " + to_string(sol.status) + ", c0 = " +
                           (sol.c0_parts.empty() ? "?" : render(sol.c0_parts[0]))};
  }));

  out.push_back(timed("X tensor formula agrees with the solver for F = R at ranks 1 and 2", 10, [&] {
    XTensorSolution sol = x_tensors_solve(r, r, 2);
    Presentation omr = omega_presentation(r, r, names, Scalar(1), ParameterSet({"a"}));
    auto formula = x_tensors_formula(r, 2);
    bool ok = sol.status == SolveStatus::Unique && sol.c0_parts.size() == 2;
    for (std::size_t k = 0; ok && k < 2; ++k) {
      ok = c0_from_x(formula[k], omr, names) == sol.c0_parts[k];
    }
    return Outcome{ok, "status " + to_string(sol.status)};
  }));

  out.push_back(timed("Fock conditions start with chi_i psi0 = 0", 11, [&] {
    FockExpansion fe = fock_expand(q, names);
    const auto& m = fe.module_alphabet;
    bool ok = fe.find("1") == nullptr;
    for (int i = 1; i <= 3; ++i) {
      const FockEquation* e = fe.find("c" + std::to_string(i));
      ok = ok && e != nullptr &&
           e->value == parse_expression("chi" + std::to_string(i) + "*psi0", m, s4_parameters());
    }
    std::string d;
    for (const auto& e : fe.equations) {
      if (!d.empty()) d += "; ";
      d += e.monomial + ": " + render(e.value);
    }
    return Outcome{ok, d};
  }));

  out.push_back(timed("Fock conditions agree with the 8x8 ghost matrix oracle", 11, [&] {
    auto jn = models::jtw_names();
    auto transported = transported_ghost_matrices(models::jtw_qla_change(alpha(), chi0()), jn);
    std::map<std::string, Matrix> g;
    for (std::size_t k = 0; k < 3; ++k) {
      g.emplace(names.ghosts[k], transported.at(jn.ghosts[k]));
      g.emplace(names.antighosts[k], transported.at(jn.antighosts[k]));
    }
    bool ok = true;
    for (const auto& rel : relation_polys(om)) {
      bool ghosts_only = true;
      for (const auto& [w, c] : rel.terms())
        for (auto l : w) ghosts_only = ghosts_only && om.alphabet()->info(l).ghost_number != 0;
      if (ghosts_only) ok = ok && evaluate_left(rel, g).is_zero();
    }
    FockExpansion fe = fock_expand(q, names);
    FockExpansion fm = fock_expand_matrix(q, names, g);
    ok = ok && fm.equations.size() == fe.equations.size();
    for (std::size_t i = 0; ok && i < fe.equations.size(); ++i) {
      ok = fm.equations[i].monomial == fe.equations[i].monomial &&
           fm.equations[i].value == fe.equations[i].value;
    }
    return Outcome{ok, std::to_string(fe.equations.size()) + " equations compared"};
  }));

  out.push_back(timed("ghost-extended algebra is confluent at overlap degree 4", 12, [&] {
    ConfluenceReport c = RewriteSystem::from_presentation(om).confluence_check(4);
    return Outcome{c.passed(), confluence_detail(c)};
  }));

  out.push_back(timed("chi2 -> chi2 + a/(2C) chi1^2 gives the second quadratic form", 0, [&] {
    DerivedPresentation dp = derived_presentation(models::chi_gamma_change(alpha(), chi0()));
    const auto& a = dp.presentation.alphabet();
    bool ok = dp.closure_degree == 2 && dp.bracket("chi1", "chi2").value.is_zero() &&
              dp.bracket("chi1", "chi3").value ==
                  parse_expression("a/2*chi1^2 + C*chi2", a, s4_parameters()) &&
              dp.bracket("chi2", "chi3").value ==
                  parse_expression("2*a*chi1*chi2", a, s4_parameters());
    return Outcome{ok, "[chi1, chi3] = " + render(dp.bracket("chi1", "chi3").value) +
                           "; [chi2, chi3] = " + render(dp.bracket("chi2", "chi3").value)};
  }));
  return out;
}

std::vector<Check> demo_s5() {
  std::vector<Check> out;
  Presentation can = models::jtw_canonical();
  Poly q = models::jtw_charge(can);

  out.push_back(timed("canonical-ghost charge squares to zero", 5, [&] {
    Poly res = verify_nilpotent({q, can});
    return Outcome{res.is_zero(), "Q = " + render(q)};
  }));

  out.push_back(timed("Q + mu J cW squares to zero", 5, [&] {
    Poly qmu = q + text(can, "J*cW") * Scalar::parameter("mu");
    Poly res = verify_nilpotent({qmu, can});
    return Outcome{res.is_zero(), "Q'^2 = " + render(res)};
  }));

  out.push_back(timed("deleting a2 J cW cJ bJ leaves a residual the oracle sees at (1,1,1)", 5, [&] {
    Poly deleted = nf(can, q - text(can, "a2*J*cW*cJ*bJ"));
    Poly res = verify_nilpotent({deleted, can});
    bool seen = !oracle_representation(1, 1, 1, 6).vanishes(res);
    return Outcome{!res.is_zero() && seen, "residual " + render(res)};
  }));

  out.push_back(timed("ghost redefinition gives the conventional charge", 6, [&] {
    BasisChange gc = models::jtw_ghost_change();
    CertificateReport cert = check_certificate(gc);
    Poly q57 = apply_basis_change(q, gc);
    const Presentation& mod = *gc.target;
    bool ok = cert.passed && q57 == nf(mod, text(mod, "cJ*J + cT*T + cW*W - a1*cJ*cW*bT"));
    return Outcome{ok, "Q = " + render(q57)};
  }));

  out.push_back(timed("derived ghost relations equal the quadratic ghost algebra", 6, [&] {
    BasisChange gc = models::jtw_ghost_change();
    Presentation mod = *gc.target;
    gc.target.reset();
    DerivedPresentation dp = derived_presentation(gc);
    return Outcome{same_relations(dp.presentation, mod),
                   std::to_string(dp.presentation.relations().size()) + " relations, closure degree " +
                       std::to_string(dp.closure_degree)};
  }));

  out.push_back(timed("anti-ghost redefinition at a2 = a3 = a, a1 = C lands on the QLA ghost algebra", 6,
                      [&] {
                        BasisChange bc = models::jtw_qla_change(alpha(), chi0());
                        BasisChange open = bc;
                        open.target.reset();
                        bool ok = check_certificate(bc).passed &&
                                  same_relations(derived_presentation(open).presentation, *bc.target);
                        Poly qq = apply_basis_change(
                            models::jtw_charge(bc.source, {chi0(), alpha(), alpha()}), bc);
                        ok = ok && qq == nf(*bc.target,
                                            text(*bc.target, "cJ*J + cT*T + cW*W - C*cJ*cW*bT"));
                        return Outcome{ok, "Q = " + render(qq)};
                      }));

  out.push_back(timed("canonical-ghost algebra is confluent at overlap degree 4", 12, [&] {
    ConfluenceReport c = RewriteSystem::from_presentation(can).confluence_check(4);
    return Outcome{c.passed(), confluence_detail(c)};
  }));

  out.push_back(timed("redefined-ghost algebra is confluent at overlap degree 4", 12, [&] {
    ConfluenceReport c =
        RewriteSystem::from_presentation(models::jtw_modified()).confluence_check(4);
    return Outcome{c.passed(), confluence_detail(c)};
  }));
  return out;
}

std::vector<Check> demo_s5_double() {
  std::vector<Check> out;
  models::JtwParameters p;

  out.push_back(timed("T -> T + beta J^2 has cubic coefficient beta(2 a2 - a3 - 2 beta a1)", 7, [&] {
    Scalar beta = Scalar::parameter("beta");
    DerivedPresentation dp = derived_presentation(models::jtw_t_change(beta, p));
    Scalar cubic =
        dp.bracket("Tc", "W").value.coefficient(parse_word("J^3", dp.presentation.alphabet()));
    Scalar expected = beta * (p.a2 * Scalar(2) - p.a3 - beta * p.a1 * Scalar(2));
    bool ok = cubic == expected && dp.closure_degree == 3 &&
              cubic.substitute({{"beta", models::quadratic_beta(p)}}).is_zero();
    return Outcome{ok, "coefficient of J^3 in [Tc, W]: " + cubic.to_string()};
  }));

  out.push_back(timed("at beta = (2 a2 - a3)/(2 a1) the relations are quadratic with tilde constants", 7,
                      [&] {
                        DerivedPresentation q =
                            derived_presentation(models::jtw_t_change(models::quadratic_beta(p), p));
                        models::JtwParameters t = models::tilde(p);
                        const auto& a = q.presentation.alphabet();
                        bool ok = q.closure_degree == 2 &&
                                  q.bracket("J", "W").value ==
                                      parse_expression("J^2", a, {}) * t.a2 +
                                          parse_expression("Tc", a, {}) * t.a1 &&
                                  q.bracket("Tc", "W").value == parse_expression("J*Tc", a, {}) * t.a3 &&
                                  q.bracket("J", "Tc").value.is_zero() && t.a1 == p.a1 &&
                                  t.a2 == p.a3 * Scalar::rational(1, 2) && t.a3 == p.a2 * Scalar(2);
                        return Outcome{ok, "[J, W] = " + render(q.bracket("J", "W").value) +
                                               "; [Tc, W] = " + render(q.bracket("Tc", "W").value)};
                      }));

  out.push_back(timed("Q^2, Qt^2 and {Q, Qt} reduce to zero", 8, [&] {
    Presentation can = models::jtw_canonical();
    BrstCharge q{models::jtw_charge(can), can};
    BrstCharge qt{models::jtw_second_charge(can, models::quadratic_beta(p), models::tilde(p)), can};
    DoubleComplexReport rep = double_complex_check(q, qt);
    return Outcome{rep.passed(), "Q^2 = " + render(rep.q_squared) + "; Qt^2 = " +
                                     render(rep.qt_squared) + "; {Q, Qt} = " +
                                     render(rep.anticommutator)};
  }));

  out.push_back(timed("tilde map is the involution t -> 1/t", 9, [&] {
    Scalar t = p.a2 * Scalar(2) / p.a3;
    models::JtwParameters tp = models::tilde(p);
    models::JtwParameters ttp = models::tilde(tp);
    Scalar tt = tp.a2 * Scalar(2) / tp.a3;
    bool ok = tt == involution(t) && tt == p.a3 / (p.a2 * Scalar(2)) && ttp.a1 == p.a1 &&
              ttp.a2 == p.a2 && ttp.a3 == p.a3 && ttp.a2 * Scalar(2) / ttp.a3 == t;
    return Outcome{ok, "t = " + t.to_string() + ", tilde t = " + tt.to_string()};
  }));
  return out;
}

}  // namespace qbrst::cli
