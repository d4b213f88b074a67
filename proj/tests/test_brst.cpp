#include "test_util.hpp"

#include <random>

#include "qbrst/error.hpp"
#include "qbrst/fock.hpp"
#include "qbrst/models.hpp"
#include "qbrst/oracle.hpp"
#include "qbrst/parse.hpp"
#include "qbrst/specfile.hpp"

using namespace qbrst;
using models::JtwParameters;

namespace {

const Scalar kA = Scalar::parameter("a");
const Scalar kC = Scalar::parameter("C");
const ParameterSet kS4Params({"a", "C"});

Presentation omega4() {
  return build_ghost_presentation(models::three_generator_qla(kA), TensorSquareOp::permutation(3),
                                  GhostMode::Twisted, GhostNames::indexed(3), kC, kS4Params);
}

BrstCharge charge4(const Presentation& om) {
  auto names = GhostNames::indexed(3);
  auto s = models::three_generator_qla(kA);
  return build_Q(om, names, build_c0(s, TensorSquareOp::permutation(3), om, names, kC));
}

Poly text(const Presentation& p, const std::string& t) {
  return parse_expression(t, p.alphabet(), p.parameters());
}

Poly nf(const Presentation& p, const Poly& x) {
  return RewriteSystem::from_presentation(p).normal_form(x);
}

/// Charge of the first face with the a2 J cW cJ bJ term removed.
Poly q53_without_a2_term(const Presentation& can) {
  return nf(can, models::jtw_charge(can) - text(can, "a2*J*cW*cJ*bJ"));
}

Poly second_charge(const Presentation& can, const Scalar& a2_tilde) {
  JtwParameters p;
  JtwParameters t = models::tilde(p);
  t.a2 = a2_tilde;
  return models::jtw_second_charge(can, models::quadratic_beta(p), t);
}

/// Nonzero random rationals in [-5, 5] \ {0}.
std::vector<Rational> random_point(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(1, 5), den(1, 3), sign(0, 1);
  std::vector<Rational> out;
  for (int i = 0; i < 3; ++i) {
    Rational r(num(rng) * (sign(rng) ? 1 : -1), den(rng));
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

bool oracle_vanishes(const Poly& p, const std::vector<Rational>& pt, std::size_t d = 6) {
  return oracle_representation(pt[0], pt[1], pt[2], d).vanishes(p);
}

}  // namespace

TEST_CASE("ghost algebra of the three-generator QLA") {
  Presentation om = omega4();
  Presentation expected = presentation_from_text(
      om.alphabet()->generators(), kS4Params,
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
  CHECK(same_relations(om, expected));
  CHECK(RewriteSystem::from_presentation(om).confluence_check(4).passed());
}

TEST_CASE("permutation data gives canonical ghosts") {
  auto names = GhostNames::indexed(2);
  Presentation p = build_ghost_presentation(models::abelian(2), TensorSquareOp::permutation(2),
                                            GhostMode::Twisted, names, Scalar(1), {});
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      std::string b = "b" + std::to_string(i), c = "c" + std::to_string(j);
      CHECK(nf(p, text(p, b + "*" + c + " + " + c + "*" + b)) ==
            p.scalar(Scalar(i == j ? 1 : 0)));
      CHECK(nf(p, text(p, c + "*" + c)).is_zero());
    }
  }
}

TEST_CASE("inconsistent twist is rejected") {
  CHECK_THROWS_AS(build_ghost_presentation(models::three_generator_qla(kA),
                                           TensorSquareOp::identity(3), GhostMode::Twisted,
                                           GhostNames::indexed(3), kC, kS4Params),
                  InvalidInput);
}

TEST_CASE("Proposition charge") {
  Presentation om = omega4();
  auto names = GhostNames::indexed(3);
  auto s = models::three_generator_qla(kA);
  Poly c0 = build_c0(s, TensorSquareOp::permutation(3), om, names, kC);
  CHECK(c0 == nf(om, text(om, "-C*c1*c3*b2")));
  CHECK(c0.ghost_number() == std::optional<int>(1));

  BrstCharge q = charge4(om);
  CHECK(q.q == nf(om, text(om, "c1*chi1 + c2*chi2 + c3*chi3 - c1*c3*C*b2")));
  CHECK(verify_nilpotent(q).is_zero());

  SUBCASE("phi = sigma") {
    Presentation om2 = build_ghost_presentation(s, s.sigma, GhostMode::Twisted, names, kC,
                                                kS4Params);
    BrstCharge q2 = build_Q(om2, names, build_c0(s, s.sigma, om2, names, kC));
    CHECK(verify_nilpotent(q2).is_zero());
  }

  SUBCASE("abelian constraints") {
    auto n2 = GhostNames::indexed(3);
    auto ab = models::abelian(3);
    Presentation p = build_ghost_presentation(ab, TensorSquareOp::permutation(3),
                                              GhostMode::Twisted, n2, Scalar(1), {});
    Poly z = build_c0(ab, TensorSquareOp::permutation(3), p, n2, Scalar(1));
    CHECK(z.is_zero());
    BrstCharge qa = build_Q(p, n2, z);
    CHECK(qa.q == text(p, "chi1*c1 + chi2*c2 + chi3*c3"));
    CHECK(verify_nilpotent(qa).is_zero());
  }

  SUBCASE("grading violation") {
    CHECK_THROWS_AS(build_Q(om, names, text(om, "c1*c2")), InvalidInput);
  }
}

TEST_CASE("canonical charge of the J, T, W family") {
  Presentation can = models::jtw_canonical();
  Poly q = models::jtw_charge(can);
  CHECK(verify_nilpotent({q, can}).is_zero());

  Poly qmu = q + text(can, "J*cW") * Scalar::parameter("mu");
  CHECK(verify_nilpotent({qmu, can}).is_zero());

  Poly residual = verify_nilpotent({q53_without_a2_term(can), can});
  CHECK_FALSE(residual.is_zero());
  CHECK_FALSE(oracle_vanishes(residual, {1, 1, 1}));
}

TEST_CASE("order-by-order solver") {
  SUBCASE("J, T, W family") {
    Presentation can = models::jtw_canonical();
    AnsatzResult r = solve_brst_ansatz(can, models::jtw_names());
    CHECK(r.nilpotent);
    CHECK(r.charge.q == models::jtw_charge(can));
    CHECK(verify_nilpotent(r.charge).is_zero());
    bool mu_direction = false;
    for (const auto& d : r.deformations) {
      if (d == text(can, "J*cW")) mu_direction = true;
    }
    CHECK(mu_direction);
  }

  SUBCASE("abelian") {
    auto names = GhostNames::indexed(2);
    Presentation ab = with_canonical_ghosts(
        presentation_from_text({{"chi1", Parity::Even, 0, 0}, {"chi2", Parity::Even, 0, 1}}, {},
                               {{"chi2*chi1", "chi1*chi2"}}),
        names);
    AnsatzResult r = solve_brst_ansatz(ab, names);
    CHECK(r.nilpotent);
    CHECK(r.charge.q == text(ab, "chi1*c1 + chi2*c2"));
  }

  SUBCASE("su(2) with a matrix oracle") {
    auto names = GhostNames::indexed(3);
    Presentation lie = presentation_from_text(
        {{"chi1", Parity::Even, 0, 0}, {"chi2", Parity::Even, 0, 1}, {"chi3", Parity::Even, 0, 2}},
        {},
        {{"chi2*chi1", "chi1*chi2 - chi3"},
         {"chi3*chi1", "chi1*chi3 + chi2"},
         {"chi3*chi2", "chi2*chi3 - chi1"}});
    Presentation p = with_canonical_ghosts(lie, names);
    AnsatzResult r = solve_brst_ansatz(p, names);
    REQUIRE(r.nilpotent);
    Poly expected = text(p,
                         "c1*chi1 + c2*chi2 + c3*chi3"
                         " - 1/2*(c1*c2*b3 - c2*c1*b3 + c2*c3*b1 - c3*c2*b1 + c3*c1*b2 - c1*c3*b2)");
    CHECK(r.charge.q == nf(p, expected));

    // so(3) generators (L_i)_{jk} = -eps_{ijk} on R^3, tensored with CAR.
    const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                              {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                              {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
    std::map<std::string, Matrix> letters;
    Matrix id8 = Matrix::identity(8), id3 = Matrix::identity(3);
    for (std::size_t i = 0; i < 3; ++i) {
      Matrix l(3);
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) l(j, k) = Scalar(-eps[i][j][k]);
      letters.emplace(names.constraints[i], kron(l, id8));
    }
    for (const auto& [n, m] : canonical_ghost_matrices(names)) letters.emplace(n, kron(id3, m));
    for (const auto& rel : relation_polys(p)) CHECK(evaluate_left(rel, letters).is_zero());
    CHECK_FALSE(evaluate_left(r.charge.q, letters).is_zero());
    CHECK(evaluate_left(r.charge.q * r.charge.q, letters).is_zero());
  }
}

TEST_CASE("ghost redefinition") {
  BasisChange gc = models::jtw_ghost_change();
  CHECK(check_certificate(gc).passed);
  Presentation can = gc.source;
  Presentation mod = *gc.target;
  CHECK(RewriteSystem::from_presentation(mod).confluence_check(4).passed());
  Poly q57 = apply_basis_change(models::jtw_charge(can), gc);
  CHECK(q57 == models::jtw_modified_charge(mod));
  CHECK(q57 == nf(mod, text(mod, "cJ*J + cT*T + cW*W - a1*cJ*cW*bT")));

  BasisChange open = gc;
  open.target.reset();
  CHECK(same_relations(derived_presentation(open).presentation, mod));

  SUBCASE("identity change is a fixed point") {
    BasisChange id;
    id.source = can;
    id.target_alphabet = can.alphabet();
    id.target = can;
    Poly q = models::jtw_charge(can);
    CHECK(apply_basis_change(q, id) == q);
  }

  SUBCASE("broken inverse is refused") {
    BasisChange bad = gc;
    bad.to_target["cJ"] = text(mod, "cJ");
    CHECK_FALSE(check_certificate(bad).passed);
    CHECK_THROWS_AS(apply_basis_change(models::jtw_charge(can), bad), InvalidInput);
  }

  SUBCASE("homomorphism on random products") {
    std::mt19937 rng(99);
    const auto& a = can.alphabet();
    std::uniform_int_distribution<int> letter(0, static_cast<int>(a->size()) - 1), len(0, 3);
    auto random = [&] {
      Poly p(a);
      for (int t = 0; t < 2; ++t) {
        Word w;
        int l = len(rng);
        for (int k = 0; k < l; ++k) w.push_back(static_cast<Letter>(letter(rng)));
        p.add_term(w, Scalar(t + 1));
      }
      return p;
    };
    for (int i = 0; i < 25; ++i) {
      Poly x = random(), y = random();
      CHECK(apply_basis_change(x * y, gc) ==
            nf(mod, apply_basis_change(x, gc) * apply_basis_change(y, gc)));
    }
  }
}

TEST_CASE("anti-ghost redefinition lands on the QLA ghost algebra") {
  BasisChange bc = models::jtw_qla_change(kA, kC);
  CHECK(check_certificate(bc).passed);
  BasisChange open = bc;
  open.target.reset();
  CHECK(same_relations(derived_presentation(open).presentation, *bc.target));
  Poly q = apply_basis_change(models::jtw_charge(bc.source, {kC, kA, kA}), bc);
  CHECK(q == nf(*bc.target, text(*bc.target, "cJ*J + cT*T + cW*W - C*cJ*cW*bT")));
}

TEST_CASE("generator redefinition T -> T + beta J^2") {
  JtwParameters p;
  Scalar beta = Scalar::parameter("beta");
  DerivedPresentation dp = derived_presentation(models::jtw_t_change(beta, p));
  const auto& a = dp.presentation.alphabet();
  Poly tw = dp.bracket("Tc", "W").value;
  Word jjj = parse_word("J^3", a);
  Scalar cubic = tw.coefficient(jjj);
  CHECK(cubic == beta * (p.a2 * Scalar(2) - p.a3 - beta * p.a1 * Scalar(2)));
  CHECK(dp.closure_degree == 3);

  Scalar b0 = models::quadratic_beta(p);
  CHECK(cubic.substitute({{"beta", b0}}).is_zero());
  CHECK(cubic.substitute({{"beta", Scalar(0)}}).is_zero());

  DerivedPresentation q = derived_presentation(models::jtw_t_change(b0, p));
  CHECK(q.closure_degree == 2);
  JtwParameters t = models::tilde(p);
  const auto& qa = q.presentation.alphabet();
  CHECK(q.bracket("J", "W").value == parse_expression("J^2", qa, {}) * t.a2 +
                                         parse_expression("Tc", qa, {}) * t.a1);
  CHECK(q.bracket("Tc", "W").value == parse_expression("J*Tc", qa, {}) * t.a3);
  CHECK(q.bracket("J", "Tc").value.is_zero());
  CHECK(t.a1 == p.a1);
  CHECK(t.a2 == p.a3 * Scalar::rational(1, 2));
  CHECK(t.a3 == p.a2 * Scalar(2));
}

TEST_CASE("gamma change gives the quadratic relations of the second form") {
  DerivedPresentation dp = derived_presentation(models::chi_gamma_change(kA, kC));
  CHECK(dp.closure_degree == 2);
  const auto& a = dp.presentation.alphabet();
  CHECK(dp.bracket("chi1", "chi2").value.is_zero());
  CHECK(dp.bracket("chi1", "chi3").value ==
        parse_expression("a/2*chi1^2 + C*chi2", a, kS4Params));
  CHECK(dp.bracket("chi2", "chi3").value == parse_expression("2*a*chi1*chi2", a, kS4Params));
}

TEST_CASE("double complex") {
  Presentation can = models::jtw_canonical();
  BrstCharge q{models::jtw_charge(can), can};
  BrstCharge qt{second_charge(can, models::tilde({}).a2), can};
  DoubleComplexReport rep = double_complex_check(q, qt);
  CHECK(rep.q_squared.is_zero());
  CHECK(rep.qt_squared.is_zero());
  CHECK(rep.anticommutator.is_zero());
  CHECK(rep.passed());

  BrstCharge wrong{second_charge(can, Scalar::parameter("a3")), can};
  DoubleComplexReport bad = double_complex_check(q, wrong);
  CHECK_FALSE(bad.anticommutator.is_zero());
  CHECK_FALSE(oracle_vanishes(bad.anticommutator, {1, 1, 1}));
}

TEST_CASE("involution") {
  JtwParameters p;
  Scalar t = p.a2 * Scalar(2) / p.a3;
  CHECK(involution(t) == p.a3 / (p.a2 * Scalar(2)));
  JtwParameters tp = models::tilde(p);
  CHECK(tp.a2 * Scalar(2) / tp.a3 == involution(t));
  JtwParameters ttp = models::tilde(tp);
  CHECK(ttp.a1 == p.a1);
  CHECK(ttp.a2 == p.a2);
  CHECK(ttp.a3 == p.a3);
  CHECK(ttp.a2 * Scalar(2) / ttp.a3 == t);
  CHECK(involution(Scalar(1)) == Scalar(1));
  CHECK_THROWS_AS(involution(Scalar(0)), DivisionByZero);

  // a2 = a3 = alpha: t = 2, and the quadratic form after the gamma change
  // has coefficients alpha/2 and 2 alpha.
  DerivedPresentation dp = derived_presentation(models::chi_gamma_change(kA, kC));
  const auto& a = dp.presentation.alphabet();
  Scalar a2 = dp.bracket("chi1", "chi3").value.coefficient(parse_word("chi1^2", a));
  Scalar a3 = dp.bracket("chi2", "chi3").value.coefficient(parse_word("chi1*chi2", a));
  CHECK(a2 * Scalar(2) / a3 == involution(Scalar(2)));
}

TEST_CASE("Fock space conditions") {
  Presentation om = omega4();
  auto names = GhostNames::indexed(3);
  BrstCharge q = charge4(om);
  FockExpansion fe = fock_expand(q, names);
  const auto& m = fe.module_alphabet;
  for (int i = 1; i <= 3; ++i) {
    const FockEquation* e = fe.find("c" + std::to_string(i));
    REQUIRE(e != nullptr);
    CHECK(e->ghost_number == 1);
    CHECK(e->value == parse_expression("chi" + std::to_string(i) + "*psi0", m, kS4Params));
  }
  CHECK(fe.find("1") == nullptr);
  const FockEquation* e13 = fe.find("c1*c3");
  REQUIRE(e13 != nullptr);
  CHECK(e13->value ==
        parse_expression("chi1*psi3 - chi3*psi1 - a*chi1*psi1 - C*psi2", m, kS4Params));

  CHECK(fe.equations.size() <= 8);
  for (const auto& e : fe.equations) CHECK(e.value.ghost_number() == std::optional<int>(0));

  SUBCASE("matrix oracle of the ghost algebra") {
    auto jn = models::jtw_names();
    auto transported = transported_ghost_matrices(models::jtw_qla_change(kA, kC), jn);
    std::map<std::string, Matrix> g;
    for (std::size_t k = 0; k < 3; ++k) {
      g.emplace(names.ghosts[k], transported.at(jn.ghosts[k]));
      g.emplace(names.antighosts[k], transported.at(jn.antighosts[k]));
    }
    for (const auto& rel : relation_polys(om)) {
      bool ghosts_only = true;
      for (const auto& [w, c] : rel.terms())
        for (auto l : w) ghosts_only = ghosts_only && om.alphabet()->info(l).ghost_number != 0;
      if (ghosts_only) CHECK(evaluate_left(rel, g).is_zero());
    }
    FockExpansion fm = fock_expand_matrix(q, names, g);
    REQUIRE(fm.equations.size() == fe.equations.size());
    for (std::size_t i = 0; i < fe.equations.size(); ++i) {
      CHECK(fm.equations[i].monomial == fe.equations[i].monomial);
      CHECK(fm.equations[i].value == fe.equations[i].value);
    }
  }

  SUBCASE("zero charge") {
    BrstCharge z{om.zero(), om};
    CHECK(fock_expand(z, names).equations.empty());
  }
}

TEST_CASE("oracle representation") {
  OracleRepresentation o = oracle_representation(2, -3, 5, 5);
  Presentation can = models::jtw_canonical();
  CHECK(o.vanishes(text(can, "J*T - T*J")));
  CHECK(o.vanishes(text(can, "J*W - W*J - a1*T - a2*J^2")));
  CHECK(o.vanishes(text(can, "T*W - W*T - a3*J*T")));
  CHECK_FALSE(o.vanishes(text(can, "J*W - W*J")));
  for (const auto& rel : relation_polys(can)) CHECK(o.vanishes(rel));

  Poly q = models::jtw_charge(can);
  OracleRepresentation one = oracle_representation(1, 1, 1, 6);
  CHECK_FALSE(one.vanishes(q));
  CHECK(one.vanishes(q * q));
  CHECK_THROWS_AS(oracle_representation(1, 1, 1, 2), InvalidInput);
  CHECK_THROWS_AS(o.vanishes(text(can, "a1*J") * Scalar::parameter("mu")), InvalidInput);
}

TEST_CASE("engine and oracle agree at random points") {
  Presentation can = models::jtw_canonical();
  Poly q = models::jtw_charge(can);
  std::mt19937 rng(12345);
  Scalar mu = Scalar::parameter("mu");

  // Residuals the engine declares zero: the squares themselves vanish.
  std::vector<Poly> zero_claims{q * q, (q + text(can, "J*cW") * mu) * (q + text(can, "J*cW") * mu)};
  for (const auto& z : zero_claims) {
    REQUIRE(nf(can, z).is_zero());
    for (int i = 0; i < 3; ++i) {
      auto pt = random_point(rng);
      CHECK(oracle_vanishes(z.substitute({{"mu", Scalar(pt[0])}}), pt));
    }
  }

  Poly deleted = q53_without_a2_term(can);
  BrstCharge wrong{second_charge(can, Scalar::parameter("a3")), can};
  std::vector<Poly> nonzero{verify_nilpotent({deleted, can}),
                            double_complex_check({q, can}, wrong).anticommutator};
  for (const auto& r : nonzero) {
    REQUIRE_FALSE(r.is_zero());
    int seen = 0;
    for (int i = 0; i < 5; ++i) {
      auto pt = random_point(rng);
      if (!oracle_vanishes(r, pt)) ++seen;
    }
    MESSAGE("nonzero residual detected at " << seen << " of 5 points");
    CHECK(seen >= 1);
  }
}
