#include "test_util.hpp"

#include <random>

#include "qbrst/brst.hpp"
#include "qbrst/error.hpp"
#include "qbrst/models.hpp"
#include "qbrst/parse.hpp"

using namespace qbrst;

namespace {

AlphabetPtr ghosts3() { return ghost_alphabet(GhostNames::indexed(3)); }

class PolyGen {
 public:
  PolyGen(AlphabetPtr a, unsigned seed) : a_(std::move(a)), rng_(seed) {}

  Poly operator()() {
    std::uniform_int_distribution<int> nterms(0, 4), len(0, 3), coeff(-3, 3);
    std::uniform_int_distribution<int> letter(0, static_cast<int>(a_->size()) - 1);
    Poly p(a_);
    int n = nterms(rng_);
    for (int i = 0; i < n; ++i) {
      Word w;
      int l = len(rng_);
      for (int k = 0; k < l; ++k) w.push_back(static_cast<Letter>(letter(rng_)));
      p.add_term(w, Scalar(coeff(rng_)) * Scalar::parameter(coeff(rng_) > 0 ? "a" : "b"));
    }
    return p;
  }

  /// Single word times a coefficient: homogeneous in ghost number.
  Poly monomial() {
    std::uniform_int_distribution<int> len(0, 4), coeff(1, 5);
    std::uniform_int_distribution<int> letter(0, static_cast<int>(a_->size()) - 1);
    Word w;
    int l = len(rng_);
    for (int k = 0; k < l; ++k) w.push_back(static_cast<Letter>(letter(rng_)));
    return Poly::monomial(a_, w, Scalar(coeff(rng_)));
  }

 private:
  AlphabetPtr a_;
  std::mt19937 rng_;
};

}  // namespace

TEST_CASE("free product concatenates words without signs") {
  auto a = ghosts3();
  Poly c1 = Poly::generator(a, "c1"), chi1 = Poly::generator(a, "chi1");
  Poly p = c1 * chi1;
  REQUIRE(p.size() == 1);
  CHECK(a->render(p.terms().begin()->first) == "c1*chi1");
  CHECK(p.terms().begin()->second == Scalar(1));
  CHECK_FALSE(p == chi1 * c1);
}

TEST_CASE("commutator of two constraints has two terms") {
  auto a = ghosts3();
  Poly x = Poly::generator(a, "chi1"), y = Poly::generator(a, "chi3");
  Poly c = bracket(x, y, BracketKind::Commutator);
  REQUIRE(c.size() == 2);
  CHECK(c.coefficient(parse_word("chi1*chi3", a)) == Scalar(1));
  CHECK(c.coefficient(parse_word("chi3*chi1", a)) == Scalar(-1));
}

TEST_CASE("anticommutator of an anti-ghost and a ghost") {
  auto a = ghost_alphabet(models::jtw_names());
  Poly b = Poly::generator(a, "bJ"), c = Poly::generator(a, "cJ");
  CHECK(bracket(b, c, BracketKind::Anticommutator) == b * c + c * b);
}

TEST_CASE("bracket of a polynomial with itself vanishes") {
  PolyGen gen(ghosts3(), 11);
  for (int i = 0; i < 50; ++i) {
    Poly p = gen();
    CHECK(bracket(p, p, BracketKind::Commutator).is_zero());
  }
}

TEST_CASE("free square of the four-term charge has sixteen terms") {
  auto a = ghosts3();
  ParameterSet ps({"C"});
  Poly q = parse_expression("c1*chi1 + c2*chi2 + c3*chi3 - C*c1*c3*b2", a, ps);
  CHECK((q * q).size() == 16);
}

TEST_CASE("ghost numbers") {
  auto can = models::jtw_canonical();
  Poly q = models::jtw_charge(can);
  CHECK(q.ghost_number() == std::optional<int>(1));
  CHECK(Poly::constant(can.alphabet(), Scalar(1)).ghost_number() == std::optional<int>(0));
  auto a = ghosts3();
  Poly mixed = Poly::generator(a, "c1") + Poly::generator(a, "b2");
  CHECK_FALSE(mixed.ghost_number().has_value());
}

TEST_CASE("free multiplication is associative with a two-sided unit") {
  auto a = ghosts3();
  PolyGen gen(a, 2024);
  Poly one = Poly::constant(a, Scalar(1));
  for (int i = 0; i < 200; ++i) {
    Poly p = gen(), q = gen(), r = gen();
    CHECK((p * q) * r == p * (q * r));
    CHECK(one * p == p);
    CHECK(p * one == p);
    CHECK((p + q) * r == p * r + q * r);
  }
}

TEST_CASE("ghost number is additive on homogeneous products") {
  PolyGen gen(ghosts3(), 77);
  for (int i = 0; i < 300; ++i) {
    Poly p = gen.monomial(), q = gen.monomial();
    REQUIRE(p.ghost_number().has_value());
    REQUIRE(q.ghost_number().has_value());
    CHECK((p * q).ghost_number() == std::optional<int>(*p.ghost_number() + *q.ghost_number()));
  }
}

TEST_CASE("no zero coefficients are stored") {
  auto a = ghosts3();
  Poly x = Poly::generator(a, "chi1");
  CHECK((x - x).is_zero());
  CHECK((x * Scalar(0)).is_zero());
}

TEST_CASE("presentation validation") {
  auto a = ghosts3();
  Poly c1 = Poly::generator(a, "c1"), b2 = Poly::generator(a, "b2");
  Word c1c1 = parse_word("c1*c1", a);
  SUBCASE("mixed ghost numbers are rejected") {
    CHECK_THROWS_AS(Presentation(a, {}, {{c1c1, b2 * b2}}), InvalidInput);
  }
  SUBCASE("degree-raising relations are rejected") {
    CHECK_THROWS_AS(Presentation(a, {}, {{parse_word("chi1*chi2", a),
                                          Poly::generator(a, "chi1") * Poly::generator(a, "chi2") *
                                              Poly::generator(a, "chi3")}}),
                    InvalidInput);
  }
  SUBCASE("duplicate lhs words are rejected") {
    CHECK_THROWS_AS(Presentation(a, {}, {{c1c1, Poly(a)}, {c1c1, Poly(a)}}), InvalidInput);
  }
  SUBCASE("short lhs words are rejected") {
    CHECK_THROWS_AS(Presentation(a, {}, {{parse_word("c1", a), Poly(a)}}), InvalidInput);
  }
}

TEST_CASE("mixing alphabets is an error") {
  Poly x = Poly::generator(ghosts3(), "chi1");
  Poly y = Poly::generator(ghost_alphabet(models::jtw_names()), "J");
  CHECK_THROWS_AS(x * y, PresentationMismatch);
}

TEST_CASE("rendering round-trips through the parser") {
  auto a = ghosts3();
  ParameterSet ps({"a", "b"});
  PolyGen gen(a, 5);
  for (int i = 0; i < 100; ++i) {
    Poly p = gen();
    CHECK(parse_expression(p.is_zero() ? "0" : p.to_string(), a, ps) == p);
  }
}
