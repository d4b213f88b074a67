#include "test_util.hpp"

#include <random>
#include <set>

#include "qbrst/brst.hpp"
#include "qbrst/error.hpp"
#include "qbrst/models.hpp"
#include "qbrst/parse.hpp"
#include "qbrst/specfile.hpp"

using namespace qbrst;

namespace {

const ParameterSet kS4Params({"a", "C"});

/// The four-generator algebra with chi0 kept as a central generator.
Presentation chi_algebra() {
  std::vector<GeneratorInfo> gens;
  for (int i = 0; i < 4; ++i) gens.push_back({"chi" + std::to_string(i), Parity::Even, 0, i});
  return presentation_from_text(gens, ParameterSet({"a"}),
                                {{"chi2*chi1", "chi1*chi2"},
                                 {"chi3*chi1", "chi1*chi3 - a*chi1^2 - chi0*chi2"},
                                 {"chi3*chi2", "chi2*chi3 - a*chi1*chi2"},
                                 {"chi1*chi0", "chi0*chi1"},
                                 {"chi2*chi0", "chi0*chi2"},
                                 {"chi3*chi0", "chi0*chi3"}});
}

Presentation omega4() {
  return build_ghost_presentation(models::three_generator_qla(Scalar::parameter("a")),
                                  TensorSquareOp::permutation(3), GhostMode::Twisted,
                                  GhostNames::indexed(3), Scalar::parameter("C"), kS4Params);
}

Poly random_poly(const AlphabetPtr& a, std::mt19937& rng, std::size_t max_len) {
  std::uniform_int_distribution<int> nterms(1, 3), coeff(-3, 3);
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(a->size()) - 1);
  Poly p(a);
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Word w;
    std::size_t l = len(rng);
    for (std::size_t k = 0; k < l; ++k) w.push_back(static_cast<Letter>(letter(rng)));
    p.add_term(w, Scalar(coeff(rng)));
  }
  return p;
}

/// Homogeneous in ghost number: a single random word.
Poly random_word(const AlphabetPtr& a, std::mt19937& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(a->size()) - 1);
  Word w;
  std::size_t l = len(rng);
  for (std::size_t k = 0; k < l; ++k) w.push_back(static_cast<Letter>(letter(rng)));
  return Poly::monomial(a, w);
}

bool contains_lhs(const Word& w, const std::vector<RewriteRule>& rules) {
  for (const auto& r : rules) {
    if (std::search(w.begin(), w.end(), r.lhs.begin(), r.lhs.end()) != w.end()) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("orienting the constraint relations") {
  auto p = chi_algebra();
  auto a = p.alphabet();
  ParameterSet ps({"a"});
  RewriteRule r = orient(parse_word("chi3*chi1", a),
                         parse_expression("chi1*chi3 - a*chi1^2 - chi0*chi2", a, ps));
  CHECK(a->render(r.lhs) == "chi3*chi1");
  CHECK_THROWS_AS(orient(parse_word("chi1*chi3", a),
                         parse_expression("chi3*chi1 + a*chi1^2", a, ps)),
                  OrientationError);
}

TEST_CASE("c1 c1 orients with c1 c1 on the left") {
  auto a = ghost_alphabet(GhostNames::indexed(3));
  RewriteRule r = orient(parse_word("c1*c1", a), parse_expression("a*c3*c1", a, kS4Params));
  CHECK(r.rhs == parse_expression("a*c3*c1", a, kS4Params));
}

TEST_CASE("reduction examples") {
  auto p = chi_algebra();
  auto rs = RewriteSystem::from_presentation(p);
  ParameterSet ps({"a"});
  auto x = [&](const char* t) { return parse_expression(t, p.alphabet(), ps); };
  CHECK(rs.normal_form(x("chi3*chi1")) == x("chi1*chi3 - a*chi1^2 - chi0*chi2"));

  auto rep = rs.reduce(x("chi0*chi1*chi2*chi3"));
  CHECK(rep.steps == 0);
  CHECK(rep.normal_form == x("chi0*chi1*chi2*chi3"));

  auto can = models::jtw_canonical();
  auto crs = RewriteSystem::from_presentation(can);
  auto y = [&](const char* t) { return parse_expression(t, can.alphabet(), can.parameters()); };
  CHECK(crs.normal_form(y("bJ*cJ")) == y("1 - cJ*bJ"));
}

TEST_CASE("the charge with the explicit C term squares to zero") {
  auto om = omega4();
  auto rs = RewriteSystem::from_presentation(om);
  Poly q = parse_expression("c1*chi1 + c2*chi2 + c3*chi3 - C*c1*c3*b2", om.alphabet(), kS4Params);
  CHECK(rs.normal_form(q * q).is_zero());
}

TEST_CASE("step limit") {
  auto om = omega4();
  auto rs = RewriteSystem::from_presentation(om);
  Poly q = parse_expression("c1*chi1 + c2*chi2 + c3*chi3 - C*c1*c3*b2", om.alphabet(), kS4Params);
  ReduceOptions opts;
  opts.step_limit = 3;
  CHECK_THROWS_AS(rs.normal_form(q * q, opts), StepLimitExceeded);
}

TEST_CASE("overlap enumeration") {
  SUBCASE("chi3 chi2 chi1 is an overlap word") {
    auto rs = RewriteSystem::from_presentation(chi_algebra());
    bool found = false;
    for (const auto& cp : rs.overlaps(3)) {
      if (rs.alphabet()->render(cp.word) == "chi3*chi2*chi1") found = true;
    }
    CHECK(found);
  }
  SUBCASE("empty rule set") {
    RewriteSystem rs(ghost_alphabet(GhostNames::indexed(2)), {});
    CHECK(rs.overlaps(4).empty());
  }
  SUBCASE("degree-3 overlaps agree with exhaustive generation") {
    auto rs = RewriteSystem::from_presentation(omega4());
    const auto& a = *rs.alphabet();
    REQUIRE(a.size() == 9);
    std::set<Word> lhs;
    for (const auto& r : rs.rules()) lhs.insert(r.lhs);
    std::set<Word> brute;
    for (Letter x = 0; x < a.size(); ++x)
      for (Letter y = 0; y < a.size(); ++y)
        for (Letter z = 0; z < a.size(); ++z) {
          if (lhs.count(Word{x, y}) && lhs.count(Word{y, z})) brute.insert(Word{x, y, z});
        }
    std::set<Word> engine;
    for (const auto& cp : rs.overlaps(3)) engine.insert(cp.word);
    MESSAGE("degree-3 overlaps: " << brute.size());
    CHECK(!brute.empty());
    CHECK(engine == brute);
  }
}

TEST_CASE("confluence of the shipped presentations") {
  CHECK(RewriteSystem::from_presentation(chi_algebra()).confluence_check(4).passed());
  CHECK(RewriteSystem::from_presentation(omega4()).confluence_check(3).passed());
  CHECK(RewriteSystem::from_presentation(models::jtw_canonical()).confluence_check(3).passed());
  CHECK(RewriteSystem::from_presentation(models::jtw_modified()).confluence_check(3).passed());
}

TEST_CASE("an inconsistent rule set is reported") {
  auto a = std::make_shared<const Alphabet>(
      std::vector<GeneratorInfo>{{"x", Parity::Even, 0, 0}, {"y", Parity::Even, 0, 1}});
  Poly x = Poly::generator(a, "x");
  std::vector<RewriteRule> rules{orient(parse_word("x*y", a), Poly::constant(a, Scalar(1)), 0),
                                 orient(parse_word("y*x", a), Poly(a), 1),
                                 orient(parse_word("x*x", a), x, 2)};
  RewriteSystem rs(a, rules);
  auto rep = rs.confluence_check(3);
  CHECK_FALSE(rep.passed());
  CHECK(rep.pairs_checked > 0);
}

TEST_CASE("properties of reduction on confluent presentations") {
  std::vector<Presentation> pres{omega4(), models::jtw_canonical(), models::jtw_modified()};
  const Strategy strategies[] = {Strategy::LeftmostInnermost, Strategy::LeftmostOutermost,
                                 Strategy::Rightmost};
  std::mt19937 rng(31337);
  for (const auto& p : pres) {
    auto rs = RewriteSystem::from_presentation(p);
    for (int i = 0; i < 60; ++i) {
      Poly x = random_poly(p.alphabet(), rng, 6);
      Poly nf = rs.normal_form(x);
      for (auto s : strategies) {
        ReduceOptions opts;
        opts.strategy = s;
        CHECK(rs.normal_form(x, opts) == nf);
      }
      CHECK(rs.normal_form(nf) == nf);
      for (const auto& [w, c] : nf.terms()) CHECK_FALSE(contains_lhs(w, rs.rules()));

      Poly m = random_word(p.alphabet(), rng, 6);
      Poly mn = rs.normal_form(m);
      if (!mn.is_zero()) CHECK(mn.ghost_number() == m.ghost_number());
    }
  }
}
