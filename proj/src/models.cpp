#include "qbrst/models.hpp"

namespace qbrst::models {

namespace {

struct Gens {
  AlphabetPtr a;
  Poly operator()(const std::string& name) const { return Poly::generator(a, name); }
  Poly one() const { return Poly::constant(a, Scalar(1)); }
};

Presentation oriented(const AlphabetPtr& a, const ParameterSet& params,
                      const std::vector<Poly>& rels, const std::string& label) {
  std::vector<Relation> out;
  for (auto& r : normalized_relations(rels)) out.push_back({r.lhs, r.rhs});
  return Presentation(a, params, std::move(out), label);
}

Poly anti(const Poly& x, const Poly& y) { return bracket(x, y, BracketKind::Anticommutator); }
Poly comm(const Poly& x, const Poly& y) { return bracket(x, y, BracketKind::Commutator); }

std::vector<Poly> jtw_relations(const Gens& g, const JtwParameters& p) {
  Poly J = g("J"), T = g("T"), W = g("W");
  return {comm(J, W) - T * p.a1 - J * J * p.a2, comm(J, T), comm(T, W) - J * T * p.a3};
}

}  // namespace

StructureData three_generator_qla(const Scalar& alpha) {
  StructureData s(3);
  s.sigma = TensorSquareOp::permutation(3);
  s.sigma(0, 0, 0, 2) += alpha;
  s.sigma(0, 0, 2, 0) -= alpha;
  s.sigma(0, 1, 1, 2) += alpha;
  s.sigma(1, 0, 2, 1) -= alpha;
  s.C(1, 0, 2) = 1;
  s.C(1, 2, 0) = -1;
  return s;
}

StructureData su2_qla() {
  StructureData s(3);
  s.sigma = TensorSquareOp::permutation(3);
  const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                            {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                            {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) s.C(k, i, j) = eps[i][j][k];
  return s;
}

StructureData abelian(std::size_t n) {
  StructureData s(n);
  s.sigma = TensorSquareOp::permutation(n);
  return s;
}

Presentation chi_algebra(const Scalar& alpha, const Scalar& chi0) {
  std::vector<std::string> params = alpha.parameters();
  for (const auto& n : chi0.parameters()) params.push_back(n);
  auto a = std::make_shared<const Alphabet>(std::vector<GeneratorInfo>{
      {"chi1", Parity::Even, 0, 0}, {"chi2", Parity::Even, 0, 1}, {"chi3", Parity::Even, 0, 2}});
  Gens g{a};
  Poly x1 = g("chi1"), x2 = g("chi2"), x3 = g("chi3");
  return oriented(a, ParameterSet(params),
                  {comm(x1, x2), comm(x1, x3) - x1 * x1 * alpha - x2 * chi0,
                   comm(x2, x3) - x1 * x2 * alpha},
                  "chi");
}

BasisChange chi_gamma_change(const Scalar& alpha, const Scalar& chi0) {
  Presentation source = chi_algebra(alpha, chi0);
  Scalar gamma = alpha / (chi0 * Scalar(2));
  Gens g{source.alphabet()};
  BasisChange bc;
  bc.source = source;
  bc.target_alphabet = source.alphabet();
  bc.to_source["chi2"] = g("chi2") + g("chi1") * g("chi1") * gamma;
  bc.to_target["chi2"] = g("chi2") - g("chi1") * g("chi1") * gamma;
  return bc;
}

GhostNames jtw_names() { return GhostNames::prefixed({"J", "T", "W"}); }

ParameterSet jtw_parameters() { return ParameterSet({"a1", "a2", "a3"}); }

Presentation jtw_algebra(const JtwParameters& p) {
  jtw_parameters();
  auto a = std::make_shared<const Alphabet>(std::vector<GeneratorInfo>{
      {"J", Parity::Even, 0, 0}, {"T", Parity::Even, 0, 1}, {"W", Parity::Even, 0, 2}});
  return oriented(a, jtw_parameters(), jtw_relations(Gens{a}, p), "jtw");
}

Presentation jtw_canonical(const JtwParameters& p) {
  return with_canonical_ghosts(jtw_algebra(p), jtw_names());
}

Presentation jtw_modified(const JtwParameters& p) {
  auto a = ghost_alphabet(jtw_names());
  Gens g{a};
  std::vector<Poly> rels = jtw_relations(g, p);
  Poly cJ = g("cJ"), cT = g("cT"), cW = g("cW"), bJ = g("bJ"), bT = g("bT"), bW = g("bW");
  std::vector<Poly> cs{cJ, cT, cW}, bs{bJ, bT, bW};
  for (const auto& x : {g("J"), g("T"), g("W")}) {
    for (const auto& y : cs) rels.push_back(comm(x, y));
    for (const auto& y : bs) rels.push_back(comm(x, y));
  }
  rels.push_back(anti(cJ, cJ) + cJ * cW * (p.a2 * 2));
  rels.push_back(anti(cJ, cT) + cT * cW * p.a3);
  rels.push_back(anti(cJ, cW));
  rels.push_back(anti(cT, cT));
  rels.push_back(anti(cT, cW));
  rels.push_back(anti(cW, cW));
  rels.push_back(anti(cJ, bJ) - g.one() + cW * bJ * p.a2);
  rels.push_back(anti(cJ, bT));
  rels.push_back(anti(cJ, bW) - cJ * bJ * p.a2);
  rels.push_back(anti(cT, bJ));
  rels.push_back(anti(cT, bT) - g.one() + cW * bJ * p.a3);
  rels.push_back(anti(cT, bW) - cT * bJ * p.a3);
  rels.push_back(anti(cW, bJ));
  rels.push_back(anti(cW, bT));
  rels.push_back(anti(cW, bW) - g.one());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) rels.push_back(anti(bs[i], bs[j]));
  return oriented(a, jtw_parameters(), rels, "jtw-modified");
}

Poly jtw_charge(const Presentation& canonical, const JtwParameters& p) {
  Gens g{canonical.alphabet()};
  Poly q = g("cJ") * g("J") + g("cT") * g("T") + g("cW") * g("W") -
           g("cJ") * g("cW") * g("bT") * p.a1 - g("T") * g("cT") * g("cW") * g("bJ") * p.a3 +
           g("J") * g("cW") * g("cJ") * g("bJ") * p.a2;
  return RewriteSystem::from_presentation(canonical).normal_form(q);
}

Poly jtw_modified_charge(const Presentation& modified, const JtwParameters& p) {
  Gens g{modified.alphabet()};
  Poly q = g("cJ") * g("J") + g("cT") * g("T") + g("cW") * g("W") -
           g("cJ") * g("cW") * g("bT") * p.a1;
  return RewriteSystem::from_presentation(modified).normal_form(q);
}

BasisChange jtw_ghost_change(const JtwParameters& p) {
  Presentation source = jtw_canonical(p);
  Presentation target = jtw_modified(p);
  Gens s{source.alphabet()}, t{target.alphabet()};
  BasisChange bc;
  bc.source = source;
  bc.target_alphabet = target.alphabet();
  bc.target = target;
  bc.to_source["cJ"] = s("cJ") + s("cW") * s("cJ") * s("bJ") * p.a2;
  bc.to_source["cT"] = s("cT") - s("cT") * s("cW") * s("bJ") * p.a3;
  bc.to_target["cJ"] = t("cJ") - t("cW") * t("cJ") * t("bJ") * p.a2;
  bc.to_target["cT"] = t("cT") + t("cT") * t("cW") * t("bJ") * p.a3;
  return bc;
}

BasisChange jtw_qla_change(const Scalar& alpha, const Scalar& c) {
  JtwParameters p{c, alpha, alpha};
  Presentation source = jtw_canonical(p);
  std::vector<std::string> params = alpha.parameters();
  for (const auto& n : c.parameters()) params.push_back(n);
  Presentation target = build_ghost_presentation(three_generator_qla(alpha),
                                                 TensorSquareOp::permutation(3),
                                                 GhostMode::Twisted, jtw_names(), c,
                                                 ParameterSet(params));
  Gens s{source.alphabet()}, t{target.alphabet()};
  BasisChange bc;
  bc.source = source;
  bc.target_alphabet = target.alphabet();
  bc.target = target;
  bc.to_source["cJ"] = s("cJ") + s("cW") * s("cJ") * s("bJ") * p.a2;
  bc.to_source["cT"] = s("cT") - s("cT") * s("cW") * s("bJ") * p.a3;
  bc.to_source["bT"] = s("bT") + s("cW") * s("bJ") * s("bT") * p.a3;
  bc.to_target["cJ"] = t("cJ") - t("cW") * t("cJ") * t("bJ") * p.a2;
  bc.to_target["cT"] = t("cT") + t("cT") * t("cW") * t("bJ") * p.a3;
  bc.to_target["bT"] = t("bT") - t("cW") * t("bJ") * t("bT") * p.a3;
  return bc;
}

BasisChange jtw_t_change(const Scalar& beta, const JtwParameters& p) {
  Presentation source = jtw_algebra(p);
  auto target = std::make_shared<const Alphabet>(std::vector<GeneratorInfo>{
      {"J", Parity::Even, 0, 0}, {"Tc", Parity::Even, 0, 1}, {"W", Parity::Even, 0, 2}});
  Gens s{source.alphabet()}, t{target};
  BasisChange bc;
  bc.source = source;
  bc.target_alphabet = target;
  bc.to_source["Tc"] = s("T") + s("J") * s("J") * beta;
  bc.to_target["T"] = t("Tc") - t("J") * t("J") * beta;
  return bc;
}

Scalar quadratic_beta(const JtwParameters& p) {
  return (p.a2 * Scalar(2) - p.a3) / (p.a1 * Scalar(2));
}

JtwParameters tilde(const JtwParameters& p) {
  return {p.a1, p.a3 * Scalar::rational(1, 2), p.a2 * Scalar(2)};
}

Poly jtw_second_charge(const Presentation& canonical, const Scalar& beta,
                       const JtwParameters& q) {
  Gens g{canonical.alphabet()};
  Poly tc = g("T") + g("J") * g("J") * beta;
  Poly x = g("cJ") * g("J") + g("cT") * tc + g("cW") * g("W") -
           g("cJ") * g("cW") * g("bT") * q.a1 - tc * g("cT") * g("cW") * g("bJ") * q.a3 +
           g("J") * g("cW") * g("cJ") * g("bJ") * q.a2;
  return RewriteSystem::from_presentation(canonical).normal_form(x);
}

}  // namespace qbrst::models
