#include "qbrst/fock.hpp"

#include <algorithm>

#include "qbrst/error.hpp"
#include "qbrst/linsolve.hpp"

namespace qbrst {

namespace {

const std::vector<std::vector<std::size_t>> kBasis = {{},     {0},    {1},    {2},
                                                      {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};

struct Layout {
  std::vector<std::string> components;
  std::vector<std::string> monomials;
  AlphabetPtr module;
};

Layout layout(const Alphabet& a, const GhostNames& names) {
  if (names.size() != 3) throw InvalidInput("Fock expansion needs exactly three constraints");
  Layout out;
  std::vector<GeneratorInfo> gens;
  int top = 0;
  for (const auto& g : a.generators()) {
    top = std::max(top, g.precedence);
    if (g.ghost_number == 0) gens.push_back(g);
  }
  for (const auto& idx : kBasis) {
    std::string comp = "psi";
    std::string mono;
    for (auto i : idx) {
      comp += std::to_string(i + 1);
      mono += (mono.empty() ? "" : "*") + names.ghosts[i];
    }
    if (idx.empty()) comp += "0";
    out.components.push_back(comp);
    out.monomials.push_back(mono.empty() ? "1" : mono);
    gens.push_back({comp, Parity::Even, 0, ++top});
  }
  out.module = std::make_shared<const Alphabet>(gens);
  return out;
}

void require_commuting(const Presentation& p, const GhostNames& names) {
  RewriteSystem rs = RewriteSystem::from_presentation(p);
  for (const auto& x : names.constraints) {
    for (const auto* list : {&names.ghosts, &names.antighosts}) {
      for (const auto& y : *list) {
        Poly c = bracket(p.gen(x), p.gen(y), BracketKind::Commutator);
        if (!rs.normal_form(c).is_zero()) {
          throw InvalidInput("constraint " + x + " does not commute with " + y);
        }
      }
    }
  }
}

Poly basis_monomial(const AlphabetPtr& a, const GhostNames& names, std::size_t p) {
  Poly m = Poly::constant(a, Scalar(1));
  for (auto i : kBasis[p]) m = m * Poly::generator(a, names.ghosts[i]);
  return m;
}

FockExpansion assemble(const Layout& l, std::vector<Poly> values) {
  FockExpansion out;
  out.components = l.components;
  out.monomials = l.monomials;
  out.module_alphabet = l.module;
  for (std::size_t p = 0; p < kBasis.size(); ++p) {
    if (values[p].is_zero()) continue;
    out.equations.push_back({l.monomials[p], static_cast<int>(kBasis[p].size()),
                             std::move(values[p])});
  }
  return out;
}

/// Constraint letters of `w` (by name) followed by `component`.
Word module_word(const Alphabet& from, const Word& w, const Alphabet& module,
                 const std::string& component) {
  Word out;
  for (auto l : w) {
    const auto& g = from.info(l);
    if (g.ghost_number == 0) out.push_back(module.letter(g.name));
  }
  out.push_back(module.letter(component));
  return out;
}

}  // namespace

const FockEquation* FockExpansion::find(const std::string& monomial) const {
  for (const auto& e : equations) {
    if (e.monomial == monomial) return &e;
  }
  return nullptr;
}

FockExpansion fock_expand(const BrstCharge& q, const GhostNames& names,
                          const ReduceOptions& opts) {
  const Presentation& pres = q.presentation;
  Layout l = layout(*pres.alphabet(), names);
  std::vector<Poly> values(kBasis.size(), Poly(l.module));
  if (q.q.is_zero()) return assemble(l, std::move(values));
  require_commuting(pres, names);

  // Ghost-extended alphabet with the components on top.
  std::vector<GeneratorInfo> gens = pres.alphabet()->generators();
  for (std::size_t p = 0; p < kBasis.size(); ++p) gens.push_back(l.module->info(
      l.module->letter(l.components[p])));
  auto full = std::make_shared<const Alphabet>(gens);
  auto lift = [&](const Poly& x) {
    Poly y(full);
    for (const auto& [w, c] : x.terms()) y.add_term(w, c);
    return y;
  };
  std::vector<Relation> rels;
  for (const auto& r : pres.relations()) rels.push_back({r.lhs, lift(r.rhs)});
  for (const auto& b : names.antighosts) {
    for (const auto& comp : l.components) {
      rels.push_back({Word{full->letter(b), full->letter(comp)}, Poly(full)});
    }
  }
  RewriteSystem rs = RewriteSystem::from_presentation(
      Presentation(full, pres.parameters(), std::move(rels), "fock"));

  Poly qf = lift(q.q);
  Poly total(full);
  for (std::size_t p = 0; p < kBasis.size(); ++p) {
    total += rs.normal_form(qf * basis_monomial(full, names, p) *
                                Poly::generator(full, l.components[p]),
                            opts);
  }

  // Normal ghost words -> basis monomials.
  RewriteSystem ghost_rs = RewriteSystem::from_presentation(pres);
  std::vector<Word> basis_words;
  std::vector<Poly> basis_images;
  for (std::size_t p = 0; p < kBasis.size(); ++p) {
    Poly m = basis_monomial(pres.alphabet(), names, p);
    basis_words.push_back(m.terms().begin()->first);
    basis_images.push_back(ghost_rs.normal_form(m));
  }

  std::map<Word, Poly, WordLess> by_ghost_word;
  for (const auto& [w, c] : total.terms()) {
    Word ghost;
    // The component is always the last letter.
    const std::string& comp = full->info(w.back()).name;
    for (auto letter : w) {
      const auto& g = full->info(letter);
      if (g.ghost_number > 0) ghost.push_back(letter);
      if (g.ghost_number < 0) throw InvalidInput("anti-ghost survived the vacuum rule");
    }
    auto [it, inserted] = by_ghost_word.try_emplace(ghost, Poly(l.module));
    it->second.add_term(module_word(*full, Word(w.begin(), w.end() - 1), *l.module, comp), c);
  }
  for (const auto& [u, v] : by_ghost_word) {
    auto sol = fit_words(basis_words, basis_images, Poly::monomial(pres.alphabet(), u),
                         PivotPreference::SmallestWord);
    if (!sol.consistent || !sol.kernel.empty()) {
      throw InvalidInput("ghost sector is not spanned by the eight basis monomials");
    }
    for (std::size_t p = 0; p < kBasis.size(); ++p) {
      if (!sol.particular[p].is_zero()) values[p] += v * sol.particular[p];
    }
  }
  return assemble(l, std::move(values));
}

FockExpansion fock_expand_matrix(const BrstCharge& q, const GhostNames& names,
                                 const std::map<std::string, Matrix>& ghost_matrices) {
  const Presentation& pres = q.presentation;
  Layout l = layout(*pres.alphabet(), names);
  std::vector<Poly> values(kBasis.size(), Poly(l.module));
  if (q.q.is_zero()) return assemble(l, std::move(values));
  require_commuting(pres, names);

  Matrix basis(8);
  for (std::size_t p = 0; p < kBasis.size(); ++p) {
    Matrix m = evaluate_left(basis_monomial(pres.alphabet(), names, p), ghost_matrices);
    for (std::size_t s = 0; s < 8; ++s) basis(s, p) = m(s, 0);
  }
  Matrix coords = basis.inverse();

  const Alphabet& a = *pres.alphabet();
  for (const auto& [w, c] : q.q.terms()) {
    Word ghost;
    for (auto letter : w) {
      if (a.info(letter).ghost_number != 0) ghost.push_back(letter);
    }
    Matrix g = evaluate_left(Poly::monomial(pres.alphabet(), ghost, c), ghost_matrices);
    for (std::size_t p = 0; p < kBasis.size(); ++p) {
      std::vector<Scalar> e(8);
      for (std::size_t s = 0; s < 8; ++s) e[s] = basis(s, p);
      auto y = coords.apply(g.apply(e));
      Word mw = module_word(a, w, *l.module, l.components[p]);
      for (std::size_t s = 0; s < 8; ++s) {
        if (!y[s].is_zero()) values[s].add_term(mw, y[s]);
      }
    }
  }
  return assemble(l, std::move(values));
}

}  // namespace qbrst
