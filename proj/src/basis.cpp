#include "qbrst/basis.hpp"

#include <algorithm>
#include <set>

#include "qbrst/error.hpp"
#include "qbrst/linsolve.hpp"
#include "qbrst/parse.hpp"

namespace qbrst {

namespace {

/// Substitutes letters by images; `rs` reduces partial products.
Poly substitute_letters(const Poly& p, const AlphabetPtr& to,
                        const std::map<std::string, Poly>& images, const RewriteSystem* rs) {
  std::map<Letter, Poly> cache;
  auto image = [&](Letter l) -> const Poly& {
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
    const std::string& name = p.alphabet()->info(l).name;
    auto m = images.find(name);
    Poly img = m != images.end() ? m->second : Poly::generator(to, name);
    return cache.emplace(l, std::move(img)).first->second;
  };
  Poly out(to);
  for (const auto& [w, c] : p.terms()) {
    Poly prod = Poly::constant(to, c);
    for (auto l : w) {
      prod = prod * image(l);
      if (rs) prod = rs->normal_form(prod);
    }
    out += prod;
  }
  return out;
}

/// Ordered words: letters non-decreasing, odd letters not repeated.
std::vector<Word> ordered_words(const Alphabet& a, std::size_t max_degree, int ghost_number) {
  std::vector<Word> level{Word{}};
  std::vector<Word> out;
  for (std::size_t d = 0; d <= max_degree; ++d) {
    for (const auto& w : level) {
      if (a.ghost_number(w) == ghost_number) out.push_back(w);
    }
    if (d == max_degree) break;
    std::vector<Word> next;
    for (const auto& w : level) {
      Letter first = w.empty() ? 0 : w.back();
      for (Letter l = first; l < a.size(); ++l) {
        if (!w.empty() && l == w.back() && a.info(l).parity == Parity::Odd) continue;
        Word v = w;
        v.push_back(l);
        next.push_back(std::move(v));
      }
    }
    level = std::move(next);
  }
  std::sort(out.begin(), out.end(), WordLess());
  return out;
}

}  // namespace

Poly BasisChange::into_source(const Poly& p) const {
  RewriteSystem rs = RewriteSystem::from_presentation(source);
  return rs.normal_form(substitute_letters(p, source.alphabet(), to_source, &rs));
}

Poly BasisChange::into_target(const Poly& p) const {
  if (!target) return substitute_letters(p, target_alphabet, to_target, nullptr);
  RewriteSystem rs = RewriteSystem::from_presentation(*target);
  return rs.normal_form(substitute_letters(p, target_alphabet, to_target, &rs));
}

BasisChange basis_change_from_text(const Presentation& source, AlphabetPtr target_alphabet,
                                   std::optional<Presentation> target,
                                   const std::map<std::string, std::string>& to_source,
                                   const std::map<std::string, std::string>& to_target) {
  BasisChange bc;
  bc.source = source;
  bc.target_alphabet = target ? target->alphabet() : std::move(target_alphabet);
  if (!bc.target_alphabet) throw InvalidInput("basis change without target generators");
  ParameterSet params = source.parameters();
  if (target) params = params.merged(target->parameters());
  for (const auto& [g, text] : to_source) {
    if (!bc.target_alphabet->find(g)) throw InvalidInput("unknown target generator '" + g + "'");
    bc.to_source.emplace(g, parse_expression(text, source.alphabet(), params));
  }
  for (const auto& [g, text] : to_target) {
    if (!source.alphabet()->find(g)) throw InvalidInput("unknown source generator '" + g + "'");
    bc.to_target.emplace(g, parse_expression(text, bc.target_alphabet, params));
  }
  bc.target = std::move(target);
  return bc;
}

CertificateReport check_certificate(const BasisChange& bc) {
  CertificateReport rep;
  for (const auto& gi : bc.source.alphabet()->generators()) {
    if (!bc.target_alphabet->find(gi.name) && !bc.to_target.count(gi.name)) {
      rep.passed = false;
      rep.failures.push_back(gi.name + ": no image in the target");
      continue;
    }
    Poly g = Poly::generator(bc.source.alphabet(), gi.name);
    Poly back = bc.into_source(substitute_letters(g, bc.target_alphabet, bc.to_target, nullptr));
    if (!(back == g)) {
      rep.passed = false;
      rep.failures.push_back(gi.name + ": " + back.to_string());
    }
  }
  if (bc.target) {
    for (const auto& gi : bc.target_alphabet->generators()) {
      if (!bc.source.alphabet()->find(gi.name) && !bc.to_source.count(gi.name)) {
        rep.passed = false;
        rep.failures.push_back(gi.name + ": no image in the source");
        continue;
      }
      Poly g = Poly::generator(bc.target_alphabet, gi.name);
      Poly there = substitute_letters(g, bc.source.alphabet(), bc.to_source, nullptr);
      Poly back = bc.into_target(there);
      if (!(back == g)) {
        rep.passed = false;
        rep.failures.push_back(gi.name + ": " + back.to_string());
      }
    }
  }
  return rep;
}

Poly apply_basis_change(const Poly& p, const BasisChange& bc) {
  if (!bc.target) throw InvalidInput("basis change target relations are unknown");
  auto cert = check_certificate(bc);
  if (!cert.passed) throw InvalidInput("basis change is not invertible: " + cert.failures.front());
  return bc.into_target(p);
}

const DerivedBracket& DerivedPresentation::bracket(const std::string& left,
                                                   const std::string& right) const {
  for (const auto& b : brackets) {
    if ((b.left == left && b.right == right) || (b.left == right && b.right == left)) return b;
  }
  throw InvalidInput("no bracket [" + left + ", " + right + "]");
}

DerivedPresentation derived_presentation(const BasisChange& bc, std::size_t max_degree) {
  const Alphabet& ta = *bc.target_alphabet;
  RewriteSystem rs = RewriteSystem::from_presentation(bc.source);
  auto to_src = [&](const Poly& p) {
    return rs.normal_form(substitute_letters(p, bc.source.alphabet(), bc.to_source, &rs));
  };

  std::map<int, std::pair<std::vector<Word>, std::vector<Poly>>> candidates;
  auto candidates_for = [&](int gh) -> const std::pair<std::vector<Word>, std::vector<Poly>>& {
    auto it = candidates.find(gh);
    if (it != candidates.end()) return it->second;
    auto words = ordered_words(ta, max_degree, gh);
    std::vector<Poly> images;
    images.reserve(words.size());
    for (const auto& w : words) images.push_back(to_src(Poly::monomial(bc.target_alphabet, w)));
    return candidates.emplace(gh, std::make_pair(std::move(words), std::move(images)))
        .first->second;
  };

  DerivedPresentation out;
  std::vector<Poly> relations;
  for (Letter i = 0; i < ta.size(); ++i) {
    for (Letter j = i; j < ta.size(); ++j) {
      const auto& gi = ta.info(i);
      const auto& gj = ta.info(j);
      bool odd = gi.parity == Parity::Odd && gj.parity == Parity::Odd;
      if (i == j && !odd) continue;
      DerivedBracket b;
      b.left = gi.name;
      b.right = gj.name;
      b.kind = odd ? BracketKind::Anticommutator : BracketKind::Commutator;
      Poly x = Poly::generator(bc.target_alphabet, gi.name);
      Poly y = Poly::generator(bc.target_alphabet, gj.name);
      Poly lhs = qbrst::bracket(x, y, b.kind);
      Poly value = to_src(lhs);
      const auto& [words, images] = candidates_for(gi.ghost_number + gj.ghost_number);
      auto sol = fit_words(words, images, value, PivotPreference::SmallestWord);
      if (!sol.consistent) {
        throw InvalidInput("closure not found within degree " + std::to_string(max_degree) +
                           ": [" + gi.name + ", " + gj.name + "] = " + value.to_string());
      }
      b.value = combine_words(bc.target_alphabet, words, sol.particular);
      for (const auto& [w, c] : b.value.terms()) b.degree = std::max(b.degree, w.size());
      out.closure_degree = std::max(out.closure_degree, b.degree);
      relations.push_back(lhs - b.value);
      out.brackets.push_back(std::move(b));
    }
  }
  std::vector<Relation> rels;
  for (auto& r : normalized_relations(relations)) rels.push_back({r.lhs, r.rhs});
  out.presentation = Presentation(bc.target_alphabet, bc.source.parameters(), std::move(rels),
                                  "derived");
  return out;
}

std::vector<RewriteRule> normalized_relations(const std::vector<Poly>& relations) {
  std::vector<Poly> nonzero;
  for (const auto& p : relations) {
    if (!p.is_zero()) nonzero.push_back(p);
  }
  return linear_orient(nonzero);
}

std::vector<Poly> relation_polys(const Presentation& p) {
  std::vector<Poly> out;
  for (const auto& r : p.relations()) out.push_back(Poly::monomial(p.alphabet(), r.lhs) - r.rhs);
  return out;
}

bool same_relations(const Presentation& a, const Presentation& b) {
  if (!(*a.alphabet() == *b.alphabet())) return false;
  auto ra = normalized_relations(relation_polys(a));
  std::vector<Poly> pb;
  for (const auto& p : relation_polys(b)) {
    Poly q(a.alphabet());
    for (const auto& [w, c] : p.terms()) q.add_term(w, c);
    pb.push_back(q);
  }
  auto rb = normalized_relations(pb);
  if (ra.size() != rb.size()) return false;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (ra[i].lhs != rb[i].lhs || !(ra[i].rhs == rb[i].rhs)) return false;
  }
  return true;
}

Presentation substitute(const Presentation& p, const Bindings& bindings) {
  std::vector<Poly> polys;
  for (const auto& q : relation_polys(p)) polys.push_back(q.substitute(bindings));
  std::vector<std::string> names;
  for (const auto& n : p.parameters().names()) {
    if (!bindings.count(n)) names.push_back(n);
  }
  for (const auto& [n, v] : bindings) {
    for (const auto& m : v.parameters()) {
      if (std::find(names.begin(), names.end(), m) == names.end()) names.push_back(m);
    }
  }
  std::vector<Relation> rels;
  for (auto& r : normalized_relations(polys)) rels.push_back({r.lhs, r.rhs});
  return Presentation(p.alphabet(), ParameterSet(names), std::move(rels), p.label());
}

Presentation rename(const Presentation& p, const std::map<std::string, std::string>& names) {
  std::vector<GeneratorInfo> gens = p.alphabet()->generators();
  for (auto& g : gens) {
    auto it = names.find(g.name);
    if (it != names.end()) g.name = it->second;
  }
  auto alphabet = std::make_shared<const Alphabet>(gens);
  std::vector<Relation> rels;
  for (const auto& r : p.relations()) {
    Poly rhs(alphabet);
    for (const auto& [w, c] : r.rhs.terms()) rhs.add_term(w, c);
    rels.push_back({r.lhs, rhs});
  }
  return Presentation(alphabet, p.parameters(), std::move(rels), p.label());
}

}  // namespace qbrst
