#include "qbrst/ncpoly.hpp"

#include <algorithm>
#include <set>

namespace qbrst {

int compare_words(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

Alphabet::Alphabet(std::vector<GeneratorInfo> generators) : generators_(std::move(generators)) {
  std::stable_sort(generators_.begin(), generators_.end(),
                   [](const auto& a, const auto& b) { return a.precedence < b.precedence; });
  std::set<std::string> names;
  std::set<int> precedences;
  for (const auto& g : generators_) {
    if (g.name.empty()) throw InvalidInput("generator with empty name");
    if (!names.insert(g.name).second) throw InvalidInput("duplicate generator '" + g.name + "'");
    if (!precedences.insert(g.precedence).second) {
      throw InvalidInput("duplicate precedence " + std::to_string(g.precedence));
    }
  }
  if (generators_.size() > 0xFFFF) throw InvalidInput("too many generators");
}

std::optional<Letter> Alphabet::find(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return static_cast<Letter>(i);
  }
  return std::nullopt;
}

Letter Alphabet::letter(const std::string& name) const {
  if (auto l = find(name)) return *l;
  throw InvalidInput("unknown generator '" + name + "'");
}

int Alphabet::ghost_number(const Word& w) const {
  int g = 0;
  for (auto l : w) g += generators_.at(l).ghost_number;
  return g;
}

std::string Alphabet::render(const Word& w) const {
  std::string s;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!s.empty()) s += "*";
    s += generators_.at(w[i]).name;
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

bool operator==(const Alphabet& a, const Alphabet& b) {
  if (a.generators_.size() != b.generators_.size()) return false;
  for (std::size_t i = 0; i < a.generators_.size(); ++i) {
    const auto& x = a.generators_[i];
    const auto& y = b.generators_[i];
    if (x.name != y.name || x.parity != y.parity || x.ghost_number != y.ghost_number) return false;
  }
  return true;
}

// -------------------------------------------------------------------- Poly

Poly Poly::constant(AlphabetPtr alphabet, const Scalar& s) {
  return monomial(std::move(alphabet), Word{}, s);
}

Poly Poly::generator(AlphabetPtr alphabet, const std::string& name) {
  Letter l = alphabet->letter(name);
  return monomial(std::move(alphabet), Word{l});
}

Poly Poly::monomial(AlphabetPtr alphabet, Word w, const Scalar& s) {
  Poly p(std::move(alphabet));
  if (!s.is_zero()) p.terms_.emplace(std::move(w), s);
  return p;
}

Scalar Poly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar() : it->second;
}

std::size_t Poly::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

void Poly::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::adopt(const Poly& o) {
  if (!o.alphabet_ || o.alphabet_ == alphabet_) return;
  if (!alphabet_) {
    alphabet_ = o.alphabet_;
    return;
  }
  if (!(*alphabet_ == *o.alphabet_)) {
    throw PresentationMismatch("polynomials over different generator sets");
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  adopt(o);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  adopt(o);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(alphabet_);
  r.adopt(o);
  for (const auto& [u, a] : terms_) {
    for (const auto& [v, b] : o.terms_) {
      Word w;
      w.reserve(u.size() + v.size());
      w.insert(w.end(), u.begin(), u.end());
      w.insert(w.end(), v.begin(), v.end());
      r.add_term(w, a * b);
    }
  }
  return r;
}

Poly Poly::operator*(const Scalar& s) const {
  Poly r(alphabet_);
  if (s.is_zero()) return r;
  for (const auto& [w, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), w, c * s);
  return r;
}

Poly Poly::substitute(const Bindings& bindings) const {
  Poly r(alphabet_);
  for (const auto& [w, c] : terms_) r.add_term(w, c.substitute(bindings));
  return r;
}

std::optional<int> Poly::ghost_number() const {
  if (terms_.empty()) return 0;
  std::optional<int> g;
  for (const auto& [w, c] : terms_) {
    int gw = alphabet_->ghost_number(w);
    if (g && *g != gw) return std::nullopt;
    g = gw;
  }
  return g;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto i = a.terms_.begin();
  for (auto j = b.terms_.begin(); j != b.terms_.end(); ++i, ++j) {
    if (i->first != j->first || !(i->second == j->second)) return false;
  }
  if (a.alphabet_ && b.alphabet_ && a.alphabet_ != b.alphabet_ && !a.terms_.empty()) {
    return *a.alphabet_ == *b.alphabet_;
  }
  return true;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [w, c] = *it;
    bool neg = c.looks_negative();
    Scalar mag = neg ? -c : c;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    std::string cs = mag.to_string();
    bool simple = mag.is_monomial();
    if (w.empty()) {
      s += simple ? cs : "(" + cs + ")";
    } else if (mag.is_one()) {
      s += alphabet_->render(w);
    } else {
      s += (simple ? cs : "(" + cs + ")") + "*" + alphabet_->render(w);
    }
  }
  return s;
}

Poly bracket(const Poly& p, const Poly& q, BracketKind kind) {
  return kind == BracketKind::Commutator ? p * q - q * p : p * q + q * p;
}

// ------------------------------------------------------------ Presentation

Presentation::Presentation(AlphabetPtr alphabet, ParameterSet parameters,
                           std::vector<Relation> relations, std::string label)
    : alphabet_(std::move(alphabet)),
      parameters_(std::move(parameters)),
      relations_(std::move(relations)),
      label_(std::move(label)) {
  if (!alphabet_) throw InvalidInput("presentation without alphabet");
  for (auto& r : relations_) {
    if (r.rhs.alphabet() && r.rhs.alphabet() != alphabet_ && !(*r.rhs.alphabet() == *alphabet_)) {
      throw PresentationMismatch("relation rhs over a different alphabet");
    }
    if (!r.rhs.alphabet()) r.rhs = Poly(alphabet_) + r.rhs;
  }
  validate();
}

void Presentation::validate() const {
  std::set<Word, WordLess> seen;
  for (const auto& r : relations_) {
    const std::string name = alphabet_->render(r.lhs);
    if (r.lhs.size() < 2) throw InvalidInput("relation lhs '" + name + "' has length < 2");
    for (auto l : r.lhs) {
      if (l >= alphabet_->size()) throw InvalidInput("relation lhs references unknown letter");
    }
    if (!seen.insert(r.lhs).second) throw InvalidInput("duplicate relation lhs '" + name + "'");
    int g = alphabet_->ghost_number(r.lhs);
    for (const auto& [w, c] : r.rhs.terms()) {
      if (alphabet_->ghost_number(w) != g) {
        throw InvalidInput("relation for '" + name + "' mixes ghost numbers (term '" +
                           alphabet_->render(w) + "')");
      }
      if (w.size() > r.lhs.size()) {
        throw InvalidInput("relation for '" + name + "' raises degree (term '" +
                           alphabet_->render(w) + "')");
      }
    }
  }
}

}  // namespace qbrst
