#pragma once

// Free associative algebra over Scalar on a graded generator alphabet, plus
// finitely presented algebras built on top of it.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qbrst/coeff.hpp"

namespace qbrst {

enum class Parity { Even, Odd };

struct GeneratorInfo {
  std::string name;
  Parity parity = Parity::Even;
  int ghost_number = 0;
  /// Position in the global generator order (smaller = lower).
  int precedence = 0;
};

using Letter = std::uint16_t;
using Word = std::vector<Letter>;

/// Degree first, then lexicographic on letter precedence. -1, 0, +1.
int compare_words(const Word& a, const Word& b);

struct WordLess {
  bool operator()(const Word& a, const Word& b) const { return compare_words(a, b) < 0; }
};

/// Generators sorted by precedence; a Letter is the index in that order, so
/// letter comparison is precedence comparison.
class Alphabet {
 public:
  explicit Alphabet(std::vector<GeneratorInfo> generators);

  std::size_t size() const { return generators_.size(); }
  const GeneratorInfo& info(Letter l) const { return generators_.at(l); }
  const std::vector<GeneratorInfo>& generators() const { return generators_; }
  std::optional<Letter> find(const std::string& name) const;
  Letter letter(const std::string& name) const;

  int ghost_number(const Word& w) const;
  std::string render(const Word& w) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b);

 private:
  std::vector<GeneratorInfo> generators_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

class Poly {
 public:
  using Terms = std::map<Word, Scalar, WordLess>;

  Poly() = default;
  explicit Poly(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}

  static Poly constant(AlphabetPtr alphabet, const Scalar& s);
  static Poly generator(AlphabetPtr alphabet, const std::string& name);
  static Poly monomial(AlphabetPtr alphabet, Word w, const Scalar& s = Scalar(1));

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of `w` (zero when absent).
  Scalar coefficient(const Word& w) const;
  std::size_t degree() const;

  /// Adds c*w in place.
  void add_term(const Word& w, const Scalar& c);

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Scalar& s) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);

  Poly substitute(const Bindings& bindings) const;
  /// Common ghost number; nullopt when inhomogeneous. Zero polynomial -> 0.
  std::optional<int> ghost_number() const;

  friend bool operator==(const Poly& a, const Poly& b);

  /// Terms in decreasing term order with canonical Scalar rendering.
  std::string to_string() const;

 private:
  void adopt(const Poly& o);

  AlphabetPtr alphabet_;
  Terms terms_;
};

inline Poly operator*(const Scalar& s, const Poly& p) { return p * s; }

enum class BracketKind { Commutator, Anticommutator };

/// pq - qp or pq + qp, computed in the free algebra.
Poly bracket(const Poly& p, const Poly& q, BracketKind kind);

struct Relation {
  Word lhs;
  Poly rhs;
};

/// Generators, parameters and oriented relations lhs = rhs.
class Presentation {
 public:
  Presentation() = default;
  Presentation(AlphabetPtr alphabet, ParameterSet parameters, std::vector<Relation> relations,
               std::string label = {});

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const ParameterSet& parameters() const { return parameters_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const std::string& label() const { return label_; }

  Poly zero() const { return Poly(alphabet_); }
  Poly gen(const std::string& name) const { return Poly::generator(alphabet_, name); }
  Poly scalar(const Scalar& s) const { return Poly::constant(alphabet_, s); }

 private:
  void validate() const;

  AlphabetPtr alphabet_;
  ParameterSet parameters_;
  std::vector<Relation> relations_;
  std::string label_;
};

}  // namespace qbrst
