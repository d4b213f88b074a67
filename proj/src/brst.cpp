#include "qbrst/brst.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "qbrst/error.hpp"
#include "qbrst/linsolve.hpp"

namespace qbrst {

namespace {

std::vector<RewriteRule> orient_all(const std::vector<Poly>& polys) {
  std::vector<Poly> nonzero;
  for (const auto& p : polys) {
    if (!p.is_zero()) nonzero.push_back(p);
  }
  return linear_orient(nonzero);
}

std::vector<Relation> to_relations(const std::vector<RewriteRule>& rules) {
  std::vector<Relation> out;
  out.reserve(rules.size());
  for (const auto& r : rules) out.push_back({r.lhs, r.rhs});
  return out;
}

/// Re-expresses p over `target` by generator name.
Poly transport(const Poly& p, const AlphabetPtr& target) {
  Poly out(target);
  for (const auto& [w, c] : p.terms()) {
    Word v;
    v.reserve(w.size());
    for (auto l : w) v.push_back(target->letter(p.alphabet()->info(l).name));
    out.add_term(v, c);
  }
  return out;
}

/// Restriction of T to indices 1..n, re-based to 0..n-1.
TensorSquareOp restrict_to_constraints(const TensorSquareOp& t) {
  const std::size_t n = t.dim() - 1;
  TensorSquareOp out(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) out(a, b, c, d) = t(a + 1, b + 1, c + 1, d + 1);
  return out;
}

struct OmegaGens {
  const AlphabetPtr& alphabet;
  const GhostNames& names;
  Scalar chi0;

  Poly chi(std::size_t a) const {
    if (a == 0) return Poly::constant(alphabet, chi0);
    return Poly::generator(alphabet, names.constraints[a - 1]);
  }
  Poly c(std::size_t i) const { return Poly::generator(alphabet, names.ghosts[i - 1]); }
  Poly b(std::size_t i) const { return Poly::generator(alphabet, names.antighosts[i - 1]); }
};

std::vector<Poly> quantum_space_relations(const TensorSquareOp& r, const OmegaGens& g) {
  const std::size_t dim = r.dim();
  std::vector<Poly> out;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      Poly p = g.chi(a) * g.chi(b);
      for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t d = 0; d < dim; ++d) {
          const Scalar& x = r(c, d, a, b);
          if (!x.is_zero()) p -= g.chi(c) * g.chi(d) * x;
        }
      out.push_back(std::move(p));
    }
  }
  return out;
}

void add_canonical_ghost_relations(const OmegaGens& g, std::size_t n, std::vector<Poly>& out) {
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      out.push_back(bracket(g.c(i), g.c(j), BracketKind::Anticommutator));
      out.push_back(bracket(g.b(i), g.b(j), BracketKind::Anticommutator));
      Poly bc = bracket(g.b(i), g.c(j), BracketKind::Anticommutator);
      if (i == j) bc -= Poly::constant(g.alphabet, Scalar(1));
      out.push_back(std::move(bc));
    }
  }
}

std::vector<std::vector<Letter>> letters_by_kind(const Alphabet& a) {
  // 0: even, 1: ghosts (gh > 0), 2: anti-ghosts (gh < 0)
  std::vector<std::vector<Letter>> out(3);
  for (Letter l = 0; l < a.size(); ++l) {
    const auto& info = a.info(l);
    if (info.parity == Parity::Even) {
      out[0].push_back(l);
    } else {
      out[info.ghost_number > 0 ? 1 : 2].push_back(l);
    }
  }
  return out;
}

void sequences(const std::vector<Letter>& letters, std::size_t len, Word& cur,
               std::vector<Word>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (auto l : letters) {
    cur.push_back(l);
    sequences(letters, len, cur, out);
    cur.pop_back();
  }
}

std::vector<Word> all_sequences(const std::vector<Letter>& letters, std::size_t len) {
  std::vector<Word> out;
  Word cur;
  sequences(letters, len, cur, out);
  return out;
}

/// Normal words: (constraint word of length <= max_chi) (ghosts^ghosts) (anti-ghosts^anti).
std::vector<Word> candidate_words(const RewriteSystem& rs, std::size_t ghosts, std::size_t anti,
                                  std::size_t max_chi) {
  auto kinds = letters_by_kind(*rs.alphabet());
  auto cs = all_sequences(kinds[1], ghosts);
  auto bs = all_sequences(kinds[2], anti);
  std::vector<Word> out;
  for (std::size_t m = 0; m <= max_chi; ++m) {
    for (const auto& x : all_sequences(kinds[0], m)) {
      if (!rs.is_normal(x)) continue;
      for (const auto& c : cs) {
        for (const auto& b : bs) {
          Word w = x;
          w.insert(w.end(), c.begin(), c.end());
          w.insert(w.end(), b.begin(), b.end());
          if (rs.is_normal(w)) out.push_back(std::move(w));
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), WordLess());
  return out;
}

struct OrderByOrder {
  const Presentation& omega;
  RewriteSystem rs;
  ReduceOptions reduce;
  std::size_t max_chi;

  Poly nf(const Poly& p) const { return rs.normal_form(p, reduce); }

  /// Adds corrections to q for anti-ghost orders 1..max_order.
  std::vector<OrderSolution> run(Poly& q, std::size_t max_order) const {
    std::vector<OrderSolution> out;
    for (std::size_t k = 1; k <= max_order; ++k) {
      Poly square = nf(q * q);
      if (square.is_zero()) break;
      OrderSolution s;
      s.order = k;
      Poly target = -antighost_part(square, k - 1);
      auto words = candidate_words(rs, k + 1, k, max_chi);
      std::vector<Poly> images;
      images.reserve(words.size());
      for (const auto& w : words) {
        Poly m = Poly::monomial(q.alphabet(), w);
        images.push_back(antighost_part(nf(q * m + m * q), k - 1));
      }
      auto f = fit_words(words, images, target, PivotPreference::SmallestReversedWord);
      if (!f.consistent) {
        s.solved = false;
        s.obstruction = -target;
        s.correction = Poly(q.alphabet());
        out.push_back(std::move(s));
        break;
      }
      s.correction = combine_words(q.alphabet(), words, f.particular);
      for (const auto& kv : f.kernel) {
        s.ambiguity.push_back(combine_words(q.alphabet(), words, kv));
      }
      q += s.correction;
      out.push_back(std::move(s));
    }
    return out;
  }
};

}  // namespace

// ------------------------------------------------------------ names

GhostNames GhostNames::indexed(std::size_t n) {
  GhostNames g;
  for (std::size_t i = 1; i <= n; ++i) {
    g.constraints.push_back("chi" + std::to_string(i));
    g.ghosts.push_back("c" + std::to_string(i));
    g.antighosts.push_back("b" + std::to_string(i));
  }
  return g;
}

GhostNames GhostNames::prefixed(const std::vector<std::string>& constraints) {
  GhostNames g;
  g.constraints = constraints;
  for (const auto& x : constraints) {
    g.ghosts.push_back("c" + x);
    g.antighosts.push_back("b" + x);
  }
  return g;
}

AlphabetPtr ghost_alphabet(const GhostNames& names,
                           const std::vector<GeneratorInfo>& extra_constraints) {
  const std::size_t n = names.size();
  if (names.ghosts.size() != n || names.antighosts.size() != n) {
    throw InvalidInput("ghost names: one ghost and one anti-ghost per constraint");
  }
  std::vector<GeneratorInfo> gens;
  int prec = 0;
  if (extra_constraints.empty()) {
    for (const auto& x : names.constraints) gens.push_back({x, Parity::Even, 0, prec++});
  } else {
    for (auto g : extra_constraints) {
      g.precedence = prec++;
      gens.push_back(g);
    }
  }
  for (std::size_t i = n; i-- > 0;) gens.push_back({names.ghosts[i], Parity::Odd, 1, prec++});
  for (std::size_t i = 0; i < n; ++i) gens.push_back({names.antighosts[i], Parity::Odd, -1, prec++});
  return std::make_shared<const Alphabet>(gens);
}

// ------------------------------------------------------------ presentations

Presentation omega_presentation(const TensorSquareOp& r, const TensorSquareOp& f,
                                const GhostNames& names, const Scalar& chi0,
                                const ParameterSet& parameters, std::string label) {
  const std::size_t dim = r.dim();
  const std::size_t n = dim - 1;
  if (f.dim() != dim || names.size() != n) throw InvalidInput("omega: dimension mismatch");
  auto alphabet = ghost_alphabet(names);
  OmegaGens g{alphabet, names, chi0};

  std::vector<Poly> rels = quantum_space_relations(r, g);
  TensorSquareOp st = restrict_to_constraints(twisted(f, r));
  TensorSquareOp st_inv = st.inverse();

  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      Poly cc = g.c(j) * g.c(i);
      Poly bb = g.b(i) * g.b(j);
      Poly bc = g.b(i) * g.c(j);
      if (i == j) bc -= Poly::constant(alphabet, Scalar(1));
      for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t l = 1; l <= n; ++l) {
          const Scalar& x = st(i - 1, j - 1, k - 1, l - 1);
          if (!x.is_zero()) cc += g.c(l) * g.c(k) * x;
          const Scalar& y = st(k - 1, l - 1, i - 1, j - 1);
          if (!y.is_zero()) bb += g.b(k) * g.b(l) * y;
          const Scalar& z = st_inv(l - 1, j - 1, k - 1, i - 1);
          if (!z.is_zero()) bc += g.c(k) * g.b(l) * z;
        }
      }
      rels.push_back(std::move(cc));
      rels.push_back(std::move(bb));
      rels.push_back(std::move(bc));
    }
  }

  for (std::size_t a = 1; a <= n; ++a) {
    for (std::size_t b = 1; b <= n; ++b) {
      // b_a chi_b = F^{CD}_{ab} chi_C b_D
      Poly bx = g.b(a) * g.chi(b);
      for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t d = 0; d < dim; ++d) {
          const Scalar& x = f(c, d, a, b);
          if (x.is_zero()) continue;
          if (d == 0) throw InvalidInput("twisting matrix couples anti-ghosts to b_0");
          bx -= g.chi(c) * g.b(d) * x;
        }
      }
      rels.push_back(std::move(bx));
      // chi_a c^d = c^B F^{Cd}_{Ba} chi_C
      const std::size_t d = b;
      Poly xc = g.chi(a) * g.c(d);
      for (std::size_t bb = 0; bb < dim; ++bb) {
        for (std::size_t c = 0; c < dim; ++c) {
          const Scalar& x = f(c, d, bb, a);
          if (x.is_zero()) continue;
          if (bb == 0) throw InvalidInput("twisting matrix couples ghosts to c^0");
          xc -= g.c(bb) * g.chi(c) * x;
        }
      }
      rels.push_back(std::move(xc));
    }
  }
  return Presentation(alphabet, parameters, to_relations(orient_all(rels)), std::move(label));
}

Presentation with_canonical_ghosts(const Presentation& constraints, const GhostNames& names) {
  std::vector<GeneratorInfo> even;
  for (const auto& gi : constraints.alphabet()->generators()) {
    if (gi.parity != Parity::Even || gi.ghost_number != 0) {
      throw InvalidInput("constraint generator '" + gi.name + "' is not even");
    }
    even.push_back(gi);
  }
  for (const auto& x : names.constraints) {
    if (!constraints.alphabet()->find(x)) throw InvalidInput("unknown constraint '" + x + "'");
  }
  auto alphabet = ghost_alphabet(names, even);
  OmegaGens g{alphabet, names, Scalar(1)};
  std::vector<Relation> rels;
  for (const auto& r : constraints.relations()) {
    Word lhs;
    for (auto l : r.lhs) lhs.push_back(alphabet->letter(constraints.alphabet()->info(l).name));
    rels.push_back({lhs, transport(r.rhs, alphabet)});
  }
  std::vector<Poly> ghost;
  add_canonical_ghost_relations(g, names.size(), ghost);
  for (const auto& gi : even) {
    Poly x = Poly::generator(alphabet, gi.name);
    for (std::size_t i = 1; i <= names.size(); ++i) {
      ghost.push_back(bracket(x, g.c(i), BracketKind::Commutator));
      ghost.push_back(bracket(x, g.b(i), BracketKind::Commutator));
    }
  }
  for (auto& r : to_relations(orient_all(ghost))) rels.push_back(std::move(r));
  return Presentation(alphabet, constraints.parameters(), std::move(rels),
                      constraints.label().empty() ? std::string() : constraints.label() + "+ghosts");
}

Presentation build_ghost_presentation(const StructureData& s, const TensorSquareOp& phi,
                                      GhostMode mode, const GhostNames& names,
                                      const Scalar& chi0, const ParameterSet& parameters) {
  TensorSquareOp r = assemble_R(s);
  if (mode == GhostMode::Twisted) {
    for (const auto& c : twist_consistency(s, phi)) {
      if (!c.passed) {
        throw InvalidInput("sigma and phi are inconsistent: " + c.name + " fails" +
                           (c.first_failure ? " at " + c.first_failure->to_string() : ""));
      }
    }
    return omega_presentation(r, assemble_F(phi), names, chi0, parameters, "omega");
  }
  auto alphabet = std::make_shared<const Alphabet>([&] {
    std::vector<GeneratorInfo> gens;
    int prec = 0;
    for (const auto& x : names.constraints) gens.push_back({x, Parity::Even, 0, prec++});
    return gens;
  }());
  GhostNames plain;
  plain.constraints = names.constraints;
  OmegaGens g{alphabet, plain, chi0};
  Presentation qla(alphabet, parameters, to_relations(orient_all(quantum_space_relations(r, g))),
                   "qla");
  return with_canonical_ghosts(qla, names);
}

// ------------------------------------------------------------ charges

Poly build_c0(const StructureData& s, const TensorSquareOp& phi, const Presentation& omega,
              const GhostNames& names, const Scalar& chi0) {
  const std::size_t n = s.n;
  OmegaGens g{omega.alphabet(), names, chi0};
  Poly p(omega.alphabet());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Poly cc = g.c(j + 1) * g.c(i + 1);
      for (std::size_t r = 0; r < n; ++r) {
        Scalar coeff;
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t m = 0; m < n; ++m) {
            const Scalar& x = phi(k, m, i, j);
            if (!x.is_zero() && !s.C(r, k, m).is_zero()) coeff += x * s.C(r, k, m);
          }
        if (!coeff.is_zero()) p += cc * g.b(r + 1) * coeff;
      }
    }
  p = p * (Scalar::rational(-1, 2) * chi0);
  return RewriteSystem::from_presentation(omega).normal_form(p);
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Proposition: return "proposition";
    case Provenance::AnsatzSolver: return "ansatz-solver";
    case Provenance::Explicit: return "explicit";
  }
  return "explicit";
}

BrstCharge build_Q(const Presentation& omega, const GhostNames& names, const Poly& c0,
                   Provenance provenance) {
  auto gh = c0.ghost_number();
  if (!c0.is_zero() && (!gh || *gh != 1)) throw InvalidInput("c0 must have ghost number +1");
  OmegaGens g{omega.alphabet(), names, Scalar(1)};
  Poly q = c0.is_zero() ? Poly(omega.alphabet()) : transport(c0, omega.alphabet());
  for (std::size_t i = 1; i <= names.size(); ++i) q += g.c(i) * g.chi(i);
  return {RewriteSystem::from_presentation(omega).normal_form(q), omega, provenance};
}

Poly verify_nilpotent(const BrstCharge& q, const ReduceOptions& opts) {
  auto gh = q.q.ghost_number();
  if (!q.q.is_zero() && (!gh || *gh != 1)) throw InvalidInput("charge must have ghost number +1");
  return RewriteSystem::from_presentation(q.presentation).normal_form(q.q * q.q, opts);
}

std::size_t antighost_degree(const Alphabet& a, const Word& w) {
  std::size_t k = 0;
  for (auto l : w) k += a.info(l).ghost_number < 0 ? 1 : 0;
  return k;
}

std::size_t constraint_degree(const Alphabet& a, const Word& w) {
  std::size_t k = 0;
  for (auto l : w) k += a.info(l).parity == Parity::Even ? 1 : 0;
  return k;
}

Poly antighost_part(const Poly& p, std::size_t k) {
  Poly out(p.alphabet());
  for (const auto& [w, c] : p.terms()) {
    if (antighost_degree(*p.alphabet(), w) == k) out.add_term(w, c);
  }
  return out;
}

DoubleComplexReport double_complex_check(const BrstCharge& q, const BrstCharge& qt,
                                         const ReduceOptions& opts) {
  if (!(*q.presentation.alphabet() == *qt.presentation.alphabet())) {
    throw PresentationMismatch("double complex: charges over different presentations");
  }
  RewriteSystem rs = RewriteSystem::from_presentation(q.presentation);
  Poly b = transport(qt.q, q.presentation.alphabet());
  DoubleComplexReport rep;
  rep.q_squared = rs.normal_form(q.q * q.q, opts);
  rep.qt_squared = rs.normal_form(b * b, opts);
  rep.anticommutator = rs.normal_form(q.q * b + b * q.q, opts);
  return rep;
}

Scalar involution(const Scalar& t) {
  if (t.is_zero()) throw DivisionByZero("involution of t = 0");
  return t.inverse();
}

// ------------------------------------------------------------ solvers

AnsatzResult solve_brst_ansatz(const Presentation& omega, const GhostNames& names,
                               const AnsatzOptions& opts) {
  OrderByOrder solver{omega, RewriteSystem::from_presentation(omega), opts.reduce,
                      opts.max_constraint_degree};
  AnsatzResult res;
  Poly q = build_Q(omega, names, Poly(omega.alphabet()), Provenance::AnsatzSolver).q;
  res.orders = solver.run(q, opts.max_antighost_degree);
  res.residual = solver.nf(q * q);
  res.nilpotent = res.residual.is_zero();
  res.charge = {q, omega, Provenance::AnsatzSolver};
  if (opts.compute_deformations && res.nilpotent) {
    auto words = candidate_words(solver.rs, 1, 0, opts.max_constraint_degree);
    std::vector<Poly> images;
    for (const auto& w : words) {
      Poly m = Poly::monomial(q.alphabet(), w);
      images.push_back(solver.nf(q * m + m * q));
    }
    auto f = fit_words(words, images, Poly(q.alphabet()), PivotPreference::LargestWord);
    for (const auto& kv : f.kernel) {
      Poly d = combine_words(q.alphabet(), words, kv);
      if (solver.nf(d * d).is_zero()) res.deformations.push_back(std::move(d));
    }
  }
  return res;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Unique: return "unique";
    case SolveStatus::NonUnique: return "non-unique";
    case SolveStatus::NoSolution: return "no-solution";
  }
  return "no-solution";
}

XTensorSolution x_tensors_solve(const TensorSquareOp& r, const TensorSquareOp& f,
                                std::size_t rank, const Scalar& chi0) {
  const std::size_t n = r.dim() - 1;
  auto names = GhostNames::indexed(n);
  Presentation omega = omega_presentation(r, f, names, chi0, ParameterSet(), "omega");
  OrderByOrder solver{omega, RewriteSystem::from_presentation(omega), {}, 0};
  Poly q = build_Q(omega, names, Poly(omega.alphabet())).q;
  XTensorSolution out;
  // Run every order even when Q^2 already vanishes, so kernels are seen.
  for (std::size_t k = 1; k <= rank; ++k) {
    Poly square = solver.nf(q * q);
    Poly target = -antighost_part(square, k - 1);
    auto words = candidate_words(solver.rs, k + 1, k, 0);
    std::vector<Poly> images;
    for (const auto& w : words) {
      Poly m = Poly::monomial(q.alphabet(), w);
      images.push_back(antighost_part(solver.nf(q * m + m * q), k - 1));
    }
    auto fsol = fit_words(words, images, target, PivotPreference::LargestWord);
    if (!fsol.consistent) {
      out.status = SolveStatus::NoSolution;
      break;
    }
    if (!fsol.kernel.empty()) out.status = SolveStatus::NonUnique;
    Poly part = combine_words(q.alphabet(), words, fsol.particular);
    q += part;
    out.c0_parts.push_back(part);
    XTensors x(n, k);
    const Alphabet& a = *omega.alphabet();
    for (const auto& [w, c] : part.terms()) {
      // w = c^{i_{k+1}} ... c^{i_1} b_{j_1} ... b_{j_k}
      std::vector<std::size_t> lower(k + 1), upper(k);
      for (std::size_t p = 0; p <= k; ++p) {
        const std::string& nm = a.info(w[p]).name;
        lower[k - p] = std::stoul(nm.substr(1)) - 1;
      }
      for (std::size_t p = 0; p < k; ++p) {
        upper[p] = std::stoul(a.info(w[k + 1 + p]).name.substr(1)) - 1;
      }
      x.at(upper, lower) = c;
    }
    out.x.push_back(std::move(x));
  }
  return out;
}

Poly c0_from_x(const XTensors& x, const Presentation& omega, const GhostNames& names,
               GhostTensorReading reading) {
  OmegaGens g{omega.alphabet(), names, Scalar(1)};
  const std::size_t n = x.n;
  const std::size_t k = x.rank;
  Poly p(omega.alphabet());
  for (const auto& lower : multi_indices(n, k + 1)) {
    for (const auto& upper : multi_indices(n, k)) {
      const Scalar& v = x.at(upper, lower);
      if (v.is_zero()) continue;
      Poly term = Poly::constant(omega.alphabet(), v);
      Poly cs = Poly::constant(omega.alphabet(), Scalar(1));
      for (std::size_t p2 = k + 1; p2-- > 0;) cs = cs * g.c(lower[p2] + 1);
      Poly bs = Poly::constant(omega.alphabet(), Scalar(1));
      for (auto j : upper) bs = bs * g.b(j + 1);
      p += cs * term * bs;
    }
  }
  if (reading == GhostTensorReading::Wedge) {
    long fact = 1;
    for (std::size_t m = 2; m <= k + 1; ++m) fact *= static_cast<long>(m);
    p = p * Scalar::rational(1, fact);
  }
  return RewriteSystem::from_presentation(omega).normal_form(p);
}

}  // namespace qbrst
