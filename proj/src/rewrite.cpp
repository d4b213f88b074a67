#include "qbrst/rewrite.hpp"

#include <algorithm>

namespace qbrst {

RewriteRule orient(const Word& lhs, const Poly& rhs, int id) {
  for (const auto& [w, c] : rhs.terms()) {
    if (!TermOrder::less(w, lhs)) {
      const auto& a = rhs.alphabet();
      throw OrientationError("cannot orient relation with lhs '" + a->render(lhs) +
                             "': rhs term '" + a->render(w) + "' is not smaller");
    }
  }
  return RewriteRule{id, lhs, rhs};
}

RewriteRule orient_relation(const Poly& p, int id) {
  if (p.is_zero()) throw InvalidInput("cannot orient the zero relation");
  const auto& [lead, lc] = *p.terms().rbegin();
  Word lhs = lead;
  Poly rhs = -(p - Poly::monomial(p.alphabet(), lhs, lc)) * lc.inverse();
  return orient(lhs, rhs, id);
}

std::vector<RewriteRule> linear_orient(const std::vector<Poly>& relations) {
  // pivot word -> monic row whose leading word is the pivot
  std::map<Word, Poly, WordLess> pivots;
  AlphabetPtr alphabet;
  for (const auto& input : relations) {
    if (!alphabet) alphabet = input.alphabet();
    Poly row = input;
    // Eliminate pivot words, largest first.
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = row.terms().rbegin(); it != row.terms().rend(); ++it) {
        auto pv = pivots.find(it->first);
        if (pv != pivots.end()) {
          row -= pv->second * Scalar(it->second);
          changed = true;
          break;
        }
      }
    }
    if (row.is_zero()) continue;
    const auto [lead, lc] = *row.terms().rbegin();
    if (lead.empty()) throw InvalidInput("relations are inconsistent: they imply 1 = 0");
    row = row * lc.inverse();
    for (auto& [w, other] : pivots) {
      Scalar c = other.coefficient(lead);
      if (!c.is_zero()) other -= row * c;
    }
    pivots.emplace(lead, std::move(row));
  }
  std::vector<RewriteRule> rules;
  int id = 0;
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    Poly rhs = -(it->second - Poly::monomial(alphabet, it->first));
    rules.push_back(orient(it->first, rhs, id++));
  }
  return rules;
}

std::string ReductionReport::to_string() const {
  std::string s = normal_form.to_string() + "  [" + std::to_string(steps) + " steps]";
  return s;
}

// ------------------------------------------------------------ RewriteSystem

RewriteSystem::RewriteSystem(AlphabetPtr alphabet, std::vector<RewriteRule> rules)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)), by_first_(alphabet_->size()) {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& r = rules_[i];
    if (r.lhs.empty()) throw InvalidInput("rule with empty lhs");
    for (auto l : r.lhs) {
      if (l >= alphabet_->size()) throw InvalidInput("rule lhs references unknown letter");
    }
    // Re-check orientation; rules may come from user input.
    orient(r.lhs, r.rhs.alphabet() ? r.rhs : Poly(alphabet_) + r.rhs, r.id);
    by_first_[r.lhs.front()].push_back(i);
  }
  for (auto& bucket : by_first_) {
    std::sort(bucket.begin(), bucket.end(),
              [&](std::size_t a, std::size_t b) { return rules_[a].id < rules_[b].id; });
  }
}

RewriteSystem RewriteSystem::from_presentation(const Presentation& p) {
  std::vector<RewriteRule> rules;
  int id = 0;
  for (const auto& rel : p.relations()) rules.push_back(orient(rel.lhs, rel.rhs, id++));
  return RewriteSystem(p.alphabet(), std::move(rules));
}

bool RewriteSystem::matches_at(const Word& w, std::size_t pos, const RewriteRule& r) const {
  if (pos + r.lhs.size() > w.size()) return false;
  return std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + static_cast<std::ptrdiff_t>(pos));
}

bool RewriteSystem::find_match(const Word& w, Strategy s, Match& out) const {
  bool found = false;
  auto better = [&](std::size_t pos, const RewriteRule* r) {
    if (!found) return true;
    switch (s) {
      case Strategy::Leftmost:
        return false;  // first hit in scan order wins
      case Strategy::LeftmostInnermost: {
        auto end_new = pos + r->lhs.size();
        auto end_old = out.pos + out.rule->lhs.size();
        return end_new < end_old || (end_new == end_old && r->id < out.rule->id);
      }
      case Strategy::LeftmostOutermost:
        return pos == out.pos && r->lhs.size() > out.rule->lhs.size();
      case Strategy::Rightmost:
        return pos > out.pos;
    }
    return false;
  };
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    if (found && (s == Strategy::Leftmost || s == Strategy::LeftmostOutermost) && pos > out.pos) {
      break;
    }
    for (auto idx : by_first_[w[pos]]) {
      const auto& r = rules_[idx];
      if (matches_at(w, pos, r) && better(pos, &r)) {
        out = Match{pos, &r};
        found = true;
      }
    }
  }
  return found;
}

bool RewriteSystem::is_normal(const Word& w) const {
  Match m{};
  return !find_match(w, Strategy::Leftmost, m);
}

Poly RewriteSystem::apply(const Word& w, std::size_t pos, const RewriteRule& r) const {
  Poly out(alphabet_);
  for (const auto& [mid, c] : r.rhs.terms()) {
    Word nw;
    nw.reserve(w.size() - r.lhs.size() + mid.size());
    nw.insert(nw.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
    nw.insert(nw.end(), mid.begin(), mid.end());
    nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + r.lhs.size()), w.end());
    out.add_term(nw, c);
  }
  return out;
}

ReductionReport RewriteSystem::reduce(const Poly& p, const ReduceOptions& opts) const {
  if (p.alphabet() && alphabet_ && p.alphabet() != alphabet_ && !(*p.alphabet() == *alphabet_)) {
    throw PresentationMismatch("polynomial and rewrite system use different generators");
  }
  ReductionReport report;
  // Largest word first: every rewrite produces strictly smaller words, so a
  // word moved to the result can never reappear in the work list.
  Poly::Terms work(p.terms().begin(), p.terms().end());
  std::vector<std::pair<Word, Scalar>> done;
  while (!work.empty()) {
    auto top = std::prev(work.end());
    Word w = top->first;
    Scalar c = top->second;
    work.erase(top);
    Match m{};
    if (!find_match(w, opts.strategy, m)) {
      done.emplace_back(std::move(w), std::move(c));
      continue;
    }
    if (++report.steps > opts.step_limit) {
      Poly partial(alphabet_);
      for (const auto& [dw, dc] : done) partial.add_term(dw, dc);
      partial.add_term(w, c);
      for (const auto& [ww, wc] : work) partial.add_term(ww, wc);
      throw StepLimitExceeded("reduction exceeded step limit " + std::to_string(opts.step_limit),
                              partial.to_string());
    }
    ++report.rules_fired[m.rule->id];
    for (const auto& [mid, rc] : m.rule->rhs.terms()) {
      Word nw;
      nw.reserve(w.size() - m.rule->lhs.size() + mid.size());
      nw.insert(nw.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m.pos));
      nw.insert(nw.end(), mid.begin(), mid.end());
      nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(m.pos + m.rule->lhs.size()),
                w.end());
      Scalar nc = c * rc;
      auto [it, inserted] = work.try_emplace(std::move(nw), nc);
      if (!inserted) {
        it->second += nc;
        if (it->second.is_zero()) work.erase(it);
      }
    }
  }
  report.normal_form = Poly(alphabet_);
  for (auto& [w, c] : done) report.normal_form.add_term(w, c);
  return report;
}

std::vector<CriticalPair> RewriteSystem::overlaps(std::size_t max_degree) const {
  std::vector<CriticalPair> out;
  for (const auto& r1 : rules_) {
    for (const auto& r2 : rules_) {
      const auto& a = r1.lhs;
      const auto& b = r2.lhs;
      // Proper overlap: suffix of a equals prefix of b.
      for (std::size_t k = 1; k < a.size() && k < b.size(); ++k) {
        if (a.size() + b.size() - k > max_degree) continue;
        if (!std::equal(a.end() - static_cast<std::ptrdiff_t>(k), a.end(), b.begin())) continue;
        Word w = a;
        w.insert(w.end(), b.begin() + static_cast<std::ptrdiff_t>(k), b.end());
        out.push_back({w, r1.id, r2.id, apply(w, 0, r1), apply(w, a.size() - k, r2)});
      }
      // Inclusion: b occurs inside a.
      if (&r1 != &r2 && b.size() <= a.size() && a.size() <= max_degree) {
        for (std::size_t pos = 0; pos + b.size() <= a.size(); ++pos) {
          if (matches_at(a, pos, r2)) {
            out.push_back({a, r1.id, r2.id, apply(a, 0, r1), apply(a, pos, r2)});
          }
        }
      }
    }
  }
  return out;
}

ConfluenceReport RewriteSystem::confluence_check(std::size_t max_degree,
                                                 const ReduceOptions& opts) const {
  ConfluenceReport report;
  for (auto& cp : overlaps(max_degree)) {
    ++report.pairs_checked;
    Poly n1 = normal_form(cp.first, opts);
    Poly n2 = normal_form(cp.second, opts);
    if (!(n1 == n2)) report.unresolved.push_back({std::move(cp), std::move(n1), std::move(n2)});
  }
  return report;
}

}  // namespace qbrst
