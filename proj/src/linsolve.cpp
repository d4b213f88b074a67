#include "qbrst/linsolve.hpp"

#include <algorithm>
#include <numeric>

namespace qbrst {

namespace {

std::size_t cost(const Scalar& s) {
  if (s.is_rational()) return 0;
  return 1 + s.numerator().terms().size() + s.denominator().terms().size();
}

void axpy(SparseRow& row, Scalar& rhs, const SparseRow& pivot, const Scalar& prhs,
          const Scalar& f) {
  for (const auto& [c, v] : pivot) {
    auto [it, inserted] = row.try_emplace(c, Scalar());
    it->second -= f * v;
    if (it->second.is_zero()) row.erase(it);
  }
  if (!prhs.is_zero()) rhs -= f * prhs;
}

}  // namespace

LinearSolution solve_linear(std::vector<SparseRow> rows, std::vector<Scalar> rhs,
                            std::size_t unknowns,
                            const std::vector<std::size_t>& column_priority) {
  std::vector<std::size_t> order = column_priority;
  if (order.empty()) {
    order.resize(unknowns);
    std::iota(order.begin(), order.end(), 0);
  }
  rhs.resize(rows.size());
  std::vector<bool> used(rows.size(), false);
  // column -> pivot row
  std::map<std::size_t, std::size_t> pivot_of;
  for (auto col : order) {
    std::size_t best = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r]) continue;
      auto it = rows[r].find(col);
      if (it == rows[r].end()) continue;
      if (best == rows.size() || cost(it->second) < cost(rows[best].at(col))) best = r;
    }
    if (best == rows.size()) continue;
    used[best] = true;
    pivot_of[col] = best;
    Scalar inv = rows[best].at(col).inverse();
    for (auto& [c, v] : rows[best]) v *= inv;
    rhs[best] *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == best) continue;
      auto it = rows[r].find(col);
      if (it == rows[r].end()) continue;
      Scalar f = it->second;
      axpy(rows[r], rhs[r], rows[best], rhs[best], f);
    }
  }

  LinearSolution sol;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!used[r] && !rhs[r].is_zero()) sol.consistent = false;
  }
  sol.particular.assign(unknowns, Scalar());
  for (const auto& [col, r] : pivot_of) sol.particular[col] = rhs[r];
  for (std::size_t f = 0; f < unknowns; ++f) {
    if (pivot_of.count(f)) continue;
    sol.free_columns.push_back(f);
    std::vector<Scalar> k(unknowns);
    k[f] = Scalar(1);
    for (const auto& [col, r] : pivot_of) {
      auto it = rows[r].find(f);
      if (it != rows[r].end()) k[col] = -it->second;
    }
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

LinearSolution fit_words(const std::vector<Word>& words, const std::vector<Poly>& images,
                         const Poly& target, PivotPreference preference) {
  std::map<Word, std::size_t, WordLess> row_of;
  std::vector<SparseRow> rows;
  std::vector<Scalar> rhs;
  auto row = [&](const Word& w) {
    auto [it, inserted] = row_of.try_emplace(w, row_of.size());
    if (inserted) {
      rows.emplace_back();
      rhs.emplace_back();
    }
    return it->second;
  };
  for (std::size_t col = 0; col < images.size(); ++col) {
    for (const auto& [w, c] : images[col].terms()) {
      auto r = row(w);
      rows[r][col] = c;
    }
  }
  for (const auto& [w, c] : target.terms()) {
    auto r = row(w);
    rhs[r] = c;
  }
  std::vector<std::size_t> priority(words.size());
  std::iota(priority.begin(), priority.end(), 0);
  if (preference == PivotPreference::LargestWord) std::reverse(priority.begin(), priority.end());
  if (preference == PivotPreference::SmallestReversedWord) {
    std::stable_sort(priority.begin(), priority.end(), [&](std::size_t a, std::size_t b) {
      const Word& x = words[a];
      const Word& y = words[b];
      if (x.size() != y.size()) return x.size() < y.size();
      return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
    });
  }
  return solve_linear(std::move(rows), std::move(rhs), words.size(), priority);
}

Poly combine_words(const AlphabetPtr& alphabet, const std::vector<Word>& words,
                   const std::vector<Scalar>& x) {
  Poly p(alphabet);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!x[i].is_zero()) p.add_term(words[i], x[i]);
  }
  return p;
}

}  // namespace qbrst
