#include "qbrst/ybtensor.hpp"

#include <algorithm>

#include "qbrst/error.hpp"

namespace qbrst {

// ----------------------------------------------------------- TensorSquareOp

TensorSquareOp::TensorSquareOp(std::size_t dim) : dim_(dim), e_(dim * dim * dim * dim) {}

TensorSquareOp TensorSquareOp::identity(std::size_t dim) {
  TensorSquareOp t(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) t(a, b, a, b) = Scalar(1);
  }
  return t;
}

TensorSquareOp TensorSquareOp::permutation(std::size_t dim) {
  TensorSquareOp t(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) t(a, b, b, a) = Scalar(1);
  }
  return t;
}

TensorSquareOp TensorSquareOp::operator*(const TensorSquareOp& o) const {
  if (dim_ != o.dim_) throw InvalidInput("tensor dimension mismatch");
  const std::size_t n = dim_;
  TensorSquareOp out(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t d = 0; d < n; ++d) {
      for (std::size_t e = 0; e < n; ++e) {
        for (std::size_t f = 0; f < n; ++f) {
          const Scalar& x = (*this)(e, f, c, d);
          if (x.is_zero()) continue;
          for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
              const Scalar& y = o(a, b, e, f);
              if (!y.is_zero()) out(a, b, c, d) += x * y;
            }
          }
        }
      }
    }
  }
  return out;
}

TensorSquareOp TensorSquareOp::operator+(const TensorSquareOp& o) const {
  if (dim_ != o.dim_) throw InvalidInput("tensor dimension mismatch");
  TensorSquareOp out = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] += o.e_[i];
  return out;
}

TensorSquareOp TensorSquareOp::operator-(const TensorSquareOp& o) const {
  return *this + o.scaled(Scalar(-1));
}

TensorSquareOp TensorSquareOp::scaled(const Scalar& s) const {
  TensorSquareOp out = *this;
  for (auto& x : out.e_) x *= s;
  return out;
}

TensorSquareOp TensorSquareOp::substitute(const Bindings& b) const {
  TensorSquareOp out = *this;
  for (auto& x : out.e_) x = x.substitute(b);
  return out;
}

std::size_t TensorSquareOp::nonzeros() const {
  return static_cast<std::size_t>(
      std::count_if(e_.begin(), e_.end(), [](const Scalar& s) { return !s.is_zero(); }));
}

bool operator==(const TensorSquareOp& a, const TensorSquareOp& b) {
  return a.dim_ == b.dim_ && a.e_ == b.e_;
}

namespace {

// Pivot preference: rational before symbolic, then lowest numerator degree.
std::size_t pivot_cost(const Scalar& s) {
  if (s.is_rational()) return 0;
  return 1 + s.numerator().total_degree() + s.denominator().total_degree();
}

}  // namespace

TensorSquareOp TensorSquareOp::inverse() const {
  // Gauss-Jordan on the (dim^2 x dim^2) matrix M[(C,D)][(A,B)] = T^{AB}_{CD}.
  const std::size_t n = dim_ * dim_;
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(2 * n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      m[r][c] = (*this)(c / dim_, c % dim_, r / dim_, r % dim_);
    }
    m[r][n + r] = Scalar(1);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = n;
    for (std::size_t r = col; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      if (best == n || pivot_cost(m[r][col]) < pivot_cost(m[best][col])) best = r;
    }
    if (best == n) throw InvalidInput("tensor is singular");
    std::swap(m[col], m[best]);
    Scalar inv = m[col][col].inverse();
    for (auto& x : m[col]) {
      if (!x.is_zero()) x *= inv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      Scalar f = m[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) {
        if (!m[col][c].is_zero()) m[r][c] -= f * m[col][c];
      }
    }
  }
  TensorSquareOp out(dim_);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      out(c / dim_, c % dim_, r / dim_, r % dim_) = m[r][n + c];
    }
  }
  return out;
}

// ----------------------------------------------------------------- TensorOp

TensorOp::TensorOp(std::size_t dim, std::size_t arity) : dim_(dim), arity_(arity) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < arity; ++i) size *= dim;
  rows_.resize(size);
}

TensorOp TensorOp::identity(std::size_t dim, std::size_t arity) {
  TensorOp t(dim, arity);
  for (std::size_t i = 0; i < t.rows_.size(); ++i) t.rows_[i][i] = Scalar(1);
  return t;
}

std::size_t TensorOp::flat(const std::vector<std::size_t>& idx) const {
  std::size_t f = 0;
  for (auto i : idx) f = f * dim_ + i;
  return f;
}

std::vector<std::size_t> TensorOp::unflat(std::size_t i) const {
  std::vector<std::size_t> idx(arity_);
  for (std::size_t k = arity_; k-- > 0;) {
    idx[k] = i % dim_;
    i /= dim_;
  }
  return idx;
}

TensorOp TensorOp::embed(const TensorSquareOp& t, std::size_t pos, std::size_t arity) {
  if (pos + 1 >= arity) throw InvalidInput("embedding position out of range");
  TensorOp out(t.dim(), arity);
  const std::size_t n = t.dim();
  for (std::size_t low = 0; low < out.rows_.size(); ++low) {
    auto idx = out.unflat(low);
    const std::size_t c = idx[pos];
    const std::size_t d = idx[pos + 1];
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const Scalar& s = t(a, b, c, d);
        if (s.is_zero()) continue;
        idx[pos] = a;
        idx[pos + 1] = b;
        out.rows_[low][out.flat(idx)] = s;
      }
    }
  }
  return out;
}

Scalar TensorOp::get(std::size_t lower, std::size_t upper) const {
  auto it = rows_[lower].find(upper);
  return it == rows_[lower].end() ? Scalar() : it->second;
}

void TensorOp::add(std::size_t lower, std::size_t upper, const Scalar& s) {
  if (s.is_zero()) return;
  auto [it, inserted] = rows_[lower].try_emplace(upper, s);
  if (!inserted) {
    it->second += s;
    if (it->second.is_zero()) rows_[lower].erase(it);
  }
}

TensorOp TensorOp::operator*(const TensorOp& o) const {
  if (dim_ != o.dim_ || arity_ != o.arity_) throw InvalidInput("tensor shape mismatch");
  TensorOp out(dim_, arity_);
  for (std::size_t low = 0; low < rows_.size(); ++low) {
    for (const auto& [mid, x] : rows_[low]) {
      for (const auto& [up, y] : o.rows_[mid]) out.add(low, up, x * y);
    }
  }
  return out;
}

TensorOp TensorOp::operator+(const TensorOp& o) const {
  if (dim_ != o.dim_ || arity_ != o.arity_) throw InvalidInput("tensor shape mismatch");
  TensorOp out = *this;
  for (std::size_t low = 0; low < rows_.size(); ++low) {
    for (const auto& [up, y] : o.rows_[low]) out.add(low, up, y);
  }
  return out;
}

TensorOp TensorOp::operator-(const TensorOp& o) const { return *this + o.scaled(Scalar(-1)); }

TensorOp TensorOp::scaled(const Scalar& s) const {
  TensorOp out(dim_, arity_);
  if (s.is_zero()) return out;
  for (std::size_t low = 0; low < rows_.size(); ++low) {
    for (const auto& [up, x] : rows_[low]) out.rows_[low][up] = x * s;
  }
  return out;
}

// ------------------------------------------------------------ StructureData

StructureData::StructureData(std::size_t n_) : n(n_), sigma(n_), c(n_ * n_ * n_) {}

StructureData StructureData::substitute(const Bindings& b) const {
  StructureData out = *this;
  out.sigma = sigma.substitute(b);
  for (auto& x : out.c) x = x.substitute(b);
  return out;
}

std::vector<std::vector<std::size_t>> multi_indices(std::size_t n, std::size_t len) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx(len, 0);
  if (n == 0) return out;
  while (true) {
    out.push_back(idx);
    std::size_t k = len;
    while (k > 0) {
      --k;
      if (++idx[k] < n) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (len == 0) return out;
  }
}

// ------------------------------------------------------------------- checks

std::string ComponentMismatch::to_string() const {
  auto join = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (auto i : v) s += std::to_string(i);
    return s;
  };
  return "^{" + join(upper) + "}_{" + join(lower) + "}: " + lhs.to_string() +
         " != " + rhs.to_string();
}

namespace {

// Accumulates component comparisons into a CheckResult.
class Comparator {
 public:
  explicit Comparator(std::string name) { result_.name = std::move(name); }

  void compare(std::vector<std::size_t> upper, std::vector<std::size_t> lower, const Scalar& lhs,
               const Scalar& rhs) {
    ++result_.components;
    if (lhs == rhs) return;
    ++result_.failures;
    result_.passed = false;
    if (!result_.first_failure) {
      result_.first_failure = ComponentMismatch{std::move(upper), std::move(lower), lhs, rhs};
    }
  }

  CheckResult take() { return std::move(result_); }

 private:
  CheckResult result_;
};

CheckResult compare_ops(const std::string& name, const TensorOp& lhs, const TensorOp& rhs) {
  Comparator cmp(name);
  for (std::size_t low = 0; low < lhs.size(); ++low) {
    for (std::size_t up = 0; up < lhs.size(); ++up) {
      cmp.compare(lhs.unflat(up), lhs.unflat(low), lhs.get(low, up), rhs.get(low, up));
    }
  }
  return cmp.take();
}

struct Embedded3 {
  TensorOp t12;
  TensorOp t23;
};

Embedded3 embed3(const TensorSquareOp& t) {
  return {TensorOp::embed(t, 0, 3), TensorOp::embed(t, 1, 3)};
}

}  // namespace

CheckResult ybe_check(const TensorSquareOp& r) {
  auto [r12, r23] = embed3(r);
  return compare_ops("Yang-Baxter R23 R12 R23 = R12 R23 R12", r23 * r12 * r23, r12 * r23 * r12);
}

std::vector<CheckResult> twist_check(const TensorSquareOp& r, const TensorSquareOp& f) {
  if (r.dim() != f.dim()) throw InvalidInput("R and F have different dimensions");
  auto [r12, r23] = embed3(r);
  auto [f12, f23] = embed3(f);
  std::vector<CheckResult> out;
  out.push_back(compare_ops("Yang-Baxter F23 F12 F23 = F12 F23 F12", f23 * f12 * f23, f12 * f23 * f12));
  out.push_back(compare_ops("R23 F12 F23 = F12 F23 R12", r23 * f12 * f23, f12 * f23 * r12));
  out.push_back(compare_ops("F23 F12 R23 = R12 F23 F12", f23 * f12 * r23, r12 * f23 * f12));
  return out;
}

TensorSquareOp assemble_R(const StructureData& s) {
  const std::size_t n = s.n;
  TensorSquareOp r(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) r(i + 1, j + 1, k + 1, l + 1) = s.sigma(i, j, k, l);
        r(0, i + 1, j + 1, k + 1) = s.C(i, j, k);
      }
    }
  }
  for (std::size_t a = 0; a <= n; ++a) {
    r(0, a, a, 0) = Scalar(1);
    r(a, 0, 0, a) = Scalar(1);
  }
  return r;
}

TensorSquareOp assemble_F(const TensorSquareOp& phi) {
  StructureData s(phi.dim());
  s.sigma = phi;
  return assemble_R(s);
}

StructureData structure_of(const TensorSquareOp& r) {
  if (r.dim() < 2) throw InvalidInput("R must have dimension >= 2");
  const std::size_t n = r.dim() - 1;
  StructureData s(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) s.sigma(i, j, k, l) = r(i + 1, j + 1, k + 1, l + 1);
        s.C(i, j, k) = r(0, i + 1, j + 1, k + 1);
      }
    }
  }
  TensorSquareOp rebuilt = assemble_R(s);
  if (!(rebuilt == r)) {
    for (std::size_t a = 0; a <= n; ++a) {
      for (std::size_t b = 0; b <= n; ++b) {
        for (std::size_t c = 0; c <= n; ++c) {
          for (std::size_t d = 0; d <= n; ++d) {
            if (!(rebuilt(a, b, c, d) == r(a, b, c, d))) {
              throw InvalidInput("R is not of the special (sigma, C) form: component ^{" +
                                 std::to_string(a) + std::to_string(b) + "}_{" +
                                 std::to_string(c) + std::to_string(d) + "} = " +
                                 r(a, b, c, d).to_string());
            }
          }
        }
      }
    }
  }
  return s;
}

std::vector<CheckResult> qla_axioms(const StructureData& s) {
  const std::size_t n = s.n;
  const auto& sg = s.sigma;
  std::vector<CheckResult> out;
  auto [s12, s23] = embed3(sg);
  out.push_back(compare_ops("braid relation s12 s23 s12 = s23 s12 s23", s12 * s23 * s12,
                            s23 * s12 * s23));

  auto up1 = [](std::vector<std::size_t> v) {
    for (auto& x : v) ++x;
    return v;
  };

  // Jacobi: C12 C13 = s23 (C12 C13) + C23 C13.
  {
    Comparator cmp("Jacobi identity");
    auto jac = [&](std::size_t k, std::size_t i1, std::size_t i2, std::size_t i3) {
      Scalar acc;
      for (std::size_t m = 0; m < n; ++m) acc += s.C(m, i1, i2) * s.C(k, m, i3);
      return acc;
    };
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i1 = 0; i1 < n; ++i1) {
        for (std::size_t i2 = 0; i2 < n; ++i2) {
          for (std::size_t i3 = 0; i3 < n; ++i3) {
            Scalar lhs = jac(k, i1, i2, i3);
            Scalar rhs;
            for (std::size_t n2 = 0; n2 < n; ++n2) {
              for (std::size_t n3 = 0; n3 < n; ++n3) {
                const Scalar& x = sg(n2, n3, i2, i3);
                if (!x.is_zero()) rhs += x * jac(k, i1, n2, n3);
              }
            }
            for (std::size_t m = 0; m < n; ++m) rhs += s.C(m, i2, i3) * s.C(k, i1, m);
            cmp.compare(up1({k}), up1({i1, i2, i3}), lhs, rhs);
          }
        }
      }
    }
    out.push_back(cmp.take());
  }

  // C12 s13 = s23 s12 C23.
  {
    Comparator cmp("C12 s13 = s23 s12 C23");
    for (std::size_t k1 = 0; k1 < n; ++k1) {
      for (std::size_t k3 = 0; k3 < n; ++k3) {
        for (std::size_t i1 = 0; i1 < n; ++i1) {
          for (std::size_t i2 = 0; i2 < n; ++i2) {
            for (std::size_t i3 = 0; i3 < n; ++i3) {
              Scalar lhs;
              for (std::size_t m = 0; m < n; ++m) lhs += s.C(m, i1, i2) * sg(k1, k3, m, i3);
              Scalar rhs;
              for (std::size_t p2 = 0; p2 < n; ++p2) {
                for (std::size_t n3 = 0; n3 < n; ++n3) {
                  const Scalar& a = sg(p2, n3, i2, i3);
                  if (a.is_zero()) continue;
                  for (std::size_t n2 = 0; n2 < n; ++n2) {
                    const Scalar& b = sg(k1, n2, i1, p2);
                    if (!b.is_zero()) rhs += a * b * s.C(k3, n2, n3);
                  }
                }
              }
              cmp.compare(up1({k1, k3}), up1({i1, i2, i3}), lhs, rhs);
            }
          }
        }
      }
    }
    out.push_back(cmp.take());
  }

  // (s23 C12 + C23) s13 = s12 (s23 C12 + C23).
  {
    Comparator cmp("(s23 C12 + C23) s13 = s12 (s23 C12 + C23)");
    // m(k1, k3; i1, i2, i3) for the operator s23 C12 + C23.
    auto mixed = [&](std::size_t k1, std::size_t k3, std::size_t i1, std::size_t i2,
                     std::size_t i3) {
      Scalar acc;
      for (std::size_t n2 = 0; n2 < n; ++n2) acc += sg(n2, k3, i2, i3) * s.C(k1, i1, n2);
      if (k1 == i1) acc += s.C(k3, i2, i3);
      return acc;
    };
    for (std::size_t k1 = 0; k1 < n; ++k1) {
      for (std::size_t k3 = 0; k3 < n; ++k3) {
        for (std::size_t i1 = 0; i1 < n; ++i1) {
          for (std::size_t i2 = 0; i2 < n; ++i2) {
            for (std::size_t i3 = 0; i3 < n; ++i3) {
              Scalar lhs;
              for (std::size_t m1 = 0; m1 < n; ++m1) {
                for (std::size_t m3 = 0; m3 < n; ++m3) {
                  const Scalar& x = sg(k1, k3, m1, m3);
                  if (!x.is_zero()) lhs += mixed(m1, m3, i1, i2, i3) * x;
                }
              }
              Scalar rhs;
              for (std::size_t p1 = 0; p1 < n; ++p1) {
                for (std::size_t p2 = 0; p2 < n; ++p2) {
                  const Scalar& x = sg(p1, p2, i1, i2);
                  if (!x.is_zero()) rhs += x * mixed(k1, k3, p1, p2, i3);
                }
              }
              cmp.compare(up1({k1, k3}), up1({i1, i2, i3}), lhs, rhs);
            }
          }
        }
      }
    }
    out.push_back(cmp.take());
  }

  // sigma^2 = 1.
  {
    TensorSquareOp sq = sg * sg;
    TensorSquareOp id = TensorSquareOp::identity(n);
    Comparator cmp("unitarity s^2 = 1");
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          for (std::size_t d = 0; d < n; ++d) {
            cmp.compare(up1({a, b}), up1({c, d}), sq(a, b, c, d), id(a, b, c, d));
          }
        }
      }
    }
    out.push_back(cmp.take());
  }

  // (1 + sigma) C = 0.
  {
    Comparator cmp("(1 + s) C = 0");
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i1 = 0; i1 < n; ++i1) {
        for (std::size_t i2 = 0; i2 < n; ++i2) {
          Scalar lhs = s.C(k, i1, i2);
          for (std::size_t k1 = 0; k1 < n; ++k1) {
            for (std::size_t k2 = 0; k2 < n; ++k2) lhs += sg(k1, k2, i1, i2) * s.C(k, k1, k2);
          }
          cmp.compare(up1({k}), up1({i1, i2}), lhs, Scalar());
        }
      }
    }
    out.push_back(cmp.take());
  }
  return out;
}

std::vector<CheckResult> twist_consistency(const StructureData& s, const TensorSquareOp& phi) {
  const std::size_t n = s.n;
  if (phi.dim() != n) throw InvalidInput("phi dimension does not match the structure data");
  auto [s12, s23] = embed3(s.sigma);
  auto [p12, p23] = embed3(phi);
  std::vector<CheckResult> out;
  out.push_back(compare_ops("s12 p23 p12 = p23 p12 s23", s12 * p23 * p12, p23 * p12 * s23));
  out.push_back(compare_ops("p12 p23 s12 = s23 p12 p23", p12 * p23 * s12, s23 * p12 * p23));
  out.push_back(compare_ops("braid relation p12 p23 p12 = p23 p12 p23", p12 * p23 * p12,
                            p23 * p12 * p23));

  // p12 p23 C12 = C23 p12, with the spectator index carried by delta.
  TensorOp pp = p12 * p23;
  Comparator cmp("p12 p23 C12 = C23 p12");
  for (std::size_t k1 = 0; k1 < n; ++k1) {
    for (std::size_t k2 = 0; k2 < n; ++k2) {
      for (std::size_t i1 = 0; i1 < n; ++i1) {
        for (std::size_t i2 = 0; i2 < n; ++i2) {
          for (std::size_t i3 = 0; i3 < n; ++i3) {
            Scalar lhs;
            for (const auto& [up, x] : pp.row(pp.flat({i1, i2, i3}))) {
              auto m = pp.unflat(up);
              if (m[2] == k2) lhs += x * s.C(k1, m[0], m[1]);
            }
            Scalar rhs;
            for (std::size_t m = 0; m < n; ++m) rhs += s.C(m, i2, i3) * phi(k1, k2, i1, m);
            cmp.compare({k1 + 1, k2 + 1}, {i1 + 1, i2 + 1, i3 + 1}, lhs, rhs);
          }
        }
      }
    }
  }
  out.push_back(cmp.take());
  return out;
}

TensorSquareOp twisted(const TensorSquareOp& f, const TensorSquareOp& r) {
  return f * r * f.inverse();
}

// ----------------------------------------------------------------- XTensors

XTensors::XTensors(std::size_t n_, std::size_t rank_) : n(n_), rank(rank_) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < 2 * rank + 1; ++i) size *= n;
  x.resize(size);
}

std::size_t XTensors::flat(const std::vector<std::size_t>& upper,
                           const std::vector<std::size_t>& lower) const {
  if (upper.size() != rank || lower.size() != rank + 1) throw InvalidInput("X index arity mismatch");
  std::size_t f = 0;
  for (auto i : upper) f = f * n + i;
  for (auto i : lower) f = f * n + i;
  return f;
}

const Scalar& XTensors::at(const std::vector<std::size_t>& upper,
                           const std::vector<std::size_t>& lower) const {
  return x[flat(upper, lower)];
}

Scalar& XTensors::at(const std::vector<std::size_t>& upper, const std::vector<std::size_t>& lower) {
  return x[flat(upper, lower)];
}

bool XTensors::is_zero() const {
  return std::all_of(x.begin(), x.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::vector<XTensors> x_tensors_formula(const TensorSquareOp& r, std::size_t rank) {
  if (rank < 1) throw InvalidInput("rank must be >= 1");
  const StructureData s = structure_of(r);
  const std::size_t dim = r.dim();
  std::vector<XTensors> out;
  for (std::size_t rr = 1; rr <= rank; ++rr) {
    const std::size_t arity = rr + 1;
    // R_k acts on factors (k, k+1), 1-based k = 1..rr.
    std::vector<TensorOp> rk;
    for (std::size_t k = 1; k <= rr; ++k) rk.push_back(TensorOp::embed(r, k - 1, arity));
    const TensorOp id = TensorOp::identity(dim, arity);
    const TensorOp r_last_sq = rk[rr - 1] * rk[rr - 1];
    TensorOp total = id;
    for (std::size_t k = 0; k < rr; ++k) {
      // R_{rr-k} ... R_{rr-1} R_rr^2
      TensorOp chain = id;
      for (std::size_t m = rr - k; m < rr; ++m) chain = chain * rk[m - 1];
      chain = chain * r_last_sq;
      TensorOp factor = (k % 2 == 0) ? id - chain : id + chain;
      total = total * factor;
    }
    const Scalar sign = (rr % 2 == 1) ? Scalar(1) : Scalar(-1);  // (-1)^{r+1}
    XTensors x(s.n, rr);
    for (const auto& lower : multi_indices(s.n, rr + 1)) {
      std::vector<std::size_t> lo(lower.size());
      std::transform(lower.begin(), lower.end(), lo.begin(), [](std::size_t i) { return i + 1; });
      const auto& row = total.row(total.flat(lo));
      for (const auto& [up, val] : row) {
        auto u = total.unflat(up);
        if (u.back() != 0) continue;
        bool inner = std::all_of(u.begin(), u.end() - 1, [](std::size_t i) { return i != 0; });
        if (!inner) continue;
        std::vector<std::size_t> upper;
        for (std::size_t i = 0; i + 1 < u.size(); ++i) upper.push_back(u[i] - 1);
        x.at(upper, lower) = val * sign;
      }
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace qbrst
