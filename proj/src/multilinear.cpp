#include "dgla/multilinear.hpp"

#include <algorithm>
#include <string>

#include "dgla/errors.hpp"

namespace dgla {

namespace {

// Determinant of a small square matrix by elimination.
Rational small_det(std::vector<Vec> rows) {
  const std::size_t k = rows.size();
  Rational det = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (p < k && sgn(rows[p][c]) == 0) ++p;
    if (p == k) return 0;
    if (p != c) {
      std::swap(rows[p], rows[c]);
      det = -det;
    }
    det *= rows[c][c];
    for (std::size_t r = c + 1; r < k; ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      const Rational f = rows[r][c] / rows[c][c];
      for (std::size_t j = c; j < k; ++j) rows[r][j] -= f * rows[c][j];
    }
  }
  return det;
}

void require_compatible(const MultiMap& a, const MultiMap& b, const char* op) {
  if (a.flavor() != b.flavor() || a.arity() != b.arity() || a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out())
    throw ShapeError(std::string("incompatible multilinear maps in ") + op);
}

}  // namespace

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int sort_with_sign(std::vector<std::uint32_t>& idx) {
  int sign = 1;
  // Insertion sort; tuples are short.
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

TupleBasis::TupleBasis(Flavor flavor, std::size_t arity, std::size_t n) : flavor_(flavor), arity_(arity), n_(n) {
  if (flavor == Flavor::alternating) {
    count_ = binomial(n, arity);
    tuples_.reserve(count_ * arity);
    if (count_ == 0) return;
    std::vector<std::uint32_t> t(arity);
    for (std::size_t i = 0; i < arity; ++i) t[i] = static_cast<std::uint32_t>(i);
    for (std::size_t c = 0; c < count_; ++c) {
      tuples_.insert(tuples_.end(), t.begin(), t.end());
      // Next combination in lexicographic order.
      std::size_t i = arity;
      while (i > 0 && t[i - 1] == n - arity + i - 1) --i;
      if (i == 0) break;
      ++t[i - 1];
      for (std::size_t j = i; j < arity; ++j) t[j] = t[j - 1] + 1;
    }
  } else {
    count_ = 1;
    for (std::size_t i = 0; i < arity; ++i) count_ *= n;
    tuples_.reserve(count_ * arity);
    std::vector<std::uint32_t> t(arity, 0);
    for (std::size_t c = 0; c < count_; ++c) {
      tuples_.insert(tuples_.end(), t.begin(), t.end());
      for (std::size_t i = arity; i > 0; --i) {
        if (++t[i - 1] < n) break;
        t[i - 1] = 0;
      }
    }
  }
}

std::size_t TupleBasis::index_of(std::span<const std::uint32_t> t) const {
  if (t.size() != arity_) throw ShapeError("tuple length does not match arity");
  std::size_t rank = 0;
  if (flavor_ == Flavor::tensor) {
    for (auto i : t) {
      if (i >= n_) throw ShapeError("index out of range");
      rank = rank * n_ + i;
    }
    return rank;
  }
  std::size_t next = 0;
  for (std::size_t pos = 0; pos < arity_; ++pos) {
    if (t[pos] >= n_ || t[pos] < next) throw ShapeError("alternating tuple must be strictly increasing and in range");
    for (std::size_t j = next; j < t[pos]; ++j) rank += binomial(n_ - 1 - j, arity_ - 1 - pos);
    next = t[pos] + 1;
  }
  return rank;
}

MultiMap::MultiMap(Flavor flavor, std::size_t arity, std::size_t dim_in, std::size_t dim_out)
    : basis_(flavor, arity, dim_in), dim_out_(dim_out), coeffs_(basis_.size() * dim_out) {}

MultiMap MultiMap::unflatten(Flavor flavor, std::size_t arity, std::size_t dim_in, std::size_t dim_out, Vec coords) {
  MultiMap m(flavor, arity, dim_in, dim_out);
  if (coords.size() != m.coeffs_.size())
    throw ShapeError("expected " + std::to_string(m.coeffs_.size()) + " coordinates, got " +
                     std::to_string(coords.size()));
  m.coeffs_ = std::move(coords);
  return m;
}

MultiMap MultiMap::basis_form(std::size_t dim_in, std::span<const std::uint32_t> indices) {
  MultiMap m(Flavor::alternating, indices.size(), dim_in, 1);
  std::vector<std::uint32_t> t(indices.begin(), indices.end());
  const int s = sort_with_sign(t);
  if (s != 0) m.coeff(m.basis_.index_of(t), 0) = s;
  return m;
}

Vec MultiMap::value_on(std::span<const std::uint32_t> t) const {
  Vec out(dim_out_);
  std::vector<std::uint32_t> sorted(t.begin(), t.end());
  int s = 1;
  if (flavor() == Flavor::alternating) {
    s = sort_with_sign(sorted);
    if (s == 0) return out;
  }
  const std::size_t idx = basis_.index_of(sorted);
  for (std::size_t o = 0; o < dim_out_; ++o) out[o] = s * coeff(idx, o);
  return out;
}

void MultiMap::add_value(std::span<const std::uint32_t> t, const Vec& delta) {
  std::vector<std::uint32_t> sorted(t.begin(), t.end());
  int s = 1;
  if (flavor() == Flavor::alternating) {
    s = sort_with_sign(sorted);
    if (s == 0) return;
  }
  const std::size_t idx = basis_.index_of(sorted);
  for (std::size_t o = 0; o < dim_out_; ++o) coeff(idx, o) += s * delta[o];
}

Vec MultiMap::eval(std::span<const Vec> args) const {
  if (args.size() != arity()) throw ShapeError("expected " + std::to_string(arity()) + " arguments");
  for (const auto& a : args)
    if (a.size() != dim_in()) throw ShapeError("argument length does not match input dimension");
  Vec out(dim_out_);
  const std::size_t k = arity();
  for (std::size_t t = 0; t < basis_.size(); ++t) {
    bool any = false;
    for (std::size_t o = 0; o < dim_out_ && !any; ++o) any = sgn(coeff(t, o)) != 0;
    if (!any) continue;
    const auto tuple = basis_.tuple(t);
    Rational weight;
    if (flavor() == Flavor::tensor) {
      weight = 1;
      for (std::size_t s = 0; s < k; ++s) weight *= args[s][tuple[s]];
    } else {
      std::vector<Vec> minor(k, Vec(k));
      for (std::size_t s = 0; s < k; ++s)
        for (std::size_t r = 0; r < k; ++r) minor[s][r] = args[s][tuple[r]];
      weight = small_det(std::move(minor));
    }
    if (sgn(weight) == 0) continue;
    for (std::size_t o = 0; o < dim_out_; ++o) out[o] += weight * coeff(t, o);
  }
  return out;
}

MultiMap MultiMap::insert(const Vec& v) const {
  if (arity() == 0) throw ShapeError("cannot insert into an arity-0 map");
  if (v.size() != dim_in()) throw ShapeError("inserted vector has wrong length");
  MultiMap r(flavor(), arity() - 1, dim_in(), dim_out_);
  std::vector<std::uint32_t> rest;
  for (std::size_t t = 0; t < basis_.size(); ++t) {
    const auto tuple = basis_.tuple(t);
    if (flavor() == Flavor::tensor) {
      const Rational& vi = v[tuple[0]];
      if (sgn(vi) == 0) continue;
      rest.assign(tuple.begin() + 1, tuple.end());
      const std::size_t j = r.basis_.index_of(rest);
      for (std::size_t o = 0; o < dim_out_; ++o) r.coeff(j, o) += vi * coeff(t, o);
      continue;
    }
    // m(e_i, e_J) = (-1)^p m(e_I) when i sits at position p of I.
    for (std::size_t p = 0; p < tuple.size(); ++p) {
      const Rational& vi = v[tuple[p]];
      if (sgn(vi) == 0) continue;
      rest.assign(tuple.begin(), tuple.end());
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
      const std::size_t j = r.basis_.index_of(rest);
      const Rational w = (p % 2 == 0) ? Rational(vi) : Rational(-vi);
      for (std::size_t o = 0; o < dim_out_; ++o) r.coeff(j, o) += w * coeff(t, o);
    }
  }
  return r;
}

MultiMap MultiMap::pullback(const Mat& p) const {
  if (p.rows() != dim_in())
    throw ShapeError("pullback matrix has " + std::to_string(p.rows()) + " rows, expected " + std::to_string(dim_in()));
  MultiMap r(flavor(), arity(), p.cols(), dim_out_);
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < p.cols(); ++j) cols.push_back(p.column(j));
  std::vector<Vec> args(arity());
  for (std::size_t t = 0; t < r.basis_.size(); ++t) {
    const auto tuple = r.basis_.tuple(t);
    for (std::size_t s = 0; s < arity(); ++s) args[s] = cols[tuple[s]];
    const Vec value = eval(args);
    for (std::size_t o = 0; o < dim_out_; ++o) r.coeff(t, o) = value[o];
  }
  return r;
}

MultiMap MultiMap::post_compose(const Mat& a) const {
  if (a.cols() != dim_out_) throw ShapeError("output map has wrong number of columns");
  MultiMap r(flavor(), arity(), dim_in(), a.rows());
  Vec row(dim_out_);
  for (std::size_t t = 0; t < basis_.size(); ++t) {
    for (std::size_t o = 0; o < dim_out_; ++o) row[o] = coeff(t, o);
    const Vec y = a * row;
    for (std::size_t o = 0; o < a.rows(); ++o) r.coeff(t, o) = y[o];
  }
  return r;
}

MultiMap operator+(const MultiMap& a, const MultiMap& b) {
  require_compatible(a, b, "sum");
  MultiMap r(a);
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
  return r;
}

MultiMap operator-(const MultiMap& a, const MultiMap& b) {
  require_compatible(a, b, "difference");
  MultiMap r(a);
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
  return r;
}

MultiMap operator*(const Rational& s, const MultiMap& a) {
  MultiMap r(a);
  for (auto& x : r.coeffs_) x *= s;
  return r;
}

bool operator==(const MultiMap& a, const MultiMap& b) {
  return a.flavor() == b.flavor() && a.arity() == b.arity() && a.dim_in() == b.dim_in() &&
         a.dim_out() == b.dim_out() && a.coeffs_ == b.coeffs_;
}

MultiMap wedge(const MultiMap& a, const MultiMap& b) {
  if (a.flavor() != Flavor::alternating || b.flavor() != Flavor::alternating)
    throw ShapeError("wedge needs alternating operands");
  if (a.dim_out() != 1) throw ShapeError("left wedge factor must be scalar valued");
  if (a.dim_in() != b.dim_in()) throw ShapeError("wedge factors live on different spaces");
  MultiMap r(Flavor::alternating, a.arity() + b.arity(), a.dim_in(), b.dim_out());
  std::vector<std::uint32_t> merged;
  for (std::size_t i = 0; i < a.tuples().size(); ++i) {
    const Rational& ai = a.coeff(i, 0);
    if (sgn(ai) == 0) continue;
    for (std::size_t j = 0; j < b.tuples().size(); ++j) {
      const auto ti = a.tuples().tuple(i);
      const auto tj = b.tuples().tuple(j);
      merged.assign(ti.begin(), ti.end());
      merged.insert(merged.end(), tj.begin(), tj.end());
      const int s = sort_with_sign(merged);
      if (s == 0) continue;
      const std::size_t k = r.tuples().index_of(merged);
      for (std::size_t o = 0; o < b.dim_out(); ++o) {
        const Rational& bj = b.coeff(j, o);
        if (sgn(bj) == 0) continue;
        r.coeff(k, o) += s * ai * bj;
      }
    }
  }
  return r;
}

}  // namespace dgla
