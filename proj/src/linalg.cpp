#include "dgla/linalg.hpp"

#include <algorithm>
#include <string>

#include "dgla/errors.hpp"

namespace dgla {

namespace {

std::string shape(const Mat& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

}  // namespace

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Mat m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("ragged matrix literal");
    std::size_t j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

Mat Mat::from_columns(std::size_t rows, const std::vector<Vec>& columns) {
  Mat m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw ShapeError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Vec Mat::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Mat::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Mat Mat::select_columns(std::span<const std::size_t> which) const {
  Mat m(rows_, which.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < which.size(); ++j) m(i, j) = (*this)(i, which[j]);
  return m;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw ShapeError("cannot multiply " + shape(a) + " by " + shape(b));
  Mat c(a.rows_, b.cols_);
  Rational t;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& bkj = b(k, j);
        if (sgn(bkj) == 0) continue;
        t = aik * bkj;
        c(i, j) += t;
      }
    }
  }
  return c;
}

Vec operator*(const Mat& a, const Vec& x) {
  if (a.cols_ != x.size()) throw ShapeError("cannot apply " + shape(a) + " to vector of length " + std::to_string(x.size()));
  Vec y(a.rows_);
  Rational t;
  for (std::size_t k = 0; k < a.cols_; ++k) {
    if (sgn(x[k]) == 0) continue;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      t = aik * x[k];
      y[i] += t;
    }
  }
  return y;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("cannot add " + shape(a) + " and " + shape(b));
  Mat c(a);
  for (std::size_t i = 0; i < c.entries_.size(); ++i) c.entries_[i] += b.entries_[i];
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("cannot subtract " + shape(b) + " from " + shape(a));
  Mat c(a);
  for (std::size_t i = 0; i < c.entries_.size(); ++i) c.entries_[i] -= b.entries_[i];
  return c;
}

Mat operator*(const Rational& s, const Mat& a) {
  Mat c(a);
  for (auto& x : c.entries_) x *= s;
  return c;
}

Mat Mat::hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw ShapeError("hstack of " + shape(a) + " and " + shape(b));
  Mat m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

Mat Mat::vstack(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw ShapeError("vstack of " + shape(a) + " and " + shape(b));
  Mat m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

Mat Mat::block_diag(const Mat& a, const Mat& b) {
  Mat m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

SparseVec to_sparse(const Vec& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) s.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return s;
}

void axpy(Vec& dense, const Rational& s, const SparseVec& x) {
  Rational t;
  for (const auto& [i, xi] : x) {
    t = s * xi;
    dense[i] += t;
  }
}

SparseVec normalize_sparse(SparseVec v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  out.reserve(v.size());
  for (auto& [i, x] : v) {
    if (!out.empty() && out.back().first == i)
      out.back().second += x;
    else
      out.emplace_back(i, std::move(x));
  }
  std::erase_if(out, [](const auto& e) { return sgn(e.second) == 0; });
  return out;
}

Echelon rref(Mat m) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  Rational factor, t;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j)
      if (sgn(m(r, j)) != 0) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (sgn(m(r, j)) == 0) continue;
        t = factor * m(r, j);
        m(i, j) -= t;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return m.rows() < m.cols() ? rref(m.transpose()).pivots.size() : rref(m).pivots.size();
}

Subspace Subspace::zero(std::size_t ambient_dim) { return Subspace(ambient_dim, Mat(ambient_dim, 0)); }

Subspace Subspace::full(std::size_t ambient_dim) { return Subspace(ambient_dim, Mat::identity(ambient_dim)); }

Subspace Subspace::span(std::size_t ambient_dim, const Mat& generators) {
  if (generators.rows() != ambient_dim)
    throw ShapeError("generators have " + std::to_string(generators.rows()) + " rows, ambient dimension is " +
                     std::to_string(ambient_dim));
  auto [reduced, pivots] = rref(generators.transpose());
  Mat basis(ambient_dim, pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k)
    for (std::size_t i = 0; i < ambient_dim; ++i) basis(i, k) = reduced(k, i);
  return Subspace(ambient_dim, std::move(basis));
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vec>& generators) {
  return span(ambient_dim, Mat::from_columns(ambient_dim, generators));
}

Subspace Subspace::from_independent(Mat basis) {
  if (rank(basis) != basis.cols()) throw ShapeError("basis columns are linearly dependent");
  const std::size_t n = basis.rows();
  return Subspace(n, std::move(basis));
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_dim_) throw ShapeError("vector length does not match ambient dimension");
  if (dim() == 0) return dgla::is_zero(v);
  Mat aug = Mat::hstack(basis_, Mat::from_columns(ambient_dim_, {v}));
  return rank(aug) == dim();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw ShapeError("subspaces live in different ambient spaces");
  if (other.dim() == 0) return true;
  return rank(Mat::hstack(basis_, other.basis_)) == dim();
}

Vec Subspace::coordinates(const Vec& v) const {
  if (v.size() != ambient_dim_) throw ShapeError("vector length does not match ambient dimension");
  const std::size_t k = dim();
  Mat aug = Mat::hstack(basis_, Mat::from_columns(ambient_dim_, {v}));
  auto [reduced, pivots] = rref(std::move(aug));
  if (!pivots.empty() && pivots.back() == k) throw ShapeError("vector is not in the subspace");
  Vec coords(k);
  for (std::size_t r = 0; r < pivots.size(); ++r) coords[pivots[r]] = reduced(r, k);
  return coords;
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_dim_ == b.ambient_dim_ && a.dim() == b.dim() && a.contains(b);
}

Subspace kernel_basis(const Mat& m) {
  const std::size_t n = m.cols();
  auto [reduced, pivots] = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> vectors;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec v(n);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -reduced(r, f);
    vectors.push_back(std::move(v));
  }
  return Subspace::from_independent(Mat::from_columns(n, vectors));
}

Subspace image(const Mat& m) { return Subspace::span(m.rows(), m); }

QuotientData quotient_data(std::size_t ambient_dim, const Subspace& s) {
  if (s.ambient_dim() != ambient_dim)
    throw ShapeError("subspace lives in dimension " + std::to_string(s.ambient_dim()) + ", expected " +
                     std::to_string(ambient_dim));
  // Rows of the reduced echelon form of s^T: row t has a 1 at pivot p_t and 0
  // at every other pivot, so x - sum_t x[p_t] row_t vanishes on all pivots.
  auto [reduced, pivots] = rref(s.basis().transpose());
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < ambient_dim; ++j)
    if (!is_pivot[j]) free.push_back(j);

  Mat complement(ambient_dim, free.size());
  Mat projection(free.size(), ambient_dim);
  for (std::size_t c = 0; c < free.size(); ++c) {
    const std::size_t j = free[c];
    complement(j, c) = 1;
    projection(c, j) = 1;
    for (std::size_t t = 0; t < pivots.size(); ++t) projection(c, pivots[t]) = -reduced(t, j);
  }
  return {Subspace::from_independent(std::move(complement)), std::move(projection)};
}

std::size_t cohomology_dim(const Mat& d_in, const Mat& d_out) {
  if (d_out.cols() != d_in.rows())
    throw ShapeError("differentials " + shape(d_in) + " and " + shape(d_out) + " are not composable");
  if (!(d_out * d_in).is_zero()) throw ComplexError("d_out * d_in is not zero");
  const std::size_t n = d_in.rows();
  return n - rank(d_out) - rank(d_in);
}

CochainComplex::CochainComplex(int lo, std::vector<std::size_t> dims, std::vector<Mat> differentials)
    : lo_(lo), dims_(std::move(dims)), d_(std::move(differentials)) {
  if (dims_.empty()) throw ShapeError("cochain complex needs at least one degree");
  if (d_.size() + 1 != dims_.size()) throw ShapeError("expected one differential between consecutive degrees");
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (d_[i].cols() != dims_[i] || d_[i].rows() != dims_[i + 1])
      throw ShapeError("differential out of degree " + std::to_string(lo_ + static_cast<int>(i)) + " has shape " +
                       shape(d_[i]));
    if (i > 0 && !(d_[i] * d_[i - 1]).is_zero())
      throw ComplexError("d^2 != 0 at degree " + std::to_string(lo_ + static_cast<int>(i)));
  }
}

std::size_t CochainComplex::dim(int k) const {
  if (k < lo_ || k > max_degree()) return 0;
  return dims_[static_cast<std::size_t>(k - lo_)];
}

const Mat& CochainComplex::differential(int k) const {
  if (k < lo_ || k >= max_degree()) throw ShapeError("no differential out of degree " + std::to_string(k));
  return d_[static_cast<std::size_t>(k - lo_)];
}

std::size_t CochainComplex::cocycle_dim(int k) const { return dim(k) - rank(differential(k)); }

std::size_t CochainComplex::coboundary_dim(int k) const {
  if (k <= lo_) return 0;
  return rank(differential(k - 1));
}

std::size_t CochainComplex::cohomology(int k) const { return cocycle_dim(k) - coboundary_dim(k); }

}  // namespace dgla
