#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "dgla/rational.hpp"

namespace dgla {

/// Dense row-major matrix over Q.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static Mat identity(std::size_t n);
  static Mat from_rows(std::initializer_list<std::initializer_list<Rational>> rows);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Mat from_columns(std::size_t rows, const std::vector<Vec>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  std::span<Rational> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  Vec column(std::size_t c) const;

  Mat transpose() const;
  bool is_zero() const;

  /// Selects the listed columns, in order.
  Mat select_columns(std::span<const std::size_t> which) const;

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Vec operator*(const Mat& a, const Vec& x);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend Mat operator*(const Rational& s, const Mat& a);
  friend bool operator==(const Mat& a, const Mat& b) = default;

  /// [a | b]
  static Mat hstack(const Mat& a, const Mat& b);
  /// [a ; b]
  static Mat vstack(const Mat& a, const Mat& b);
  /// Block diagonal diag(a, b).
  static Mat block_diag(const Mat& a, const Mat& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Sparse vector: strictly increasing indices, no stored zeros.
using SparseVec = std::vector<std::pair<std::uint32_t, Rational>>;

SparseVec to_sparse(const Vec& v);
/// dense += s * sparse
void axpy(Vec& dense, const Rational& s, const SparseVec& x);
/// Sums duplicate indices and drops zeros.
SparseVec normalize_sparse(SparseVec v);

struct Echelon {
  Mat reduced;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination. Pivot = first nonzero entry (top to bottom) in
/// the leftmost column that still has one.
Echelon rref(Mat m);
std::size_t rank(const Mat& m);

/// Subspace of Q^n stored as a matrix with linearly independent columns.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);
  /// Column span of `generators`, reduced to the canonical basis read off the
  /// reduced row echelon form of the transpose.
  static Subspace span(std::size_t ambient_dim, const Mat& generators);
  static Subspace span(std::size_t ambient_dim, const std::vector<Vec>& generators);
  /// Takes the columns as given; throws if they are dependent.
  static Subspace from_independent(Mat basis);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.cols(); }
  const Mat& basis() const { return basis_; }
  Vec basis_vector(std::size_t i) const { return basis_.column(i); }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the stored basis; throws if v is not in the span.
  Vec coordinates(const Vec& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  Subspace(std::size_t ambient_dim, Mat basis) : ambient_dim_(ambient_dim), basis_(std::move(basis)) {}

  std::size_t ambient_dim_ = 0;
  Mat basis_;
};

Subspace kernel_basis(const Mat& m);
/// Column space.
Subspace image(const Mat& m);

/// A splitting of the quotient ambient / s.
struct QuotientData {
  /// Spanned by the standard basis vectors at the non-pivot coordinates of s.
  Subspace complement;
  /// ambient -> coordinates on complement, vanishing on s.
  Mat projection;
};

QuotientData quotient_data(std::size_t ambient_dim, const Subspace& s);

/// dim ker(d_out) - rank(d_in), after checking d_out * d_in == 0.
std::size_t cohomology_dim(const Mat& d_in, const Mat& d_out);

/// Finite cochain complex C^lo -> ... -> C^hi with C^{lo-1} = 0. The top
/// degree is a truncation, so cohomology there is not defined.
class CochainComplex {
 public:
  CochainComplex() = default;
  /// differentials[i] : C^{lo+i} -> C^{lo+i+1}; validated for shape and d^2 = 0.
  CochainComplex(int lo, std::vector<std::size_t> dims, std::vector<Mat> differentials);

  int min_degree() const { return lo_; }
  int max_degree() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int k) const;
  const Mat& differential(int k) const;
  std::size_t cocycle_dim(int k) const;
  std::size_t coboundary_dim(int k) const;
  std::size_t cohomology(int k) const;

 private:
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<Mat> d_;
};

}  // namespace dgla
