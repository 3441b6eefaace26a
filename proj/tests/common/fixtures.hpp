#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "dgla/assoc.hpp"
#include "dgla/lie.hpp"
#include "dgla/linalg.hpp"
#include "dgla/rational.hpp"

namespace dgla::testing {

using Entry = std::tuple<std::size_t, std::size_t, std::size_t, int>;

/// Lie algebra from brackets [e_i, e_j] += v e_k for i < j.
inline LieAlgebra lie(std::size_t n, const std::vector<Entry>& entries, std::string name = {}) {
  Vec c(n * n * n);
  for (const auto& [i, j, k, v] : entries) {
    c[(i * n + j) * n + k] += v;
    c[(j * n + i) * n + k] -= v;
  }
  return LieAlgebra::create(n, std::move(c), std::move(name));
}

inline LieAlgebra so3() { return lie(3, {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}}, "so3"); }
// basis h, e, f
inline LieAlgebra sl2() { return lie(3, {{0, 1, 1, 2}, {0, 2, 2, -2}, {1, 2, 0, 1}}, "sl2"); }
inline LieAlgebra aff1() { return lie(2, {{0, 1, 1, 1}}, "aff1"); }
inline LieAlgebra heisenberg3() { return lie(3, {{0, 1, 2, 1}}, "heisenberg3"); }

/// Columns are the flattened (row-major) matrices L_i with (L_i)_{jk} = -eps_{ijk}.
inline Mat so3_in_gl3_matrix() {
  Mat f(9, 3);
  auto eps = [](std::size_t i, std::size_t j, std::size_t k) -> int {
    if (i == j || j == k || i == k) return 0;
    return ((j + 3 - i) % 3 == 1) ? 1 : -1;
  };
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) f(j * 3 + k, i) = -eps(i, j, k);
  return f;
}

inline Rational small_rational(std::mt19937_64& rng, int range = 2) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, 2);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline Vec random_vec(std::mt19937_64& rng, std::size_t n, int range = 2) {
  Vec v(n);
  for (auto& x : v) x = small_rational(rng, range);
  return v;
}

inline Mat random_mat(std::mt19937_64& rng, std::size_t r, std::size_t c, int range = 2) {
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = small_rational(rng, range);
  return m;
}

inline Mat random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    Mat m = random_mat(rng, n, n);
    if (rank(m) == n) return m;
  }
}

inline Mat inverse(const Mat& m) {
  const std::size_t n = m.rows();
  Echelon e = rref(Mat::hstack(m, Mat::identity(n)));
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}


/// Basis 1, x with x^2 = 0.
inline AssocAlgebra dual_numbers() {
  Vec c(8);
  c[(0 * 2 + 0) * 2 + 0] = 1;
  c[(0 * 2 + 1) * 2 + 1] = 1;
  c[(1 * 2 + 0) * 2 + 1] = 1;
  return AssocAlgebra::create(2, c, Vec{1, 0}, "dual_numbers");
}

inline AssocAlgebra ground_field() { return AssocAlgebra::create(1, Vec{1}, Vec{1}, "K"); }

/// Q[x]/(x^3), basis 1, x, x^2.
inline AssocAlgebra truncated_poly3() {
  Vec c(27);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; i + j < 3; ++j) c[(i * 3 + j) * 3 + i + j] = 1;
  return AssocAlgebra::create(3, c, Vec{1, 0, 0}, "K[x]/x^3");
}

/// Upper triangular 2x2 matrices, basis E00, E01, E11.
inline AssocAlgebra upper_triangular2() {
  Vec c(27);
  c[(0 * 3 + 0) * 3 + 0] = 1;
  c[(0 * 3 + 1) * 3 + 1] = 1;
  c[(1 * 3 + 2) * 3 + 1] = 1;
  c[(2 * 3 + 2) * 3 + 2] = 1;
  return AssocAlgebra::create(3, c, Vec{1, 0, 1}, "T2");
}

/// K x K, basis the two idempotents.
inline AssocAlgebra split2() {
  Vec c(8);
  c[0] = 1;
  c[(1 * 2 + 1) * 2 + 1] = 1;
  return AssocAlgebra::create(2, c, Vec{1, 1}, "KxK");
}

/// m'(x, y) = p^{-1} m(p x, p y) with unit p^{-1} u.
inline AssocAlgebra transport(const AssocAlgebra& a, const Mat& p) {
  const std::size_t n = a.dim();
  const Mat pi = inverse(p);
  Vec c(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec v = pi * a.multiply(p.column(i), p.column(j));
      for (std::size_t k = 0; k < n; ++k) c[(i * n + j) * n + k] = v[k];
    }
  std::optional<Vec> u;
  if (a.unit()) u = pi * *a.unit();
  return AssocAlgebra::create(n, c, u, a.name() + "'");
}

/// Random invertible p with p u = u.
inline Mat random_fixing(std::mt19937_64& rng, const Vec& u) {
  const std::size_t n = u.size();
  std::size_t piv = 0;
  while (sgn(u[piv]) == 0) ++piv;
  for (;;) {
    Mat b = random_mat(rng, n, n);
    // kill u: b <- b - (b u) e_piv^T / u_piv
    const Vec bu = b * u;
    for (std::size_t r = 0; r < n; ++r) b(r, piv) -= bu[r] / u[piv];
    Mat p = Mat::identity(n) + b;
    if (rank(p) == n) return p;
  }
}

}  // namespace dgla::testing
