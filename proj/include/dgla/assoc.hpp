#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include "dgla/dgla.hpp"
#include "dgla/lie.hpp"
#include "dgla/linalg.hpp"
#include "dgla/multilinear.hpp"

namespace dgla {

/// Associative algebra (V, m), m(e_i, e_j) = sum_k m[i][j][k] e_k, with an
/// optional unit.
class AssocAlgebra {
 public:
  AssocAlgebra() = default;

  /// constants[(i * n + j) * n + k] = m[i][j][k]. Checks associativity on all
  /// basis triples and, if given, that `unit` is a two-sided unit.
  static AssocAlgebra create(std::size_t n, Vec constants, std::optional<Vec> unit = std::nullopt,
                             std::string name = {});
  /// From a tensor arity-2 map V x V -> V.
  static AssocAlgebra from_map(const MultiMap& m, std::optional<Vec> unit = std::nullopt, std::string name = {});
  /// M_r(Q); basis E_ij at index i * r + j, unit the identity matrix.
  static AssocAlgebra matrix_algebra(std::size_t r);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return n_; }
  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
  const Vec& constants() const { return c_; }
  const std::optional<Vec>& unit() const { return unit_; }

  Vec multiply(const Vec& x, const Vec& y) const;
  /// m as a tensor arity-2 map; its flattening is m as an element of the
  /// degree-1 part of the Gerstenhaber algebra.
  MultiMap structure_map() const;

 private:
  std::size_t n_ = 0;
  Vec c_;
  std::optional<Vec> unit_;
  std::string name_;
};

/// First basis triple (i, j, k) on which the associator of c is nonzero.
std::optional<std::array<std::size_t, 3>> associativity_failure(std::size_t n, const Vec& constants);

/// Gerstenhaber bracket of basis elements of g^k = (V*)^{(x)(k+1)} (x) V.
SparseVec gerstenhaber_basis_bracket(std::size_t n, int k, std::size_t a, int l, std::size_t b);

/// [f, g] = f o g - (-1)^{kl} g o f with
/// f o g = sum_i (-1)^{il} f(x_0, .., g(x_i, .., x_{i+l}), ..).
/// With this convention 1/2 [m, m] is the associator m(m(x,y),z) - m(x,m(y,z)).
MultiMap gerstenhaber_bracket(const MultiMap& a, const MultiMap& b);

/// ((V*)^{(x)(*+1)} (x) V, 0, [-,-]_G) on the degree window [lo, hi].
Dgla g_dgla(std::size_t n, int lo = -1, int hi = 3);

/// Associativity on basis triples vs. [m, m]_G = 0.
TwoRouteCheck assoc_check(const MultiMap& m);
/// Both routes of assoc_check; throws std::logic_error if they disagree.
bool is_assoc(const MultiMap& m);

/// Hochschild complex ((V*)^{(x)k} (x) V, d_H) for k = 0..max_degree with
/// coefficients in the bimodule V:
/// d f(x_1..x_{k+1}) = x_1 f(x_2..) + sum_i (-1)^i f(.., x_i x_{i+1}, ..)
///                   + (-1)^{k+1} f(x_1..x_k) x_{k+1}.
CochainComplex hochschild_complex(const AssocAlgebra& algebra, int max_degree = 3);

/// [m, -]_G on Gerstenhaber degree l equals (-1)^l d_H on Hochschild degree l + 1.
int g_hochschild_sign(int g_degree);

/// Entry-wise comparison of the twisted Gerstenhaber differentials with d_H
/// (after the degree sign above).
bool bimodule_twist_agreement(const AssocAlgebra& algebra);

/// H^2_H(V, V) = 0 implies rigidity; tangent data is Der(V, m).
Verdict assoc_rigidity(const AssocAlgebra& algebra);

/// The Gerstenhaber DGLA twisted by m (window [-1, 3]), shared by the
/// unitality constructions.
Dgla twisted_g_dgla(const AssocAlgebra& algebra);

/// Cochains vanishing whenever an argument is the unit, as the image of the
/// pullback along V -> V / Q u. `twisted` must come from twisted_g_dgla.
DglaSub normalized_subcomplex(const Dgla& twisted, const AssocAlgebra& algebra);

/// H^0 and H^1 of the quotient by the normalized subcomplex; both vanishing
/// means every nearby associative structure is unital after a gauge.
Verdict unitality_stability(const AssocAlgebra& algebra);

}  // namespace dgla
