#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dgla/dgla.hpp"
#include "dgla/linalg.hpp"
#include "dgla/multilinear.hpp"

namespace dgla {

/// Lie algebra (V, mu) given by structure constants
/// mu(e_i, e_j) = sum_k c[i][j][k] e_k.
class LieAlgebra {
 public:
  LieAlgebra() = default;

  /// constants[(i * n + j) * n + k] = c[i][j][k]. Checks antisymmetry and the
  /// Jacobi identity on all basis triples i < j < k.
  static LieAlgebra create(std::size_t n, Vec constants, std::string name = {});
  /// From an alternating arity-2 map V x V -> V.
  static LieAlgebra from_map(const MultiMap& mu, std::string name = {});
  static LieAlgebra abelian(std::size_t n);
  /// End(Q^n) with the commutator; basis E_ij at index i * n + j.
  static LieAlgebra gl(std::size_t n);
  /// (V + W, mu + nu).
  static LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return n_; }
  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
  const Vec& constants() const { return c_; }

  Vec bracket(const Vec& x, const Vec& y) const;
  /// Matrix of ad_x = mu(x, -).
  Mat ad(const Vec& x) const;
  /// mu as an alternating arity-2 map; its flattening is mu as an element of
  /// the degree-1 part of the Nijenhuis-Richardson algebra.
  MultiMap structure_map() const;
  /// Bracket restricted to a subalgebra, in the coordinates of w's basis.
  LieAlgebra restrict_to(const Subspace& w) const;
  bool is_subalgebra(const Subspace& w) const;

 private:
  std::size_t n_ = 0;
  Vec c_;
  std::string name_;
};

/// First basis triple i < j < k on which the Jacobiator of c is nonzero.
std::optional<std::array<std::size_t, 3>> jacobi_failure(std::size_t n, const Vec& constants);

/// Representation rho : V -> End(W).
class Representation {
 public:
  Representation() = default;

  /// Checks rho(mu(e_i, e_j)) = [rho(e_i), rho(e_j)] on all basis pairs.
  static Representation create(const LieAlgebra& algebra, std::vector<Mat> actions);
  static Representation adjoint(const LieAlgebra& algebra);
  static Representation trivial(const LieAlgebra& algebra, std::size_t module_dim);

  std::size_t algebra_dim() const { return actions_.size(); }
  std::size_t dim() const { return dim_; }
  const Mat& action(std::size_t i) const { return actions_[i]; }
  Mat action_of(const Vec& x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Mat> actions_;
};

/// Nijenhuis-Richardson bracket of basis elements of
/// g^k = wedge^{k+1} V* (x) V (flat index = tuple_index * n + output).
SparseVec nr_basis_bracket(std::size_t n, int k, std::size_t a, int l, std::size_t b);

/// [a (x) v, b (x) w] = b ^ i_w(a) (x) v - (-1)^{kl} a ^ i_v(b) (x) w, extended
/// bilinearly; the degree of an arity-(k+1) map is k.
MultiMap nr_bracket(const MultiMap& a, const MultiMap& b);

/// (wedge^{*+1} V* (x) V, 0, [-,-]_NR) on the degree window [lo, hi].
Dgla nr_dgla(std::size_t n, int lo = -1, int hi = 3);

/// Outcome of a structure test computed along two independent routes.
struct TwoRouteCheck {
  /// Identity checked directly on basis triples.
  bool direct = false;
  /// Maurer-Cartan equation in the controlling graded Lie algebra.
  bool maurer_cartan = false;
  bool agree() const { return direct == maurer_cartan; }
};

/// Jacobi on basis triples vs. [mu, mu]_NR = 0 for an antisymmetric mu.
TwoRouteCheck lie_check(const MultiMap& mu);
/// Both routes of lie_check; throws std::logic_error if they disagree.
bool is_lie(const MultiMap& mu);

/// Chevalley-Eilenberg complex (wedge^k V* (x) W, d) for k = 0..max_degree:
/// d a(x_0..x_k) = sum_i (-1)^i rho(x_i) a(..^x_i..)
///               + sum_{i<j} (-1)^{i+j} a([x_i, x_j], ..^x_i..^x_j..).
CochainComplex ce_complex(const LieAlgebra& algebra, const Representation& rho, int max_degree = 3);

/// Sign relating [mu, -]_NR on NR degree k to the Chevalley-Eilenberg
/// differential on CE degree k + 1: [mu, -] = (-1)^k d_CE.
int nr_ce_sign(int nr_degree);

/// Entry-wise comparison of the twisted NR differentials with the adjoint CE
/// differentials (after the degree sign above).
bool adjoint_twist_agreement(const LieAlgebra& algebra);

/// H^2_CE(V, V) = 0 implies rigidity; tangent data is Der(V, mu).
Verdict lie_rigidity(const LieAlgebra& algebra);

}  // namespace dgla
