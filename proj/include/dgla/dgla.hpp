#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dgla/linalg.hpp"
#include "dgla/rational.hpp"

namespace dgla {

/// Structure map on basis vectors: [e_a, e_b] for e_a of degree i and e_b of
/// degree j, as a sparse vector of degree i + j.
using BasisBracket = std::function<SparseVec(int i, std::size_t a, int j, std::size_t b)>;

/// Finite-dimensional differential graded Lie algebra over Q on a degree
/// window [lo, hi]; everything outside the window is treated as zero below
/// and as truncated above.
///
/// Construction checks d^2 = 0, graded skew-symmetry, the graded Leibniz rule
/// and the graded Jacobi identity on every basis tuple whose degrees stay in
/// the window, and throws InvariantViolation naming the first failing tuple.
/// Instances are immutable and share their tables, so copies are cheap.
class Dgla {
 public:
  Dgla() = default;

  static Dgla create(std::string name, int lo, std::vector<std::size_t> dims, std::vector<Mat> differentials,
                     const BasisBracket& bracket);

  /// The DGLA (g, d + [q, -], [-, -]) for a Maurer-Cartan element q.
  Dgla twisted(const Vec& q, std::string name = {}) const;

  /// Componentwise differential and bracket; cross brackets vanish.
  static Dgla direct_sum(const Dgla& a, const Dgla& b, std::string name = {});

  /// Re-runs the construction checks; throws InvariantViolation.
  void verify() const;

  const std::string& name() const;
  int min_degree() const;
  int max_degree() const;
  bool has_degree(int k) const { return k >= min_degree() && k <= max_degree(); }
  std::size_t dim(int k) const;

  /// d : g^k -> g^{k+1}, defined for min_degree() <= k < max_degree().
  const Mat& differential(int k) const;
  Vec apply_differential(int k, const Vec& x) const;

  const SparseVec& basis_bracket(int i, std::size_t a, int j, std::size_t b) const;
  Vec bracket(int i, const Vec& x, int j, const Vec& y) const;
  /// Matrix of [x, -] : g^j -> g^{i+j} for x in g^i.
  Mat bracket_matrix(int i, const Vec& x, int j) const;

 private:
  struct State;
  explicit Dgla(std::shared_ptr<const State> state) : state_(std::move(state)) {}
  void validate_differential() const;
  void validate_bracket() const;

  std::shared_ptr<const State> state_;
};

/// d q + 1/2 [q, q]
Vec mc_curvature(const Dgla& g, const Vec& q);
bool is_maurer_cartan(const Dgla& g, const Vec& q);

/// Matrices of d + [q, -] on every degree with an outgoing differential,
/// indexed from min_degree(). Throws NotMaurerCartan unless q is MC.
std::vector<Mat> twist(const Dgla& g, const Vec& q);

/// Graded subspace closed under d and the bracket, with a fixed splitting of
/// each quotient g^k / h^k.
class DglaSub {
 public:
  DglaSub() = default;

  /// One subspace per degree of the parent window; closure is verified.
  static DglaSub create(Dgla parent, std::vector<Subspace> spaces);
  static DglaSub zero(const Dgla& parent);
  static DglaSub full(const Dgla& parent);

  const Dgla& parent() const { return parent_; }
  const Subspace& space(int k) const;
  const QuotientData& splitting(int k) const;
  std::size_t codim(int k) const;
  bool contains(int k, const Vec& x) const;

 private:
  Dgla parent_;
  std::vector<Subspace> spaces_;
  std::vector<QuotientData> splittings_;
};

/// Induced differentials of d + [q, -] on g/h, expressed in the complement
/// coordinates of the stored splittings. q must lie in h^1 and be MC.
CochainComplex quotient_complex(const Dgla& g, const DglaSub& h, const Vec& q);

/// Outcome of a cohomological rigidity/stability criterion.
struct Verdict {
  std::string criterion;
  /// Human-readable name of the obstruction group, e.g. "H^2_CE(V,V)".
  std::string obstruction;
  /// Cohomology dimensions of the reported complex, keyed by degree.
  std::map<int, std::size_t> cohomology_dims;
  int obstruction_degree = 1;
  /// dim ker of the degree-0 quotient differential.
  std::size_t tangent_dim = 0;
  bool passes = false;
  /// False when an independent second computation disagreed.
  bool routes_agree = true;
  /// What a passing criterion lets one conclude ("rigid", "stable", ...).
  std::string success_label = "stable";

  std::size_t obstruction_dim() const { return cohomology_dims.at(obstruction_degree); }
  /// The theorems only go one way, so failure is never reported as instability.
  std::string conclusion() const { return passes ? success_label : "criterion inconclusive"; }
};

/// H^0 and H^1 of (g/h, d + [q, -]); passes iff H^1 = 0.
Verdict stability_criterion(const Dgla& g, const DglaSub& h, const Vec& q);

/// Builds a verdict from a quotient complex, relabelling DGLA degree k as
/// k + shift and reporting the given labels; tangent_dim is taken in DGLA
/// degree 0.
Verdict verdict_from_complex(std::string criterion, std::string obstruction, const CochainComplex& c, int shift,
                             const std::vector<int>& labels, int obstruction_label, std::string success_label);

}  // namespace dgla
