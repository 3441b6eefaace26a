#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dgla/linalg.hpp"
#include "dgla/rational.hpp"

namespace dgla {

/// Alternating maps live in wedge^k V* (x) W, tensor maps in (V*)^{(x)k} (x) W.
enum class Flavor { alternating, tensor };

std::size_t binomial(std::size_t n, std::size_t k);

/// Sorts `idx` ascending and returns the sign of the sorting permutation, or
/// 0 when an index repeats.
int sort_with_sign(std::vector<std::uint32_t>& idx);

/// Basis multi-indices for k-linear maps on Q^n, in lexicographic order:
/// strictly increasing k-tuples (alternating) or all k-tuples (tensor).
class TupleBasis {
 public:
  TupleBasis() = default;
  TupleBasis(Flavor flavor, std::size_t arity, std::size_t n);

  Flavor flavor() const { return flavor_; }
  std::size_t arity() const { return arity_; }
  std::size_t n() const { return n_; }
  std::size_t size() const { return count_; }

  std::span<const std::uint32_t> tuple(std::size_t index) const {
    return {tuples_.data() + index * arity_, arity_};
  }
  /// Position of a basis tuple (must be strictly increasing for alternating).
  std::size_t index_of(std::span<const std::uint32_t> t) const;

 private:
  Flavor flavor_ = Flavor::tensor;
  std::size_t arity_ = 0;
  std::size_t n_ = 0;
  std::size_t count_ = 1;
  std::vector<std::uint32_t> tuples_;
};

/// A k-linear map Q^{dim_in} x ... x Q^{dim_in} -> Q^{dim_out}, stored by its
/// values on basis tuples. Flat coordinate = tuple_index * dim_out + output.
class MultiMap {
 public:
  MultiMap() = default;
  MultiMap(Flavor flavor, std::size_t arity, std::size_t dim_in, std::size_t dim_out);

  static MultiMap unflatten(Flavor flavor, std::size_t arity, std::size_t dim_in, std::size_t dim_out, Vec coords);
  /// The scalar-valued alternating basis form dx^{i_1} ^ ... ^ dx^{i_k}.
  static MultiMap basis_form(std::size_t dim_in, std::span<const std::uint32_t> indices);

  Flavor flavor() const { return basis_.flavor(); }
  std::size_t arity() const { return basis_.arity(); }
  std::size_t dim_in() const { return basis_.n(); }
  std::size_t dim_out() const { return dim_out_; }
  const TupleBasis& tuples() const { return basis_; }
  std::size_t size() const { return coeffs_.size(); }

  const Vec& flatten() const { return coeffs_; }
  Rational& coeff(std::size_t tuple_index, std::size_t out) { return coeffs_[tuple_index * dim_out_ + out]; }
  const Rational& coeff(std::size_t tuple_index, std::size_t out) const { return coeffs_[tuple_index * dim_out_ + out]; }
  /// Value on an arbitrary basis tuple (any order); alternating maps pick up
  /// the sign of the sorting permutation.
  Vec value_on(std::span<const std::uint32_t> t) const;
  /// Adds `delta` to the value on an arbitrary basis tuple.
  void add_value(std::span<const std::uint32_t> t, const Vec& delta);

  Vec eval(std::span<const Vec> args) const;
  /// Plugs v into the first slot.
  MultiMap insert(const Vec& v) const;
  /// x_1..x_k -> m(p x_1, ..., p x_k); p is dim_in x n'.
  MultiMap pullback(const Mat& p) const;
  /// Composes with a linear map on the output side: y -> a y.
  MultiMap post_compose(const Mat& a) const;

  friend MultiMap operator+(const MultiMap& a, const MultiMap& b);
  friend MultiMap operator-(const MultiMap& a, const MultiMap& b);
  friend MultiMap operator*(const Rational& s, const MultiMap& a);
  friend bool operator==(const MultiMap& a, const MultiMap& b);

 private:
  TupleBasis basis_;
  std::size_t dim_out_ = 0;
  Vec coeffs_;
};

/// (a ^ b) for a scalar-valued alternating form a and an alternating map b.
MultiMap wedge(const MultiMap& a, const MultiMap& b);

}  // namespace dgla
