#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dgla/dgla.hpp"
#include "dgla/linalg.hpp"

namespace dgla {

Eigen::MatrixXd to_eigen(const Mat& m);
Eigen::VectorXd to_eigen(const Vec& v);

/// Throws NonFiniteError naming `what` if any entry is NaN or infinite.
void require_finite(const Eigen::MatrixXd& m, std::string_view what);

/// Matrix exponential (scaling and squaring with a degree-13 Pade approximant).
Eigen::MatrixXd expm(const Eigen::MatrixXd& m);

/// Floating-point copy of the degree 0, 1, 2 data of a DGLA: the
/// differentials d0, d1, the matrices of [e_a, -] on g^1 for a basis of g^0,
/// and the bracket g^1 x g^1 -> g^2.
class NumericDgla {
 public:
  NumericDgla() = default;
  explicit NumericDgla(const Dgla& g);

  std::size_t dim0() const { return dim0_; }
  std::size_t dim1() const { return dim1_; }
  std::size_t dim2() const { return dim2_; }
  const Eigen::MatrixXd& d0() const { return d0_; }
  const Eigen::MatrixXd& d1() const { return d1_; }

  /// Matrix of [x, -] : g^1 -> g^1.
  Eigen::MatrixXd ad(const Eigen::VectorXd& x) const;
  /// [p, q] in g^2 for p, q in g^1.
  Eigen::VectorXd bracket11(const Eigen::VectorXd& p, const Eigen::VectorXd& q) const;
  /// d q + 1/2 [q, q]
  Eigen::VectorXd curvature(const Eigen::VectorXd& q) const;

 private:
  std::size_t dim0_ = 0, dim1_ = 0, dim2_ = 0;
  Eigen::MatrixXd d0_, d1_;
  std::vector<Eigen::MatrixXd> ad_basis_;
  /// b11_[a] is the matrix of [e_a, -] : g^1 -> g^2.
  std::vector<Eigen::MatrixXd> b11_;
};

/// Time-one solution of dQ/dt = dx - [x, Q], Q(0) = q, in closed form
/// exp(-A) q + phi(-A) dx with A = [x, -] and phi(z) = (e^z - 1) / z. Both
/// terms are read off the exponential of [[-A, dx], [0, 0]].
Eigen::VectorXd gauge_flow(const NumericDgla& g, const Eigen::VectorXd& q, const Eigen::VectorXd& x);

/// Classical RK4 integration of the same initial value problem.
Eigen::VectorXd gauge_flow_ode(const NumericDgla& g, const Eigen::VectorXd& q, const Eigen::VectorXd& x,
                               int steps = 1000);

/// Jacobian of x -> gauge_flow(g, q, x), dim1 x dim0, from the Frechet
/// derivative of the matrix exponential.
Eigen::MatrixXd gauge_flow_jacobian(const NumericDgla& g, const Eigen::VectorXd& q, const Eigen::VectorXd& x);

}  // namespace dgla
