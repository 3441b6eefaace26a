#include "dgla/gauge.hpp"

#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "dgla/errors.hpp"

namespace dgla {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void require_size(const VectorXd& v, std::size_t n, const char* what) {
  if (static_cast<std::size_t>(v.size()) != n)
    throw ShapeError(std::string(what) + " has length " + std::to_string(v.size()) + ", expected " + std::to_string(n));
}

// [[-A, dx], [0, 0]] for the gauge parameter x.
MatrixXd generator(const NumericDgla& g, const VectorXd& x) {
  const Index n = idx(g.dim1());
  MatrixXd m = MatrixXd::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n) = -g.ad(x);
  m.topRightCorner(n, 1) = g.d0() * x;
  return m;
}

}  // namespace

MatrixXd to_eigen(const Mat& m) {
  MatrixXd out(idx(m.rows()), idx(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(idx(i), idx(j)) = m(i, j).get_d();
  return out;
}

VectorXd to_eigen(const Vec& v) {
  VectorXd out(idx(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(idx(i)) = v[i].get_d();
  return out;
}

void require_finite(const MatrixXd& m, std::string_view what) {
  if (!m.allFinite()) throw NonFiniteError(std::string(what) + " produced a non-finite value");
}

MatrixXd expm(const MatrixXd& m) {
  if (m.rows() != m.cols()) throw ShapeError("matrix exponential needs a square matrix");
  require_finite(m, "matrix exponential input");
  MatrixXd out = m.exp();
  require_finite(out, "matrix exponential");
  return out;
}

NumericDgla::NumericDgla(const Dgla& g) {
  if (!g.has_degree(0) || !g.has_degree(2)) throw ShapeError("numeric DGLA needs degrees 0, 1 and 2");
  dim0_ = g.dim(0);
  dim1_ = g.dim(1);
  dim2_ = g.dim(2);
  d0_ = to_eigen(g.differential(0));
  d1_ = to_eigen(g.differential(1));
  for (std::size_t a = 0; a < dim0_; ++a) {
    MatrixXd m = MatrixXd::Zero(idx(dim1_), idx(dim1_));
    for (std::size_t b = 0; b < dim1_; ++b)
      for (const auto& [r, v] : g.basis_bracket(0, a, 1, b)) m(idx(r), idx(b)) = v.get_d();
    ad_basis_.push_back(std::move(m));
  }
  for (std::size_t a = 0; a < dim1_; ++a) {
    MatrixXd m = MatrixXd::Zero(idx(dim2_), idx(dim1_));
    for (std::size_t b = 0; b < dim1_; ++b)
      for (const auto& [r, v] : g.basis_bracket(1, a, 1, b)) m(idx(r), idx(b)) = v.get_d();
    b11_.push_back(std::move(m));
  }
}

MatrixXd NumericDgla::ad(const VectorXd& x) const {
  require_size(x, dim0_, "degree-0 element");
  MatrixXd m = MatrixXd::Zero(idx(dim1_), idx(dim1_));
  for (std::size_t a = 0; a < dim0_; ++a)
    if (x(idx(a)) != 0.0) m += x(idx(a)) * ad_basis_[a];
  return m;
}

VectorXd NumericDgla::bracket11(const VectorXd& p, const VectorXd& q) const {
  require_size(p, dim1_, "degree-1 element");
  require_size(q, dim1_, "degree-1 element");
  VectorXd out = VectorXd::Zero(idx(dim2_));
  for (std::size_t a = 0; a < dim1_; ++a)
    if (p(idx(a)) != 0.0) out += p(idx(a)) * (b11_[a] * q);
  return out;
}

VectorXd NumericDgla::curvature(const VectorXd& q) const { return d1_ * q + 0.5 * bracket11(q, q); }

VectorXd gauge_flow(const NumericDgla& g, const VectorXd& q, const VectorXd& x) {
  require_size(q, g.dim1(), "degree-1 element");
  const Index n = idx(g.dim1());
  const MatrixXd e = expm(generator(g, x));
  VectorXd out = e.topLeftCorner(n, n) * q + e.topRightCorner(n, 1);
  require_finite(out, "gauge flow");
  return out;
}

VectorXd gauge_flow_ode(const NumericDgla& g, const VectorXd& q, const VectorXd& x, int steps) {
  require_size(q, g.dim1(), "degree-1 element");
  if (steps < 1) throw ShapeError("RK4 needs at least one step");
  const MatrixXd a = g.ad(x);
  const VectorXd dx = g.d0() * x;
  auto rhs = [&](const VectorXd& y) -> VectorXd { return dx - a * y; };
  const double h = 1.0 / steps;
  VectorXd y = q;
  for (int s = 0; s < steps; ++s) {
    const VectorXd k1 = rhs(y);
    const VectorXd k2 = rhs(y + 0.5 * h * k1);
    const VectorXd k3 = rhs(y + 0.5 * h * k2);
    const VectorXd k4 = rhs(y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  require_finite(y, "RK4 gauge flow");
  return y;
}

MatrixXd gauge_flow_jacobian(const NumericDgla& g, const VectorXd& q, const VectorXd& x) {
  require_size(q, g.dim1(), "degree-1 element");
  const Index n = idx(g.dim1());
  const Index m = n + 1;
  const MatrixXd gen = generator(g, x);
  VectorXd aug(m);
  aug << q, 1.0;
  MatrixXd jac(n, idx(g.dim0()));
  // d/dt exp(M + tE) = upper right block of exp([[M, E], [0, M]]).
  MatrixXd block = MatrixXd::Zero(2 * m, 2 * m);
  block.topLeftCorner(m, m) = gen;
  block.bottomRightCorner(m, m) = gen;
  for (std::size_t a = 0; a < g.dim0(); ++a) {
    const VectorXd e = VectorXd::Unit(idx(g.dim0()), idx(a));
    block.topRightCorner(m, m) = generator(g, e);
    const MatrixXd big = expm(block);
    jac.col(idx(a)) = (big.topRightCorner(m, m) * aug).head(n);
  }
  return jac;
}

}  // namespace dgla
