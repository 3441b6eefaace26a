#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dgla/assoc.hpp"
#include "dgla/errors.hpp"
#include "dgla/gauge.hpp"
#include "dgla/lie.hpp"
#include "dgla/morphism.hpp"
#include "fixtures.hpp"

using namespace dgla;
using namespace dgla::testing;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd random_unit_ball(std::mt19937_64& rng, std::size_t n, double radius = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  VectorXd x(static_cast<Eigen::Index>(n));
  for (auto& e : x) e = u(rng);
  if (n > 0 && x.norm() > 0) x *= radius * std::abs(u(rng)) / x.norm();
  return x;
}

double inf(const VectorXd& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }

struct Instance {
  std::string name;
  NumericDgla g;
  VectorXd mc;  // a Maurer-Cartan element
};

std::vector<Instance> instances() {
  std::vector<Instance> out;
  out.push_back({"nr3", NumericDgla(nr_dgla(3)), to_eigen(so3().structure_map().flatten())});
  out.push_back({"nr3-sl2-twisted", NumericDgla(nr_dgla(3).twisted(sl2().structure_map().flatten())),
                 VectorXd::Zero(9)});
  const AssocAlgebra m2 = AssocAlgebra::matrix_algebra(2);
  out.push_back({"g4", NumericDgla(g_dgla(4, -1, 2)), to_eigen(m2.structure_map().flatten())});
  out.push_back({"mor", NumericDgla(morphism_dgla(sl2(), sl2())), to_eigen(morphism_element(Mat::identity(3)))});
  out.push_back({"mor-aff-heis", NumericDgla(morphism_dgla(aff1(), heisenberg3())), VectorXd::Zero(6)});
  return out;
}

// RK4 for dQ/dt = dx - [x, Q] up to time t.
VectorXd rk4_to(const NumericDgla& g, const VectorXd& q, const VectorXd& x, double t, int steps) {
  const MatrixXd a = g.ad(x);
  const VectorXd dx = g.d0() * x;
  auto rhs = [&](const VectorXd& y) -> VectorXd { return dx - a * y; };
  const double h = t / steps;
  VectorXd y = q;
  for (int s = 0; s < steps; ++s) {
    const VectorXd k1 = rhs(y), k2 = rhs(y + 0.5 * h * k1), k3 = rhs(y + 0.5 * h * k2), k4 = rhs(y + h * k3);
    y += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return y;
}

}  // namespace

TEST(GaugeFlow, ZeroParameterIsIdentity) {
  for (const Instance& in : instances()) {
    std::mt19937_64 rng(1);
    const VectorXd q = random_unit_ball(rng, in.g.dim1());
    const VectorXd x = VectorXd::Zero(static_cast<Eigen::Index>(in.g.dim0()));
    EXPECT_LE(inf(gauge_flow(in.g, q, x) - q), 1e-15) << in.name;
    EXPECT_LE(inf(gauge_flow_ode(in.g, q, x) - q), 1e-15) << in.name;
  }
}

TEST(GaugeFlow, NijenhuisRichardsonClosedForm) {
  // With d = 0 the flow conjugates: mu^A(x, y) = exp(-A) mu(exp(A) x, exp(A) y).
  const std::size_t n = 3;
  const NumericDgla g(nr_dgla(n));
  const TupleBasis pairs(Flavor::alternating, 2, n);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const VectorXd mu = random_unit_ball(rng, g.dim1());
    const VectorXd a_flat = random_unit_ball(rng, g.dim0());
    MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t o = 0; o < n; ++o) a(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i)) = a_flat(i * n + o);
    const MatrixXd e = expm(a), ei = expm(-a);
    auto mu_eval = [&](const VectorXd& x, const VectorXd& y) {
      VectorXd out = VectorXd::Zero(n);
      for (std::size_t t = 0; t < pairs.size(); ++t) {
        const auto ij = pairs.tuple(t);
        const double c = x(ij[0]) * y(ij[1]) - x(ij[1]) * y(ij[0]);
        for (std::size_t o = 0; o < n; ++o) out(o) += c * mu(t * n + o);
      }
      return out;
    };
    VectorXd expected(static_cast<Eigen::Index>(g.dim1()));
    for (std::size_t t = 0; t < pairs.size(); ++t) {
      const auto ij = pairs.tuple(t);
      const VectorXd v = ei * mu_eval(e.col(ij[0]), e.col(ij[1]));
      for (std::size_t o = 0; o < n; ++o) expected(t * n + o) = v(o);
    }
    EXPECT_LE(inf(gauge_flow(g, mu, a_flat) - expected), 1e-10);
  }
}

TEST(GaugeFlow, AgreesWithRungeKutta) {
  std::mt19937_64 rng(23);
  for (const Instance& in : instances()) {
    for (int trial = 0; trial < 8; ++trial) {
      const VectorXd q = random_unit_ball(rng, in.g.dim1());
      const VectorXd x = random_unit_ball(rng, in.g.dim0());
      EXPECT_LE(inf(gauge_flow(in.g, q, x) - gauge_flow_ode(in.g, q, x, 1000)), 1e-8) << in.name;
    }
  }
}

TEST(GaugeFlow, TimeScaling) {
  std::mt19937_64 rng(29);
  for (const Instance& in : instances()) {
    const VectorXd q = random_unit_ball(rng, in.g.dim1());
    const VectorXd x = random_unit_ball(rng, in.g.dim0());
    for (double t : {0.25, 0.5, 0.9}) {
      EXPECT_LE(inf(rk4_to(in.g, q, x, t, 1000) - gauge_flow(in.g, q, t * x)), 1e-8) << in.name;
      EXPECT_LE(inf(rk4_to(in.g, q, x, t, 1000) - gauge_flow_ode(in.g, q, t * x, 1000)), 1e-8) << in.name;
    }
  }
}

TEST(GaugeFlow, PreservesMaurerCartan) {
  std::mt19937_64 rng(31);
  for (const Instance& in : instances()) {
    ASSERT_LE(inf(in.g.curvature(in.mc)), 1e-14) << in.name;
    for (int trial = 0; trial < 10; ++trial) {
      const VectorXd x = random_unit_ball(rng, in.g.dim0());
      EXPECT_LE(inf(in.g.curvature(gauge_flow(in.g, in.mc, x))), 1e-8) << in.name;
      EXPECT_LE(inf(in.g.curvature(gauge_flow_ode(in.g, in.mc, x))), 1e-8) << in.name;
    }
  }
}

TEST(GaugeFlow, InfinitesimalGenerator) {
  // d/dt Q^{tx} at t = 0 is dx - [x, q]
  std::mt19937_64 rng(37);
  const double h = 1e-5;
  for (const Instance& in : instances()) {
    const VectorXd q = random_unit_ball(rng, in.g.dim1());
    const VectorXd x = random_unit_ball(rng, in.g.dim0());
    const VectorXd fd = (gauge_flow(in.g, q, h * x) - gauge_flow(in.g, q, -h * x)) / (2 * h);
    const VectorXd exact = in.g.d0() * x - in.g.ad(x) * q;
    EXPECT_LE(inf(fd - exact), 1e-6) << in.name;
  }
}

TEST(GaugeFlow, JacobianMatchesFiniteDifferences) {
  std::mt19937_64 rng(41);
  const double h = 1e-6;
  for (const Instance& in : instances()) {
    const VectorXd q = random_unit_ball(rng, in.g.dim1());
    const VectorXd x = random_unit_ball(rng, in.g.dim0());
    const MatrixXd jac = gauge_flow_jacobian(in.g, q, x);
    ASSERT_EQ(static_cast<std::size_t>(jac.cols()), in.g.dim0());
    for (Eigen::Index a = 0; a < jac.cols(); ++a) {
      VectorXd xp = x, xm = x;
      xp(a) += h;
      xm(a) -= h;
      const VectorXd col = (gauge_flow(in.g, q, xp) - gauge_flow(in.g, q, xm)) / (2 * h);
      EXPECT_LE(inf(col - jac.col(a)), 1e-5 * std::max(1.0, inf(col))) << in.name << " column " << a;
    }
  }
}

TEST(GaugeFlow, RejectsBadInput) {
  const NumericDgla g(nr_dgla(2));
  VectorXd q = VectorXd::Zero(static_cast<Eigen::Index>(g.dim1()));
  VectorXd x = VectorXd::Zero(static_cast<Eigen::Index>(g.dim0()));
  x(0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(gauge_flow(g, q, x), NonFiniteError);
  EXPECT_THROW(gauge_flow(g, VectorXd::Zero(1), VectorXd::Zero(static_cast<Eigen::Index>(g.dim0()))), ShapeError);
  EXPECT_THROW(gauge_flow_ode(g, q, VectorXd::Zero(static_cast<Eigen::Index>(g.dim0())), 0), ShapeError);
}
