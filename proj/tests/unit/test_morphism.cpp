#include <gtest/gtest.h>

#include <random>

#include "dgla/errors.hpp"
#include "dgla/gauge.hpp"
#include "dgla/morphism.hpp"
#include "fixtures.hpp"

using namespace dgla;
using namespace dgla::testing;

namespace {

struct Pair {
  LieAlgebra v, w;
};

std::vector<Pair> pairs() {
  return {{aff1(), LieAlgebra::abelian(1)}, {aff1(), aff1()},         {sl2(), sl2()},
          {heisenberg3(), LieAlgebra::abelian(2)}, {LieAlgebra::abelian(2), aff1()}, {so3(), so3()}};
}

// f(e0) = e0 + a e1, f(e1) = b e1 is an endomorphism of aff1.
LieMorphism aff1_endo(const Rational& a, const Rational& b) {
  return LieMorphism::create(aff1(), aff1(), Mat::from_rows({{1, 0}, {a, b}}));
}

double morphism_defect(const LieAlgebra& v, const LieAlgebra& w, const Eigen::MatrixXd& f) {
  const std::size_t n = v.dim(), m = w.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Eigen::VectorXd lhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
      for (std::size_t k = 0; k < n; ++k) lhs += v.constant(i, j, k).get_d() * f.col(static_cast<Eigen::Index>(k));
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          for (std::size_t c = 0; c < m; ++c)
            rhs(static_cast<Eigen::Index>(c)) += f(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i)) *
                                                f(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(j)) *
                                                w.constant(a, b, c).get_d();
      worst = std::max(worst, (lhs - rhs).lpNorm<Eigen::Infinity>());
    }
  return worst;
}

}  // namespace

TEST(LieMorphism, ValidatesIdentity) {
  EXPECT_NO_THROW(LieMorphism::create(sl2(), sl2(), Mat::identity(3)));
  EXPECT_NO_THROW(LieMorphism::create(so3(), LieAlgebra::gl(3), so3_in_gl3_matrix()));
  EXPECT_THROW(LieMorphism::create(sl2(), sl2(), Mat::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}})),
               InvariantViolation);
  EXPECT_THROW(LieMorphism::create(sl2(), sl2(), Mat::identity(2)), ShapeError);
}

TEST(MorphismDgla, AbelianTargetHasZeroBracket) {
  const Dgla g = morphism_dgla(sl2(), LieAlgebra::abelian(2));
  for (int i = g.min_degree(); i <= g.max_degree(); ++i)
    for (int j = g.min_degree(); i + j <= g.max_degree(); ++j)
      for (std::size_t a = 0; a < g.dim(i); ++a)
        for (std::size_t b = 0; b < g.dim(j); ++b) EXPECT_TRUE(g.basis_bracket(i, a, j, b).empty());
}

TEST(MorphismDgla, MaurerCartanIffMorphism) {
  std::mt19937_64 rng(2024);
  const auto ps = pairs();
  int positives = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Pair& p = ps[static_cast<std::size_t>(trial) % ps.size()];
    Mat f = random_mat(rng, p.w.dim(), p.v.dim(), 1);
    // zero out columns now and then so morphisms actually occur
    for (std::size_t c = 0; c < f.cols(); ++c)
      if (rng() % 2 == 0)
        for (std::size_t r = 0; r < f.rows(); ++r) f(r, c) = 0;
    const TwoRouteCheck chk = morphism_check(p.v, p.w, f);
    EXPECT_TRUE(chk.agree()) << "trial " << trial;
    positives += chk.direct ? 1 : 0;
  }
  EXPECT_GT(positives, 10);
  EXPECT_LT(positives, 200);
}

TEST(MorphismDgla, AbelianSourceNeedsAbelianImage) {
  const LieAlgebra v = LieAlgebra::abelian(2);
  const LieAlgebra w = sl2();
  const Dgla g = morphism_dgla(v, w);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    Mat f = random_mat(rng, 3, 2, 1);
    if (trial % 3 == 0)
      for (std::size_t r = 0; r < 3; ++r) f(r, 1) = 2 * f(r, 0);
    const bool abelian_image = is_zero(w.bracket(f.column(0), f.column(1)));
    EXPECT_EQ(is_maurer_cartan(g, morphism_element(f)), abelian_image);
  }
}

TEST(MorphismDgla, ElementLayoutRoundTrips) {
  std::mt19937_64 rng(3);
  const Mat f = random_mat(rng, 4, 3);
  EXPECT_EQ(morphism_matrix(morphism_element(f), 3, 4), f);
}

TEST(MorphismTwist, MatchesInducedModule) {
  EXPECT_TRUE(module_twist_agreement(LieMorphism::create(sl2(), sl2(), Mat::identity(3))));
  EXPECT_TRUE(module_twist_agreement(LieMorphism::zero(sl2(), sl2())));
  EXPECT_TRUE(module_twist_agreement(LieMorphism::create(so3(), LieAlgebra::gl(3), so3_in_gl3_matrix())));
  EXPECT_TRUE(module_twist_agreement(aff1_endo(Rational(1, 2), 3)));
  EXPECT_TRUE(module_twist_agreement(LieMorphism::zero(heisenberg3(), aff1())));
}

TEST(MorphismRigidity, Examples) {
  const Verdict id = morphism_rigidity(LieMorphism::create(sl2(), sl2(), Mat::identity(3)));
  EXPECT_TRUE(id.passes);
  EXPECT_EQ(id.cohomology_dims.at(1), 0u);
  EXPECT_EQ(id.tangent_dim, 0u);
  EXPECT_TRUE(id.routes_agree);
  EXPECT_EQ(id.conclusion(), "rigid");

  const Verdict zero = morphism_rigidity(LieMorphism::zero(sl2(), sl2()));
  EXPECT_TRUE(zero.passes);
  EXPECT_EQ(zero.tangent_dim, 3u);
  EXPECT_TRUE(zero.routes_agree);

  const Verdict ab = morphism_rigidity(LieMorphism::zero(LieAlgebra::abelian(1), LieAlgebra::abelian(1)));
  EXPECT_FALSE(ab.passes);
  EXPECT_EQ(ab.obstruction_dim(), 1u);
  EXPECT_EQ(ab.tangent_dim, 1u);

  // centralizer of so3 in gl3 is the scalars
  const Verdict rep = morphism_rigidity(LieMorphism::create(so3(), LieAlgebra::gl(3), so3_in_gl3_matrix()));
  EXPECT_TRUE(rep.passes);
  EXPECT_EQ(rep.tangent_dim, 1u);
  EXPECT_TRUE(rep.routes_agree);
}

TEST(MorphismGauge, TrivialCases) {
  const LieMorphism f = LieMorphism::create(so3(), LieAlgebra::gl(3), so3_in_gl3_matrix());
  const Eigen::MatrixXd fm = to_eigen(f.matrix());
  EXPECT_EQ(morphism_gauge(f, Eigen::VectorXd::Zero(9)), fm);
  // identity matrix is central in gl3
  Eigen::VectorXd x = Eigen::VectorXd::Zero(9);
  x(0) = x(4) = x(8) = 0.7;
  EXPECT_LE((morphism_gauge(f, x) - fm).lpNorm<Eigen::Infinity>(), 1e-14);
  EXPECT_THROW(morphism_gauge(f, Eigen::VectorXd::Zero(3)), ShapeError);
}

TEST(MorphismGauge, StaysMorphismAndMatchesGenericFlow) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<LieMorphism> fs = {LieMorphism::create(sl2(), sl2(), Mat::identity(3)),
                                       LieMorphism::create(so3(), LieAlgebra::gl(3), so3_in_gl3_matrix()),
                                       aff1_endo(2, Rational(-1, 2)), LieMorphism::zero(aff1(), heisenberg3())};
  for (const LieMorphism& f : fs) {
    const NumericDgla g(morphism_dgla(f.source(), f.target()));
    const Eigen::VectorXd q = to_eigen(morphism_element(f.matrix()));
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(f.target().dim()));
      for (auto& e : x) e = u(rng);
      const Eigen::MatrixXd fx = morphism_gauge(f, x);
      EXPECT_LE(morphism_defect(f.source(), f.target(), fx), 1e-8);
      const Eigen::VectorXd flow = gauge_flow(g, q, x);
      Eigen::MatrixXd fm(fx.rows(), fx.cols());
      for (Eigen::Index i = 0; i < fx.cols(); ++i)
        for (Eigen::Index w = 0; w < fx.rows(); ++w) fm(w, i) = flow(i * fx.rows() + w);
      EXPECT_LE((fm - fx).lpNorm<Eigen::Infinity>(), 1e-8);
    }
  }
}
