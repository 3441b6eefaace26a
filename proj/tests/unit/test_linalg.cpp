#include <gtest/gtest.h>

#include <random>

#include "dgla/errors.hpp"
#include "dgla/linalg.hpp"
#include "dgla/rational.hpp"
#include "fixtures.hpp"

using namespace dgla;
using dgla::testing::random_invertible;
using dgla::testing::random_mat;
using dgla::testing::inverse;

TEST(Rational, ParsesCanonicalForms) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-4/6"), Rational(-2, 3));
  EXPECT_EQ(parse_rational("+1/2"), Rational(1, 2));
  EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
  EXPECT_EQ(to_string(parse_rational("-0/7")), "0");
}

TEST(Rational, RejectsMalformedText) {
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("1.5"), ParseError);
  EXPECT_THROW(parse_rational("a/b"), ParseError);
  EXPECT_THROW(parse_rational("1/"), ParseError);
}

TEST(Rref, IdentityAndZero) {
  auto e = rref(Mat::identity(2));
  EXPECT_EQ(e.reduced, Mat::identity(2));
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 1}));
  auto z = rref(Mat(3, 3));
  EXPECT_TRUE(z.reduced.is_zero());
  EXPECT_TRUE(z.pivots.empty());
}

TEST(Rref, RankOneByHand) {
  const Mat m = Mat::from_rows({{1, 2}, {2, 4}});
  auto e = rref(m);
  EXPECT_EQ(e.reduced, Mat::from_rows({{1, 2}, {0, 0}}));
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0}));
  EXPECT_EQ(rank(m), 1u);
  EXPECT_EQ(rank(Mat::identity(4)), 4u);
  EXPECT_EQ(rank(Mat(2, 5)), 0u);
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_basis(Mat::identity(3)).dim(), 0u);
  EXPECT_EQ(kernel_basis(Mat(3, 3)).dim(), 3u);
  const Subspace k = kernel_basis(Mat::from_rows({{1, 2}, {2, 4}}));
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_EQ(k, Subspace::span(2, std::vector<Vec>{{Rational(-2), Rational(1)}}));
}

TEST(Quotient, Examples) {
  auto full = quotient_data(3, Subspace::full(3));
  EXPECT_EQ(full.complement.dim(), 0u);
  EXPECT_EQ(full.projection.rows(), 0u);
  EXPECT_EQ(full.projection.cols(), 3u);

  auto none = quotient_data(3, Subspace::zero(3));
  EXPECT_EQ(none.projection, Mat::identity(3));
  EXPECT_EQ(none.complement.basis(), Mat::identity(3));

  const Subspace s = Subspace::span(2, std::vector<Vec>{{Rational(1), Rational(1)}});
  auto q = quotient_data(2, s);
  EXPECT_TRUE(is_zero(q.projection * Vec{1, 1}));
  EXPECT_EQ(q.projection * q.complement.basis(), Mat::identity(1));
  EXPECT_THROW(quotient_data(3, s), ShapeError);
}

TEST(Cohomology, Examples) {
  EXPECT_EQ(cohomology_dim(Mat(3, 1), Mat(1, 3)), 3u);
  const Mat in = Mat::from_rows({{1}, {0}});
  const Mat out = Mat::from_rows({{0, 1}});
  EXPECT_EQ(cohomology_dim(in, out), 0u);
  EXPECT_EQ(cohomology_dim(Mat::identity(2), Mat(1, 2)), 0u);
  EXPECT_THROW(cohomology_dim(Mat::identity(2), Mat::from_rows({{1, 0}})), ComplexError);
  EXPECT_THROW(cohomology_dim(Mat(2, 2), Mat(1, 3)), ShapeError);
}

TEST(CochainComplexTest, RejectsNonComplex) {
  EXPECT_THROW(CochainComplex(0, {1, 1, 1}, {Mat::identity(1), Mat::identity(1)}), ComplexError);
  EXPECT_THROW(CochainComplex(0, {1, 2}, {Mat::identity(1)}), ShapeError);
}

TEST(LinalgProperty, RankNullity) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + rng() % 6;
    const std::size_t c = 1 + rng() % 6;
    Mat m = random_mat(rng, r, c);
    if (trial % 3 == 0 && r > 1)
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 2;
    const Subspace k = kernel_basis(m);
    EXPECT_EQ(rank(m) + k.dim(), c);
    EXPECT_TRUE((m * k.basis()).is_zero());
  }
}

TEST(LinalgProperty, QuotientProjection) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const std::size_t g = rng() % (n + 1);
    const Subspace s = Subspace::span(n, random_mat(rng, n, g));
    const QuotientData q = quotient_data(n, s);
    EXPECT_TRUE((q.projection * s.basis()).is_zero());
    EXPECT_EQ(q.projection * q.complement.basis(), Mat::identity(n - s.dim()));
    EXPECT_EQ(q.complement.dim() + s.dim(), n);
  }
}

TEST(LinalgProperty, CohomologyInvariantUnderChangeOfBasis) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t a = 1 + rng() % 5, b = 1 + rng() % 8, c = 1 + rng() % 5;
    // d_out * d_in = 0 by construction: d_in lands in ker d_out.
    const Mat d_out = random_mat(rng, c, b);
    const Subspace k = kernel_basis(d_out);
    Mat d_in(b, a);
    if (k.dim() > 0) d_in = k.basis() * random_mat(rng, k.dim(), a);
    const std::size_t h = cohomology_dim(d_in, d_out);
    const Mat pa = random_invertible(rng, a), pb = random_invertible(rng, b), pc = random_invertible(rng, c);
    const Mat d_in2 = inverse(pb) * d_in * pa;
    const Mat d_out2 = inverse(pc) * d_out * pb;
    EXPECT_EQ(cohomology_dim(d_in2, d_out2), h);
  }
}
