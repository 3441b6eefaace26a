#include <gtest/gtest.h>

#include <random>

#include "dgla/errors.hpp"
#include "dgla/multilinear.hpp"
#include "fixtures.hpp"

using namespace dgla;
using dgla::testing::random_vec;
using dgla::testing::so3;

namespace {

MultiMap identity_map(std::size_t n) {
  MultiMap m(Flavor::alternating, 1, n, n);
  for (std::size_t i = 0; i < n; ++i) m.coeff(i, i) = 1;
  return m;
}

MultiMap random_map(std::mt19937_64& rng, Flavor f, std::size_t k, std::size_t n, std::size_t m) {
  MultiMap x(f, k, n, m);
  return MultiMap::unflatten(f, k, n, m, random_vec(rng, x.size()));
}

}  // namespace

TEST(Multilinear, EvalExamples) {
  EXPECT_EQ(identity_map(3).eval(std::vector<Vec>{unit_vec(3, 0)}), unit_vec(3, 0));
  const MultiMap mu = so3().structure_map();
  const Vec v{1, 2, 3};
  EXPECT_TRUE(is_zero(mu.eval(std::vector<Vec>{v, v})));
  EXPECT_EQ(mu.eval(std::vector<Vec>{unit_vec(3, 0), unit_vec(3, 1)}), unit_vec(3, 2));
  EXPECT_THROW(mu.eval(std::vector<Vec>{v}), ShapeError);
}

TEST(Multilinear, InsertExamples) {
  const MultiMap c = identity_map(2).insert(unit_vec(2, 0));
  EXPECT_EQ(c.arity(), 0u);
  EXPECT_EQ(c.flatten(), unit_vec(2, 0));
  const MultiMap mu = so3().structure_map();
  EXPECT_TRUE(is_zero(mu.insert(unit_vec(3, 0)).insert(unit_vec(3, 0)).flatten()));
  const MultiMap ad = mu.insert(unit_vec(3, 0));
  EXPECT_EQ(ad.eval(std::vector<Vec>{unit_vec(3, 1)}), unit_vec(3, 2));
  EXPECT_EQ(ad.eval(std::vector<Vec>{unit_vec(3, 2)}), (Vec{0, -1, 0}));
  EXPECT_THROW(c.insert(unit_vec(2, 0)), ShapeError);
}

TEST(Multilinear, WedgeExamples) {
  const std::uint32_t i0[] = {0};
  const std::uint32_t i1[] = {1};
  const MultiMap dx1 = MultiMap::basis_form(2, i0);
  const MultiMap dx2 = MultiMap::basis_form(2, i1);
  // dx^2 (x) v with v = e_0 in a one-dimensional target
  MultiMap b(Flavor::alternating, 1, 2, 1);
  b.coeff(1, 0) = 1;
  MultiMap w = wedge(dx1, b);
  EXPECT_EQ(w.arity(), 2u);
  EXPECT_EQ(w.flatten(), (Vec{1}));
  MultiMap b1(Flavor::alternating, 1, 2, 1);
  b1.coeff(0, 0) = 1;
  EXPECT_TRUE(is_zero(wedge(dx1, b1).flatten()));
  EXPECT_EQ(wedge(dx1 + dx2, b1).flatten(), (Vec{-1}));
  EXPECT_THROW(wedge(dx1, MultiMap(Flavor::tensor, 1, 2, 1)), ShapeError);
}

TEST(Multilinear, PullbackExamples) {
  std::mt19937_64 rng(3);
  const MultiMap m = random_map(rng, Flavor::tensor, 2, 2, 2);
  EXPECT_EQ(m.pullback(Mat::identity(2)), m);
  EXPECT_TRUE(is_zero(m.pullback(Mat(2, 2)).flatten()));
  const Mat p = Mat::from_rows({{1}, {1}});
  const MultiMap q = m.pullback(p);
  EXPECT_EQ(q.dim_in(), 1u);
  EXPECT_EQ(q.eval(std::vector<Vec>{Vec{1}, Vec{1}}), m.eval(std::vector<Vec>{Vec{1, 1}, Vec{1, 1}}));
  EXPECT_THROW(m.pullback(Mat(3, 1)), ShapeError);
}

TEST(Multilinear, FlattenSizes) {
  EXPECT_EQ(MultiMap(Flavor::alternating, 2, 3, 3).flatten().size(), 9u);
  EXPECT_EQ(MultiMap(Flavor::tensor, 2, 3, 3).flatten().size(), 27u);
  const Vec v{1, 2, 3};
  EXPECT_EQ(MultiMap::unflatten(Flavor::alternating, 0, 4, 3, v).flatten(), v);
  EXPECT_THROW(MultiMap::unflatten(Flavor::alternating, 2, 3, 3, v), ShapeError);
}

TEST(MultilinearProperty, LinearInEachArgument) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const Flavor f = trial % 2 ? Flavor::tensor : Flavor::alternating;
    const std::size_t n = 1 + rng() % 4;
    const std::size_t k = 1 + rng() % 3;
    const MultiMap m = random_map(rng, f, k, n, 2);
    std::vector<Vec> args;
    for (std::size_t i = 0; i < k; ++i) args.push_back(random_vec(rng, n));
    const std::size_t slot = rng() % k;
    const Vec y = random_vec(rng, n);
    const Rational s = dgla::testing::small_rational(rng);
    auto a2 = args;
    a2[slot] = args[slot] + s * y;
    auto a3 = args;
    a3[slot] = y;
    EXPECT_EQ(m.eval(a2), m.eval(args) + s * m.eval(a3));
  }
}

TEST(MultilinearProperty, AlternatingSignAndInsert) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    const std::size_t k = 2 + rng() % (n - 1);
    const MultiMap m = random_map(rng, Flavor::alternating, k, n, 2);
    std::vector<Vec> args;
    for (std::size_t i = 0; i < k; ++i) args.push_back(random_vec(rng, n));
    const std::size_t i = rng() % (k - 1);
    auto swapped = args;
    std::swap(swapped[i], swapped[i + 1]);
    EXPECT_EQ(m.eval(swapped), Rational(-1) * m.eval(args));
    const Vec v = random_vec(rng, n);
    EXPECT_TRUE(is_zero(m.insert(v).insert(v).flatten()));
    std::vector<Vec> rest(args.begin() + 1, args.end());
    EXPECT_EQ(m.insert(args[0]).eval(rest), m.eval(args));
  }
}

TEST(MultilinearProperty, FlattenRoundTrip) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Flavor f = trial % 2 ? Flavor::tensor : Flavor::alternating;
    const std::size_t n = 1 + rng() % 4, k = rng() % 3, d = 1 + rng() % 3;
    const Vec x = random_vec(rng, MultiMap(f, k, n, d).size());
    EXPECT_EQ(MultiMap::unflatten(f, k, n, d, x).flatten(), x);
  }
}
