#include "dgla/morphism.hpp"

#include <string>

#include "dgla/errors.hpp"
#include "dgla/gauge.hpp"
#include "dgla/multilinear.hpp"

namespace dgla {

std::optional<std::pair<std::size_t, std::size_t>> morphism_failure(const LieAlgebra& source,
                                                                    const LieAlgebra& target, const Mat& f) {
  if (f.rows() != target.dim() || f.cols() != source.dim())
    throw ShapeError("morphism matrix must be " + std::to_string(target.dim()) + " x " + std::to_string(source.dim()));
  const std::size_t n = source.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec lhs = f * source.bracket(unit_vec(n, i), unit_vec(n, j));
      const Vec rhs = target.bracket(f.column(i), f.column(j));
      if (lhs != rhs) return std::make_pair(i, j);
    }
  return std::nullopt;
}

LieMorphism LieMorphism::create(LieAlgebra source, LieAlgebra target, Mat f) {
  if (auto bad = morphism_failure(source, target, f))
    throw InvariantViolation("morphism identity fails on basis pair (" + std::to_string(bad->first) + "," +
                             std::to_string(bad->second) + ")");
  LieMorphism m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.f_ = std::move(f);
  return m;
}

LieMorphism LieMorphism::zero(LieAlgebra source, LieAlgebra target) {
  Mat f(target.dim(), source.dim());
  return create(std::move(source), std::move(target), std::move(f));
}

Vec morphism_element(const Mat& f) {
  Vec v(f.rows() * f.cols());
  for (std::size_t i = 0; i < f.cols(); ++i)
    for (std::size_t w = 0; w < f.rows(); ++w) v[i * f.rows() + w] = f(w, i);
  return v;
}

Mat morphism_matrix(const Vec& element, std::size_t dim_v, std::size_t dim_w) {
  if (element.size() != dim_v * dim_w) throw ShapeError("element has wrong dimension for a map V -> W");
  Mat f(dim_w, dim_v);
  for (std::size_t i = 0; i < dim_v; ++i)
    for (std::size_t w = 0; w < dim_w; ++w) f(w, i) = element[i * dim_w + w];
  return f;
}

Dgla morphism_dgla(const LieAlgebra& source, const LieAlgebra& target, int hi) {
  if (hi < 2) throw ShapeError("morphism DGLA needs degrees 0..2 at least");
  const std::size_t n = source.dim();
  const std::size_t m = target.dim();
  const CochainComplex ce = ce_complex(source, Representation::trivial(source, m), hi);
  std::vector<std::size_t> dims;
  std::vector<Mat> diffs;
  std::vector<TupleBasis> bases;
  for (int k = 0; k <= hi; ++k) {
    dims.push_back(ce.dim(k));
    bases.emplace_back(Flavor::alternating, static_cast<std::size_t>(k), n);
    if (k < hi) diffs.push_back(ce.differential(k));
  }
  auto bracket = [&](int i, std::size_t a, int j, std::size_t b) {
    SparseVec out;
    if (static_cast<std::size_t>(i + j) > n) return out;
    const auto I = bases[static_cast<std::size_t>(i)].tuple(a / m);
    const auto J = bases[static_cast<std::size_t>(j)].tuple(b / m);
    std::vector<std::uint32_t> t(I.begin(), I.end());
    t.insert(t.end(), J.begin(), J.end());
    const int sign = sort_with_sign(t);
    if (sign == 0) return out;
    const std::size_t row = bases[static_cast<std::size_t>(i + j)].index_of(t);
    for (std::size_t k = 0; k < m; ++k) {
      const Rational& c = target.constant(a % m, b % m, k);
      if (sgn(c) != 0) out.emplace_back(static_cast<std::uint32_t>(row * m + k), sign * c);
    }
    return out;
  };
  return Dgla::create("Mor(" + source.name() + "," + target.name() + ")", 0, std::move(dims), std::move(diffs),
                      bracket);
}

TwoRouteCheck morphism_check(const LieAlgebra& source, const LieAlgebra& target, const Mat& f) {
  TwoRouteCheck r;
  r.direct = !morphism_failure(source, target, f).has_value();
  r.maurer_cartan = is_maurer_cartan(morphism_dgla(source, target), morphism_element(f));
  return r;
}

Representation module_through(const LieMorphism& f) {
  std::vector<Mat> actions;
  for (std::size_t i = 0; i < f.source().dim(); ++i) actions.push_back(f.target().ad(f.matrix().column(i)));
  return Representation::create(f.source(), std::move(actions));
}

bool module_twist_agreement(const LieMorphism& f) {
  const Dgla g = morphism_dgla(f.source(), f.target());
  const std::vector<Mat> tw = twist(g, morphism_element(f.matrix()));
  const CochainComplex ce = ce_complex(f.source(), module_through(f), g.max_degree());
  for (int k = 0; k < g.max_degree(); ++k)
    if (!(tw[static_cast<std::size_t>(k)] == ce.differential(k))) return false;
  return true;
}

Verdict morphism_rigidity(const LieMorphism& f) {
  const Dgla g = morphism_dgla(f.source(), f.target()).twisted(morphism_element(f.matrix()));
  const CochainComplex c = quotient_complex(g, DglaSub::zero(g), zero_vec(g.dim(1)));
  Verdict v = verdict_from_complex("morphism-rigidity", "H^1_CE(V,W)", c, 0, {0, 1, 2}, 1, "rigid");
  const CochainComplex ce = ce_complex(f.source(), module_through(f), 3);
  for (int k = 0; k <= 2; ++k)
    if (ce.cohomology(k) != v.cohomology_dims.at(k)) v.routes_agree = false;
  return v;
}

Eigen::MatrixXd morphism_gauge(const LieMorphism& f, const Eigen::VectorXd& x) {
  const std::size_t m = f.target().dim();
  if (static_cast<std::size_t>(x.size()) != m) throw ShapeError("gauge parameter must lie in W");
  Eigen::MatrixXd ad = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    if (x[static_cast<Eigen::Index>(i)] == 0.0) continue;
    ad += x[static_cast<Eigen::Index>(i)] * to_eigen(f.target().ad(unit_vec(m, i)));
  }
  Eigen::MatrixXd out = expm(-ad) * to_eigen(f.matrix());
  require_finite(out, "morphism gauge");
  return out;
}

}  // namespace dgla
