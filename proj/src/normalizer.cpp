#include "dgla/normalizer.hpp"

#include <random>
#include <string>

namespace dgla {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double max_norm(const VectorXd& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }

}  // namespace

NormalizerProblem::NormalizerProblem(const Dgla& g, const DglaSub& h)
    : numeric(g), sigma0(to_eigen(h.splitting(0).complement.basis())), p1(to_eigen(h.splitting(1).projection)) {}

VectorXd NormalizerProblem::residual(const VectorXd& qp, const VectorXd& v) const {
  return p1 * gauge_flow(numeric, qp, sigma0 * v);
}

MatrixXd NormalizerProblem::jacobian(const VectorXd& qp, const VectorXd& v) const {
  return p1 * gauge_flow_jacobian(numeric, qp, sigma0 * v) * sigma0;
}

MatrixXd NormalizerProblem::jacobian_fd(const VectorXd& qp, const VectorXd& v, double step) const {
  MatrixXd jac(p1.rows(), v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    VectorXd a = v, b = v;
    a(i) += step;
    b(i) -= step;
    jac.col(i) = (residual(qp, a) - residual(qp, b)) / (2.0 * step);
  }
  return jac;
}

namespace {

Verdict checked_criterion(const Dgla& g, const DglaSub& h, const Vec& q) {
  Verdict crit = stability_criterion(g, h, q);
  if (!crit.passes)
    throw CriterionFails("H^1(g/h) has dimension " + std::to_string(crit.obstruction_dim()) +
                         ", so the stability criterion does not apply");
  return crit;
}

}  // namespace

Normalizer::Normalizer(const Dgla& g, const DglaSub& h, const Vec& q)
    : verdict_(checked_criterion(g, h, q)), problem_(g, h) {}

GaugeResult Normalizer::run(const VectorXd& q_prime, const NormalizeOptions& opts) const {
  const NormalizerProblem& prob = problem_;
  if (static_cast<std::size_t>(q_prime.size()) != prob.numeric.dim1()) throw ShapeError("q' has wrong dimension");
  const double curv = max_norm(prob.numeric.curvature(q_prime));
  if (!(curv <= opts.mc_tolerance))
    throw NotMaurerCartan("q' has curvature " + std::to_string(curv) + " above the Maurer-Cartan tolerance");

  GaugeResult res;
  const auto k = prob.sigma0.cols();
  res.v = opts.initial_guess ? *opts.initial_guess : VectorXd::Zero(k);
  if (res.v.size() != k) throw ShapeError("initial guess has wrong dimension");
  VectorXd r = prob.residual(q_prime, res.v);
  res.residual = max_norm(r);
  GaugeResult best = res;
  while (res.residual > opts.tolerance && res.iterations < opts.max_iter) {
    const MatrixXd jac = opts.finite_difference_jacobian ? prob.jacobian_fd(q_prime, res.v, opts.fd_step)
                                                         : prob.jacobian(q_prime, res.v);
    const Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(jac);
    res.v -= cod.solve(r);
    ++res.iterations;
    require_finite(res.v, "normalizer iterate");
    r = prob.residual(q_prime, res.v);
    res.residual = max_norm(r);
    if (res.residual < best.residual) best = res;
  }
  res.x = prob.sigma0 * res.v;
  res.gauged = gauge_flow(prob.numeric, q_prime, res.x);
  res.converged = res.residual <= opts.tolerance;
  if (!res.converged) {
    best.x = prob.sigma0 * best.v;
    best.gauged = gauge_flow(prob.numeric, q_prime, best.x);
    throw NoConvergence("no convergence after " + std::to_string(res.iterations) + " iterations (best residual " +
                            std::to_string(best.residual) + ")",
                        best);
  }
  return res;
}

GaugeResult normalize(const Dgla& g, const DglaSub& h, const Vec& q, const VectorXd& q_prime,
                      const NormalizeOptions& opts) {
  return Normalizer(g, h, q).run(q_prime, opts);
}

VectorXd perturb_in_orbit(const NumericDgla& g, const VectorXd& q, std::uint64_t seed, double epsilon) {
  if (!(epsilon >= 0.0)) throw ShapeError("epsilon must be non-negative");
  if (epsilon == 0.0 || g.dim0() == 0) return q;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  VectorXd x(static_cast<Eigen::Index>(g.dim0()));
  for (auto& e : x) e = dist(rng);
  const double m = max_norm(x);
  if (m == 0.0) return q;
  x *= epsilon / m;
  return gauge_flow(g, q, x);
}

}  // namespace dgla
