#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "dgla/dgla.hpp"
#include "dgla/errors.hpp"
#include "dgla/gauge.hpp"

namespace dgla {

struct NormalizeOptions {
  double tolerance = 1e-9;
  int max_iter = 50;
  /// Central finite differences instead of the analytic Jacobian.
  bool finite_difference_jacobian = false;
  double fd_step = 1e-6;
  /// Allowed max-norm curvature of the input q'.
  double mc_tolerance = 1e-10;
  /// Starting point in g^0/h^0 coordinates; zero if absent. Offsetting along
  /// ker of the quotient differential samples other members of the family.
  std::optional<Eigen::VectorXd> initial_guess;
};

struct GaugeResult {
  /// Coordinates on g^0/h^0.
  Eigen::VectorXd v;
  /// sigma_0(v) in g^0.
  Eigen::VectorXd x;
  /// (q')^x
  Eigen::VectorXd gauged;
  /// Max-norm of the g^1/h^1 component of (q')^x.
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// The stability criterion does not hold, so normalization is not attempted.
class CriterionFails : public Error {
 public:
  using Error::Error;
};

/// Newton did not reach the tolerance; carries the best iterate.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, GaugeResult best) : Error(what), best_(std::move(best)) {}
  const GaugeResult& best() const { return best_; }

 private:
  GaugeResult best_;
};

/// Residual map r(v) = P_1 gauge_flow(q', sigma_0(v)), where P_1 projects onto
/// g^1/h^1, and its Jacobian; exposed for diagnostics.
struct NormalizerProblem {
  NumericDgla numeric;
  Eigen::MatrixXd sigma0;
  Eigen::MatrixXd p1;

  NormalizerProblem(const Dgla& g, const DglaSub& h);
  Eigen::VectorXd residual(const Eigen::VectorXd& q_prime, const Eigen::VectorXd& v) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& q_prime, const Eigen::VectorXd& v) const;
  Eigen::MatrixXd jacobian_fd(const Eigen::VectorXd& q_prime, const Eigen::VectorXd& v, double step) const;
};

/// Checks the criterion H^1(g/h) = 0 at q once, then normalizes any number of
/// nearby Maurer-Cartan elements.
class Normalizer {
 public:
  /// Throws CriterionFails if the criterion does not hold.
  Normalizer(const Dgla& g, const DglaSub& h, const Vec& q);

  const Verdict& verdict() const { return verdict_; }
  const NormalizerProblem& problem() const { return problem_; }

  /// Finds v with (q')^{sigma_0(v)} in h^1 by minimum-norm Gauss-Newton on r.
  /// q' must be Maurer-Cartan up to opts.mc_tolerance.
  GaugeResult run(const Eigen::VectorXd& q_prime, const NormalizeOptions& opts = {}) const;

 private:
  Verdict verdict_;
  NormalizerProblem problem_;
};

/// Normalizer(g, h, q).run(q_prime, opts)
GaugeResult normalize(const Dgla& g, const DglaSub& h, const Vec& q, const Eigen::VectorXd& q_prime,
                      const NormalizeOptions& opts = {});

/// gauge_flow(q, x) for x with entries drawn from a seeded generator and
/// rescaled to max-norm epsilon.
Eigen::VectorXd perturb_in_orbit(const NumericDgla& g, const Eigen::VectorXd& q, std::uint64_t seed, double epsilon);

}  // namespace dgla
