#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "dgla/dgla.hpp"
#include "dgla/lie.hpp"
#include "dgla/linalg.hpp"

namespace dgla {

/// First basis pair (i, j), i < j, with f(mu(e_i, e_j)) != nu(f e_i, f e_j).
std::optional<std::pair<std::size_t, std::size_t>> morphism_failure(const LieAlgebra& source,
                                                                    const LieAlgebra& target, const Mat& f);

/// Lie algebra morphism f : (V, mu) -> (W, nu); f is dim W x dim V.
class LieMorphism {
 public:
  LieMorphism() = default;

  static LieMorphism create(LieAlgebra source, LieAlgebra target, Mat f);
  static LieMorphism zero(LieAlgebra source, LieAlgebra target);

  const LieAlgebra& source() const { return source_; }
  const LieAlgebra& target() const { return target_; }
  const Mat& matrix() const { return f_; }

 private:
  LieAlgebra source_;
  LieAlgebra target_;
  Mat f_;
};

/// Coordinates of a linear map V -> W in wedge^1 V* (x) W.
Vec morphism_element(const Mat& f);
Mat morphism_matrix(const Vec& element, std::size_t dim_v, std::size_t dim_w);

/// (wedge^* V* (x) W, d_CE with W a trivial module, wedge-extension of nu) on
/// degrees 0..hi.
Dgla morphism_dgla(const LieAlgebra& source, const LieAlgebra& target, int hi = 3);

/// Morphism identity on basis pairs vs. the Maurer-Cartan equation.
TwoRouteCheck morphism_check(const LieAlgebra& source, const LieAlgebra& target, const Mat& f);

/// W as a V-module through f: rho(x) = nu(f x, -).
Representation module_through(const LieMorphism& f);

/// Entry-wise equality of d_CE + [f, -] with the CE differential of the
/// f-induced module.
bool module_twist_agreement(const LieMorphism& f);

/// H^1_CE(V, W) = 0 (module through f) implies rigidity; tangent data is the
/// centralizer of f(V) in W.
Verdict morphism_rigidity(const LieMorphism& f);

/// exp(-ad_x) o F for x in W, in floating point.
Eigen::MatrixXd morphism_gauge(const LieMorphism& f, const Eigen::VectorXd& x);

}  // namespace dgla
