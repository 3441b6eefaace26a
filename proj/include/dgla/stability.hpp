#pragma once

#include <vector>

#include "dgla/dgla.hpp"
#include "dgla/lie.hpp"
#include "dgla/linalg.hpp"
#include "dgla/morphism.hpp"

namespace dgla {

/// A Lie subalgebra W of (V, mu).
struct SubalgebraProblem {
  LieAlgebra ambient;
  Subspace w;

  /// Checks mu(W, W) in W on a basis of W.
  static SubalgebraProblem create(LieAlgebra ambient, Subspace w);
};

/// Restriction wedge^{k+1} V* (x) V -> wedge^{k+1} W* (x) V/W, in the
/// coordinates of the splitting of V/W.
Mat restriction_map(const SubalgebraProblem& p, int nr_degree);

/// h_W inside nr: the kernels of the restriction maps. `nr` must be
/// nr_dgla(dim V).
DglaSub subalg_subdgla(const Dgla& nr, const SubalgebraProblem& p);

/// W acting on V/W through mu, in the splitting coordinates.
Representation quotient_module(const SubalgebraProblem& p);

/// H^2_CE(W, V/W) = 0 implies W is a stable subalgebra. Computed as the
/// quotient complex of h_W and cross-checked against CE(W, V/W); tangent
/// data is Der(W, V/W).
Verdict subalg_stability(const SubalgebraProblem& p);

/// NR(V) + NR(W) on degrees -1..hi with vanishing cross brackets.
Dgla pair_dgla(const LieAlgebra& v, const LieAlgebra& w, int hi = 3);

/// F(a, b) = f o a - b o f^{wedge(k+1)} on each degree of the pair DGLA,
/// with values in wedge^{k+1} V* (x) W.
std::vector<Mat> f_map(const Dgla& pair, const LieMorphism& f);

/// h_f = ker F.
DglaSub pair_subdgla(const Dgla& pair, const LieMorphism& f);

/// Stability of the morphism under simultaneous deformation of (mu, nu):
/// H^1(g/h_f) at q = (mu, nu). The cross-check is dim g^1/h_f^1 = rank F^1.
Verdict pair_stability(const LieMorphism& f);

/// graph(f) inside (V + W, mu + nu).
SubalgebraProblem graph_problem(const LieMorphism& f);

/// Subalgebra stability of graph(f) in (V + W, mu + nu), with the cohomology
/// compared against CE(V, W) for the module through f.
Verdict graph_stability(const LieMorphism& f);

/// A morphism f : V -> W with f(V) inside the subalgebra U of W.
struct MapIntoSubalgProblem {
  LieMorphism f;
  Subspace u;

  static MapIntoSubalgProblem create(LieMorphism f, Subspace u);
};

/// h_U = wedge V* (x) U inside `mor`, which must be morphism_dgla(V, W).
DglaSub into_subalg_subdgla(const Dgla& mor, const MapIntoSubalgProblem& p);

/// W/U as a V-module through f, in the splitting coordinates.
Representation quotient_module(const MapIntoSubalgProblem& p);

/// H^1_CE(V, W/U) = 0 implies every nearby morphism is conjugate to one with
/// values in U. Quotient of the morphism DGLA by wedge V* (x) U, cross-checked
/// against CE(V, W/U).
Verdict map_into_subalg_stability(const MapIntoSubalgProblem& p);

/// so(C, g) = {A : A^T g + g A = 0} inside gl(n), basis E_ij at i * n + j.
Subspace so_subalgebra(const Mat& g);
/// sp(C, omega) = {A : A^T omega + omega A = 0}.
Subspace sp_subalgebra(const Mat& omega);

}  // namespace dgla
