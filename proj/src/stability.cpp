#include "dgla/stability.hpp"

#include <string>

#include "dgla/errors.hpp"
#include "dgla/multilinear.hpp"

namespace dgla {

namespace {

Vec concat(const Vec& a, const Vec& b) {
  Vec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Alternating (k+1)-linear basis element number `a` of wedge^{k+1} Q^n* (x) Q^out.
MultiMap basis_map(std::size_t arity, std::size_t n, std::size_t out, std::size_t a) {
  const std::size_t size = binomial(n, arity) * out;
  return MultiMap::unflatten(Flavor::alternating, arity, n, out, unit_vec(size, a));
}

void compare_cohomology(Verdict& v, const CochainComplex& other, int lo, int hi) {
  for (int k = lo; k <= hi; ++k)
    if (other.cohomology(k) != v.cohomology_dims.at(k)) v.routes_agree = false;
}

Mat action_on_quotient(const QuotientData& q, const Mat& act) { return q.projection * act * q.complement.basis(); }

}  // namespace

SubalgebraProblem SubalgebraProblem::create(LieAlgebra ambient, Subspace w) {
  if (w.ambient_dim() != ambient.dim())
    throw ShapeError("subspace has ambient dimension " + std::to_string(w.ambient_dim()) + ", expected " +
                     std::to_string(ambient.dim()));
  if (!ambient.is_subalgebra(w)) throw InvariantViolation("subspace is not closed under the bracket");
  return SubalgebraProblem{std::move(ambient), std::move(w)};
}

Mat restriction_map(const SubalgebraProblem& p, int nr_degree) {
  if (nr_degree < -1) throw ShapeError("NR degrees start at -1");
  const std::size_t n = p.ambient.dim();
  const std::size_t arity = static_cast<std::size_t>(nr_degree + 1);
  const QuotientData q = quotient_data(n, p.w);
  const Mat& b = p.w.basis();
  const std::size_t cols = binomial(n, arity) * n;
  const std::size_t rows = binomial(p.w.dim(), arity) * q.projection.rows();
  Mat r(rows, cols);
  for (std::size_t a = 0; a < cols; ++a) {
    const Vec img = basis_map(arity, n, n, a).pullback(b).post_compose(q.projection).flatten();
    for (std::size_t i = 0; i < rows; ++i) r(i, a) = img[i];
  }
  return r;
}

DglaSub subalg_subdgla(const Dgla& nr, const SubalgebraProblem& p) {
  std::vector<Subspace> spaces;
  for (int k = nr.min_degree(); k <= nr.max_degree(); ++k) {
    const Mat r = restriction_map(p, k);
    if (r.cols() != nr.dim(k)) throw ShapeError("DGLA is not the NR algebra of the ambient space");
    spaces.push_back(kernel_basis(r));
  }
  return DglaSub::create(nr, std::move(spaces));
}

Representation quotient_module(const SubalgebraProblem& p) {
  const QuotientData q = quotient_data(p.ambient.dim(), p.w);
  std::vector<Mat> actions;
  for (std::size_t a = 0; a < p.w.dim(); ++a)
    actions.push_back(action_on_quotient(q, p.ambient.ad(p.w.basis_vector(a))));
  return Representation::create(p.ambient.restrict_to(p.w), std::move(actions));
}

Verdict subalg_stability(const SubalgebraProblem& p) {
  // H^0..H^2 of the CE side sit in NR degrees -1..1, so the window stops at 2
  const Dgla nr = nr_dgla(p.ambient.dim(), -1, 2);
  const DglaSub h = subalg_subdgla(nr, p);
  const CochainComplex c = quotient_complex(nr, h, p.ambient.structure_map().flatten());
  Verdict v = verdict_from_complex("subalgebra-stability", "H^2_CE(W,V/W)", c, 1, {0, 1, 2}, 2, "stable");
  compare_cohomology(v, ce_complex(p.ambient.restrict_to(p.w), quotient_module(p), 3), 0, 2);
  return v;
}

Dgla pair_dgla(const LieAlgebra& v, const LieAlgebra& w, int hi) {
  return Dgla::direct_sum(nr_dgla(v.dim(), -1, hi), nr_dgla(w.dim(), -1, hi),
                          "NR(" + std::to_string(v.dim()) + ")+NR(" + std::to_string(w.dim()) + ")");
}

std::vector<Mat> f_map(const Dgla& pair, const LieMorphism& f) {
  const std::size_t n = f.source().dim();
  const std::size_t m = f.target().dim();
  const Mat& fm = f.matrix();
  std::vector<Mat> out;
  for (int k = pair.min_degree(); k <= pair.max_degree(); ++k) {
    const std::size_t arity = static_cast<std::size_t>(k + 1);
    const std::size_t dv = binomial(n, arity) * n;
    const std::size_t dw = binomial(m, arity) * m;
    if (pair.dim(k) != dv + dw) throw ShapeError("DGLA is not the pair algebra of this morphism");
    const std::size_t rows = binomial(n, arity) * m;
    Mat fk(rows, dv + dw);
    for (std::size_t a = 0; a < dv; ++a) {
      const Vec img = basis_map(arity, n, n, a).post_compose(fm).flatten();
      for (std::size_t i = 0; i < rows; ++i) fk(i, a) = img[i];
    }
    for (std::size_t b = 0; b < dw; ++b) {
      const Vec img = basis_map(arity, m, m, b).pullback(fm).flatten();
      for (std::size_t i = 0; i < rows; ++i) fk(i, dv + b) = -img[i];
    }
    out.push_back(std::move(fk));
  }
  return out;
}

DglaSub pair_subdgla(const Dgla& pair, const LieMorphism& f) {
  std::vector<Subspace> spaces;
  for (const Mat& fk : f_map(pair, f)) spaces.push_back(kernel_basis(fk));
  return DglaSub::create(pair, std::move(spaces));
}

Verdict pair_stability(const LieMorphism& f) {
  const Dgla g = pair_dgla(f.source(), f.target(), 2);
  const std::vector<Mat> fs = f_map(g, f);
  std::vector<Subspace> spaces;
  for (const Mat& fk : fs) spaces.push_back(kernel_basis(fk));
  const DglaSub h = DglaSub::create(g, std::move(spaces));
  const Vec q = concat(f.source().structure_map().flatten(), f.target().structure_map().flatten());
  const CochainComplex c = quotient_complex(g, h, q);
  Verdict v = verdict_from_complex("pair-stability", "H^1(g/h_f)", c, 0, {0, 1}, 1, "stable");
  if (h.codim(1) != rank(fs[static_cast<std::size_t>(1 - g.min_degree())])) v.routes_agree = false;
  return v;
}

SubalgebraProblem graph_problem(const LieMorphism& f) {
  const std::size_t n = f.source().dim();
  const std::size_t m = f.target().dim();
  Mat gen(n + m, n);
  for (std::size_t i = 0; i < n; ++i) {
    gen(i, i) = 1;
    for (std::size_t j = 0; j < m; ++j) gen(n + j, i) = f.matrix()(j, i);
  }
  return SubalgebraProblem::create(LieAlgebra::direct_sum(f.source(), f.target()), Subspace::span(n + m, gen));
}

Verdict graph_stability(const LieMorphism& f) {
  Verdict v = subalg_stability(graph_problem(f));
  v.criterion = "graph-stability";
  v.obstruction = "H^2_CE(V,W)";
  compare_cohomology(v, ce_complex(f.source(), module_through(f), 3), 0, 2);
  return v;
}

MapIntoSubalgProblem MapIntoSubalgProblem::create(LieMorphism f, Subspace u) {
  if (u.ambient_dim() != f.target().dim()) throw ShapeError("subspace must live in the target algebra");
  if (!f.target().is_subalgebra(u)) throw InvariantViolation("U is not a subalgebra of the target");
  for (std::size_t i = 0; i < f.source().dim(); ++i)
    if (!u.contains(f.matrix().column(i)))
      throw InvariantViolation("f(e_" + std::to_string(i) + ") does not lie in U");
  return MapIntoSubalgProblem{std::move(f), std::move(u)};
}

Representation quotient_module(const MapIntoSubalgProblem& p) {
  const QuotientData q = quotient_data(p.f.target().dim(), p.u);
  std::vector<Mat> actions;
  for (std::size_t i = 0; i < p.f.source().dim(); ++i)
    actions.push_back(action_on_quotient(q, p.f.target().ad(p.f.matrix().column(i))));
  return Representation::create(p.f.source(), std::move(actions));
}

DglaSub into_subalg_subdgla(const Dgla& mor, const MapIntoSubalgProblem& p) {
  const std::size_t n = p.f.source().dim();
  const std::size_t m = p.f.target().dim();
  std::vector<Subspace> spaces;
  for (int k = mor.min_degree(); k <= mor.max_degree(); ++k) {
    const std::size_t tuples = binomial(n, static_cast<std::size_t>(k));
    if (mor.dim(k) != tuples * m) throw ShapeError("DGLA is not the morphism algebra of this problem");
    std::vector<Vec> gens;
    for (std::size_t t = 0; t < tuples; ++t)
      for (std::size_t j = 0; j < p.u.dim(); ++j) {
        Vec x = zero_vec(mor.dim(k));
        const Vec u = p.u.basis_vector(j);
        for (std::size_t o = 0; o < m; ++o) x[t * m + o] = u[o];
        gens.push_back(std::move(x));
      }
    spaces.push_back(Subspace::span(mor.dim(k), gens));
  }
  return DglaSub::create(mor, std::move(spaces));
}

Verdict map_into_subalg_stability(const MapIntoSubalgProblem& p) {
  const Dgla g = morphism_dgla(p.f.source(), p.f.target(), 3);
  const DglaSub h = into_subalg_subdgla(g, p);
  const CochainComplex c = quotient_complex(g, h, morphism_element(p.f.matrix()));
  Verdict v = verdict_from_complex("into-subalgebra-stability", "H^1_CE(V,W/U)", c, 0, {0, 1}, 1, "stable");
  compare_cohomology(v, ce_complex(p.f.source(), quotient_module(p), 3), 0, 1);
  return v;
}

namespace {

// Kernel of A -> A^T g + g A on gl(n), after checking g is nondegenerate with
// the required symmetry (+1 symmetric, -1 skew).
Subspace form_preserving(const Mat& g, int symmetry, const char* what) {
  const std::size_t n = g.rows();
  if (g.cols() != n) throw ShapeError(std::string(what) + " form must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g(i, j) != symmetry * g(j, i))
        throw InvariantViolation(std::string(what) + " form has the wrong symmetry at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
  if (rank(g) != n) throw InvariantViolation(std::string(what) + " form is degenerate");
  Mat c(n * n, n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t k = 0; k < n; ++k) {
        // (A^T g)(r, s) = sum_k A(k, r) g(k, s); (g A)(r, s) = sum_k g(r, k) A(k, s)
        c(r * n + s, k * n + r) += g(k, s);
        c(r * n + s, k * n + s) += g(r, k);
      }
  Subspace out = kernel_basis(c);
  if (!LieAlgebra::gl(n).is_subalgebra(out)) throw InvariantViolation("form-preserving matrices not closed");
  return out;
}

}  // namespace

Subspace so_subalgebra(const Mat& g) { return form_preserving(g, 1, "symmetric"); }

Subspace sp_subalgebra(const Mat& omega) { return form_preserving(omega, -1, "symplectic"); }

}  // namespace dgla
