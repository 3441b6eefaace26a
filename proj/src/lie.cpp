#include "dgla/lie.hpp"

#include <stdexcept>
#include <string>

#include "dgla/errors.hpp"

namespace dgla {

namespace {

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

// Alternating tuple bases of Q^n for arities 0..max_arity.
std::vector<TupleBasis> alternating_bases(std::size_t n, std::size_t max_arity) {
  std::vector<TupleBasis> out;
  for (std::size_t a = 0; a <= max_arity; ++a) out.emplace_back(Flavor::alternating, a, n);
  return out;
}

int position_of(std::span<const std::uint32_t> t, std::uint32_t x) {
  for (std::size_t r = 0; r < t.size(); ++r)
    if (t[r] == x) return static_cast<int>(r);
  return -1;
}

// One term s * (dx^front ^ dx^{rest without slot r}) (x) e_out.
void nr_term(const TupleBasis& target, std::size_t n, std::span<const std::uint32_t> front,
             std::span<const std::uint32_t> rest, int r, std::uint32_t out_index, int s, SparseVec& acc) {
  std::vector<std::uint32_t> merged(front.begin(), front.end());
  for (std::size_t i = 0; i < rest.size(); ++i)
    if (static_cast<int>(i) != r) merged.push_back(rest[i]);
  const int sign = sort_with_sign(merged);
  if (sign == 0) return;
  const int total = sign * s * ((r % 2) ? -1 : 1);
  acc.emplace_back(static_cast<std::uint32_t>(target.index_of(merged) * n + out_index), Rational(total));
}

SparseVec nr_basis_bracket_with(const std::vector<TupleBasis>& bases, std::size_t n, int k, std::size_t a, int l,
                                std::size_t b) {
  const int arity = k + l + 1;
  if (arity < 0 || static_cast<std::size_t>(arity) > n) return {};
  const auto I = bases[static_cast<std::size_t>(k + 1)].tuple(a / n);
  const auto p = static_cast<std::uint32_t>(a % n);
  const auto J = bases[static_cast<std::size_t>(l + 1)].tuple(b / n);
  const auto q = static_cast<std::uint32_t>(b % n);
  const TupleBasis& target = bases[static_cast<std::size_t>(arity)];
  SparseVec acc;
  // dx^J ^ i_{e_q}(dx^I) (x) e_p
  if (const int r = position_of(I, q); r >= 0) nr_term(target, n, J, I, r, p, 1, acc);
  // -(-1)^{kl} dx^I ^ i_{e_p}(dx^J) (x) e_q
  if (const int r = position_of(J, p); r >= 0) nr_term(target, n, I, J, r, q, ((k * l) % 2) ? 1 : -1, acc);
  return normalize_sparse(std::move(acc));
}

void require_square_alternating(const MultiMap& m, const char* what) {
  if (m.flavor() != Flavor::alternating || m.dim_in() != m.dim_out())
    throw ShapeError(std::string(what) + " needs alternating maps V^k -> V");
}

}  // namespace

LieAlgebra LieAlgebra::create(std::size_t n, Vec constants, std::string name) {
  if (constants.size() != n * n * n)
    throw ShapeError("expected " + std::to_string(n * n * n) + " structure constants, got " +
                     std::to_string(constants.size()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Rational& a = constants[(i * n + j) * n + k];
        const Rational& b = constants[(j * n + i) * n + k];
        if (a + b != 0)
          throw InvariantViolation("antisymmetry fails: c" + triple(i, j, k) + " = " + to_string(a) + " but c" +
                                   triple(j, i, k) + " = " + to_string(b));
      }
  if (auto bad = jacobi_failure(n, constants))
    throw InvariantViolation("Jacobi identity fails on basis triple " + triple((*bad)[0], (*bad)[1], (*bad)[2]));
  LieAlgebra l;
  l.n_ = n;
  l.c_ = std::move(constants);
  l.name_ = std::move(name);
  return l;
}

LieAlgebra LieAlgebra::from_map(const MultiMap& mu, std::string name) {
  require_square_alternating(mu, "a Lie bracket");
  if (mu.arity() != 2) throw ShapeError("a Lie bracket has arity 2");
  const std::size_t n = mu.dim_in();
  Vec c(n * n * n);
  for (std::size_t t = 0; t < mu.tuples().size(); ++t) {
    const auto ij = mu.tuples().tuple(t);
    for (std::size_t k = 0; k < n; ++k) {
      c[(ij[0] * n + ij[1]) * n + k] = mu.coeff(t, k);
      c[(ij[1] * n + ij[0]) * n + k] = -mu.coeff(t, k);
    }
  }
  return create(n, std::move(c), std::move(name));
}

LieAlgebra LieAlgebra::abelian(std::size_t n) { return create(n, Vec(n * n * n), "abelian" + std::to_string(n)); }

LieAlgebra LieAlgebra::gl(std::size_t n) {
  const std::size_t d = n * n;
  Vec c(d * d * d);
  // [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const std::size_t x = i * n + j;
          const std::size_t y = k * n + l;
          if (j == k) c[(x * d + y) * d + i * n + l] += 1;
          if (l == i) c[(x * d + y) * d + k * n + j] -= 1;
        }
  return create(d, std::move(c), "gl" + std::to_string(n));
}

LieAlgebra LieAlgebra::direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const std::size_t n = a.dim() + b.dim();
  const std::size_t s = a.dim();
  Vec c(n * n * n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k) c[(i * n + j) * n + k] = a.constant(i, j, k);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k) c[((s + i) * n + s + j) * n + s + k] = b.constant(i, j, k);
  return create(n, std::move(c), a.name() + "+" + b.name());
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != n_ || y.size() != n_) throw ShapeError("bracket operands have wrong dimension");
  Vec out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (sgn(y[j]) == 0) continue;
      const Rational w = x[i] * y[j];
      for (std::size_t k = 0; k < n_; ++k)
        if (sgn(constant(i, j, k)) != 0) out[k] += w * constant(i, j, k);
    }
  }
  return out;
}

Mat LieAlgebra::ad(const Vec& x) const {
  if (x.size() != n_) throw ShapeError("ad operand has wrong dimension");
  Mat m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) m(k, j) += x[i] * constant(i, j, k);
  }
  return m;
}

MultiMap LieAlgebra::structure_map() const {
  MultiMap m(Flavor::alternating, 2, n_, n_);
  for (std::size_t t = 0; t < m.tuples().size(); ++t) {
    const auto ij = m.tuples().tuple(t);
    for (std::size_t k = 0; k < n_; ++k) m.coeff(t, k) = constant(ij[0], ij[1], k);
  }
  return m;
}

LieAlgebra LieAlgebra::restrict_to(const Subspace& w) const {
  if (w.ambient_dim() != n_) throw ShapeError("subspace lives in a space of the wrong dimension");
  const std::size_t d = w.dim();
  Vec c(d * d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const Vec br = bracket(w.basis_vector(a), w.basis_vector(b));
      if (!w.contains(br))
        throw InvariantViolation("subspace is not closed under the bracket: basis vectors " + std::to_string(a) +
                                 ", " + std::to_string(b));
      const Vec coords = w.coordinates(br);
      for (std::size_t k = 0; k < d; ++k) c[(a * d + b) * d + k] = coords[k];
    }
  return create(d, std::move(c), name_ + "|W");
}

bool LieAlgebra::is_subalgebra(const Subspace& w) const {
  if (w.ambient_dim() != n_) throw ShapeError("subspace lives in a space of the wrong dimension");
  for (std::size_t a = 0; a < w.dim(); ++a)
    for (std::size_t b = a + 1; b < w.dim(); ++b)
      if (!w.contains(bracket(w.basis_vector(a), w.basis_vector(b)))) return false;
  return true;
}

std::optional<std::array<std::size_t, 3>> jacobi_failure(std::size_t n, const Vec& c) {
  if (c.size() != n * n * n) throw ShapeError("structure constants have wrong length");
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> const Rational& { return c[(i * n + j) * n + k]; };
  // mu(x, mu(y, z)) summed cyclically, with x,y,z basis vectors.
  auto term = [&](std::size_t x, std::size_t y, std::size_t z, Vec& out) {
    for (std::size_t l = 0; l < n; ++l) {
      if (sgn(at(y, z, l)) == 0) continue;
      for (std::size_t m = 0; m < n; ++m) out[m] += at(y, z, l) * at(x, l, m);
    }
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec s(n);
        term(i, j, k, s);
        term(j, k, i, s);
        term(k, i, j, s);
        if (!is_zero(s)) return std::array<std::size_t, 3>{i, j, k};
      }
  return std::nullopt;
}

Representation Representation::create(const LieAlgebra& algebra, std::vector<Mat> actions) {
  const std::size_t n = algebra.dim();
  if (actions.size() != n)
    throw ShapeError("need one action matrix per basis vector (" + std::to_string(n) + "), got " +
                     std::to_string(actions.size()));
  const std::size_t m = actions.empty() ? 0 : actions[0].rows();
  for (const Mat& a : actions)
    if (a.rows() != m || a.cols() != m) throw ShapeError("action matrices must be square of a common size");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Mat lhs(m, m);
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(algebra.constant(i, j, k)) != 0) lhs = lhs + algebra.constant(i, j, k) * actions[k];
      if (!(lhs == actions[i] * actions[j] - actions[j] * actions[i]))
        throw InvariantViolation("not a representation: rho([e_" + std::to_string(i) + ", e_" + std::to_string(j) +
                                 "]) != [rho(e_" + std::to_string(i) + "), rho(e_" + std::to_string(j) + ")]");
    }
  Representation r;
  r.dim_ = m;
  r.actions_ = std::move(actions);
  return r;
}

Representation Representation::adjoint(const LieAlgebra& algebra) {
  std::vector<Mat> actions;
  for (std::size_t i = 0; i < algebra.dim(); ++i) actions.push_back(algebra.ad(unit_vec(algebra.dim(), i)));
  return create(algebra, std::move(actions));
}

Representation Representation::trivial(const LieAlgebra& algebra, std::size_t module_dim) {
  return create(algebra, std::vector<Mat>(algebra.dim(), Mat(module_dim, module_dim)));
}

Mat Representation::action_of(const Vec& x) const {
  if (x.size() != actions_.size()) throw ShapeError("element has wrong dimension");
  Mat m(dim_, dim_);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) m = m + x[i] * actions_[i];
  return m;
}

SparseVec nr_basis_bracket(std::size_t n, int k, std::size_t a, int l, std::size_t b) {
  if (k < -1 || l < -1) throw ShapeError("NR degrees start at -1");
  const auto top = static_cast<std::size_t>(std::max(k + l + 1, std::max(k, l) + 1));
  return nr_basis_bracket_with(alternating_bases(n, top), n, k, a, l, b);
}

MultiMap nr_bracket(const MultiMap& a, const MultiMap& b) {
  require_square_alternating(a, "the NR bracket");
  require_square_alternating(b, "the NR bracket");
  if (a.dim_in() != b.dim_in()) throw ShapeError("NR bracket operands live on different spaces");
  const std::size_t n = a.dim_in();
  const int k = static_cast<int>(a.arity()) - 1;
  const int l = static_cast<int>(b.arity()) - 1;
  if (k + l < -1) throw ShapeError("NR bracket of two degree -1 elements leaves the grading");
  const std::size_t arity = a.arity() + b.arity() - 1;
  const auto bases = alternating_bases(n, std::max(arity, std::max(a.arity(), b.arity())));
  Vec out(binomial(n, arity) * n);
  const Vec& x = a.flatten();
  const Vec& y = b.flatten();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (sgn(y[j]) == 0) continue;
      axpy(out, x[i] * y[j], nr_basis_bracket_with(bases, n, k, i, l, j));
    }
  }
  return MultiMap::unflatten(Flavor::alternating, arity, n, n, std::move(out));
}

Dgla nr_dgla(std::size_t n, int lo, int hi) {
  if (lo < -1 || hi < lo) throw ShapeError("NR window must satisfy -1 <= lo <= hi");
  std::vector<std::size_t> dims;
  std::vector<Mat> diffs;
  for (int k = lo; k <= hi; ++k) {
    dims.push_back(binomial(n, static_cast<std::size_t>(k + 1)) * n);
    if (k > lo) diffs.emplace_back(dims.back(), dims[dims.size() - 2]);
  }
  const auto bases = alternating_bases(n, static_cast<std::size_t>(hi + 1));
  auto bracket = [&](int i, std::size_t a, int j, std::size_t b) {
    return nr_basis_bracket_with(bases, n, i, a, j, b);
  };
  return Dgla::create("NR(" + std::to_string(n) + ")", lo, std::move(dims), std::move(diffs), bracket);
}

TwoRouteCheck lie_check(const MultiMap& mu) {
  require_square_alternating(mu, "lie_check");
  if (mu.arity() != 2) throw ShapeError("lie_check needs an arity-2 map");
  const std::size_t n = mu.dim_in();
  Vec c(n * n * n);
  for (std::size_t t = 0; t < mu.tuples().size(); ++t) {
    const auto ij = mu.tuples().tuple(t);
    for (std::size_t k = 0; k < n; ++k) {
      c[(ij[0] * n + ij[1]) * n + k] = mu.coeff(t, k);
      c[(ij[1] * n + ij[0]) * n + k] = -mu.coeff(t, k);
    }
  }
  TwoRouteCheck r;
  r.direct = !jacobi_failure(n, c).has_value();
  r.maurer_cartan = is_zero(nr_bracket(mu, mu).flatten());
  return r;
}

bool is_lie(const MultiMap& mu) {
  const TwoRouteCheck r = lie_check(mu);
  if (!r.agree()) throw std::logic_error("Jacobi and Maurer-Cartan routes disagree");
  return r.direct;
}

CochainComplex ce_complex(const LieAlgebra& algebra, const Representation& rho, int max_degree) {
  if (max_degree < 1) throw ShapeError("CE complex needs max_degree >= 1");
  if (rho.algebra_dim() != algebra.dim()) throw ShapeError("representation belongs to another algebra");
  const std::size_t n = algebra.dim();
  const std::size_t m = rho.dim();
  const auto bases = alternating_bases(n, static_cast<std::size_t>(max_degree));
  std::vector<std::size_t> dims;
  for (int k = 0; k <= max_degree; ++k) dims.push_back(bases[static_cast<std::size_t>(k)].size() * m);
  std::vector<Mat> diffs;
  for (int k = 0; k < max_degree; ++k) {
    const TupleBasis& src = bases[static_cast<std::size_t>(k)];
    const TupleBasis& dst = bases[static_cast<std::size_t>(k + 1)];
    Mat d(dst.size() * m, src.size() * m);
    for (std::size_t jt = 0; jt < dst.size(); ++jt) {
      const auto J = dst.tuple(jt);
      // sum_i (-1)^i rho(x_i) a(.. ^x_i ..)
      for (std::size_t i = 0; i < J.size(); ++i) {
        std::vector<std::uint32_t> rest;
        for (std::size_t r = 0; r < J.size(); ++r)
          if (r != i) rest.push_back(J[r]);
        const std::size_t t = src.index_of(rest);
        const Mat& act = rho.action(J[i]);
        const Rational s = (i % 2) ? -1 : 1;
        for (std::size_t w = 0; w < m; ++w)
          for (std::size_t w0 = 0; w0 < m; ++w0)
            if (sgn(act(w, w0)) != 0) d(jt * m + w, t * m + w0) += s * act(w, w0);
      }
      // sum_{i<j} (-1)^{i+j} a([x_i, x_j], .. ^x_i .. ^x_j ..)
      for (std::size_t i = 0; i < J.size(); ++i)
        for (std::size_t j = i + 1; j < J.size(); ++j)
          for (std::uint32_t c = 0; c < n; ++c) {
            const Rational& coef = algebra.constant(J[i], J[j], c);
            if (sgn(coef) == 0) continue;
            std::vector<std::uint32_t> args{c};
            for (std::size_t r = 0; r < J.size(); ++r)
              if (r != i && r != j) args.push_back(J[r]);
            const int sign = sort_with_sign(args);
            if (sign == 0) continue;
            const std::size_t t = src.index_of(args);
            const Rational s = ((i + j) % 2 ? -sign : sign) * coef;
            for (std::size_t w = 0; w < m; ++w) d(jt * m + w, t * m + w) += s;
          }
    }
    diffs.push_back(std::move(d));
  }
  return CochainComplex(0, std::move(dims), std::move(diffs));
}

int nr_ce_sign(int nr_degree) { return (nr_degree % 2 == 0) ? 1 : -1; }

bool adjoint_twist_agreement(const LieAlgebra& algebra) {
  const std::size_t n = algebra.dim();
  const Dgla g = nr_dgla(n, -1, 3);
  const std::vector<Mat> tw = twist(g, algebra.structure_map().flatten());
  const CochainComplex ce = ce_complex(algebra, Representation::adjoint(algebra), 4);
  for (int k = -1; k <= 2; ++k) {
    const Mat& a = tw[static_cast<std::size_t>(k + 1)];
    const Mat b = Rational(nr_ce_sign(k)) * ce.differential(k + 1);
    if (!(a == b)) return false;
  }
  return true;
}

Verdict lie_rigidity(const LieAlgebra& algebra) {
  const std::size_t n = algebra.dim();
  const Dgla g = nr_dgla(n, -1, 3).twisted(algebra.structure_map().flatten(), "NR(" + std::to_string(n) + ")+[mu,-]");
  const CochainComplex c = quotient_complex(g, DglaSub::zero(g), zero_vec(g.dim(1)));
  Verdict v = verdict_from_complex("lie-rigidity", "H^2_CE(V,V)", c, 1, {0, 1, 2}, 2, "rigid");
  const CochainComplex ce = ce_complex(algebra, Representation::adjoint(algebra), 3);
  for (int k = 0; k <= 2; ++k)
    if (ce.cohomology(k) != v.cohomology_dims.at(k)) v.routes_agree = false;
  return v;
}

}  // namespace dgla
