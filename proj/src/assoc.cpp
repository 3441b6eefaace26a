#include "dgla/assoc.hpp"

#include <stdexcept>
#include <string>

#include "dgla/errors.hpp"

namespace dgla {

namespace {

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

std::vector<TupleBasis> tensor_bases(std::size_t n, std::size_t max_arity) {
  std::vector<TupleBasis> out;
  for (std::size_t a = 0; a <= max_arity; ++a) out.emplace_back(Flavor::tensor, a, n);
  return out;
}

bool odd(int k) { return (k % 2) != 0; }

// f o g on basis elements: f = dx^I (x) e_p of degree k, g = dx^J (x) e_q of
// degree l, accumulated with factor s.
void compose(const TupleBasis& target, std::size_t n, std::span<const std::uint32_t> I, std::uint32_t p,
             std::span<const std::uint32_t> J, std::uint32_t q, int l, int s, SparseVec& acc) {
  std::vector<std::uint32_t> t;
  for (std::size_t i = 0; i < I.size(); ++i) {
    if (I[i] != q) continue;
    t.assign(I.begin(), I.begin() + static_cast<std::ptrdiff_t>(i));
    t.insert(t.end(), J.begin(), J.end());
    t.insert(t.end(), I.begin() + static_cast<std::ptrdiff_t>(i) + 1, I.end());
    const int sign = odd(static_cast<int>(i) * l) ? -s : s;
    acc.emplace_back(static_cast<std::uint32_t>(target.index_of(t) * n + p), Rational(sign));
  }
}

SparseVec g_basis_bracket_with(const std::vector<TupleBasis>& bases, std::size_t n, int k, std::size_t a, int l,
                               std::size_t b) {
  const int arity = k + l + 1;
  if (arity < 0) return {};
  const auto I = bases[static_cast<std::size_t>(k + 1)].tuple(a / n);
  const auto p = static_cast<std::uint32_t>(a % n);
  const auto J = bases[static_cast<std::size_t>(l + 1)].tuple(b / n);
  const auto q = static_cast<std::uint32_t>(b % n);
  const TupleBasis& target = bases[static_cast<std::size_t>(arity)];
  SparseVec acc;
  compose(target, n, I, p, J, q, l, 1, acc);
  compose(target, n, J, q, I, p, k, odd(k * l) ? 1 : -1, acc);
  return normalize_sparse(std::move(acc));
}

void require_square_tensor(const MultiMap& m, const char* what) {
  if (m.flavor() != Flavor::tensor || m.dim_in() != m.dim_out())
    throw ShapeError(std::string(what) + " needs tensor maps V^k -> V");
}

}  // namespace

AssocAlgebra AssocAlgebra::create(std::size_t n, Vec constants, std::optional<Vec> unit, std::string name) {
  if (constants.size() != n * n * n)
    throw ShapeError("expected " + std::to_string(n * n * n) + " structure constants, got " +
                     std::to_string(constants.size()));
  if (auto bad = associativity_failure(n, constants))
    throw InvariantViolation("associativity fails on basis triple " + triple((*bad)[0], (*bad)[1], (*bad)[2]));
  AssocAlgebra a;
  a.n_ = n;
  a.c_ = std::move(constants);
  a.name_ = std::move(name);
  if (unit) {
    if (unit->size() != n) throw ShapeError("unit has wrong dimension");
    for (std::size_t i = 0; i < n; ++i) {
      const Vec e = unit_vec(n, i);
      if (a.multiply(*unit, e) != e)
        throw InvariantViolation("unit fails on the left at basis vector " + std::to_string(i));
      if (a.multiply(e, *unit) != e)
        throw InvariantViolation("unit fails on the right at basis vector " + std::to_string(i));
    }
    a.unit_ = std::move(unit);
  }
  return a;
}

AssocAlgebra AssocAlgebra::from_map(const MultiMap& m, std::optional<Vec> unit, std::string name) {
  require_square_tensor(m, "an associative multiplication");
  if (m.arity() != 2) throw ShapeError("a multiplication has arity 2");
  return create(m.dim_in(), m.flatten(), std::move(unit), std::move(name));
}

AssocAlgebra AssocAlgebra::matrix_algebra(std::size_t r) {
  const std::size_t n = r * r;
  Vec c(n * n * n);
  Vec u(n);
  for (std::size_t i = 0; i < r; ++i) {
    u[i * r + i] = 1;
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t l = 0; l < r; ++l) c[((i * r + j) * n + j * r + l) * n + i * r + l] = 1;
  }
  return create(n, std::move(c), std::move(u), "M" + std::to_string(r));
}

Vec AssocAlgebra::multiply(const Vec& x, const Vec& y) const {
  if (x.size() != n_ || y.size() != n_) throw ShapeError("product operands have wrong dimension");
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

MultiMap AssocAlgebra::structure_map() const { return MultiMap::unflatten(Flavor::tensor, 2, n_, n_, c_); }

std::optional<std::array<std::size_t, 3>> associativity_failure(std::size_t n, const Vec& c) {
  if (c.size() != n * n * n) throw ShapeError("structure constants have wrong length");
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> const Rational& { return c[(i * n + j) * n + k]; };
  Vec s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        std::fill(s.begin(), s.end(), Rational(0));
        for (std::size_t l = 0; l < n; ++l) {
          if (sgn(at(i, j, l)) != 0)
            for (std::size_t m = 0; m < n; ++m) s[m] += at(i, j, l) * at(l, k, m);
          if (sgn(at(j, k, l)) != 0)
            for (std::size_t m = 0; m < n; ++m) s[m] -= at(j, k, l) * at(i, l, m);
        }
        if (!is_zero(s)) return std::array<std::size_t, 3>{i, j, k};
      }
  return std::nullopt;
}

SparseVec gerstenhaber_basis_bracket(std::size_t n, int k, std::size_t a, int l, std::size_t b) {
  if (k < -1 || l < -1) throw ShapeError("Gerstenhaber degrees start at -1");
  const auto top = static_cast<std::size_t>(std::max(k + l + 1, std::max(k, l) + 1));
  return g_basis_bracket_with(tensor_bases(n, top), n, k, a, l, b);
}

MultiMap gerstenhaber_bracket(const MultiMap& a, const MultiMap& b) {
  require_square_tensor(a, "the Gerstenhaber bracket");
  require_square_tensor(b, "the Gerstenhaber bracket");
  if (a.dim_in() != b.dim_in()) throw ShapeError("Gerstenhaber bracket operands live on different spaces");
  const std::size_t n = a.dim_in();
  const int k = static_cast<int>(a.arity()) - 1;
  const int l = static_cast<int>(b.arity()) - 1;
  if (k + l < -1) throw ShapeError("Gerstenhaber bracket of two degree -1 elements leaves the grading");
  const std::size_t arity = a.arity() + b.arity() - 1;
  const auto bases = tensor_bases(n, std::max(arity, std::max(a.arity(), b.arity())));
  Vec out(bases[arity].size() * n);
  const Vec& x = a.flatten();
  const Vec& y = b.flatten();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (sgn(y[j]) == 0) continue;
      axpy(out, x[i] * y[j], g_basis_bracket_with(bases, n, k, i, l, j));
    }
  }
  return MultiMap::unflatten(Flavor::tensor, arity, n, n, std::move(out));
}

Dgla g_dgla(std::size_t n, int lo, int hi) {
  if (lo < -1 || hi < lo) throw ShapeError("Gerstenhaber window must satisfy -1 <= lo <= hi");
  std::vector<std::size_t> dims;
  std::vector<Mat> diffs;
  const auto bases = tensor_bases(n, static_cast<std::size_t>(hi + 1));
  for (int k = lo; k <= hi; ++k) {
    dims.push_back(bases[static_cast<std::size_t>(k + 1)].size() * n);
    if (k > lo) diffs.emplace_back(dims.back(), dims[dims.size() - 2]);
  }
  auto bracket = [&](int i, std::size_t a, int j, std::size_t b) { return g_basis_bracket_with(bases, n, i, a, j, b); };
  return Dgla::create("G(" + std::to_string(n) + ")", lo, std::move(dims), std::move(diffs), bracket);
}

TwoRouteCheck assoc_check(const MultiMap& m) {
  require_square_tensor(m, "assoc_check");
  if (m.arity() != 2) throw ShapeError("assoc_check needs an arity-2 map");
  TwoRouteCheck r;
  r.direct = !associativity_failure(m.dim_in(), m.flatten()).has_value();
  r.maurer_cartan = is_zero(gerstenhaber_bracket(m, m).flatten());
  return r;
}

bool is_assoc(const MultiMap& m) {
  const TwoRouteCheck r = assoc_check(m);
  if (!r.agree()) throw std::logic_error("associativity and Maurer-Cartan routes disagree");
  return r.direct;
}

CochainComplex hochschild_complex(const AssocAlgebra& algebra, int max_degree) {
  if (max_degree < 1) throw ShapeError("Hochschild complex needs max_degree >= 1");
  const std::size_t n = algebra.dim();
  const auto bases = tensor_bases(n, static_cast<std::size_t>(max_degree));
  std::vector<std::size_t> dims;
  for (int k = 0; k <= max_degree; ++k) dims.push_back(bases[static_cast<std::size_t>(k)].size() * n);
  std::vector<Mat> diffs;
  for (int k = 0; k < max_degree; ++k) {
    const TupleBasis& src = bases[static_cast<std::size_t>(k)];
    const TupleBasis& dst = bases[static_cast<std::size_t>(k + 1)];
    Mat d(dst.size() * n, src.size() * n);
    const Rational last = odd(k + 1) ? -1 : 1;
    std::vector<std::uint32_t> t;
    for (std::size_t jt = 0; jt < dst.size(); ++jt) {
      const auto J = dst.tuple(jt);
      // x_1 f(x_2, ..)
      const std::size_t tail = src.index_of(J.subspan(1));
      for (std::size_t w0 = 0; w0 < n; ++w0)
        for (std::size_t w = 0; w < n; ++w)
          if (sgn(algebra.constant(J[0], w0, w)) != 0) d(jt * n + w, tail * n + w0) += algebra.constant(J[0], w0, w);
      // (-1)^i f(.., x_i x_{i+1}, ..)
      for (std::size_t i = 1; i <= static_cast<std::size_t>(k); ++i)
        for (std::uint32_t c = 0; c < n; ++c) {
          const Rational& coef = algebra.constant(J[i - 1], J[i], c);
          if (sgn(coef) == 0) continue;
          t.assign(J.begin(), J.begin() + static_cast<std::ptrdiff_t>(i - 1));
          t.push_back(c);
          t.insert(t.end(), J.begin() + static_cast<std::ptrdiff_t>(i) + 1, J.end());
          const std::size_t col = src.index_of(t);
          const Rational s = (i % 2) ? Rational(-coef) : coef;
          for (std::size_t w = 0; w < n; ++w) d(jt * n + w, col * n + w) += s;
        }
      // (-1)^{k+1} f(x_1..x_k) x_{k+1}
      const std::size_t head = src.index_of(J.first(static_cast<std::size_t>(k)));
      for (std::size_t w0 = 0; w0 < n; ++w0)
        for (std::size_t w = 0; w < n; ++w)
          if (sgn(algebra.constant(w0, J[static_cast<std::size_t>(k)], w)) != 0)
            d(jt * n + w, head * n + w0) += last * algebra.constant(w0, J[static_cast<std::size_t>(k)], w);
    }
    diffs.push_back(std::move(d));
  }
  return CochainComplex(0, std::move(dims), std::move(diffs));
}

int g_hochschild_sign(int g_degree) { return odd(g_degree) ? -1 : 1; }

bool bimodule_twist_agreement(const AssocAlgebra& algebra) {
  const Dgla g = g_dgla(algebra.dim(), -1, 3);
  const std::vector<Mat> tw = twist(g, algebra.structure_map().flatten());
  const CochainComplex h = hochschild_complex(algebra, 4);
  for (int l = -1; l <= 2; ++l) {
    const Mat& a = tw[static_cast<std::size_t>(l + 1)];
    const Mat b = Rational(g_hochschild_sign(l)) * h.differential(l + 1);
    if (!(a == b)) return false;
  }
  return true;
}

Dgla twisted_g_dgla(const AssocAlgebra& algebra) {
  const std::size_t n = algebra.dim();
  return g_dgla(n, -1, 3).twisted(algebra.structure_map().flatten(), "G(" + std::to_string(n) + ")+[m,-]");
}

Verdict assoc_rigidity(const AssocAlgebra& algebra) {
  const Dgla g = twisted_g_dgla(algebra);
  const CochainComplex c = quotient_complex(g, DglaSub::zero(g), zero_vec(g.dim(1)));
  Verdict v = verdict_from_complex("assoc-rigidity", "H^2_H(V,V)", c, 1, {0, 1, 2}, 2, "rigid");
  const CochainComplex h = hochschild_complex(algebra, 3);
  for (int k = 0; k <= 2; ++k)
    if (h.cohomology(k) != v.cohomology_dims.at(k)) v.routes_agree = false;
  return v;
}

DglaSub normalized_subcomplex(const Dgla& twisted, const AssocAlgebra& algebra) {
  if (!algebra.unit()) throw MissingUnit("algebra " + algebra.name() + " has no unit");
  const std::size_t n = algebra.dim();
  if (twisted.dim(-1) != n) throw ShapeError("DGLA does not belong to this algebra");
  const Subspace line = Subspace::span(n, std::vector<Vec>{*algebra.unit()});
  const Mat p = quotient_data(n, line).projection;
  const std::size_t r = p.rows();
  std::vector<Subspace> spaces;
  for (int k = twisted.min_degree(); k <= twisted.max_degree(); ++k) {
    const auto arity = static_cast<std::size_t>(k + 1);
    const TupleBasis src(Flavor::tensor, arity, r);
    const TupleBasis dst(Flavor::tensor, arity, n);
    // Columns: pullbacks of the basis maps of ((V/Qu)*)^{(x) arity} (x) V.
    Mat basis(dst.size() * n, src.size() * n);
    for (std::size_t s = 0; s < src.size(); ++s) {
      const auto T = src.tuple(s);
      for (std::size_t d = 0; d < dst.size(); ++d) {
        const auto I = dst.tuple(d);
        Rational w = 1;
        for (std::size_t slot = 0; slot < arity && sgn(w) != 0; ++slot) w *= p(T[slot], I[slot]);
        if (sgn(w) == 0) continue;
        for (std::size_t out = 0; out < n; ++out) basis(d * n + out, s * n + out) = w;
      }
    }
    spaces.push_back(Subspace::span(dst.size() * n, basis));
  }
  return DglaSub::create(twisted, std::move(spaces));
}

Verdict unitality_stability(const AssocAlgebra& algebra) {
  if (!algebra.unit()) throw MissingUnit("algebra " + algebra.name() + " has no unit");
  const Dgla g = twisted_g_dgla(algebra);
  const DglaSub h = normalized_subcomplex(g, algebra);
  Verdict v = stability_criterion(g, h, zero_vec(g.dim(1)));
  v.criterion = "unitality";
  v.obstruction = "H^1(g/h_norm)";
  v.success_label = "stable";
  return v;
}

}  // namespace dgla
