#include "dgla/dgla.hpp"

#include <algorithm>
#include <string>

#include "dgla/errors.hpp"

namespace dgla {

namespace {

bool odd(int k) { return (k % 2) != 0; }

// Dense scratch vector that remembers which slots were touched.
class Accumulator {
 public:
  explicit Accumulator(std::size_t n) : values_(n), mark_(n, 0) {}

  void add(std::uint32_t i, const Rational& x) {
    if (!mark_[i]) {
      mark_[i] = 1;
      touched_.push_back(i);
    }
    values_[i] += x;
  }

  void add_scaled(const Rational& s, const SparseVec& v) {
    for (const auto& [i, x] : v) {
      tmp_ = s * x;
      add(i, tmp_);
    }
  }

  void add_sparse(const SparseVec& v, bool negate) {
    for (const auto& [i, x] : v) {
      if (negate) {
        tmp_ = -x;
        add(i, tmp_);
      } else {
        add(i, x);
      }
    }
  }

  bool is_zero() const {
    for (auto i : touched_)
      if (sgn(values_[i]) != 0) return false;
    return true;
  }

  SparseVec take() {
    SparseVec out;
    std::sort(touched_.begin(), touched_.end());
    for (auto i : touched_)
      if (sgn(values_[i]) != 0) out.emplace_back(i, values_[i]);
    clear();
    return out;
  }

  void clear() {
    for (auto i : touched_) {
      values_[i] = 0;
      mark_[i] = 0;
    }
    touched_.clear();
  }

 private:
  Vec values_;
  std::vector<char> mark_;
  std::vector<std::uint32_t> touched_;
  Rational tmp_;
};

std::vector<SparseVec> sparse_columns(const Mat& m) {
  std::vector<SparseVec> cols(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (sgn(m(i, j)) != 0) cols[j].emplace_back(static_cast<std::uint32_t>(i), m(i, j));
  return cols;
}

std::string where(int k, std::size_t a) { return "deg " + std::to_string(k) + " #" + std::to_string(a); }

}  // namespace

using BracketTables = std::vector<std::vector<SparseVec>>;

struct Dgla::State {
  std::string name;
  int lo = 0;
  std::vector<std::size_t> dims;
  std::vector<Mat> diff;
  std::vector<std::vector<SparseVec>> diff_cols;
  std::shared_ptr<const BracketTables> tables;

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  std::size_t width() const { return dims.size(); }
  std::size_t slot(int k) const { return static_cast<std::size_t>(k - lo); }
  bool in(int k) const { return k >= lo && k <= hi(); }

  const std::vector<SparseVec>& table(int i, int j) const {
    return (*tables)[slot(i) * width() + slot(j)];
  }
  const SparseVec& entry(int i, std::size_t a, int j, std::size_t b) const {
    return table(i, j)[a * dims[slot(j)] + b];
  }
};

Dgla Dgla::create(std::string name, int lo, std::vector<std::size_t> dims, std::vector<Mat> differentials,
                  const BasisBracket& bracket) {
  if (dims.empty()) throw ShapeError("a DGLA needs a nonempty degree window");
  if (differentials.size() + 1 != dims.size())
    throw ShapeError("expected " + std::to_string(dims.size() - 1) + " differentials");
  auto state = std::make_shared<State>();
  state->name = std::move(name);
  state->lo = lo;
  state->dims = std::move(dims);
  state->diff = std::move(differentials);
  for (std::size_t s = 0; s + 1 < state->dims.size(); ++s) {
    const Mat& d = state->diff[s];
    if (d.cols() != state->dims[s] || d.rows() != state->dims[s + 1])
      throw ShapeError("differential out of degree " + std::to_string(lo + static_cast<int>(s)) + " has wrong shape");
    state->diff_cols.push_back(sparse_columns(d));
  }
  auto tables = std::make_shared<BracketTables>(state->width() * state->width());
  for (int i = lo; i <= state->hi(); ++i) {
    for (int j = lo; j <= state->hi(); ++j) {
      if (!state->in(i + j)) continue;
      const std::size_t di = state->dims[state->slot(i)];
      const std::size_t dj = state->dims[state->slot(j)];
      const std::size_t dout = state->dims[state->slot(i + j)];
      auto& t = (*tables)[state->slot(i) * state->width() + state->slot(j)];
      t.resize(di * dj);
      for (std::size_t a = 0; a < di; ++a) {
        for (std::size_t b = 0; b < dj; ++b) {
          SparseVec v = normalize_sparse(bracket(i, a, j, b));
          for (const auto& e : v)
            if (e.first >= dout) throw ShapeError("bracket value index out of range at " + where(i, a) + ", " + where(j, b));
          t[a * dj + b] = std::move(v);
        }
      }
    }
  }
  state->tables = std::move(tables);
  Dgla g(std::move(state));
  g.validate_differential();
  g.validate_bracket();
  return g;
}

Dgla Dgla::twisted(const Vec& q, std::string name) const {
  auto state = std::make_shared<State>(*state_);
  state->name = name.empty() ? state_->name + "+[q,-]" : std::move(name);
  state->diff = twist(*this, q);
  state->diff_cols.clear();
  for (const auto& d : state->diff) state->diff_cols.push_back(sparse_columns(d));
  // The bracket table is shared with an already validated DGLA.
  Dgla g(std::move(state));
  g.validate_differential();
  return g;
}

Dgla Dgla::direct_sum(const Dgla& a, const Dgla& b, std::string name) {
  if (a.min_degree() != b.min_degree() || a.max_degree() != b.max_degree())
    throw ShapeError("direct sum needs equal degree windows");
  const int lo = a.min_degree();
  std::vector<std::size_t> dims;
  std::vector<Mat> diffs;
  for (int k = lo; k <= a.max_degree(); ++k) {
    dims.push_back(a.dim(k) + b.dim(k));
    if (k < a.max_degree()) diffs.push_back(Mat::block_diag(a.differential(k), b.differential(k)));
  }
  auto bracket = [&](int i, std::size_t x, int j, std::size_t y) -> SparseVec {
    const std::size_t ai = a.dim(i);
    const std::size_t aj = a.dim(j);
    if (x < ai && y < aj) return a.basis_bracket(i, x, j, y);
    if (x >= ai && y >= aj) {
      SparseVec v = b.basis_bracket(i, x - ai, j, y - aj);
      const auto shift = static_cast<std::uint32_t>(a.dim(i + j));
      for (auto& e : v) e.first += shift;
      return v;
    }
    return {};
  };
  return create(name.empty() ? a.name() + "+" + b.name() : std::move(name), lo, std::move(dims), std::move(diffs),
                bracket);
}

void Dgla::verify() const {
  validate_differential();
  validate_bracket();
}

const std::string& Dgla::name() const { return state_->name; }
int Dgla::min_degree() const { return state_->lo; }
int Dgla::max_degree() const { return state_->hi(); }

std::size_t Dgla::dim(int k) const { return has_degree(k) ? state_->dims[state_->slot(k)] : 0; }

const Mat& Dgla::differential(int k) const {
  if (k < min_degree() || k >= max_degree())
    throw ShapeError("no differential out of degree " + std::to_string(k) + " in " + name());
  return state_->diff[state_->slot(k)];
}

Vec Dgla::apply_differential(int k, const Vec& x) const {
  if (x.size() != dim(k)) throw ShapeError("element has wrong dimension for degree " + std::to_string(k));
  return differential(k) * x;
}

const SparseVec& Dgla::basis_bracket(int i, std::size_t a, int j, std::size_t b) const {
  if (!has_degree(i) || !has_degree(j) || !has_degree(i + j))
    throw ShapeError("bracket of degrees " + std::to_string(i) + ", " + std::to_string(j) + " leaves the window");
  return state_->entry(i, a, j, b);
}

Vec Dgla::bracket(int i, const Vec& x, int j, const Vec& y) const {
  if (x.size() != dim(i) || y.size() != dim(j)) throw ShapeError("bracket operands have wrong dimension");
  if (!has_degree(i + j))
    throw ShapeError("bracket of degrees " + std::to_string(i) + ", " + std::to_string(j) + " leaves the window");
  Vec out(dim(i + j));
  Rational w;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (sgn(x[a]) == 0) continue;
    for (std::size_t b = 0; b < y.size(); ++b) {
      if (sgn(y[b]) == 0) continue;
      w = x[a] * y[b];
      axpy(out, w, state_->entry(i, a, j, b));
    }
  }
  return out;
}

Mat Dgla::bracket_matrix(int i, const Vec& x, int j) const {
  if (x.size() != dim(i)) throw ShapeError("bracket operand has wrong dimension");
  if (!has_degree(i + j) || !has_degree(j))
    throw ShapeError("bracket of degrees " + std::to_string(i) + ", " + std::to_string(j) + " leaves the window");
  Mat m(dim(i + j), dim(j));
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (sgn(x[a]) == 0) continue;
    for (std::size_t b = 0; b < dim(j); ++b)
      for (const auto& [r, v] : state_->entry(i, a, j, b)) m(r, b) += x[a] * v;
  }
  return m;
}

void Dgla::validate_differential() const {
  const State& s = *state_;
  for (int k = s.lo; k + 1 < s.hi(); ++k)
    if (!(differential(k + 1) * differential(k)).is_zero())
      throw InvariantViolation(name() + ": d^2 != 0 out of degree " + std::to_string(k));

  // d[x,y] = [dx,y] + (-1)^|x| [x,dy] on basis pairs.
  for (int i = s.lo; i < s.hi(); ++i) {
    for (int j = s.lo; j < s.hi(); ++j) {
      if (!s.in(i + j) || !s.in(i + j + 1)) continue;
      Accumulator acc(s.dims[s.slot(i + j + 1)]);
      const auto& dcols_i = s.diff_cols[s.slot(i)];
      const auto& dcols_j = s.diff_cols[s.slot(j)];
      const auto& dcols_ij = s.diff_cols[s.slot(i + j)];
      for (std::size_t a = 0; a < s.dims[s.slot(i)]; ++a) {
        for (std::size_t b = 0; b < s.dims[s.slot(j)]; ++b) {
          for (const auto& [t, v] : s.entry(i, a, j, b)) acc.add_scaled(v, dcols_ij[t]);
          for (const auto& [t, v] : dcols_i[a]) acc.add_scaled(-v, s.entry(i + 1, t, j, b));
          for (const auto& [t, v] : dcols_j[b]) acc.add_scaled(odd(i) ? Rational(v) : Rational(-v), s.entry(i, a, j + 1, t));
          if (!acc.is_zero())
            throw InvariantViolation(name() + ": graded Leibniz rule fails on (" + where(i, a) + ", " + where(j, b) + ")");
          acc.clear();
        }
      }
    }
  }
}

void Dgla::validate_bracket() const {
  const State& s = *state_;
  // [x,y] = -(-1)^{|x||y|} [y,x]
  for (int i = s.lo; i <= s.hi(); ++i) {
    for (int j = i; j <= s.hi(); ++j) {
      if (!s.in(i + j)) continue;
      const bool flip = !odd(i * j);
      Accumulator acc(s.dims[s.slot(i + j)]);
      for (std::size_t a = 0; a < s.dims[s.slot(i)]; ++a) {
        for (std::size_t b = (i == j ? a : 0); b < s.dims[s.slot(j)]; ++b) {
          acc.add_sparse(s.entry(i, a, j, b), false);
          acc.add_sparse(s.entry(j, b, i, a), !flip);
          if (!acc.is_zero())
            throw InvariantViolation(name() + ": graded skew-symmetry fails on (" + where(i, a) + ", " + where(j, b) + ")");
          acc.clear();
        }
      }
    }
  }

  // Cyclic form (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0.
  // Given skew-symmetry it is enough to test sorted triples.
  for (int i = s.lo; i <= s.hi(); ++i) {
    for (int j = i; j <= s.hi(); ++j) {
      for (int k = j; k <= s.hi(); ++k) {
        if (!s.in(i + j) || !s.in(j + k) || !s.in(i + k) || !s.in(i + j + k)) continue;
        const std::size_t di = s.dims[s.slot(i)];
        const std::size_t dj = s.dims[s.slot(j)];
        const std::size_t dk = s.dims[s.slot(k)];
        Accumulator acc(s.dims[s.slot(i + j + k)]);
        const Rational s1 = odd(i * k) ? -1 : 1;
        const Rational s2 = odd(j * i) ? -1 : 1;
        const Rational s3 = odd(k * j) ? -1 : 1;
        Rational w;
        for (std::size_t a = 0; a < di; ++a) {
          for (std::size_t b = (i == j ? a : 0); b < dj; ++b) {
            const SparseVec& xy = s.entry(i, a, j, b);
            for (std::size_t c = (j == k ? b : 0); c < dk; ++c) {
              for (const auto& [t, v] : s.entry(j, b, k, c)) {
                w = s1 * v;
                acc.add_scaled(w, s.entry(i, a, j + k, t));
              }
              for (const auto& [t, v] : s.entry(k, c, i, a)) {
                w = s2 * v;
                acc.add_scaled(w, s.entry(j, b, k + i, t));
              }
              for (const auto& [t, v] : xy) {
                w = s3 * v;
                acc.add_scaled(w, s.entry(k, c, i + j, t));
              }
              if (!acc.is_zero())
                throw InvariantViolation(name() + ": graded Jacobi identity fails on (" + where(i, a) + ", " +
                                         where(j, b) + ", " + where(k, c) + ")");
              acc.clear();
            }
          }
        }
      }
    }
  }
}

Vec mc_curvature(const Dgla& g, const Vec& q) {
  if (q.size() != g.dim(1)) throw ShapeError("Maurer-Cartan candidate must have the degree-1 dimension");
  Vec r = g.apply_differential(1, q);
  const Vec qq = g.bracket(1, q, 1, q);
  const Rational half(1, 2);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += half * qq[i];
  return r;
}

bool is_maurer_cartan(const Dgla& g, const Vec& q) { return is_zero(mc_curvature(g, q)); }

std::vector<Mat> twist(const Dgla& g, const Vec& q) {
  if (!is_maurer_cartan(g, q)) throw NotMaurerCartan("element is not Maurer-Cartan in " + g.name());
  std::vector<Mat> out;
  for (int k = g.min_degree(); k < g.max_degree(); ++k) {
    Mat d = g.differential(k);
    if (g.has_degree(k + 1) && g.has_degree(1 + k)) d = d + g.bracket_matrix(1, q, k);
    out.push_back(std::move(d));
  }
  return out;
}

DglaSub DglaSub::create(Dgla parent, std::vector<Subspace> spaces) {
  const int lo = parent.min_degree();
  const int hi = parent.max_degree();
  if (spaces.size() != static_cast<std::size_t>(hi - lo + 1)) throw ShapeError("need one subspace per degree");
  DglaSub h;
  h.parent_ = std::move(parent);
  h.spaces_ = std::move(spaces);
  for (int k = lo; k <= hi; ++k) {
    const Subspace& s = h.spaces_[static_cast<std::size_t>(k - lo)];
    if (s.ambient_dim() != h.parent_.dim(k)) throw ShapeError("subspace in degree " + std::to_string(k) + " has wrong ambient dimension");
    h.splittings_.push_back(quotient_data(s.ambient_dim(), s));
  }
  const Dgla& g = h.parent_;

  for (int k = lo; k < hi; ++k) {
    const Mat image = h.splitting(k + 1).projection * (g.differential(k) * h.space(k).basis());
    if (!image.is_zero())
      throw InvariantViolation("subspace is not closed under the differential out of degree " + std::to_string(k));
  }

  for (int i = lo; i <= hi; ++i) {
    for (int j = i; j <= hi; ++j) {
      if (!g.has_degree(i + j) || h.codim(i + j) == 0) continue;
      const auto proj_cols = [&] {
        std::vector<SparseVec> cols(g.dim(i + j));
        const Mat& p = h.splitting(i + j).projection;
        for (std::size_t c = 0; c < p.cols(); ++c)
          for (std::size_t r = 0; r < p.rows(); ++r)
            if (sgn(p(r, c)) != 0) cols[c].emplace_back(static_cast<std::uint32_t>(r), p(r, c));
        return cols;
      }();
      std::vector<SparseVec> xs, ys;
      for (std::size_t a = 0; a < h.space(i).dim(); ++a) xs.push_back(to_sparse(h.space(i).basis_vector(a)));
      for (std::size_t b = 0; b < h.space(j).dim(); ++b) ys.push_back(to_sparse(h.space(j).basis_vector(b)));
      Accumulator br(g.dim(i + j));
      Accumulator proj(h.codim(i + j));
      Rational w;
      for (std::size_t a = 0; a < xs.size(); ++a) {
        for (std::size_t b = (i == j ? a : 0); b < ys.size(); ++b) {
          for (const auto& [ta, va] : xs[a])
            for (const auto& [tb, vb] : ys[b]) {
              w = va * vb;
              br.add_scaled(w, g.basis_bracket(i, ta, j, tb));
            }
          for (const auto& [t, v] : br.take()) proj.add_scaled(v, proj_cols[t]);
          if (!proj.is_zero())
            throw InvariantViolation("subspace is not closed under the bracket of degrees " + std::to_string(i) + " and " +
                                     std::to_string(j) + " (basis vectors " + std::to_string(a) + ", " +
                                     std::to_string(b) + ")");
          proj.clear();
        }
      }
    }
  }
  return h;
}

DglaSub DglaSub::zero(const Dgla& parent) {
  std::vector<Subspace> spaces;
  for (int k = parent.min_degree(); k <= parent.max_degree(); ++k) spaces.push_back(Subspace::zero(parent.dim(k)));
  return create(parent, std::move(spaces));
}

DglaSub DglaSub::full(const Dgla& parent) {
  std::vector<Subspace> spaces;
  for (int k = parent.min_degree(); k <= parent.max_degree(); ++k) spaces.push_back(Subspace::full(parent.dim(k)));
  return create(parent, std::move(spaces));
}

const Subspace& DglaSub::space(int k) const {
  if (!parent_.has_degree(k)) throw ShapeError("degree " + std::to_string(k) + " outside the window");
  return spaces_[static_cast<std::size_t>(k - parent_.min_degree())];
}

const QuotientData& DglaSub::splitting(int k) const {
  if (!parent_.has_degree(k)) throw ShapeError("degree " + std::to_string(k) + " outside the window");
  return splittings_[static_cast<std::size_t>(k - parent_.min_degree())];
}

std::size_t DglaSub::codim(int k) const { return parent_.dim(k) - space(k).dim(); }

bool DglaSub::contains(int k, const Vec& x) const { return is_zero(splitting(k).projection * x); }

CochainComplex quotient_complex(const Dgla& g, const DglaSub& h, const Vec& q) {
  if (q.size() != g.dim(1)) throw ShapeError("Maurer-Cartan element has wrong dimension");
  if (h.parent().dim(1) != g.dim(1) || h.parent().min_degree() != g.min_degree() ||
      h.parent().max_degree() != g.max_degree())
    throw ShapeError("subalgebra belongs to a different DGLA");
  if (!h.contains(1, q)) throw ShapeError("Maurer-Cartan element does not lie in the subalgebra");
  const std::vector<Mat> d = twist(g, q);
  std::vector<std::size_t> dims;
  std::vector<Mat> bars;
  for (int k = g.min_degree(); k <= g.max_degree(); ++k) {
    dims.push_back(h.codim(k));
    if (k < g.max_degree())
      bars.push_back(h.splitting(k + 1).projection *
                     (d[static_cast<std::size_t>(k - g.min_degree())] * h.splitting(k).complement.basis()));
  }
  return CochainComplex(g.min_degree(), std::move(dims), std::move(bars));
}

Verdict stability_criterion(const Dgla& g, const DglaSub& h, const Vec& q) {
  if (g.min_degree() > 0 || g.max_degree() < 2) throw ShapeError("degree window must contain 0, 1 and 2");
  const CochainComplex c = quotient_complex(g, h, q);
  Verdict v;
  v.criterion = "dgla-stability";
  v.obstruction = "H^1(g/h)";
  v.cohomology_dims[0] = c.cohomology(0);
  v.cohomology_dims[1] = c.cohomology(1);
  v.obstruction_degree = 1;
  v.tangent_dim = c.cocycle_dim(0);
  v.passes = v.cohomology_dims[1] == 0;
  return v;
}

Verdict verdict_from_complex(std::string criterion, std::string obstruction, const CochainComplex& c, int shift,
                             const std::vector<int>& labels, int obstruction_label, std::string success_label) {
  Verdict v;
  v.criterion = std::move(criterion);
  v.obstruction = std::move(obstruction);
  for (int label : labels) v.cohomology_dims[label] = c.cohomology(label - shift);
  v.obstruction_degree = obstruction_label;
  v.tangent_dim = c.cocycle_dim(0);
  v.passes = v.cohomology_dims.at(obstruction_label) == 0;
  v.success_label = std::move(success_label);
  return v;
}

}  // namespace dgla
