#include "algebra_file.hpp"

#include <fstream>
#include <map>
#include <tuple>

#include "dgla/errors.hpp"
#include "dgla/rational.hpp"

namespace dgla::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError((where.empty() ? std::string("file") : where) + ": " + what);
}

const json& field(const json& obj, const std::string& path, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing key \"" + key + "\"");
  return *it;
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> keys) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (auto k : keys) ok = ok || it.key() == k;
    if (!ok) fail(path, "unexpected key \"" + it.key() + "\"");
  }
}

const json& object_at(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::size_t index_at(const json& j, const std::string& path, std::size_t bound) {
  if (!j.is_number_integer()) fail(path, "expected a non-negative integer");
  const auto v = j.get<long long>();
  if (v < 0 || static_cast<unsigned long long>(v) >= bound)
    fail(path, "index " + std::to_string(v) + " out of range 0.." + std::to_string(bound - 1));
  return static_cast<std::size_t>(v);
}

std::size_t dim_at(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a non-negative integer");
  const auto v = j.get<long long>();
  if (v > 64) fail(path, "dimension " + std::to_string(v) + " is too large");
  return static_cast<std::size_t>(v);
}

Rational rational_at(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
}

Vec vector_at(const json& j, const std::string& path, std::size_t n) {
  array_at(j, path);
  if (j.size() != n) fail(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rational_at(j[i], at(path, i)));
  return v;
}

std::string name_at(const json& obj, const std::string& path) {
  auto it = obj.find("name");
  if (it == obj.end()) return {};
  if (!it->is_string()) fail(at(path, "name"), "expected a string");
  return it->get<std::string>();
}

// Rethrow library invariant failures with the location that triggered them.
template <class F>
auto located(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const InvariantViolation& e) {
    throw InvariantViolation((where.empty() ? std::string("file") : where) + ": " + e.what());
  }
}

Vec lie_constants(const json& structure, const std::string& path, std::size_t n) {
  array_at(structure, path);
  Vec c = zero_vec(n * n * n);
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> seen;
  for (std::size_t e = 0; e < structure.size(); ++e) {
    const std::string p = at(path, e);
    const json& entry = object_at(structure[e], p);
    only_keys(entry, p, {"i", "j", "k", "value"});
    const std::size_t i = index_at(field(entry, p, "i"), at(p, "i"), n);
    const std::size_t j = index_at(field(entry, p, "j"), at(p, "j"), n);
    const std::size_t k = index_at(field(entry, p, "k"), at(p, "k"), n);
    const Rational v = rational_at(field(entry, p, "value"), at(p, "value"));
    if (i == j) {
      if (!is_zero(v)) throw InvariantViolation(p + ": antisymmetry forces c(i,i,k) = 0");
      continue;
    }
    const auto key = std::make_tuple(std::min(i, j), std::max(i, j), k);
    if (auto it = seen.find(key); it != seen.end())
      fail(p, "duplicate entry, (i,j,k) already given up to order in " + at(path, it->second));
    seen.emplace(key, e);
    c[(i * n + j) * n + k] = v;
    c[(j * n + i) * n + k] = -v;
  }
  return c;
}

Vec assoc_constants(const json& structure, const std::string& path, std::size_t n) {
  array_at(structure, path);
  Vec c = zero_vec(n * n * n);
  std::map<std::size_t, std::size_t> seen;
  for (std::size_t e = 0; e < structure.size(); ++e) {
    const std::string p = at(path, e);
    const json& entry = object_at(structure[e], p);
    only_keys(entry, p, {"i", "j", "k", "value"});
    const std::size_t i = index_at(field(entry, p, "i"), at(p, "i"), n);
    const std::size_t j = index_at(field(entry, p, "j"), at(p, "j"), n);
    const std::size_t k = index_at(field(entry, p, "k"), at(p, "k"), n);
    const std::size_t flat = (i * n + j) * n + k;
    if (auto it = seen.find(flat); it != seen.end()) fail(p, "duplicate entry, also given in " + at(path, it->second));
    seen.emplace(flat, e);
    c[flat] = rational_at(field(entry, p, "value"), at(p, "value"));
  }
  return c;
}

LieAlgebra lie_block(const json& obj, const std::string& path) {
  const std::size_t n = dim_at(field(obj, path, "dim"), at(path, "dim"));
  const std::string sp = at(path, "structure");
  Vec c = lie_constants(field(obj, path, "structure"), sp, n);
  std::string name = name_at(obj, path);
  return located(sp, [&] { return LieAlgebra::create(n, std::move(c), std::move(name)); });
}

std::vector<NamedSubspace> subspaces_at(const json& doc, std::size_t n, const LieAlgebra& ambient) {
  std::vector<NamedSubspace> out;
  auto it = doc.find("subspaces");
  if (it == doc.end()) return out;
  object_at(*it, "subspaces");
  for (auto s = it->begin(); s != it->end(); ++s) {
    const std::string p = at("subspaces", s.key());
    array_at(s.value(), p);
    std::vector<Vec> vecs;
    for (std::size_t b = 0; b < s.value().size(); ++b) vecs.push_back(vector_at(s.value()[b], at(p, b), n));
    const Mat basis = vecs.empty() ? Mat(n, 0) : Mat::from_columns(n, vecs);
    if (rank(basis) != basis.cols()) throw InvariantViolation(p + ": basis vectors are linearly dependent");
    Subspace w = Subspace::from_independent(basis);
    located(p, [&] { return ambient.restrict_to(w); });
    out.push_back({s.key(), std::move(w)});
  }
  return out;
}

ordered_json rational_json(const Rational& r) { return to_string(r); }

ordered_json vector_json(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(rational_json(x));
  return a;
}

ordered_json lie_structure(const LieAlgebra& g) {
  ordered_json a = ordered_json::array();
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(g.constant(i, j, k)))
          a.push_back({{"i", i}, {"j", j}, {"k", k}, {"value", rational_json(g.constant(i, j, k))}});
  return a;
}

ordered_json lie_json(const LieAlgebra& g) {
  ordered_json o;
  if (!g.name().empty()) o["name"] = g.name();
  o["dim"] = g.dim();
  o["structure"] = lie_structure(g);
  return o;
}

}  // namespace

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::lie: return "lie";
    case Kind::assoc: return "assoc";
    case Kind::morphism: return "morphism";
    case Kind::pair: return "pair";
  }
  return "?";
}

const Subspace& AlgebraFile::subspace(const std::string& wanted) const {
  for (const auto& s : subspaces)
    if (s.name == wanted) return s.space;
  std::string names;
  for (const auto& s : subspaces) names += (names.empty() ? "" : ", ") + s.name;
  throw ParseError("no subspace named \"" + wanted + "\" (available: " + (names.empty() ? "none" : names) + ")");
}

AlgebraFile parse_algebra(const json& doc) {
  object_at(doc, "");
  AlgebraFile f;
  const json& kind = field(doc, "", "kind");
  if (!kind.is_string()) fail("kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "lie")
    f.kind = Kind::lie;
  else if (k == "assoc")
    f.kind = Kind::assoc;
  else if (k == "morphism")
    f.kind = Kind::morphism;
  else if (k == "pair")
    f.kind = Kind::pair;
  else
    fail("kind", "unknown kind \"" + k + "\" (expected lie, assoc, morphism or pair)");
  f.name = name_at(doc, "");

  switch (f.kind) {
    case Kind::lie: {
      only_keys(doc, "", {"kind", "name", "dim", "structure", "subspaces"});
      f.lie = lie_block(doc, "");
      f.subspaces = subspaces_at(doc, f.lie.dim(), f.lie);
      break;
    }
    case Kind::assoc: {
      only_keys(doc, "", {"kind", "name", "dim", "structure", "unit"});
      const std::size_t n = dim_at(field(doc, "", "dim"), "dim");
      Vec c = assoc_constants(field(doc, "", "structure"), "structure", n);
      std::optional<Vec> unit;
      if (auto u = doc.find("unit"); u != doc.end()) unit = vector_at(*u, "unit", n);
      const bool has_unit = unit.has_value();
      // associativity is checked before the unit, so blame the right key
      if (auto bad = associativity_failure(n, c))
        throw InvariantViolation("structure: associativity fails on basis triple (" + std::to_string((*bad)[0]) + "," +
                                 std::to_string((*bad)[1]) + "," + std::to_string((*bad)[2]) + ")");
      f.assoc = located(has_unit ? "unit" : "structure",
                        [&] { return AssocAlgebra::create(n, std::move(c), std::move(unit), f.name); });
      break;
    }
    case Kind::morphism:
    case Kind::pair: {
      only_keys(doc, "", {"kind", "name", "source", "target", "matrix", "subspaces"});
      const json& src = object_at(field(doc, "", "source"), "source");
      const json& tgt = object_at(field(doc, "", "target"), "target");
      only_keys(src, "source", {"name", "dim", "structure"});
      only_keys(tgt, "target", {"name", "dim", "structure"});
      LieAlgebra v = lie_block(src, "source");
      LieAlgebra w = lie_block(tgt, "target");
      const json& rows = array_at(field(doc, "", "matrix"), "matrix");
      if (rows.size() != w.dim())
        fail("matrix", "expected " + std::to_string(w.dim()) + " rows (dim target), got " + std::to_string(rows.size()));
      Mat m(w.dim(), v.dim());
      for (std::size_t r = 0; r < w.dim(); ++r) {
        const Vec row = vector_at(rows[r], at("matrix", r), v.dim());
        for (std::size_t c = 0; c < v.dim(); ++c) m(r, c) = row[c];
      }
      f.subspaces = subspaces_at(doc, w.dim(), w);
      f.morphism = located("matrix", [&] { return LieMorphism::create(std::move(v), std::move(w), std::move(m)); });
      break;
    }
  }
  return f;
}

AlgebraFile load_algebra(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": invalid JSON: " + e.what());
  }
  return parse_algebra(doc);
}

ordered_json to_json(const AlgebraFile& f) {
  ordered_json o;
  o["kind"] = std::string(kind_name(f.kind));
  if (!f.name.empty()) o["name"] = f.name;
  switch (f.kind) {
    case Kind::lie:
      o["dim"] = f.lie.dim();
      o["structure"] = lie_structure(f.lie);
      break;
    case Kind::assoc: {
      const std::size_t n = f.assoc.dim();
      o["dim"] = n;
      ordered_json a = ordered_json::array();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            if (!is_zero(f.assoc.constant(i, j, k)))
              a.push_back({{"i", i}, {"j", j}, {"k", k}, {"value", rational_json(f.assoc.constant(i, j, k))}});
      o["structure"] = a;
      if (f.assoc.unit()) o["unit"] = vector_json(*f.assoc.unit());
      break;
    }
    case Kind::morphism:
    case Kind::pair: {
      o["source"] = lie_json(f.morphism.source());
      o["target"] = lie_json(f.morphism.target());
      ordered_json rows = ordered_json::array();
      const Mat& m = f.morphism.matrix();
      for (std::size_t r = 0; r < m.rows(); ++r) {
        Vec row;
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(vector_json(row));
      }
      o["matrix"] = rows;
      break;
    }
  }
  if (!f.subspaces.empty()) {
    ordered_json s = ordered_json::object();
    for (const auto& [name, w] : f.subspaces) {
      ordered_json basis = ordered_json::array();
      for (std::size_t b = 0; b < w.dim(); ++b) basis.push_back(vector_json(w.basis_vector(b)));
      s[name] = basis;
    }
    o["subspaces"] = s;
  }
  return o;
}

}  // namespace dgla::cli
