#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dgla/assoc.hpp"
#include "dgla/lie.hpp"
#include "dgla/linalg.hpp"
#include "dgla/morphism.hpp"

namespace dgla::cli {

enum class Kind { lie, assoc, morphism, pair };

std::string_view kind_name(Kind k);

struct NamedSubspace {
  std::string name;
  Subspace space;
};

/// One algebra description file. `pair` files use the morphism layout and
/// default to the pair-stability problem of f.
struct AlgebraFile {
  Kind kind = Kind::lie;
  std::string name;
  LieAlgebra lie;
  AssocAlgebra assoc;
  LieMorphism morphism;
  /// Subspaces of the Lie algebra, or of the morphism target.
  std::vector<NamedSubspace> subspaces;

  bool is_morphism() const { return kind == Kind::morphism || kind == Kind::pair; }
  /// Throws ParseError naming the available subspaces.
  const Subspace& subspace(const std::string& name) const;
};

/// Parse and validate. Malformed input throws ParseError with a location
/// such as "structure[3].value"; failed algebraic invariants throw
/// InvariantViolation with the same kind of location.
AlgebraFile parse_algebra(const nlohmann::json& doc);
AlgebraFile load_algebra(const std::filesystem::path& path);

/// Normalized form: Lie constants as i < j entries, nonzero only, sorted by
/// (i, j, k); rationals in lowest terms.
nlohmann::ordered_json to_json(const AlgebraFile& file);

}  // namespace dgla::cli
