#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "padiclie/lattice.hpp"
#include "padiclie/lie_lattice.hpp"
#include "padiclie/theorems.hpp"

namespace padiclie {

/// {"p", "prec", "rank", "scale", "basis": [[...]]} with an optional
/// "structure_constants": c[i][j][k] giving [b_i, b_j] = sum_k c[i][j][k] b_k
/// on the ambient Z_p^rank. Integers may be JSON numbers or decimal strings.
struct LatticeFile {
  Lattice lattice;
  std::optional<LieLattice> lie;
};

// Throws StructuralError for malformed input, a basis that is not canonical
// (unless normalize), or structure constants failing antisymmetry or Jacobi.
LatticeFile parse_lattice_json(const nlohmann::json& j, bool normalize);
LatticeFile parse_lattice_file(const std::string& path, bool normalize);

/// {"p", "e", "f", "n", "prec", "eisenstein", "unramified_poly"}; the last
/// two are optional. Each unramified coefficient is an integer or a list of
/// Z_p coordinates in the basis t^i x^j of O_K.
struct TowerFile {
  std::uint64_t p = 0;
  int e = 1, f = 1, n = 1;
  DriverOptions options;
};
TowerFile parse_tower_json(const nlohmann::json& j);
TowerFile parse_tower_file(const std::string& path);

}  // namespace padiclie
