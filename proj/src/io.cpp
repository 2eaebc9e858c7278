#include "padiclie/io.hpp"

#include <fstream>

#include "padiclie/errors.hpp"

namespace padiclie {

using nlohmann::json;

namespace {

std::int64_t read_integer(const json& v, const std::string& what) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::size_t used = 0;
    try {
      std::int64_t out = std::stoll(s, &used, 10);
      if (used == s.size() && !s.empty()) return out;
    } catch (const std::exception&) {
    }
  }
  throw StructuralError(what + " must be an integer or a decimal string");
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw StructuralError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

const json& array_of(const json& v, std::size_t size, const std::string& what) {
  if (!v.is_array() || v.size() != size)
    throw StructuralError(what + " must be an array of length " + std::to_string(size));
  return v;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw StructuralError(path + ": " + e.what());
  }
}

}  // namespace

LatticeFile parse_lattice_json(const json& j, bool normalize) {
  if (!j.is_object()) throw StructuralError("lattice file must hold a JSON object");
  std::int64_t p = read_integer(field(j, "p"), "p");
  std::int64_t prec = read_integer(field(j, "prec"), "prec");
  std::int64_t rank = read_integer(field(j, "rank"), "rank");
  std::int64_t scale = read_integer(field(j, "scale"), "scale");
  if (p < 2 || prec < 1 || rank < 1) throw StructuralError("p, prec and rank must be positive");
  PadicContext ctx(static_cast<std::uint64_t>(p), static_cast<int>(prec));
  auto r = static_cast<std::size_t>(rank);

  const auto& rows = array_of(field(j, "basis"), r, "basis");
  PadicMatrix B(ctx, r, r);
  for (std::size_t i = 0; i < r; ++i) {
    const auto& row = array_of(rows[i], r, "basis row " + std::to_string(i));
    for (std::size_t k = 0; k < r; ++k) B(i, k) = ctx.from_signed(read_integer(row[k], "basis entry"));
  }
  if (!is_canonical_basis(B) && !normalize)
    throw StructuralError("basis is not in canonical Hermite form; pass --normalize to accept it");
  LatticeFile out{is_canonical_basis(B) ? Lattice::from_canonical(B, static_cast<int>(scale))
                                        : Lattice::from_generators(B, static_cast<int>(scale)),
                  std::nullopt};

  if (j.contains("structure_constants")) {
    const auto& c = array_of(j.at("structure_constants"), r, "structure_constants");
    std::vector<std::uint64_t> constants(r * r * r, 0);
    for (std::size_t a = 0; a < r; ++a) {
      const auto& ca = array_of(c[a], r, "structure_constants[" + std::to_string(a) + "]");
      for (std::size_t b = 0; b < r; ++b) {
        const auto& cab = array_of(ca[b], r, "structure_constants[" + std::to_string(a) + "][" + std::to_string(b) + "]");
        for (std::size_t k = 0; k < r; ++k)
          constants[(a * r + b) * r + k] = ctx.from_signed(read_integer(cab[k], "structure constant"));
      }
    }
    out.lie = LieLattice(ctx, r, std::move(constants));
  }
  return out;
}

LatticeFile parse_lattice_file(const std::string& path, bool normalize) {
  return parse_lattice_json(read_json(path), normalize);
}

TowerFile parse_tower_json(const json& j) {
  if (!j.is_object()) throw StructuralError("tower file must hold a JSON object");
  TowerFile out;
  std::int64_t p = read_integer(field(j, "p"), "p");
  if (p < 2) throw StructuralError("p must be a prime");
  out.p = static_cast<std::uint64_t>(p);
  out.e = static_cast<int>(read_integer(field(j, "e"), "e"));
  out.f = static_cast<int>(read_integer(field(j, "f"), "f"));
  out.n = static_cast<int>(read_integer(field(j, "n"), "n"));
  if (j.contains("prec")) out.options.prec = static_cast<int>(read_integer(j.at("prec"), "prec"));
  if (j.contains("eisenstein")) {
    const auto& v = j.at("eisenstein");
    if (!v.is_array()) throw StructuralError("eisenstein must be a coefficient list");
    std::vector<std::int64_t> coeffs;
    for (const auto& c : v) coeffs.push_back(read_integer(c, "eisenstein coefficient"));
    out.options.eisenstein = coeffs;
  }
  if (j.contains("unramified_poly")) {
    const auto& v = j.at("unramified_poly");
    if (!v.is_array()) throw StructuralError("unramified_poly must be a coefficient list");
    std::size_t d = static_cast<std::size_t>(out.e * out.f);
    std::vector<std::vector<std::int64_t>> coeffs;
    for (const auto& c : v) {
      if (c.is_array()) {
        std::vector<std::int64_t> coords;
        for (const auto& x : c) coords.push_back(read_integer(x, "unramified coefficient"));
        coeffs.push_back(coords);
      } else {
        std::vector<std::int64_t> coords(d, 0);
        coords[0] = read_integer(c, "unramified coefficient");
        coeffs.push_back(coords);
      }
    }
    out.options.unramified = coeffs;
  }
  return out;
}

TowerFile parse_tower_file(const std::string& path) { return parse_tower_json(read_json(path)); }

}  // namespace padiclie
