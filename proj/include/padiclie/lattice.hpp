#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "padiclie/padic_matrix.hpp"

namespace padiclie {

/// Sorted multiset of integers (relative invariant exponents).
class SInvariants {
 public:
  SInvariants() = default;
  explicit SInvariants(std::vector<int> values);
  // Builds (v_1^{c_1}, v_2^{c_2}, ...); nullopt if some multiplicity is negative.
  static std::optional<SInvariants> from_counts(const std::vector<std::pair<int, int>>& counts);

  const std::vector<int>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  int sum() const;
  SInvariants shifted(int k) const;
  std::string to_string() const;

  bool operator==(const SInvariants&) const = default;

 private:
  std::vector<int> values_;
};

/// Full-rank Z_p-lattice p^{-scale} * rowspan(basis).
///
/// The basis is the Hermite form of the lattice and is primitive (not every
/// entry divisible by p); the scale absorbs common powers of p. A lattice is
/// only accepted if all its elementary divisors are below prec, which makes
/// the residues of the basis the exact integers.
class Lattice {
 public:
  static Lattice from_generators(const PadicMatrix& gens, int scale = 0);
  static Lattice standard(PadicContext ctx, std::size_t rank);
  // Rejects anything that is not already a canonical basis.
  static Lattice from_canonical(const PadicMatrix& basis, int scale);

  const PadicContext& ctx() const noexcept { return basis_.ctx(); }
  std::size_t rank() const noexcept { return basis_.rows(); }
  int scale() const noexcept { return scale_; }
  const PadicMatrix& basis() const noexcept { return basis_; }
  // v_p(det basis), the sum of the pivot exponents.
  int basis_valuation() const noexcept { return basis_valuation_; }

  // p^k * L.
  Lattice scaled(int k) const;
  // Basis rows rewritten at a coarser denominator s >= scale().
  PadicMatrix basis_at_scale(int s) const;
  std::vector<std::uint64_t> basis_row(std::size_t i) const;

  bool operator==(const Lattice& o) const = default;

 private:
  Lattice(PadicMatrix basis, int scale);
  PadicMatrix basis_;
  int scale_ = 0;
  int basis_valuation_ = 0;
};

// Canonical HNF check used by parsers: pivots p^k on the diagonal, zeros
// below, entries above each pivot in [0, p^k), not all entries divisible by p.
bool is_canonical_basis(const PadicMatrix& basis);

Lattice lattice_sum(const Lattice& a, const Lattice& b);
// Exponent k with [L : M] = p^k; throws NotSubmoduleError unless M is inside L.
int lattice_index(const Lattice& L, const Lattice& M);
bool lattice_membership(const Lattice& L, std::span<const std::uint64_t> v, int vscale);
bool lattice_contains(const Lattice& L, const Lattice& M);
SInvariants relative_invariant_exponents(const Lattice& L, const Lattice& M);
// L * A for a linear map A on the ambient coordinates (row vectors).
Lattice apply_linear_map(const Lattice& L, const PadicMatrix& a);

/// Linear map x -> p^shift * x * matrix on ambient row vectors. The shift may
/// be negative, in which case the map is only meaningful on vectors whose
/// image is integral enough.
struct ScaledMap {
  PadicMatrix matrix;
  int shift = 0;
};

// Coordinates of x in L's basis: x -> p^{scale - K} x adj(B).
ScaledMap coordinate_map(const Lattice& L);

struct MembershipCondition {
  ScaledMap map;
  const Lattice* target;
};

/// The sublattice {x in J : map_k(x) in target_k for every k}.
Lattice constrained_sublattice(const Lattice& J, std::span<const MembershipCondition> conditions);
Lattice lattice_intersection(const Lattice& a, const Lattice& b);

/// Maximal proper submodule parameter: y_mu = p x_mu, y_l = x_l + b_l x_mu.
/// b has one slot per basis index; the slot at mu is ignored and kept 0.
struct MaxSubmoduleParam {
  std::size_t mu = 0;
  std::vector<std::uint64_t> b;
  bool operator==(const MaxSubmoduleParam&) const = default;
};

std::string to_string(const MaxSubmoduleParam& param);
// The functional on L/pL whose kernel is the submodule: g_mu = 1, g_l = -b_l.
std::vector<std::uint64_t> param_functional(const MaxSubmoduleParam& param, std::uint64_t p);
MaxSubmoduleParam param_from_functional(std::span<const std::uint64_t> g, std::size_t mu,
                                        std::uint64_t p);
// Representative whose functional has its last nonzero coordinate at mu.
MaxSubmoduleParam canonical_param(const MaxSubmoduleParam& param, std::uint64_t p);
// Every (mu, b) that defines the same submodule, one per admissible mu.
std::vector<MaxSubmoduleParam> equivalent_params(const MaxSubmoduleParam& param, std::uint64_t p);
// Congruence test: same mu and b_l = c_l mod p, or c_mu = b_nu^{-1} and
// c_l = -b_nu^{-1} b_l for l other than mu, nu.
bool param_equivalent(const MaxSubmoduleParam& a, const MaxSubmoduleParam& b, std::uint64_t p);
Lattice submodule_from_param(const Lattice& L, const MaxSubmoduleParam& param);

std::uint64_t maximal_submodule_count(std::size_t rank, std::uint64_t p);

/// Random-access listing of the maximal proper submodules of a lattice,
/// ordered by mu descending, then b ascending with b_0 most significant.
class MaximalSubmodules {
 public:
  explicit MaximalSubmodules(Lattice L);
  const Lattice& lattice() const noexcept { return L_; }
  std::uint64_t count() const noexcept { return count_; }
  MaxSubmoduleParam param(std::uint64_t index) const;
  Lattice submodule(std::uint64_t index) const { return submodule_from_param(L_, param(index)); }

 private:
  Lattice L_;
  std::uint64_t count_;
};

}  // namespace padiclie
