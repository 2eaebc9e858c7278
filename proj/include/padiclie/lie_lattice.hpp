#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padiclie/lattice.hpp"
#include "padiclie/padic_matrix.hpp"

namespace padiclie {

/// Z_p^r with a bilinear bracket given by structure constants on the
/// standard basis: [b_i, b_j] = sum_k c(i,j,k) b_k.
class LieLattice {
 public:
  LieLattice() = default;
  // constants[(i*r + j)*r + k]; throws StructuralError naming the first
  // offending triple if antisymmetry or the Jacobi identity fails.
  LieLattice(PadicContext ctx, std::size_t rank, std::vector<std::uint64_t> constants);

  static LieLattice abelian(PadicContext ctx, std::size_t d);
  // L^d(s) = Z_p x + Z_p^{d-1}: [x, v] = p^s v, [v, w] = 0.
  static LieLattice metabelian(PadicContext ctx, std::size_t d, int s);
  // h, e, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
  static LieLattice split_sl2(PadicContext ctx);

  const PadicContext& ctx() const noexcept { return ctx_; }
  std::size_t rank() const noexcept { return r_; }
  Lattice lattice() const { return Lattice::standard(ctx_, r_); }
  std::uint64_t constant(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * r_ + j) * r_ + k];
  }
  const std::vector<std::uint64_t>& constants() const noexcept { return c_; }

  std::vector<std::uint64_t> bracket(std::span<const std::uint64_t> x,
                                     std::span<const std::uint64_t> y) const;
  // Row k is [b_k, y], so x * right_ad(y) = [x, y].
  PadicMatrix right_ad(std::span<const std::uint64_t> y) const;
  // Row k is [x, b_k], the matrix of ad x on row vectors.
  PadicMatrix ad(std::span<const std::uint64_t> x) const;

  // Rows of g are the new basis in old coordinates; g must be invertible.
  LieLattice change_basis(const PadicMatrix& g) const;

  bool operator==(const LieLattice&) const = default;

 private:
  PadicContext ctx_;
  std::size_t r_ = 0;
  std::vector<std::uint64_t> c_;
};

std::optional<std::array<std::size_t, 3>> antisymmetry_violation(const LieLattice& L);
std::optional<std::array<std::size_t, 3>> jacobi_violation(const LieLattice& L);

// Rank at precision of the span of all brackets of basis vectors of M.
std::size_t commutator_rank(const LieLattice& L, const Lattice& M);
/// [M, M] as a lattice, or nullopt when it does not have full rank at
/// precision. Throws NotSubmoduleError if M is not inside L.
std::optional<Lattice> commutator_sublattice(const LieLattice& L, const Lattice& M);
/// s(M, [M, M]); throws HypothesisViolated when [M, M] is not of full rank.
SInvariants s_invariants(const LieLattice& L, const Lattice& M);
bool is_subalgebra(const LieLattice& L, const Lattice& M);
bool is_ideal(const LieLattice& L, const Lattice& M);

struct KillingForm {
  PadicMatrix gram;
  std::optional<int> det_valuation;  // nullopt: degenerate at precision
};
KillingForm killing_form_check(const LieLattice& L);

/// Lie homomorphism from a finite-index subalgebra M into L. Row i of
/// images is phi of the i-th basis vector p^{-scale} B_i of M.
struct VirtualEndomorphism {
  Lattice domain;
  PadicMatrix images;
  int index_exponent = 0;
};

// Validates that domain is a subalgebra of L and that phi respects brackets.
VirtualEndomorphism make_virtual_endomorphism(const LieLattice& L, Lattice domain, PadicMatrix images);
bool is_injective(const VirtualEndomorphism& phi);
// phi(p^{-vscale} v) for v in the domain. Only the residues modulo
// p^{valid_prec} are meaningful; valid_prec is lowered when coordinates in the
// domain basis need a division by p.
std::vector<std::uint64_t> apply_virtual(const VirtualEndomorphism& phi, std::span<const std::uint64_t> v,
                                         int vscale, int& valid_prec);

enum class ChainVerdict { SimpleToDepth, InvariantIdeal, NotInjective, PrecisionInsufficient };
std::string to_string(ChainVerdict v);

struct ChainResult {
  ChainVerdict verdict = ChainVerdict::PrecisionInsufficient;
  std::optional<Lattice> witness;
  int steps = 0;
  int final_index = 0;  // exponent of [L : C_t] at the last step
  std::string note;
};

/// Descends C_0 = domain, C_{t+1} = {x in C_t : [x, L] in C_t, phi(x) in C_t}.
/// A fixed point is a phi-invariant ideal; index beyond p^depth gives
/// SimpleToDepth, which is a semi-decision only.
ChainResult invariant_ideal_chain(const LieLattice& L, const VirtualEndomorphism& phi, int depth);
// I inside the domain, phi(I) inside I and [I, L] inside I, checked directly.
bool verify_invariant_ideal(const LieLattice& L, const VirtualEndomorphism& phi, const Lattice& I);

/// Brute force over every sublattice of index at most p^depth: the first
/// phi-invariant ideal found, or nullopt. Throws CapExceeded past cap
/// candidates; examined, if given, receives the number of candidates tried.
std::optional<Lattice> find_invariant_ideal_exhaustive(const LieLattice& L, const VirtualEndomorphism& phi,
                                                       int depth, std::uint64_t cap = 1000000,
                                                       std::uint64_t* examined = nullptr);

// [L : phi(M)] == [L : M]; throws StructuralError for non-injective phi.
bool index_stability_spotcheck(const LieLattice& L, const VirtualEndomorphism& phi);

}  // namespace padiclie
