#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "padiclie/lattice.hpp"
#include "padiclie/lie_lattice.hpp"
#include "padiclie/local_field.hpp"

namespace padiclie {

// Z_p coordinates of sum_j alpha_j Pi^j, index j*rank(O_F) + k.
using AlgebraElement = std::vector<std::uint64_t>;

/// Delta = sum_{j<n} O_F Pi^j with Pi alpha = theta(alpha) Pi and Pi^n = pi.
class CyclicAlgebra {
 public:
  explicit CyclicAlgebra(UnramifiedExt F);

  const UnramifiedExt& field() const noexcept { return F_; }
  const PadicContext& ctx() const noexcept { return F_.ctx(); }
  int n() const noexcept { return F_.n(); }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(F_.n()) * F_.rank(); }

  AlgebraElement zero() const { return AlgebraElement(rank(), 0); }
  AlgebraElement one() const { return monomial(F_.one(), 0); }
  AlgebraElement Pi() const;
  AlgebraElement monomial(const OfElem& alpha, int j) const;
  OfElem coefficient(const AlgebraElement& x, int j) const;

  AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) const;
  // (alpha theta^j(beta) - beta theta^k(alpha)) Pi^{j+k}, folding Pi^n into pi.
  AlgebraElement bracket_closed_form(const OfElem& alpha, int j, const OfElem& beta, int k) const;
  // T_{F/K} of the degree-0 coefficient.
  OkElem reduced_trace(const AlgebraElement& a) const;
  // Row k is b_k * a.
  PadicMatrix right_mult_matrix(const AlgebraElement& a) const;
  AlgebraElement unit_inverse(const AlgebraElement& a) const;

 private:
  // Coefficient times Pi^{j+k}: returns the degree and the O_F factor.
  std::pair<int, OfElem> fold(OfElem alpha, int degree) const;

  UnramifiedExt F_;
  OfElem pi_;
};

/// sl_1(Delta) over Z_p with basis x_eta b_u, x_eta = tau_{eta0} Pi^{eta1},
/// eta ordered by eta1 then eta0, (0,0) omitted; coordinate pos(eta)*d + u.
class SL1Lattice {
 public:
  static SL1Lattice build(const UnramifiedExt& F);
  static SL1Lattice build(const UnramifiedExt& F, TauBasis tau);

  const CyclicAlgebra& algebra() const noexcept { return D_; }
  const UnramifiedExt& field() const noexcept { return D_.field(); }
  const LocalField& base() const noexcept { return D_.field().base(); }
  const TauBasis& tau() const noexcept { return tau_; }
  const LieLattice& lie() const noexcept { return lie_; }
  const std::vector<std::array<int, 2>>& index_set() const noexcept { return eta_; }
  int n() const noexcept { return D_.n(); }
  int d() const noexcept { return D_.field().d(); }
  std::size_t rank() const noexcept { return lie_.rank(); }
  std::size_t ok_rank() const noexcept { return eta_.size(); }

  std::size_t position(int eta0, int eta1) const;
  AlgebraElement to_algebra(std::span<const std::uint64_t> v) const;
  // Throws StructuralError if x has nonzero reduced trace.
  std::vector<std::uint64_t> from_algebra(const AlgebraElement& x) const;
  // Coordinate range [first, last) of the graded piece L_j.
  std::pair<std::size_t, std::size_t> piece(int j) const;

  OkModule ok_module() const { return OkModule(base(), ok_rank()); }
  // Rows x_eta (that is, x_eta * 1) in Z_p coordinates.
  PadicMatrix ok_basis() const;

 private:
  SL1Lattice(CyclicAlgebra D, TauBasis tau);

  CyclicAlgebra D_;
  TauBasis tau_;
  std::vector<std::array<int, 2>> eta_;
  LieLattice lie_;
};

// pi L_0 + sum_{0<j<n} L_j.
Lattice sl1_commutator_closed_form(const SL1Lattice& L);

struct SL1CommutatorReport {
  Lattice commutator;
  Lattice closed_form;
  bool matches = false;
  int index = 0;           // [L : [L, L]] = p^index
  int expected_index = 0;  // f (n - 1)
};
// Throws HypothesisViolated for (p, n) = (2, 2) and for n < 2.
SL1CommutatorReport commutator_lattice_sl1(const SL1Lattice& L);

/// Basis (e0, e1, e2) = (xi, Pi, xi Pi) of sl_1(Delta) over O_K for n = 2 with
/// [e_i, e_{i+1}] = u_{i+2} pi^{s_{i+2}} e_{i+2}.
struct StandardBasis {
  std::array<std::vector<std::uint64_t>, 3> e;  // Z_p coordinates
  std::array<OkElem, 3> u;
  std::array<int, 3> s{1, 0, 0};
  OkElem xi_squared;
};
// Throws HypothesisViolated unless n = 2 and p is odd.
StandardBasis standard_basis_n2(const SL1Lattice& L);

struct StandardBasisReport {
  bool brackets = false;   // [e_i, e_{i+1}] = u_{i+2} pi^{s_{i+2}} e_{i+2}
  bool units = false;
  bool nonsquare = false;  // -u1 u2 is not a square mod pi
  bool product_is_4xi2 = false;
  bool spans = false;      // O_K-span of e is all of L
  bool all() const { return brackets && units && nonsquare && product_is_4xi2 && spans; }
};
StandardBasisReport check_standard_basis(const SL1Lattice& L, const StandardBasis& sb);

}  // namespace padiclie
