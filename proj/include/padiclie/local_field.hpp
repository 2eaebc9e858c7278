#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padiclie/finite_cyclic.hpp"
#include "padiclie/lattice.hpp"
#include "padiclie/padic_matrix.hpp"

namespace padiclie {

// Z_p coordinates of an element of O_K, index i*e + j for t^i x^j.
using OkElem = std::vector<std::uint64_t>;
// Z_p coordinates of an element of O_F, index k*d + u for s^k times the u-th O_K basis element.
using OfElem = std::vector<std::uint64_t>;

/// O_K = Z_p[t]/(h0)[x]/(E) with h0 the lift of the lowest irreducible of
/// degree f over F_p and E an Eisenstein polynomial (default x^e - p).
/// The Z_p-basis t^i x^j is the epsilon basis with alpha_i = t^i, pi = x.
class LocalField {
 public:
  static LocalField build(std::uint64_t p, int e, int f, int prec = kDefaultPrecision,
                          std::optional<std::vector<std::int64_t>> eisenstein = std::nullopt);

  const PadicContext& ctx() const noexcept { return ctx_; }
  std::uint64_t p() const noexcept { return ctx_.p(); }
  int e() const noexcept { return e_; }
  int f() const noexcept { return f_; }
  int d() const noexcept { return e_ * f_; }
  const PrimeExtension& residue_field() const noexcept { return kappa_; }
  // Monic coefficients low to high.
  const std::vector<std::uint64_t>& eisenstein() const noexcept { return eis_; }
  const std::vector<std::uint64_t>& base_modulus() const noexcept { return h0_; }

  OkElem zero() const { return OkElem(static_cast<std::size_t>(d()), 0); }
  OkElem one() const;
  OkElem from_integer(std::int64_t v) const;
  OkElem basis_element(int i, int j) const;  // t^i x^j
  // x, which equals p when e = 1.
  OkElem uniformizer() const;

  OkElem add(const OkElem& a, const OkElem& b) const;
  OkElem sub(const OkElem& a, const OkElem& b) const;
  OkElem neg(const OkElem& a) const;
  OkElem mul(const OkElem& a, const OkElem& b) const;
  OkElem scale(const OkElem& a, std::uint64_t c) const;
  // pi^j for j >= 0.
  OkElem pi_power(int j) const;
  // Row k holds b_k * a, so y * M is the product for row vectors y.
  PadicMatrix mult_matrix(const OkElem& a) const;

  // v_K normalised with v_K(pi) = 1; e * prec for zero.
  int valuation(const OkElem& a) const;
  bool is_unit(const OkElem& a) const { return valuation(a) == 0; }
  OkElem unit_inverse(const OkElem& a) const;
  // Some y with y * b = a, or nullopt if b does not divide a at precision.
  std::optional<OkElem> divide(const OkElem& a, const OkElem& b) const;
  std::uint32_t residue(const OkElem& a) const;
  OkElem lift(std::uint32_t residue) const;

  std::string describe() const;

 private:
  LocalField(PadicContext ctx, int e, int f, PrimeExtension kappa, std::vector<std::uint64_t> h0,
             std::vector<std::uint64_t> eis);
  OkElem product_slow(const OkElem& a, const OkElem& b) const;

  PadicContext ctx_;
  int e_, f_;
  PrimeExtension kappa_;
  std::vector<std::uint64_t> h0_;
  std::vector<std::uint64_t> eis_;
  std::vector<OkElem> table_;  // table_[a*d + b] = b_a * b_b
};

/// O_F = O_K[s]/(h) with h monic lifting an irreducible of degree n over
/// kappa_K, and theta the Frobenius lift, cached as matrices theta^j.
class UnramifiedExt {
 public:
  static UnramifiedExt build(const LocalField& K, int n,
                             std::optional<std::vector<OkElem>> modulus = std::nullopt);

  const LocalField& base() const noexcept { return K_; }
  const PadicContext& ctx() const noexcept { return K_.ctx(); }
  int n() const noexcept { return n_; }
  int d() const noexcept { return K_.d(); }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(n_ * K_.d()); }
  const std::vector<OkElem>& modulus() const noexcept { return h_; }
  const FiniteFieldExt& residue_field() const noexcept { return kappa_F_; }

  OfElem zero() const { return OfElem(rank(), 0); }
  OfElem one() const { return embed(K_.one()); }
  OfElem generator() const;
  OfElem embed(const OkElem& a) const;
  OkElem coefficient(const OfElem& x, int k) const;
  OfElem from_coefficients(const std::vector<OkElem>& c) const;

  OfElem add(const OfElem& a, const OfElem& b) const;
  OfElem sub(const OfElem& a, const OfElem& b) const;
  OfElem neg(const OfElem& a) const;
  OfElem mul(const OfElem& a, const OfElem& b) const;
  OfElem scale(const OkElem& a, const OfElem& x) const;
  OfElem pow(const OfElem& a, std::uint64_t k) const;
  PadicMatrix mult_matrix(const OfElem& a) const;
  OfElem unit_inverse(const OfElem& a) const;
  int valuation(const OfElem& a) const;

  // theta^j for any integer j.
  OfElem frobenius(const OfElem& x, int j = 1) const;
  const PadicMatrix& frobenius_matrix(int j) const;
  OkElem trace(const OfElem& x) const;

  FiniteFieldExt::Element reduce(const OfElem& x) const;
  OfElem lift(FiniteFieldExt::Element a) const;

  std::string describe() const;

 private:
  UnramifiedExt(LocalField K, int n, std::vector<OkElem> h, FiniteFieldExt kappa_F);
  OfElem product_slow(const OfElem& a, const OfElem& b) const;
  OfElem evaluate_modulus(const OfElem& r, bool derivative) const;

  LocalField K_;
  int n_;
  std::vector<OkElem> h_;
  FiniteFieldExt kappa_F_;
  std::vector<OfElem> table_;
  std::vector<PadicMatrix> theta_;  // theta^j, 0 <= j < n
};

/// O_K-basis of O_F whose tail spans the trace-zero module.
struct TauBasis {
  std::vector<OfElem> tau;
  int pivot = 0;       // power of s carrying the trace
  PadicMatrix change;  // row i*d + u is tau_i * b_u
  PadicMatrix change_inverse;
};

TauBasis build_tau_basis(const UnramifiedExt& F);
// Z_p coordinates of x in the basis tau_i * b_u.
std::vector<std::uint64_t> tau_coordinates(const TauBasis& tau, const OfElem& x);

struct TauBasisReport {
  bool is_basis = false;
  bool tail_trace_zero = false;
  bool pivot_trace_unit = false;
  bool unit_position = false;       // tau_0 = 1 if p does not divide n, residue of tau_1 = 1 otherwise
  bool last_outside_base = false;   // or exempt
  bool residue_image_trace_zero = false;  // residues of the tail span the residue trace-zero space
  bool residue_basis_ok = false;    // reductions satisfy the residue-basis properties
  bool theta_preserves_trace = false;
  bool all() const {
    return is_basis && tail_trace_zero && pivot_trace_unit && unit_position && last_outside_base &&
           residue_image_trace_zero && residue_basis_ok && theta_preserves_trace;
  }
};
TauBasisReport check_tau_basis(const UnramifiedExt& F, const TauBasis& tau);

/// Free O_K-module O_K^r in Z_p coordinates l*d + u, with O_K acting blockwise.
class OkModule {
 public:
  OkModule(const LocalField& K, std::size_t ok_rank);

  const LocalField& base() const noexcept { return K_; }
  std::size_t ok_rank() const noexcept { return r_; }
  std::size_t rank() const noexcept { return r_ * static_cast<std::size_t>(K_.d()); }

  PadicMatrix action(const OkElem& a) const;
  bool is_submodule(const Lattice& M) const;
  // O_K-span of the rows (each row a vector of the ambient Z_p coordinates).
  Lattice span(const PadicMatrix& gens, int scale = 0) const;
  // pi^s M for an O_K-lattice M and any integer s.
  Lattice pi_multiple(const Lattice& M, int s) const;
  SInvariants relative_exponents(const Lattice& A, const Lattice& B) const;

 private:
  LocalField K_;
  std::size_t r_;
  PadicMatrix t_action_, x_action_;
};

/// Maximal proper O_K-submodules M_{lambda,e} of an O_K-lattice with a chosen
/// O_K-basis: y_eta = x_eta + e_eta x_lambda (eta < lambda), y_lambda = pi x_lambda,
/// y_eta = x_eta (eta > lambda), with e_eta ranging over residue lifts.
struct OkMaxParam {
  std::size_t lambda = 0;
  std::vector<std::uint32_t> e;  // residues, one per eta < lambda
  bool operator==(const OkMaxParam&) const = default;
};
std::string to_string(const OkMaxParam& param);

class OkMaximalSubmodules {
 public:
  // basis: rows are an O_K-basis of the lattice, in ambient Z_p coordinates.
  OkMaximalSubmodules(const OkModule& module, PadicMatrix ok_basis);
  std::uint64_t count() const noexcept { return count_; }
  OkMaxParam param(std::uint64_t index) const;
  Lattice submodule(const OkMaxParam& param) const;
  Lattice submodule(std::uint64_t index) const { return submodule(param(index)); }

 private:
  OkModule module_;
  PadicMatrix basis_;
  std::uint64_t count_;
};

// pi^s O_K as a Z_p-lattice in the coordinates of O_K.
Lattice pi_power_lattice(const LocalField& K, int s);
// Closed form (q^{d-rf}, (q+1)^{rf}) with s = q e + r.
SInvariants pi_power_closed_form(const LocalField& K, int s);
// Computes s_{Z_p}(O_K, pi^s O_K) and throws VerificationFailure on mismatch
// with the closed form.
SInvariants pi_power_exponents_check(const LocalField& K, int s);
// Diagonal O_K-lattice (pi^{s_l}) in O_K^r: computed Z_p exponents versus the
// union of the per-entry closed forms. Throws VerificationFailure on mismatch.
SInvariants ok_diagonal_exponents_check(const LocalField& K, const std::vector<int>& s);

struct DichotomyReport {
  std::uint64_t checked = 0;
  std::uint64_t containing = 0;   // pi O_K inside B
  std::uint64_t contained = 0;    // B inside pi O_K
  bool hypothesis_violated = false;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty() && !hypothesis_violated; }
};
// All maximal Z_p-submodules B of O_K: the exponents s(B, pi O_K) against the
// two shapes, the branch against the containment test, the explicit
// containment criterion, and B inside pi O_K iff B = pi O_K.
DichotomyReport maximal_submodule_pi_dichotomy(const LocalField& K);

struct ImplicationChainReport {
  std::uint64_t checked = 0;
  std::uint64_t holds[4] = {0, 0, 0, 0};
  std::uint64_t all_agree = 0;  // informational: all four conditions equal
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
// Conditions on maximal Z_p-submodules N of O_K^r: (1) every B_{mu,b} lies in
// pi O_K, (2) f = 1 and every parameter is special, (3) f = 1 and some
// parameter is special, (4) N is an O_K-submodule. Asserts 1 => 2 => 3 => 4.
ImplicationChainReport submodule_implication_chain(const LocalField& K, std::size_t ok_rank = 2);

}  // namespace padiclie
