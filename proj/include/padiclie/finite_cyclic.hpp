#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace padiclie {

/// F_q = F_p[t]/(g0) with elements encoded as base-p digit strings
/// (digit i is the coefficient of t^i).
class PrimeExtension {
 public:
  PrimeExtension(std::uint32_t p, std::vector<std::uint32_t> modulus);
  static PrimeExtension prime_field(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }
  int degree() const noexcept { return f_; }
  std::uint32_t size() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + neg_[b]]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t digit(std::uint32_t a, int i) const;

 private:
  std::uint32_t p_;
  int f_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> add_, mul_, neg_, inv_;
};

using Poly = std::vector<std::uint32_t>;  // coefficients low to high, over some F_q

bool is_irreducible(const PrimeExtension& F, const Poly& monic);
/// Lowest monic irreducible of the given degree, ordering coefficient vectors
/// (c_{n-1}, ..., c_0) lexicographically with coefficients as integers in [0, q).
Poly lowest_irreducible(const PrimeExtension& F, int degree);

/// kappa_F = kappa_K[s]/(g) over kappa_K = F_p[t]/(g0), with Frobenius the
/// q-power map. Elements are integers in [0, q^n): base-q digit k is the
/// kappa_K coefficient of s^k, itself a base-p digit string in t.
class FiniteFieldExt {
 public:
  using Element = std::uint32_t;

  static FiniteFieldExt build(std::uint32_t p, int f, int n);
  static FiniteFieldExt build(std::uint32_t p, Poly base_modulus, Poly top_modulus);

  std::uint32_t p() const noexcept { return base_.p(); }
  int f() const noexcept { return base_.degree(); }
  int n() const noexcept { return n_; }
  std::uint32_t q() const noexcept { return base_.size(); }
  std::uint64_t size() const noexcept { return size_; }
  const PrimeExtension& base() const noexcept { return base_; }
  const Poly& top_modulus() const noexcept { return top_; }

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return 1; }
  // The class of s (equal to an element of kappa_K when n = 1).
  Element generator() const;
  Element embed(std::uint32_t base_element) const noexcept { return base_element; }
  bool in_base(Element a) const noexcept { return a < q(); }
  std::uint32_t coefficient(Element a, int k) const;

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element pow(Element a, std::uint64_t e) const;
  Element inv(Element a) const;
  Element frobenius(Element a, int j = 1) const;
  // Sum of the n Galois conjugates; always lands in kappa_K.
  Element trace(Element a) const;

  // Coordinates over F_p, index k*f + i for t^i s^k.
  std::vector<std::uint32_t> coords(Element a) const;
  Element from_coords(std::span<const std::uint32_t> c) const;

  // Dimension over kappa_K of the kappa_K-span of the given elements.
  int base_span_dimension(std::span<const Element> elems) const;

 private:
  FiniteFieldExt(PrimeExtension base, Poly top);
  Element mul_slow(Element a, Element b) const;

  PrimeExtension base_;
  Poly top_;
  int n_;
  std::uint64_t size_;
  std::vector<std::uint32_t> pow_q_;  // q^k
  std::vector<Element> mul_table_;    // filled for small fields
  std::vector<Element> frob_;         // a -> a^q
};

/// Incremental row echelon basis over F_p.
class FpSpan {
 public:
  FpSpan(std::uint32_t p, std::size_t dim) : p_(p), dim_(dim) {}
  // Returns true if v was independent of the current span.
  bool insert(std::vector<std::uint32_t> v);
  std::size_t rank() const noexcept { return rows_.size(); }
  bool full() const noexcept { return rows_.size() == dim_; }

 private:
  std::uint32_t p_;
  std::size_t dim_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::size_t> pivots_;
};

inline constexpr std::uint64_t kExhaustiveFieldCap = 625;  // 5^4

// Every exhaustive check below throws CapExceeded when the field has more than
// kExhaustiveFieldCap elements.

struct TraceZeroSpace {
  std::vector<FiniteFieldExt::Element> basis;  // over kappa_K
  std::vector<FiniteFieldExt::Element> elements;
};

TraceZeroSpace trace_zero_space(const FiniteFieldExt& E);
bool hilbert90_additive_check(const FiniteFieldExt& E);
// {alpha theta(beta) - beta theta^{-1}(alpha)} over all beta equals the trace-zero space.
bool skew_image_check(const FiniteFieldExt& E, FiniteFieldExt::Element alpha);
// Same set with the roles of the variable and the fixed element swapped.
bool skew_image_dual_check(const FiniteFieldExt& E, FiniteFieldExt::Element beta);
bool bracket_span_check(const FiniteFieldExt& E, int k);
FiniteFieldExt::Element nonfixed_witness(const FiniteFieldExt& E, int j);

struct ResidueBasis {
  std::vector<FiniteFieldExt::Element> t;
  int pivot = 0;  // index of the power basis element used to carry the trace
};

struct ResidueBasisReport {
  bool is_basis = false;
  bool tail_spans_trace_zero = false;
  bool unit_position = false;   // t_0 = 1 if ch does not divide n, t_1 = 1 otherwise
  bool last_outside_base = false;  // or exempt
  bool differences_independent = false;
  bool all() const {
    return is_basis && tail_spans_trace_zero && unit_position && last_outside_base &&
           differences_independent;
  }
};

ResidueBasis special_residue_basis(const FiniteFieldExt& E);
ResidueBasisReport check_residue_basis(const FiniteFieldExt& E, const ResidueBasis& basis);

// For every (n-1)-dimensional kappa_K-subspace V (kernel of x -> T(gamma x))
// and kappa_K-independent xi0, xi1: xi0 V + xi1 V = F.
bool hyperplane_translates_check(const FiniteFieldExt& E);
bool trace_form_nondegenerate(const FiniteFieldExt& E);

}  // namespace padiclie
