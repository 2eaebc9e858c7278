#pragma once

#include <cstdint>
#include <string>

namespace padiclie {

inline constexpr int kDefaultPrecision = 12;

bool is_prime(std::uint64_t n);

/// Prime and working precision shared by every value of one computation.
///
/// Residues live in [0, p^prec). The modulus is kept below 2^62 so sums of
/// two residues never overflow and products fit in 128 bits.
class PadicContext {
 public:
  PadicContext() = default;
  PadicContext(std::uint64_t p, int prec);

  std::uint64_t p() const noexcept { return p_; }
  int prec() const noexcept { return prec_; }
  std::uint64_t modulus() const noexcept { return modulus_; }

  // p^k for 0 <= k <= prec.
  std::uint64_t power(int k) const;
  PadicContext with_precision(int prec) const { return PadicContext(p_, prec); }
  static bool fits(std::uint64_t p, int prec);

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    std::uint64_t s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + modulus_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : modulus_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % modulus_);
  }
  std::uint64_t from_signed(std::int64_t v) const noexcept;
  // Residue of the signed integer closest to zero, useful for printing.
  std::int64_t to_signed(std::uint64_t r) const noexcept;

  // Exponent of p in r; prec for r = 0.
  int valuation(std::uint64_t r) const noexcept;
  // Inverse modulo p^prec; throws NotInvertibleError for non-units.
  std::uint64_t inverse(std::uint64_t r) const;
  // r / p^k for r divisible by p^k, as an exact integer quotient.
  std::uint64_t divide_by_power(std::uint64_t r, int k) const;

  bool operator==(const PadicContext&) const = default;

 private:
  std::uint64_t p_ = 2;
  int prec_ = kDefaultPrecision;
  std::uint64_t modulus_ = 4096;
};

/// A p-adic integer known modulo p^prec.
class PadicInt {
 public:
  PadicInt(PadicContext ctx, std::uint64_t residue);
  static PadicInt from_integer(PadicContext ctx, std::int64_t value);

  const PadicContext& context() const noexcept { return ctx_; }
  std::uint64_t residue() const noexcept { return residue_; }
  int valuation() const noexcept { return ctx_.valuation(residue_); }
  bool is_zero() const noexcept { return residue_ == 0; }
  bool is_unit() const noexcept { return valuation() == 0; }
  PadicInt unit_inverse() const;

  PadicInt operator+(const PadicInt& o) const;
  PadicInt operator-(const PadicInt& o) const;
  PadicInt operator*(const PadicInt& o) const;
  PadicInt operator-() const;
  bool operator==(const PadicInt& o) const;

  std::string to_string() const { return std::to_string(residue_); }

 private:
  PadicContext ctx_;
  std::uint64_t residue_;
};

enum class ArithOp { Add, Sub, Mul };
PadicInt padic_arith(const PadicInt& a, const PadicInt& b, ArithOp op);

}  // namespace padiclie
