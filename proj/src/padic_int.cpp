#include "padiclie/padic_int.hpp"

#include "padiclie/errors.hpp"

namespace padiclie {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool PadicContext::fits(std::uint64_t p, int prec) {
  if (p < 2 || prec < 1) return false;
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::uint64_t m = 1;
  for (int i = 0; i < prec; ++i) {
    if (m > kLimit / p) return false;
    m *= p;
  }
  return true;
}

PadicContext::PadicContext(std::uint64_t p, int prec) : p_(p), prec_(prec) {
  if (!is_prime(p)) throw StructuralError("p must be prime, got " + std::to_string(p));
  if (prec < 1) throw StructuralError("precision must be positive");
  if (!fits(p, prec))
    throw PrecisionError("insufficient precision: p^" + std::to_string(prec) +
                         " exceeds the 62-bit residue range");
  modulus_ = 1;
  for (int i = 0; i < prec; ++i) modulus_ *= p;
}

std::uint64_t PadicContext::power(int k) const {
  if (k < 0 || k > prec_) throw StructuralError("power of p outside [0, prec]");
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p_;
  return r;
}

std::uint64_t PadicContext::from_signed(std::int64_t v) const noexcept {
  if (v >= 0) return static_cast<std::uint64_t>(v) % modulus_;
  std::uint64_t m = (~static_cast<std::uint64_t>(v) + 1) % modulus_;
  return m == 0 ? 0 : modulus_ - m;
}

std::int64_t PadicContext::to_signed(std::uint64_t r) const noexcept {
  if (r <= modulus_ / 2) return static_cast<std::int64_t>(r);
  return -static_cast<std::int64_t>(modulus_ - r);
}

int PadicContext::valuation(std::uint64_t r) const noexcept {
  if (r == 0) return prec_;
  int v = 0;
  if (p_ == 2) return __builtin_ctzll(r);
  while (r % p_ == 0) {
    r /= p_;
    ++v;
  }
  return v;
}

std::uint64_t PadicContext::inverse(std::uint64_t r) const {
  if (r % p_ == 0) throw NotInvertibleError("not invertible at this precision");
  // Extended Euclid on (r, p^prec); both fit comfortably in signed 128-bit.
  __int128 old_r = static_cast<__int128>(r), cur_r = static_cast<__int128>(modulus_);
  __int128 old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    __int128 q = old_r / cur_r;
    __int128 t = old_r - q * cur_r;
    old_r = cur_r;
    cur_r = t;
    t = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = t;
  }
  __int128 m = static_cast<__int128>(modulus_);
  __int128 s = old_s % m;
  if (s < 0) s += m;
  return static_cast<std::uint64_t>(s);
}

std::uint64_t PadicContext::divide_by_power(std::uint64_t r, int k) const {
  std::uint64_t d = power(k);
  if (r % d != 0) throw StructuralError("residue not divisible by requested power of p");
  return r / d;
}

PadicInt::PadicInt(PadicContext ctx, std::uint64_t residue)
    : ctx_(ctx), residue_(residue % ctx.modulus()) {}

PadicInt PadicInt::from_integer(PadicContext ctx, std::int64_t value) {
  return PadicInt(ctx, ctx.from_signed(value));
}

PadicInt PadicInt::unit_inverse() const { return PadicInt(ctx_, ctx_.inverse(residue_)); }

namespace {
void require_same(const PadicInt& a, const PadicInt& b) {
  if (!(a.context() == b.context()))
    throw StructuralError("operands have different (p, prec)");
}
}  // namespace

PadicInt PadicInt::operator+(const PadicInt& o) const {
  require_same(*this, o);
  return PadicInt(ctx_, ctx_.add(residue_, o.residue_));
}
PadicInt PadicInt::operator-(const PadicInt& o) const {
  require_same(*this, o);
  return PadicInt(ctx_, ctx_.sub(residue_, o.residue_));
}
PadicInt PadicInt::operator*(const PadicInt& o) const {
  require_same(*this, o);
  return PadicInt(ctx_, ctx_.mul(residue_, o.residue_));
}
PadicInt PadicInt::operator-() const { return PadicInt(ctx_, ctx_.neg(residue_)); }
bool PadicInt::operator==(const PadicInt& o) const {
  return ctx_ == o.ctx_ && residue_ == o.residue_;
}

PadicInt padic_arith(const PadicInt& a, const PadicInt& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  throw StructuralError("unknown arithmetic operation");
}

}  // namespace padiclie
