#include "padiclie/finite_cyclic.hpp"

#include <algorithm>
#include <string>

#include "padiclie/errors.hpp"
#include "padiclie/padic_int.hpp"

namespace padiclie {

namespace {

constexpr std::uint32_t kMaxBaseSize = 2048;
constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 24;
constexpr std::uint64_t kTableSize = 1024;

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(PadicContext(p, 1).inverse(a % p));
}

// Polynomial product over F_q reduced by a monic modulus.
Poly reduce(const PrimeExtension& F, Poly c, const Poly& monic) {
  std::size_t n = monic.size() - 1;
  for (std::size_t deg = c.size(); deg-- > n;) {
    std::uint32_t lead = c[deg];
    if (lead == 0) continue;
    for (std::size_t l = 0; l < n; ++l)
      c[deg - n + l] = F.sub(c[deg - n + l], F.mul(lead, monic[l]));
    c[deg] = 0;
  }
  c.resize(n, 0);
  return c;
}

Poly multiply(const PrimeExtension& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  }
  return out;
}

// Remainder of a modulo a monic b.
bool divides(const PrimeExtension& F, const Poly& monic_divisor, Poly a) {
  std::size_t k = monic_divisor.size() - 1;
  for (std::size_t deg = a.size(); deg-- > k;) {
    std::uint32_t lead = a[deg];
    if (lead == 0) continue;
    for (std::size_t l = 0; l <= k; ++l)
      a[deg - k + l] = F.sub(a[deg - k + l], F.mul(lead, monic_divisor[l]));
  }
  for (std::size_t i = 0; i < std::min(k, a.size()); ++i)
    if (a[i] != 0) return false;
  return true;
}

void check_cap(const FiniteFieldExt& E) {
  if (E.size() > kExhaustiveFieldCap)
    throw CapExceeded("grid cap exceeded: field has " + std::to_string(E.size()) +
                      " elements, limit " + std::to_string(kExhaustiveFieldCap));
}

}  // namespace

PrimeExtension::PrimeExtension(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw StructuralError("p must be prime");
  if (modulus_.size() < 2 || modulus_.back() != 1)
    throw StructuralError("base modulus must be monic of degree >= 1");
  f_ = static_cast<int>(modulus_.size()) - 1;
  std::uint64_t q = 1;
  for (int i = 0; i < f_; ++i) {
    q *= p;
    if (q > kMaxBaseSize) throw StructuralError("residue field too large");
  }
  q_ = static_cast<std::uint32_t>(q);
  for (auto& c : modulus_) c %= p;
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  auto digits = [&](std::uint32_t a) {
    std::vector<std::uint32_t> d(f_);
    for (int i = 0; i < f_; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  };
  auto encode = [&](const std::vector<std::uint32_t>& d) {
    std::uint32_t a = 0;
    for (int i = f_; i-- > 0;) a = a * p + d[i];
    return a;
  };
  for (std::uint32_t a = 0; a < q_; ++a) {
    auto da = digits(a);
    std::vector<std::uint32_t> dn(f_);
    for (int i = 0; i < f_; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = encode(dn);
    for (std::uint32_t b = 0; b < q_; ++b) {
      auto db = digits(b);
      std::vector<std::uint32_t> s(f_);
      for (int i = 0; i < f_; ++i) s[i] = (da[i] + db[i]) % p;
      add_[a * q_ + b] = encode(s);
      std::vector<std::uint32_t> prod(2 * f_ - 1, 0);
      for (int i = 0; i < f_; ++i)
        for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      for (int deg = 2 * f_ - 2; deg >= f_; --deg) {
        std::uint32_t lead = prod[deg];
        if (lead == 0) continue;
        for (int l = 0; l < f_; ++l)
          prod[deg - f_ + l] = (prod[deg - f_ + l] + (p - lead) * modulus_[l]) % p;
        prod[deg] = 0;
      }
      prod.resize(f_);
      mul_[a * q_ + b] = encode(prod);
    }
  }
  for (std::uint32_t a = 1; a < q_; ++a)
    for (std::uint32_t b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = b;
        break;
      }
  for (std::uint32_t a = 1; a < q_; ++a)
    if (inv_[a] == 0) throw StructuralError("base modulus is not irreducible");
}

PrimeExtension PrimeExtension::prime_field(std::uint32_t p) { return PrimeExtension(p, {0, 1}); }

std::uint32_t PrimeExtension::inv(std::uint32_t a) const {
  if (a == 0) throw NotInvertibleError("zero has no inverse in a field");
  return inv_[a];
}

std::uint32_t PrimeExtension::digit(std::uint32_t a, int i) const {
  for (int k = 0; k < i; ++k) a /= p_;
  return a % p_;
}

bool is_irreducible(const PrimeExtension& F, const Poly& monic) {
  if (monic.empty() || monic.back() != 1) throw StructuralError("polynomial must be monic");
  std::size_t n = monic.size() - 1;
  if (n == 0) return false;
  std::uint32_t q = F.size();
  for (std::size_t k = 1; 2 * k <= n; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= q;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly d(k + 1, 0);
      std::uint64_t rest = idx;
      for (std::size_t i = 0; i < k; ++i) {
        d[i] = static_cast<std::uint32_t>(rest % q);
        rest /= q;
      }
      d[k] = 1;
      if (divides(F, d, monic)) return false;
    }
  }
  return true;
}

Poly lowest_irreducible(const PrimeExtension& F, int degree) {
  if (degree < 1) throw StructuralError("degree must be positive");
  std::uint32_t q = F.size();
  std::uint64_t count = 1;
  for (int i = 0; i < degree; ++i) count *= q;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly g(degree + 1, 0);
    std::uint64_t rest = idx;
    for (int i = 0; i < degree; ++i) {
      g[i] = static_cast<std::uint32_t>(rest % q);
      rest /= q;
    }
    g[degree] = 1;
    if (is_irreducible(F, g)) return g;
  }
  throw StructuralError("no irreducible polynomial found");
}

FiniteFieldExt FiniteFieldExt::build(std::uint32_t p, int f, int n) {
  if (!is_prime(p)) throw StructuralError("p must be prime, got " + std::to_string(p));
  if (f < 1 || n < 1) throw StructuralError("degrees must be positive");
  PrimeExtension base(p, lowest_irreducible(PrimeExtension::prime_field(p), f));
  Poly top = lowest_irreducible(base, n);
  return FiniteFieldExt(std::move(base), std::move(top));
}

FiniteFieldExt FiniteFieldExt::build(std::uint32_t p, Poly base_modulus, Poly top_modulus) {
  if (!is_irreducible(PrimeExtension::prime_field(p), base_modulus))
    throw StructuralError("base modulus is not irreducible over F_p");
  PrimeExtension base(p, std::move(base_modulus));
  if (!is_irreducible(base, top_modulus))
    throw StructuralError("extension polynomial is not irreducible over the residue field");
  return FiniteFieldExt(std::move(base), std::move(top_modulus));
}

FiniteFieldExt::FiniteFieldExt(PrimeExtension base, Poly top)
    : base_(std::move(base)), top_(std::move(top)) {
  n_ = static_cast<int>(top_.size()) - 1;
  size_ = 1;
  for (int k = 0; k <= n_; ++k) {
    pow_q_.push_back(static_cast<std::uint32_t>(size_));
    if (k == n_) break;
    size_ *= base_.size();
    if (size_ > kMaxFieldSize) throw StructuralError("finite field too large");
  }
  if (size_ <= kTableSize) {
    mul_table_.resize(size_ * size_);
    for (Element a = 0; a < size_; ++a)
      for (Element b = 0; b < size_; ++b) mul_table_[a * size_ + b] = mul_slow(a, b);
  }
  if (size_ <= (std::uint64_t{1} << 16)) {
    frob_.resize(size_);
    for (Element a = 0; a < size_; ++a) frob_[a] = pow(a, q());
  }
}

FiniteFieldExt::Element FiniteFieldExt::generator() const {
  if (n_ >= 2) return q();
  return base_.neg(top_[0]);
}

std::uint32_t FiniteFieldExt::coefficient(Element a, int k) const {
  return (a / pow_q_[k]) % q();
}

FiniteFieldExt::Element FiniteFieldExt::add(Element a, Element b) const {
  Element out = 0;
  for (int k = 0; k < n_; ++k)
    out += base_.add(coefficient(a, k), coefficient(b, k)) * pow_q_[k];
  return out;
}

FiniteFieldExt::Element FiniteFieldExt::sub(Element a, Element b) const { return add(a, neg(b)); }

FiniteFieldExt::Element FiniteFieldExt::neg(Element a) const {
  Element out = 0;
  for (int k = 0; k < n_; ++k) out += base_.neg(coefficient(a, k)) * pow_q_[k];
  return out;
}

FiniteFieldExt::Element FiniteFieldExt::mul_slow(Element a, Element b) const {
  Poly pa(n_), pb(n_);
  for (int k = 0; k < n_; ++k) {
    pa[k] = coefficient(a, k);
    pb[k] = coefficient(b, k);
  }
  Poly r = reduce(base_, multiply(base_, pa, pb), top_);
  Element out = 0;
  for (int k = 0; k < n_; ++k) out += r[k] * pow_q_[k];
  return out;
}

FiniteFieldExt::Element FiniteFieldExt::mul(Element a, Element b) const {
  if (!mul_table_.empty()) return mul_table_[a * size_ + b];
  return mul_slow(a, b);
}

FiniteFieldExt::Element FiniteFieldExt::pow(Element a, std::uint64_t e) const {
  Element result = 1, base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

FiniteFieldExt::Element FiniteFieldExt::inv(Element a) const {
  if (a == 0) throw NotInvertibleError("zero has no inverse in a field");
  return pow(a, size_ - 2);
}

FiniteFieldExt::Element FiniteFieldExt::frobenius(Element a, int j) const {
  j = ((j % n_) + n_) % n_;
  for (int i = 0; i < j; ++i) a = frob_.empty() ? pow(a, q()) : frob_[a];
  return a;
}

FiniteFieldExt::Element FiniteFieldExt::trace(Element a) const {
  Element s = 0, cur = a;
  for (int j = 0; j < n_; ++j) {
    s = add(s, cur);
    cur = frobenius(cur, 1);
  }
  return s;
}

std::vector<std::uint32_t> FiniteFieldExt::coords(Element a) const {
  std::vector<std::uint32_t> c(static_cast<std::size_t>(f() * n_));
  for (auto& x : c) {
    x = a % p();
    a /= p();
  }
  return c;
}

FiniteFieldExt::Element FiniteFieldExt::from_coords(std::span<const std::uint32_t> c) const {
  if (c.size() != static_cast<std::size_t>(f() * n_)) throw StructuralError("coordinate length mismatch");
  Element a = 0;
  for (std::size_t i = c.size(); i-- > 0;) a = a * p() + c[i] % p();
  return a;
}

int FiniteFieldExt::base_span_dimension(std::span<const Element> elems) const {
  FpSpan span(p(), static_cast<std::size_t>(f() * n_));
  for (Element v : elems) {
    Element ti = 1;
    for (int i = 0; i < f(); ++i) {
      span.insert(coords(mul(ti, v)));
      if (i + 1 < f()) ti = mul(ti, embed(p()));  // times t
    }
    if (span.full()) break;
  }
  return static_cast<int>(span.rank()) / f();
}

bool FpSpan::insert(std::vector<std::uint32_t> v) {
  if (v.size() != dim_) throw StructuralError("vector length mismatch");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::uint32_t c = v[pivots_[r]];
    if (c == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) v[j] = (v[j] + (p_ - c) * rows_[r][j]) % p_;
  }
  auto it = std::find_if(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; });
  if (it == v.end()) return false;
  std::size_t piv = static_cast<std::size_t>(it - v.begin());
  std::uint32_t inv = mod_inv(v[piv], p_);
  for (auto& x : v) x = x * inv % p_;
  // Keep existing rows reduced at the new pivot.
  for (auto& row : rows_) {
    std::uint32_t c = row[piv];
    if (c == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) row[j] = (row[j] + (p_ - c) * v[j]) % p_;
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

TraceZeroSpace trace_zero_space(const FiniteFieldExt& E) {
  TraceZeroSpace out;
  std::size_t dim = static_cast<std::size_t>(E.f() * E.n());
  std::uint32_t p = E.p();
  // Kernel of the F_p-linear trace: eliminate on the augmented rows [T(e_i) | e_i].
  std::vector<std::vector<std::uint32_t>> rows;
  std::size_t fdim = static_cast<std::size_t>(E.f());
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<std::uint32_t> unit(dim, 0);
    unit[i] = 1;
    auto img = E.coords(E.trace(E.from_coords(unit)));
    std::vector<std::uint32_t> row(img.begin(), img.begin() + static_cast<long>(fdim));
    row.insert(row.end(), unit.begin(), unit.end());
    rows.push_back(std::move(row));
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < fdim && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    std::uint32_t inv = mod_inv(rows[r][c], p);
    for (auto& x : rows[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      std::uint32_t m = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] = (rows[i][j] + (p - m) * rows[r][j]) % p;
    }
    ++r;
  }
  std::vector<FiniteFieldExt::Element> kernel;
  for (std::size_t i = r; i < rows.size(); ++i)
    kernel.push_back(E.from_coords(std::span<const std::uint32_t>(rows[i]).subspan(fdim)));
  // Greedy kappa_K-basis from the F_p-basis of the kernel.
  int dim_now = 0;
  for (auto v : kernel) {
    out.basis.push_back(v);
    int d = E.base_span_dimension(out.basis);
    if (d == dim_now) out.basis.pop_back();
    else dim_now = d;
  }
  if (E.size() <= kExhaustiveFieldCap)
    for (FiniteFieldExt::Element a = 0; a < E.size(); ++a)
      if (E.trace(a) == 0) out.elements.push_back(a);
  return out;
}

namespace {

std::vector<bool> trace_zero_set(const FiniteFieldExt& E) {
  std::vector<bool> s(E.size(), false);
  for (FiniteFieldExt::Element a = 0; a < E.size(); ++a) s[a] = E.trace(a) == 0;
  return s;
}

}  // namespace

bool hilbert90_additive_check(const FiniteFieldExt& E) {
  check_cap(E);
  std::vector<bool> image(E.size(), false);
  for (FiniteFieldExt::Element a = 0; a < E.size(); ++a) image[E.sub(E.frobenius(a), a)] = true;
  return image == trace_zero_set(E);
}

bool skew_image_check(const FiniteFieldExt& E, FiniteFieldExt::Element alpha) {
  check_cap(E);
  if (alpha == 0 || alpha >= E.size()) throw StructuralError("alpha must be a nonzero field element");
  std::vector<bool> image(E.size(), false);
  auto a_back = E.frobenius(alpha, -1);
  for (FiniteFieldExt::Element b = 0; b < E.size(); ++b)
    image[E.sub(E.mul(alpha, E.frobenius(b)), E.mul(b, a_back))] = true;
  return image == trace_zero_set(E);
}

bool skew_image_dual_check(const FiniteFieldExt& E, FiniteFieldExt::Element beta) {
  check_cap(E);
  if (beta == 0 || beta >= E.size()) throw StructuralError("beta must be a nonzero field element");
  std::vector<bool> image(E.size(), false);
  auto b_fwd = E.frobenius(beta);
  for (FiniteFieldExt::Element a = 0; a < E.size(); ++a)
    image[E.sub(E.mul(a, b_fwd), E.mul(beta, E.frobenius(a, -1)))] = true;
  return image == trace_zero_set(E);
}

bool bracket_span_check(const FiniteFieldExt& E, int k) {
  check_cap(E);
  int n = E.n();
  if (((k + 1) % n + n) % n == 0)
    throw HypothesisViolated("hypothesis violated: k + 1 is divisible by n");
  std::vector<FiniteFieldExt::Element> gens;
  FpSpan span(E.p(), static_cast<std::size_t>(E.f() * n));
  for (FiniteFieldExt::Element a = 0; a < E.size() && !span.full(); ++a) {
    auto ak = E.frobenius(a, k);
    for (FiniteFieldExt::Element b = 0; b < E.size() && !span.full(); ++b) {
      auto v = E.sub(E.mul(a, E.frobenius(b)), E.mul(b, ak));
      FiniteFieldExt::Element ti = 1;
      for (int i = 0; i < E.f(); ++i) {
        span.insert(E.coords(E.mul(ti, v)));
        if (i + 1 < E.f()) ti = E.mul(ti, E.embed(E.p()));
      }
    }
  }
  return span.full();
}

FiniteFieldExt::Element nonfixed_witness(const FiniteFieldExt& E, int j) {
  check_cap(E);
  if (j <= 0 || j >= E.n()) throw StructuralError("j must satisfy 0 < j < n");
  if (E.p() == 2 && E.n() == 2) throw HypothesisViolated("hypothesis violated: (ch, n) = (2, 2)");
  for (FiniteFieldExt::Element a = 0; a < E.size(); ++a)
    if (E.trace(a) == 0 && E.frobenius(a, j) != a) return a;
  throw VerificationFailure("no trace-zero element moved by the Frobenius power");
}

ResidueBasis special_residue_basis(const FiniteFieldExt& E) {
  int n = E.n();
  std::vector<FiniteFieldExt::Element> gamma(n);
  gamma[0] = 1;
  for (int i = 1; i < n; ++i) gamma[i] = E.mul(gamma[i - 1], E.generator());
  int i0 = 0;
  if (n % static_cast<int>(E.p()) == 0) {
    i0 = -1;
    for (int i = 0; i < n; ++i)
      if (E.trace(gamma[i]) != 0) {
        i0 = i;
        break;
      }
    if (i0 < 0) throw VerificationFailure("trace vanishes on the power basis");
  }
  auto t0 = E.trace(gamma[i0]);
  auto t0_inv = E.inv(t0);
  auto project = [&](FiniteFieldExt::Element g) {
    return E.sub(g, E.mul(E.mul(E.trace(g), t0_inv), gamma[i0]));
  };
  ResidueBasis out;
  out.pivot = i0;
  out.t.resize(n);
  out.t[0] = gamma[i0];
  for (int i = 1; i < n; ++i) out.t[i] = i <= i0 ? project(gamma[i - 1]) : project(gamma[i]);
  return out;
}

ResidueBasisReport check_residue_basis(const FiniteFieldExt& E, const ResidueBasis& basis) {
  ResidueBasisReport r;
  int n = E.n();
  const auto& t = basis.t;
  bool p_divides = n % static_cast<int>(E.p()) == 0;
  r.is_basis = static_cast<int>(t.size()) == n && E.base_span_dimension(t) == n;
  std::vector<FiniteFieldExt::Element> tail(t.begin() + 1, t.end());
  r.tail_spans_trace_zero =
      std::all_of(tail.begin(), tail.end(), [&](auto x) { return E.trace(x) == 0; }) &&
      E.base_span_dimension(tail) == n - 1;
  r.unit_position = p_divides ? (n >= 2 && t[1] == 1) : t[0] == 1;
  bool exempt = n < 2 || (E.p() == 2 && n == 2);
  r.last_outside_base = exempt || !E.in_base(t[n - 1]);
  int skip = p_divides ? 1 : 0;
  std::vector<FiniteFieldExt::Element> xi;
  for (int i = 0; i < n; ++i)
    if (i != skip) xi.push_back(E.sub(t[i], E.frobenius(t[i])));
  r.differences_independent = E.base_span_dimension(xi) == static_cast<int>(xi.size());
  return r;
}

bool hyperplane_translates_check(const FiniteFieldExt& E) {
  check_cap(E);
  int n = E.n();
  if (n < 2) return true;
  // xi0 V + xi1 V = xi0 (V + xi V) with xi = xi1 / xi0 outside kappa_K.
  for (FiniteFieldExt::Element gamma = 1; gamma < E.size(); ++gamma) {
    // One representative per kappa_K-line: last nonzero s-coefficient equal to 1.
    int last = n - 1;
    while (E.coefficient(gamma, last) == 0) --last;
    if (E.coefficient(gamma, last) != 1) continue;
    std::vector<FiniteFieldExt::Element> V;
    int rank = 0;
    for (FiniteFieldExt::Element x = 1; x < E.size() && rank < n - 1; ++x) {
      if (E.trace(E.mul(gamma, x)) != 0) continue;
      V.push_back(x);
      int r = E.base_span_dimension(V);
      if (r == rank) V.pop_back();
      else rank = r;
    }
    if (rank != n - 1) return false;
    for (FiniteFieldExt::Element xi = E.q(); xi < E.size(); ++xi) {
      std::vector<FiniteFieldExt::Element> gens = V;
      for (auto v : V) gens.push_back(E.mul(xi, v));
      if (E.base_span_dimension(gens) != n) return false;
    }
  }
  return true;
}

bool trace_form_nondegenerate(const FiniteFieldExt& E) {
  int n = E.n();
  const auto& K = E.base();
  std::vector<FiniteFieldExt::Element> pw(2 * n, 1);
  for (int i = 1; i < 2 * n; ++i) pw[i] = E.mul(pw[i - 1], E.generator());
  std::vector<std::vector<std::uint32_t>> g(n, std::vector<std::uint32_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = E.trace(pw[i + j]);
  // Rank over kappa_K by elimination.
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && g[piv][c] == 0) ++piv;
    if (piv == n) return false;
    std::swap(g[c], g[piv]);
    auto inv = K.inv(g[c][c]);
    for (int r = c + 1; r < n; ++r) {
      if (g[r][c] == 0) continue;
      auto m = K.mul(g[r][c], inv);
      for (int j = c; j < n; ++j) g[r][j] = K.sub(g[r][j], K.mul(m, g[c][j]));
    }
  }
  return true;
}

}  // namespace padiclie
