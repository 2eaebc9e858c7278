#include "padiclie/local_field.hpp"

#include <algorithm>
#include <sstream>

#include "padiclie/errors.hpp"

namespace padiclie {

namespace {

std::vector<std::uint64_t> add_vec(const PadicContext& c, std::span<const std::uint64_t> a,
                                   std::span<const std::uint64_t> b) {
  std::vector<std::uint64_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c.add(a[i], b[i]);
  return out;
}

std::vector<std::uint64_t> sub_vec(const PadicContext& c, std::span<const std::uint64_t> a,
                                   std::span<const std::uint64_t> b) {
  std::vector<std::uint64_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c.sub(a[i], b[i]);
  return out;
}

bool is_zero_vec(std::span<const std::uint64_t> v) {
  return std::all_of(v.begin(), v.end(), [](std::uint64_t x) { return x == 0; });
}

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

std::string poly_string(const std::vector<std::uint64_t>& c, const PadicContext& ctx, char var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c.size(); k-- > 0;) {
    std::int64_t v = ctx.to_signed(c[k]);
    if (v == 0) continue;
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    std::int64_t a = v < 0 ? -v : v;
    if (a != 1 || k == 0) os << a;
    if (k > 0) os << var;
    if (k > 1) os << '^' << k;
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace

// ---------------------------------------------------------------- LocalField

LocalField LocalField::build(std::uint64_t p, int e, int f, int prec,
                             std::optional<std::vector<std::int64_t>> eisenstein) {
  if (!is_prime(p)) throw StructuralError("p must be prime, got " + std::to_string(p));
  if (e < 1 || f < 1) throw StructuralError("e and f must be positive");
  PadicContext ctx(p, prec);
  Poly g0 = lowest_irreducible(PrimeExtension::prime_field(static_cast<std::uint32_t>(p)), f);
  PrimeExtension kappa(static_cast<std::uint32_t>(p), g0);
  std::vector<std::uint64_t> h0(g0.begin(), g0.end());
  std::vector<std::uint64_t> eis(static_cast<std::size_t>(e) + 1, 0);
  if (eisenstein) {
    const auto& c = *eisenstein;
    if (c.size() != eis.size() || c.back() != 1)
      throw StructuralError("Eisenstein polynomial must be monic of degree e");
    for (std::size_t j = 0; j < eis.size(); ++j) eis[j] = ctx.from_signed(c[j]);
    for (std::size_t j = 0; j + 1 < eis.size(); ++j)
      if (ctx.valuation(eis[j]) < 1) throw StructuralError("polynomial is not Eisenstein");
    if (ctx.valuation(eis[0]) != 1) throw StructuralError("polynomial is not Eisenstein");
  } else {
    eis[0] = ctx.neg(p);
    eis.back() = 1;
  }
  return LocalField(ctx, e, f, std::move(kappa), std::move(h0), std::move(eis));
}

LocalField::LocalField(PadicContext ctx, int e, int f, PrimeExtension kappa,
                       std::vector<std::uint64_t> h0, std::vector<std::uint64_t> eis)
    : ctx_(ctx), e_(e), f_(f), kappa_(std::move(kappa)), h0_(std::move(h0)), eis_(std::move(eis)) {
  std::size_t dd = static_cast<std::size_t>(d());
  table_.resize(dd * dd);
  for (std::size_t a = 0; a < dd; ++a)
    for (std::size_t b = 0; b < dd; ++b) {
      OkElem x = zero(), y = zero();
      x[a] = 1;
      y[b] = 1;
      table_[a * dd + b] = product_slow(x, y);
    }
}

OkElem LocalField::product_slow(const OkElem& a, const OkElem& b) const {
  // P[i][j]: coefficient of t^i x^j before reduction.
  std::size_t T = static_cast<std::size_t>(2 * f_ - 1), X = static_cast<std::size_t>(2 * e_ - 1);
  std::vector<std::vector<std::uint64_t>> P(T, std::vector<std::uint64_t>(X, 0));
  for (int i1 = 0; i1 < f_; ++i1)
    for (int j1 = 0; j1 < e_; ++j1) {
      auto ca = a[i1 * e_ + j1];
      if (ca == 0) continue;
      for (int i2 = 0; i2 < f_; ++i2)
        for (int j2 = 0; j2 < e_; ++j2) {
          auto cb = b[i2 * e_ + j2];
          if (cb == 0) continue;
          auto& slot = P[i1 + i2][j1 + j2];
          slot = ctx_.add(slot, ctx_.mul(ca, cb));
        }
    }
  for (std::size_t i = 0; i < T; ++i)
    for (std::size_t j = X; j-- > static_cast<std::size_t>(e_);) {
      auto c = P[i][j];
      if (c == 0) continue;
      for (int l = 0; l < e_; ++l)
        P[i][j - e_ + l] = ctx_.sub(P[i][j - e_ + l], ctx_.mul(c, eis_[l]));
      P[i][j] = 0;
    }
  for (std::size_t i = T; i-- > static_cast<std::size_t>(f_);)
    for (std::size_t j = 0; j < X; ++j) {
      auto c = P[i][j];
      if (c == 0) continue;
      for (int l = 0; l < f_; ++l)
        P[i - f_ + l][j] = ctx_.sub(P[i - f_ + l][j], ctx_.mul(c, h0_[l]));
      P[i][j] = 0;
    }
  OkElem out = zero();
  for (int i = 0; i < f_; ++i)
    for (int j = 0; j < e_; ++j) out[i * e_ + j] = P[i][j];
  return out;
}

OkElem LocalField::one() const {
  OkElem a = zero();
  a[0] = 1;
  return a;
}

OkElem LocalField::from_integer(std::int64_t v) const {
  OkElem a = zero();
  a[0] = ctx_.from_signed(v);
  return a;
}

OkElem LocalField::basis_element(int i, int j) const {
  if (i < 0 || i >= f_ || j < 0 || j >= e_) throw StructuralError("basis index out of range");
  OkElem a = zero();
  a[i * e_ + j] = 1;
  return a;
}

OkElem LocalField::uniformizer() const {
  if (e_ > 1) return basis_element(0, 1);
  OkElem a = zero();
  a[0] = ctx_.neg(eis_[0]);
  return a;
}

OkElem LocalField::add(const OkElem& a, const OkElem& b) const { return add_vec(ctx_, a, b); }
OkElem LocalField::sub(const OkElem& a, const OkElem& b) const { return sub_vec(ctx_, a, b); }

OkElem LocalField::neg(const OkElem& a) const {
  OkElem out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ctx_.neg(a[i]);
  return out;
}

OkElem LocalField::mul(const OkElem& a, const OkElem& b) const {
  std::size_t dd = static_cast<std::size_t>(d());
  if (a.size() != dd || b.size() != dd) throw StructuralError("O_K element has wrong length");
  OkElem out = zero();
  for (std::size_t i = 0; i < dd; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dd; ++j) {
      if (b[j] == 0) continue;
      auto c = ctx_.mul(a[i], b[j]);
      const auto& t = table_[i * dd + j];
      for (std::size_t k = 0; k < dd; ++k)
        if (t[k]) out[k] = ctx_.add(out[k], ctx_.mul(c, t[k]));
    }
  }
  return out;
}

OkElem LocalField::scale(const OkElem& a, std::uint64_t c) const {
  OkElem out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ctx_.mul(a[i], c);
  return out;
}

OkElem LocalField::pi_power(int j) const {
  if (j < 0) throw StructuralError("negative power of pi is not integral");
  OkElem r = one(), pi = uniformizer();
  for (int k = 0; k < j; ++k) r = mul(r, pi);
  return r;
}

PadicMatrix LocalField::mult_matrix(const OkElem& a) const {
  std::size_t dd = static_cast<std::size_t>(d());
  PadicMatrix m(ctx_, dd, dd);
  for (std::size_t k = 0; k < dd; ++k) {
    OkElem b = zero();
    b[k] = 1;
    auto prod = mul(b, a);
    std::copy(prod.begin(), prod.end(), m.row(k).begin());
  }
  return m;
}

int LocalField::valuation(const OkElem& a) const {
  int best = e_ * ctx_.prec();
  for (int j = 0; j < e_; ++j) {
    int vp = ctx_.prec();
    for (int i = 0; i < f_; ++i) vp = std::min(vp, ctx_.valuation(a[i * e_ + j]));
    if (vp < ctx_.prec()) best = std::min(best, e_ * vp + j);
  }
  return best;
}

OkElem LocalField::unit_inverse(const OkElem& a) const {
  if (!is_unit(a)) throw NotInvertibleError("not a unit of O_K");
  PadicMatrix inv = inverse(mult_matrix(a));
  auto r = inv.row(0);
  return OkElem(r.begin(), r.end());
}

std::optional<OkElem> LocalField::divide(const OkElem& a, const OkElem& b) const {
  // y M_b = a with left M_b right = diag(p^v): solve z diag(p^v) = a right, y = z left.
  SmithForm sf = smith_decomposition(mult_matrix(b));
  auto ar = row_times_matrix(a, sf.right);
  std::vector<std::uint64_t> z(ar.size(), 0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    int v = sf.valuations[i];
    if (v >= ctx_.prec()) continue;
    if (ctx_.valuation(ar[i]) < v) return std::nullopt;
    z[i] = ctx_.divide_by_power(ar[i], v);
  }
  OkElem y = row_times_matrix(z, sf.left);
  if (mul(y, b) != a) return std::nullopt;
  return y;
}

std::uint32_t LocalField::residue(const OkElem& a) const {
  std::uint32_t r = 0;
  for (int i = f_; i-- > 0;) r = r * static_cast<std::uint32_t>(p()) + static_cast<std::uint32_t>(a[i * e_] % p());
  return r;
}

OkElem LocalField::lift(std::uint32_t residue) const {
  OkElem a = zero();
  for (int i = 0; i < f_; ++i) {
    a[i * e_] = residue % p();
    residue /= static_cast<std::uint32_t>(p());
  }
  return a;
}

std::string LocalField::describe() const {
  std::ostringstream os;
  os << "O_K over Z_" << p() << ": e=" << e_ << " f=" << f_ << ", h0(t) = " << poly_string(h0_, ctx_, 't')
     << ", E(x) = " << poly_string(eis_, ctx_, 'x');
  return os.str();
}

// ------------------------------------------------------------ UnramifiedExt

UnramifiedExt UnramifiedExt::build(const LocalField& K, int n,
                                   std::optional<std::vector<OkElem>> modulus) {
  if (n < 1) throw StructuralError("extension degree must be positive");
  Poly g0(K.base_modulus().begin(), K.base_modulus().end());
  std::vector<OkElem> h;
  Poly gbar;
  if (modulus) {
    h = *modulus;
    if (h.size() != static_cast<std::size_t>(n) + 1 || h.back() != K.one())
      throw StructuralError("extension polynomial must be monic of degree n");
    for (const auto& c : h) {
      if (c.size() != static_cast<std::size_t>(K.d())) throw StructuralError("coefficient has wrong length");
      gbar.push_back(K.residue(c));
    }
  } else {
    gbar = lowest_irreducible(K.residue_field(), n);
    for (auto c : gbar) h.push_back(K.lift(c));
  }
  auto kappa_F = FiniteFieldExt::build(static_cast<std::uint32_t>(K.p()), g0, gbar);
  return UnramifiedExt(K, n, std::move(h), std::move(kappa_F));
}

UnramifiedExt::UnramifiedExt(LocalField K, int n, std::vector<OkElem> h, FiniteFieldExt kappa_F)
    : K_(std::move(K)), n_(n), h_(std::move(h)), kappa_F_(std::move(kappa_F)) {
  std::size_t N = rank();
  table_.resize(N * N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      OfElem x = zero(), y = zero();
      x[a] = 1;
      y[b] = 1;
      table_[a * N + b] = product_slow(x, y);
    }

  const auto& ctx = K_.ctx();
  theta_.push_back(PadicMatrix::identity(ctx, N));
  if (n_ == 1) return;
  // Newton iteration from s^q towards the root of h congruent to s^q.
  std::uint64_t q = K_.residue_field().size();
  OfElem r = pow(generator(), q);
  bool converged = false;
  for (int it = 0; it < 64; ++it) {
    OfElem hr = evaluate_modulus(r, false);
    if (is_zero_vec(hr)) {
      converged = true;
      break;
    }
    r = sub(r, mul(hr, unit_inverse(evaluate_modulus(r, true))));
  }
  if (!converged) throw PrecisionError("Hensel iteration for the Frobenius lift did not converge");
  if (reduce(r) != kappa_F_.frobenius(reduce(generator())))
    throw VerificationFailure("Frobenius lift does not reduce to the q-power map");
  PadicMatrix theta(ctx, N, N);
  OfElem rk = one();
  for (int k = 0; k < n_; ++k) {
    for (int u = 0; u < d(); ++u) {
      OkElem bu = K_.zero();
      bu[u] = 1;
      auto row = mul(rk, embed(bu));
      std::copy(row.begin(), row.end(), theta.row(static_cast<std::size_t>(k * d() + u)).begin());
    }
    rk = mul(rk, r);
  }
  for (int j = 1; j < n_; ++j) theta_.push_back(theta_.back() * theta);
  if (!(theta_.back() * theta == PadicMatrix::identity(ctx, N)))
    throw VerificationFailure("Frobenius lift does not have order n at this precision");
}

OfElem UnramifiedExt::product_slow(const OfElem& a, const OfElem& b) const {
  std::vector<OkElem> P(static_cast<std::size_t>(2 * n_ - 1), K_.zero());
  for (int k = 0; k < n_; ++k) {
    auto ak = coefficient(a, k);
    if (is_zero_vec(ak)) continue;
    for (int l = 0; l < n_; ++l) P[k + l] = K_.add(P[k + l], K_.mul(ak, coefficient(b, l)));
  }
  for (std::size_t deg = P.size(); deg-- > static_cast<std::size_t>(n_);) {
    OkElem c = P[deg];
    if (is_zero_vec(c)) continue;
    for (int m = 0; m < n_; ++m) P[deg - n_ + m] = K_.sub(P[deg - n_ + m], K_.mul(c, h_[m]));
    P[deg] = K_.zero();
  }
  P.resize(static_cast<std::size_t>(n_));
  return from_coefficients(P);
}

OfElem UnramifiedExt::evaluate_modulus(const OfElem& r, bool derivative) const {
  OfElem acc = zero();
  const auto& ctx = K_.ctx();
  for (int k = n_; k >= (derivative ? 1 : 0); --k) {
    OkElem c = h_[k];
    if (derivative) c = K_.scale(c, ctx.from_signed(k));
    acc = add(mul(acc, r), embed(c));
  }
  return acc;
}

OfElem UnramifiedExt::generator() const {
  if (n_ == 1) {
    // s is the root of the linear polynomial s + h_0.
    return embed(K_.neg(h_[0]));
  }
  OfElem s = zero();
  s[static_cast<std::size_t>(d())] = 1;
  return s;
}

OfElem UnramifiedExt::embed(const OkElem& a) const {
  OfElem x = zero();
  std::copy(a.begin(), a.end(), x.begin());
  return x;
}

OkElem UnramifiedExt::coefficient(const OfElem& x, int k) const {
  auto first = x.begin() + static_cast<long>(k) * d();
  return OkElem(first, first + d());
}

OfElem UnramifiedExt::from_coefficients(const std::vector<OkElem>& c) const {
  if (c.size() != static_cast<std::size_t>(n_)) throw StructuralError("expected n coefficients");
  OfElem x;
  x.reserve(rank());
  for (const auto& a : c) x.insert(x.end(), a.begin(), a.end());
  return x;
}

OfElem UnramifiedExt::add(const OfElem& a, const OfElem& b) const { return add_vec(ctx(), a, b); }
OfElem UnramifiedExt::sub(const OfElem& a, const OfElem& b) const { return sub_vec(ctx(), a, b); }

OfElem UnramifiedExt::neg(const OfElem& a) const {
  OfElem out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ctx().neg(a[i]);
  return out;
}

OfElem UnramifiedExt::mul(const OfElem& a, const OfElem& b) const {
  std::size_t N = rank();
  if (a.size() != N || b.size() != N) throw StructuralError("O_F element has wrong length");
  if (table_.empty()) return product_slow(a, b);
  const auto& c = ctx();
  OfElem out = zero();
  for (std::size_t i = 0; i < N; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < N; ++j) {
      if (b[j] == 0) continue;
      auto m = c.mul(a[i], b[j]);
      const auto& t = table_[i * N + j];
      for (std::size_t k = 0; k < N; ++k)
        if (t[k]) out[k] = c.add(out[k], c.mul(m, t[k]));
    }
  }
  return out;
}

OfElem UnramifiedExt::scale(const OkElem& a, const OfElem& x) const { return mul(embed(a), x); }

OfElem UnramifiedExt::pow(const OfElem& a, std::uint64_t k) const {
  OfElem result = one(), base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

PadicMatrix UnramifiedExt::mult_matrix(const OfElem& a) const {
  std::size_t N = rank();
  PadicMatrix m(ctx(), N, N);
  for (std::size_t k = 0; k < N; ++k) {
    OfElem b = zero();
    b[k] = 1;
    auto prod = mul(b, a);
    std::copy(prod.begin(), prod.end(), m.row(k).begin());
  }
  return m;
}

OfElem UnramifiedExt::unit_inverse(const OfElem& a) const {
  if (valuation(a) != 0) throw NotInvertibleError("not a unit of O_F");
  PadicMatrix inv = inverse(mult_matrix(a));
  auto r = inv.row(0);
  return OfElem(r.begin(), r.end());
}

int UnramifiedExt::valuation(const OfElem& a) const {
  int best = K_.e() * ctx().prec();
  for (int k = 0; k < n_; ++k) best = std::min(best, K_.valuation(coefficient(a, k)));
  return best;
}

const PadicMatrix& UnramifiedExt::frobenius_matrix(int j) const {
  j = ((j % n_) + n_) % n_;
  return theta_[static_cast<std::size_t>(j)];
}

OfElem UnramifiedExt::frobenius(const OfElem& x, int j) const {
  return row_times_matrix(x, frobenius_matrix(j));
}

OkElem UnramifiedExt::trace(const OfElem& x) const {
  OfElem s = x;
  for (int j = 1; j < n_; ++j) s = add(s, frobenius(x, j));
  return coefficient(s, 0);
}

FiniteFieldExt::Element UnramifiedExt::reduce(const OfElem& x) const {
  FiniteFieldExt::Element r = 0;
  std::uint32_t q = K_.residue_field().size();
  for (int k = n_; k-- > 0;) r = r * q + K_.residue(coefficient(x, k));
  return r;
}

OfElem UnramifiedExt::lift(FiniteFieldExt::Element a) const {
  std::vector<OkElem> c;
  for (int k = 0; k < n_; ++k) c.push_back(K_.lift(kappa_F_.coefficient(a, k)));
  return from_coefficients(c);
}

std::string UnramifiedExt::describe() const {
  std::ostringstream os;
  os << "O_F = O_K[s]/(h), n=" << n_ << ", h coefficients (low to high) as O_K vectors:";
  for (const auto& c : h_) {
    os << " [";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << ctx().to_signed(c[i]);
    os << "]";
  }
  return os.str();
}

// ----------------------------------------------------------------- TauBasis

TauBasis build_tau_basis(const UnramifiedExt& F) {
  const auto& K = F.base();
  int n = F.n();
  std::vector<OfElem> gamma{F.one()};
  for (int i = 1; i < n; ++i) gamma.push_back(F.mul(gamma.back(), F.generator()));
  int i0 = 0;
  if (n % static_cast<int>(K.p()) == 0) {
    i0 = -1;
    for (int i = 0; i < n && i0 < 0; ++i)
      if (K.is_unit(F.trace(gamma[i]))) i0 = i;
    if (i0 < 0) throw VerificationFailure("trace is not a unit on any power of s");
  }
  OkElem t0_inv = K.unit_inverse(F.trace(gamma[i0]));
  auto project = [&](const OfElem& g) {
    return F.sub(g, F.scale(K.mul(F.trace(g), t0_inv), gamma[i0]));
  };
  TauBasis out;
  out.pivot = i0;
  out.tau.push_back(gamma[i0]);
  for (int i = 1; i < n; ++i) out.tau.push_back(i <= i0 ? project(gamma[i - 1]) : project(gamma[i]));
  std::size_t N = F.rank();
  out.change = PadicMatrix(F.ctx(), N, N);
  for (int i = 0; i < n; ++i)
    for (int u = 0; u < F.d(); ++u) {
      OkElem bu = K.zero();
      bu[u] = 1;
      auto row = F.scale(bu, out.tau[i]);
      std::copy(row.begin(), row.end(), out.change.row(static_cast<std::size_t>(i * F.d() + u)).begin());
    }
  out.change_inverse = inverse(out.change);
  return out;
}

std::vector<std::uint64_t> tau_coordinates(const TauBasis& tau, const OfElem& x) {
  return row_times_matrix(x, tau.change_inverse);
}

TauBasisReport check_tau_basis(const UnramifiedExt& F, const TauBasis& tb) {
  TauBasisReport r;
  const auto& K = F.base();
  const auto& kF = F.residue_field();
  int n = F.n();
  const auto& tau = tb.tau;
  r.is_basis = static_cast<int>(tau.size()) == n && determinant_valuation(tb.change) == 0;
  r.tail_trace_zero = true;
  for (int i = 1; i < n; ++i) r.tail_trace_zero &= is_zero_vec(F.trace(tau[i]));
  r.pivot_trace_unit = K.is_unit(F.trace(tau[0]));
  bool p_divides = n % static_cast<int>(K.p()) == 0;
  r.unit_position = p_divides ? (n >= 2 && F.reduce(tau[1]) == 1) : tau[0] == F.one();
  bool exempt = n < 2 || (K.p() == 2 && n == 2);
  r.last_outside_base = exempt || !kF.in_base(F.reduce(tau[n - 1]));
  std::vector<FiniteFieldExt::Element> tail, all;
  for (int i = 0; i < n; ++i) {
    all.push_back(F.reduce(tau[i]));
    if (i > 0) tail.push_back(all.back());
  }
  r.residue_image_trace_zero =
      std::all_of(tail.begin(), tail.end(), [&](auto x) { return kF.trace(x) == 0; }) &&
      kF.base_span_dimension(tail) == n - 1;
  ResidueBasis rb;
  rb.t = all;
  rb.pivot = tb.pivot;
  r.residue_basis_ok = check_residue_basis(kF, rb).all();
  r.theta_preserves_trace = true;
  for (const auto& t : tau)
    for (int j = 1; j < n; ++j) r.theta_preserves_trace &= F.trace(F.frobenius(t, j)) == F.trace(t);
  return r;
}

// ----------------------------------------------------------------- OkModule

namespace {

PadicMatrix block_diagonal(const PadicMatrix& m, std::size_t blocks) {
  std::size_t d = m.rows();
  PadicMatrix out(m.ctx(), d * blocks, d * blocks);
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out(b * d + i, b * d + j) = m(i, j);
  return out;
}

}  // namespace

OkModule::OkModule(const LocalField& K, std::size_t ok_rank) : K_(K), r_(ok_rank) {
  t_action_ = action(K_.f() > 1 ? K_.basis_element(1, 0) : K_.one());
  x_action_ = action(K_.uniformizer());
}

PadicMatrix OkModule::action(const OkElem& a) const { return block_diagonal(K_.mult_matrix(a), r_); }

bool OkModule::is_submodule(const Lattice& M) const {
  for (const auto* act : {&t_action_, &x_action_})
    for (std::size_t i = 0; i < M.rank(); ++i) {
      auto img = row_times_matrix(M.basis().row(i), *act);
      if (!lattice_membership(M, img, M.scale())) return false;
    }
  return true;
}

Lattice OkModule::span(const PadicMatrix& gens, int scale) const {
  PadicMatrix all(gens.ctx(), 0, gens.cols());
  for (int u = 0; u < K_.d(); ++u) {
    OkElem bu = K_.zero();
    bu[u] = 1;
    PadicMatrix img = gens * action(bu);
    for (std::size_t i = 0; i < img.rows(); ++i) all.append_row(img.row(i));
  }
  return Lattice::from_generators(all, scale);
}

Lattice OkModule::pi_multiple(const Lattice& M, int s) const {
  int q = floor_div(s, K_.e());
  int r = s - q * K_.e();
  Lattice out = M;
  if (r > 0) out = Lattice::from_generators(M.basis() * action(K_.pi_power(r)), M.scale());
  return out.scaled(q);
}

SInvariants OkModule::relative_exponents(const Lattice& A, const Lattice& B) const {
  const int cap = 2 * K_.e() * K_.ctx().prec() + 2;
  int k = 0;
  while (!lattice_contains(A, pi_multiple(B, k))) {
    if (++k > cap) throw PrecisionError("insufficient precision for O_K exponents");
  }
  Lattice Bk = pi_multiple(B, k);
  std::vector<int> values;
  int prev = static_cast<int>(r_);
  Lattice cur = lattice_sum(A, Bk);
  for (int j = 0;; ++j) {
    if (j > cap) throw PrecisionError("insufficient precision for O_K exponents");
    if (cur == Bk) {
      values.insert(values.end(), static_cast<std::size_t>(prev), j);
      break;
    }
    Lattice next = lattice_sum(pi_multiple(A, j + 1), Bk);
    int idx = lattice_index(cur, next);
    if (idx % K_.f() != 0) throw StructuralError("lattices are not O_K-modules");
    int c = idx / K_.f();
    values.insert(values.end(), static_cast<std::size_t>(prev - c), j);
    prev = c;
    cur = next;
  }
  for (auto& v : values) v -= k;
  return SInvariants(std::move(values));
}

std::string to_string(const OkMaxParam& param) {
  std::ostringstream os;
  os << "(lambda=" << param.lambda << ", e=[";
  for (std::size_t i = 0; i < param.e.size(); ++i) os << (i ? "," : "") << param.e[i];
  os << "])";
  return os.str();
}

OkMaximalSubmodules::OkMaximalSubmodules(const OkModule& module, PadicMatrix ok_basis)
    : module_(module), basis_(std::move(ok_basis)) {
  std::uint64_t q = module_.base().residue_field().size();
  count_ = 0;
  std::uint64_t block = 1;
  for (std::size_t l = 0; l < basis_.rows(); ++l) {
    count_ += block;
    if (block > (std::uint64_t{1} << 50) / q) throw CapExceeded("enumeration cap exceeded");
    block *= q;
  }
}

OkMaxParam OkMaximalSubmodules::param(std::uint64_t index) const {
  if (index >= count_) throw StructuralError("submodule index out of range");
  std::uint64_t q = module_.base().residue_field().size();
  OkMaxParam out;
  std::uint64_t block = 1;
  while (index >= block) {
    index -= block;
    block *= q;
    ++out.lambda;
  }
  out.e.assign(out.lambda, 0);
  for (std::size_t eta = out.lambda; eta-- > 0;) {
    out.e[eta] = static_cast<std::uint32_t>(index % q);
    index /= q;
  }
  return out;
}

Lattice OkMaximalSubmodules::submodule(const OkMaxParam& param) const {
  const auto& K = module_.base();
  PadicMatrix gens = basis_;
  const auto& ctx = gens.ctx();
  auto xl = basis_.row(param.lambda);
  for (std::size_t eta = 0; eta < param.lambda; ++eta) {
    auto shift = row_times_matrix(xl, module_.action(K.lift(param.e[eta])));
    for (std::size_t c = 0; c < gens.cols(); ++c) gens(eta, c) = ctx.add(gens(eta, c), shift[c]);
  }
  auto pix = row_times_matrix(xl, module_.action(K.uniformizer()));
  std::copy(pix.begin(), pix.end(), gens.row(param.lambda).begin());
  return module_.span(gens);
}

// ---------------------------------------------------------- exponent checks

Lattice pi_power_lattice(const LocalField& K, int s) {
  OkModule m(K, 1);
  return m.pi_multiple(Lattice::standard(K.ctx(), static_cast<std::size_t>(K.d())), s);
}

SInvariants pi_power_closed_form(const LocalField& K, int s) {
  int q = floor_div(s, K.e());
  int r = s - q * K.e();
  return *SInvariants::from_counts({{q, K.d() - r * K.f()}, {q + 1, r * K.f()}});
}

SInvariants pi_power_exponents_check(const LocalField& K, int s) {
  auto computed = relative_invariant_exponents(Lattice::standard(K.ctx(), static_cast<std::size_t>(K.d())),
                                               pi_power_lattice(K, s));
  auto expected = pi_power_closed_form(K, s);
  if (!(computed == expected))
    throw VerificationFailure("exponents of pi^" + std::to_string(s) + " O_K: computed " +
                              computed.to_string() + ", closed form " + expected.to_string());
  return computed;
}

SInvariants ok_diagonal_exponents_check(const LocalField& K, const std::vector<int>& s) {
  if (s.empty()) throw StructuralError("need at least one diagonal entry");
  std::size_t r = s.size(), d = static_cast<std::size_t>(K.d());
  OkModule module(K, r);
  const auto& ctx = K.ctx();
  int qmin = floor_div(*std::min_element(s.begin(), s.end()), K.e());
  PadicMatrix gens(ctx, r * d, r * d);
  std::vector<int> expected;
  for (std::size_t l = 0; l < r; ++l) {
    int q = floor_div(s[l], K.e());
    int rr = s[l] - q * K.e();
    PadicMatrix m = K.mult_matrix(K.pi_power(rr)).scaled_by_power(q - qmin);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) gens(l * d + i, l * d + j) = m(i, j);
    auto part = pi_power_closed_form(K, s[l]).values();
    expected.insert(expected.end(), part.begin(), part.end());
  }
  Lattice A = Lattice::standard(ctx, r * d);
  Lattice B = Lattice::from_generators(gens, -qmin);
  auto computed = relative_invariant_exponents(A, B);
  SInvariants want(expected);
  if (!(computed == want))
    throw VerificationFailure("diagonal O_K-lattice exponents: computed " + computed.to_string() +
                              ", closed form " + want.to_string());
  auto ok = module.relative_exponents(A, B);
  if (!(ok == SInvariants(s)))
    throw VerificationFailure("O_K exponents " + ok.to_string() + " differ from the diagonal " +
                              SInvariants(s).to_string());
  return computed;
}

// --------------------------------------------------- maximal submodules of O_K

namespace {

// f = 1, mu_1 = 0, and b_l = 0 mod p whenever l_1 != 0; indices are Z_p
// coordinates of O_K^r, l_1 = (l mod d) mod e.
bool special_param(const LocalField& K, const MaxSubmoduleParam& prm) {
  std::size_t d = static_cast<std::size_t>(K.d()), e = static_cast<std::size_t>(K.e());
  if ((prm.mu % d) % e != 0) return false;
  for (std::size_t l = 0; l < prm.b.size(); ++l)
    if (l != prm.mu && (l % d) % e != 0 && prm.b[l] % K.p() != 0) return false;
  return true;
}

}  // namespace

DichotomyReport maximal_submodule_pi_dichotomy(const LocalField& K) {
  DichotomyReport rep;
  int d = K.d(), f = K.f();
  Lattice L = Lattice::standard(K.ctx(), static_cast<std::size_t>(d));
  Lattice P = pi_power_lattice(K, 1);
  auto branch1 = SInvariants::from_counts({{0, d - f + 1}, {1, f - 1}});
  auto branch2 = SInvariants::from_counts({{-1, 1}, {0, d - f - 1}, {1, f}});
  MaximalSubmodules subs(L);
  for (std::uint64_t idx = 0; idx < subs.count(); ++idx) {
    auto prm = subs.param(idx);
    Lattice B = subs.submodule(idx);
    ++rep.checked;
    bool contains = lattice_contains(B, P);
    auto s = relative_invariant_exponents(B, P);
    auto witness = [&](const std::string& what) {
      rep.failures.push_back(what + " at B" + to_string(prm) + ", s = " + s.to_string());
    };
    if (contains) {
      ++rep.containing;
      if (!branch1) rep.hypothesis_violated = true;
      else if (!(s == *branch1)) witness("first shape mismatch");
    } else {
      if (!branch2) rep.hypothesis_violated = true;
      else if (!(s == *branch2)) witness("second shape mismatch");
    }
    bool nonnegative = s.values().empty() || s.values().front() >= 0;
    if (nonnegative != contains) witness("sign of exponents disagrees with containment");
    bool inside = lattice_contains(P, B);
    if (inside) ++rep.contained;
    if (inside != (f == 1 && special_param(K, prm))) witness("containment criterion disagrees");
    if (inside != (B == P)) witness("B inside pi O_K without equality");
  }
  return rep;
}

ImplicationChainReport submodule_implication_chain(const LocalField& K, std::size_t ok_rank) {
  ImplicationChainReport rep;
  std::size_t d = static_cast<std::size_t>(K.d());
  std::uint64_t p = K.p();
  OkModule module(K, ok_rank);
  Lattice OK = Lattice::standard(K.ctx(), d);
  Lattice P = pi_power_lattice(K, 1);
  MaximalSubmodules subs(Lattice::standard(K.ctx(), module.rank()));
  for (std::uint64_t idx = 0; idx < subs.count(); ++idx) {
    auto prm = subs.param(idx);
    Lattice N = subs.submodule(idx);
    ++rep.checked;
    bool c1 = true, all_special = true, any_special = false;
    for (const auto& q : equivalent_params(prm, p)) {
      MaxSubmoduleParam local;
      std::size_t block = q.mu / d;
      local.mu = q.mu % d;
      local.b.assign(d, 0);
      for (std::size_t u = 0; u < d; ++u)
        if (u != local.mu) local.b[u] = q.b[block * d + u];
      c1 &= lattice_contains(P, submodule_from_param(OK, local));
      bool sp = special_param(K, q);
      all_special &= sp;
      any_special |= sp;
    }
    bool c2 = K.f() == 1 && all_special;
    bool c3 = K.f() == 1 && any_special;
    bool c4 = module.is_submodule(N);
    bool c[4] = {c1, c2, c3, c4};
    for (int i = 0; i < 4; ++i) rep.holds[i] += c[i];
    if (c1 == c2 && c2 == c3 && c3 == c4) ++rep.all_agree;
    for (int i = 0; i < 3; ++i)
      if (c[i] && !c[i + 1])
        rep.failures.push_back("condition " + std::to_string(i + 1) + " holds but " +
                               std::to_string(i + 2) + " fails at N" + to_string(prm));
  }
  return rep;
}

}  // namespace padiclie
