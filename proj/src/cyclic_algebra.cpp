#include "padiclie/cyclic_algebra.hpp"

#include <algorithm>

#include "padiclie/errors.hpp"

namespace padiclie {

// ------------------------------------------------------------ CyclicAlgebra

CyclicAlgebra::CyclicAlgebra(UnramifiedExt F) : F_(std::move(F)), pi_(F_.embed(F_.base().uniformizer())) {}

AlgebraElement CyclicAlgebra::Pi() const {
  if (n() == 1) return monomial(pi_, 0);
  return monomial(F_.one(), 1);
}

AlgebraElement CyclicAlgebra::monomial(const OfElem& alpha, int j) const {
  auto [deg, c] = fold(alpha, j);
  AlgebraElement x = zero();
  std::copy(c.begin(), c.end(), x.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(deg) * F_.rank()));
  return x;
}

OfElem CyclicAlgebra::coefficient(const AlgebraElement& x, int j) const {
  auto first = x.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(j) * F_.rank());
  return OfElem(first, first + static_cast<std::ptrdiff_t>(F_.rank()));
}

std::pair<int, OfElem> CyclicAlgebra::fold(OfElem alpha, int degree) const {
  if (degree < 0) throw StructuralError("negative power of Pi");
  while (degree >= n()) {
    alpha = F_.mul(alpha, pi_);
    degree -= n();
  }
  return {degree, std::move(alpha)};
}

AlgebraElement CyclicAlgebra::add(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ctx().add(a[i], b[i]);
  return out;
}

AlgebraElement CyclicAlgebra::sub(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ctx().sub(a[i], b[i]);
  return out;
}

AlgebraElement CyclicAlgebra::multiply(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement out = zero();
  std::size_t R = F_.rank();
  for (int j = 0; j < n(); ++j) {
    OfElem aj = coefficient(a, j);
    if (std::all_of(aj.begin(), aj.end(), [](std::uint64_t v) { return v == 0; })) continue;
    for (int k = 0; k < n(); ++k) {
      OfElem bk = coefficient(b, k);
      auto [deg, c] = fold(F_.mul(aj, F_.frobenius(bk, j)), j + k);
      for (std::size_t t = 0; t < R; ++t) {
        auto& slot = out[static_cast<std::size_t>(deg) * R + t];
        slot = ctx().add(slot, c[t]);
      }
    }
  }
  return out;
}

AlgebraElement CyclicAlgebra::bracket(const AlgebraElement& a, const AlgebraElement& b) const {
  return sub(multiply(a, b), multiply(b, a));
}

AlgebraElement CyclicAlgebra::bracket_closed_form(const OfElem& alpha, int j, const OfElem& beta, int k) const {
  OfElem c = F_.sub(F_.mul(alpha, F_.frobenius(beta, j)), F_.mul(beta, F_.frobenius(alpha, k)));
  return monomial(c, j + k);
}

OkElem CyclicAlgebra::reduced_trace(const AlgebraElement& a) const { return F_.trace(coefficient(a, 0)); }

PadicMatrix CyclicAlgebra::right_mult_matrix(const AlgebraElement& a) const {
  PadicMatrix m(ctx(), rank(), rank());
  AlgebraElement bk = zero();
  for (std::size_t k = 0; k < rank(); ++k) {
    bk[k] = 1;
    auto v = multiply(bk, a);
    std::copy(v.begin(), v.end(), m.row(k).begin());
    bk[k] = 0;
  }
  return m;
}

AlgebraElement CyclicAlgebra::unit_inverse(const AlgebraElement& a) const {
  // y a = 1 means y R_a = 1.
  PadicMatrix inv = inverse(right_mult_matrix(a));
  return row_times_matrix(one(), inv);
}

// -------------------------------------------------------------- SL1Lattice

SL1Lattice SL1Lattice::build(const UnramifiedExt& F) { return build(F, build_tau_basis(F)); }

SL1Lattice SL1Lattice::build(const UnramifiedExt& F, TauBasis tau) {
  if (static_cast<int>(tau.tau.size()) != F.n()) throw StructuralError("tau basis has the wrong length");
  return SL1Lattice(CyclicAlgebra(F), std::move(tau));
}

SL1Lattice::SL1Lattice(CyclicAlgebra D, TauBasis tau) : D_(std::move(D)), tau_(std::move(tau)) {
  const auto& F = D_.field();
  const auto& K = F.base();
  int n = D_.n();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (i != 0 || j != 0) eta_.push_back({i, j});
  std::size_t d = static_cast<std::size_t>(K.d());
  std::size_t r = eta_.size() * d;
  std::vector<AlgebraElement> basis;
  for (const auto& eta : eta_)
    for (std::size_t u = 0; u < d; ++u) {
      OkElem bu = K.zero();
      bu[u] = 1;
      basis.push_back(D_.monomial(F.scale(bu, tau_.tau[static_cast<std::size_t>(eta[0])]), eta[1]));
    }
  std::vector<std::uint64_t> c(r * r * r, 0);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b) {
      auto v = from_algebra(D_.bracket(basis[a], basis[b]));
      for (std::size_t k = 0; k < r; ++k) {
        c[(a * r + b) * r + k] = v[k];
        c[(b * r + a) * r + k] = D_.ctx().neg(v[k]);
      }
    }
  lie_ = LieLattice(D_.ctx(), r, std::move(c));
}

std::size_t SL1Lattice::position(int eta0, int eta1) const {
  int n = D_.n();
  if (eta0 < 0 || eta0 >= n || eta1 < 0 || eta1 >= n || (eta0 == 0 && eta1 == 0))
    throw StructuralError("index outside Lambda");
  if (eta1 == 0) return static_cast<std::size_t>(eta0 - 1);
  return static_cast<std::size_t>((n - 1) + (eta1 - 1) * n + eta0);
}

AlgebraElement SL1Lattice::to_algebra(std::span<const std::uint64_t> v) const {
  const auto& F = D_.field();
  const auto& K = F.base();
  std::size_t d = static_cast<std::size_t>(K.d());
  std::vector<std::vector<OkElem>> coeff(static_cast<std::size_t>(n()), std::vector<OkElem>(static_cast<std::size_t>(n()), K.zero()));
  for (std::size_t p = 0; p < eta_.size(); ++p)
    for (std::size_t u = 0; u < d; ++u) coeff[static_cast<std::size_t>(eta_[p][1])][static_cast<std::size_t>(eta_[p][0])][u] = v[p * d + u];
  AlgebraElement x = D_.zero();
  for (int j = 0; j < n(); ++j) {
    OfElem alpha = F.zero();
    for (int i = 0; i < n(); ++i)
      alpha = F.add(alpha, F.scale(coeff[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)], tau_.tau[static_cast<std::size_t>(i)]));
    x = D_.add(x, D_.monomial(alpha, j));
  }
  return x;
}

std::vector<std::uint64_t> SL1Lattice::from_algebra(const AlgebraElement& x) const {
  std::size_t d = static_cast<std::size_t>(D_.field().d());
  std::vector<std::uint64_t> out(eta_.size() * d, 0);
  for (int j = 0; j < n(); ++j) {
    auto c = tau_coordinates(tau_, D_.coefficient(x, j));
    for (int i = 0; i < n(); ++i)
      for (std::size_t u = 0; u < d; ++u) {
        std::uint64_t v = c[static_cast<std::size_t>(i) * d + u];
        if (i == 0 && j == 0) {
          if (v != 0) throw StructuralError("element has nonzero reduced trace");
          continue;
        }
        out[position(i, j) * d + u] = v;
      }
  }
  return out;
}

std::pair<std::size_t, std::size_t> SL1Lattice::piece(int j) const {
  std::size_t d = static_cast<std::size_t>(D_.field().d());
  std::size_t n = static_cast<std::size_t>(D_.n());
  if (j == 0) return {0, (n - 1) * d};
  std::size_t first = position(0, j) * d;
  return {first, first + n * d};
}

PadicMatrix SL1Lattice::ok_basis() const {
  std::size_t d = static_cast<std::size_t>(D_.field().d());
  PadicMatrix m(D_.ctx(), eta_.size(), rank());
  for (std::size_t p = 0; p < eta_.size(); ++p) m(p, p * d) = 1;
  return m;
}

Lattice sl1_commutator_closed_form(const SL1Lattice& L) {
  const auto& K = L.base();
  std::size_t d = static_cast<std::size_t>(K.d());
  PadicMatrix gens = PadicMatrix::identity(L.lie().ctx(), L.rank());
  auto [first, last] = L.piece(0);
  PadicMatrix pim = K.mult_matrix(K.uniformizer());
  for (std::size_t row = first; row < last; ++row) {
    std::size_t block = row / d * d, u = row % d;
    for (std::size_t c = 0; c < L.rank(); ++c) gens(row, c) = 0;
    for (std::size_t w = 0; w < d; ++w) gens(row, block + w) = pim(u, w);
  }
  return Lattice::from_generators(gens);
}

SL1CommutatorReport commutator_lattice_sl1(const SL1Lattice& L) {
  if (L.n() < 2) throw HypothesisViolated("sl_1(Delta) is zero for n = 1");
  if (L.base().p() == 2 && L.n() == 2) throw HypothesisViolated("(p, n) = (2, 2) is excluded");
  auto LL = commutator_sublattice(L.lie(), L.lie().lattice());
  if (!LL) throw VerificationFailure("[L, L] is not of full rank");
  SL1CommutatorReport out{*LL, sl1_commutator_closed_form(L), false, 0, 0};
  out.matches = out.commutator == out.closed_form;
  out.index = lattice_index(L.lie().lattice(), out.commutator);
  out.expected_index = L.base().f() * (L.n() - 1);
  return out;
}

// ----------------------------------------------------------- StandardBasis

namespace {

std::vector<std::uint64_t> unit_row(std::size_t size, std::size_t at) {
  std::vector<std::uint64_t> v(size, 0);
  v[at] = 1;
  return v;
}

// The O_K element c with v = c * x_eta, or nullopt if v has other components.
std::optional<OkElem> ok_multiple(const SL1Lattice& L, std::span<const std::uint64_t> v, std::size_t pos) {
  std::size_t d = static_cast<std::size_t>(L.d());
  for (std::size_t k = 0; k < v.size(); ++k)
    if (k / d != pos && v[k] != 0) return std::nullopt;
  return OkElem(v.begin() + static_cast<std::ptrdiff_t>(pos * d), v.begin() + static_cast<std::ptrdiff_t>((pos + 1) * d));
}

}  // namespace

StandardBasis standard_basis_n2(const SL1Lattice& L) {
  const auto& K = L.base();
  if (L.n() != 2 || K.p() == 2) throw HypothesisViolated("standard bases need n = 2 and p odd");
  const auto& F = L.field();
  std::size_t d = static_cast<std::size_t>(K.d());
  std::array<std::size_t, 3> pos{L.position(1, 0), L.position(0, 1), L.position(1, 1)};
  StandardBasis sb;
  for (int i = 0; i < 3; ++i) sb.e[i] = unit_row(L.rank(), pos[i] * d);
  for (int i = 0; i < 3; ++i) {
    int k = (i + 2) % 3;
    auto br = L.lie().bracket(sb.e[i], sb.e[(i + 1) % 3]);
    auto c = ok_multiple(L, br, pos[k]);
    if (!c) throw VerificationFailure("bracket of standard basis vectors leaves the expected line");
    auto u = K.divide(*c, K.pi_power(sb.s[k]));
    if (!u) throw VerificationFailure("bracket coefficient is not divisible by the expected power of pi");
    sb.u[k] = *u;
  }
  const auto& xi = L.tau().tau[1];
  OfElem xi2 = F.mul(xi, xi);
  sb.xi_squared = F.coefficient(xi2, 0);
  if (F.embed(sb.xi_squared) != xi2) throw VerificationFailure("xi^2 is not in O_K");
  return sb;
}

StandardBasisReport check_standard_basis(const SL1Lattice& L, const StandardBasis& sb) {
  StandardBasisReport r;
  const auto& K = L.base();
  const auto& F = L.field();
  const auto& ctx = L.lie().ctx();
  std::size_t d = static_cast<std::size_t>(K.d());

  // Each e_i is an O_K generator: locate its block.
  std::array<std::size_t, 3> pos{};
  for (int i = 0; i < 3; ++i) {
    auto it = std::find_if(sb.e[i].begin(), sb.e[i].end(), [](std::uint64_t v) { return v != 0; });
    pos[i] = static_cast<std::size_t>(it - sb.e[i].begin()) / d;
  }
  r.brackets = true;
  for (int i = 0; i < 3; ++i) {
    int k = (i + 2) % 3;
    auto br = L.lie().bracket(sb.e[i], sb.e[(i + 1) % 3]);
    OkElem coef = K.mul(sb.u[k], K.pi_power(sb.s[k]));
    std::vector<std::uint64_t> expect(L.rank(), 0);
    // coef * e_k, with e_k = x_eta * 1
    auto mk = K.mult_matrix(coef);
    for (std::size_t w = 0; w < d; ++w) expect[pos[k] * d + w] = mk(0, w);
    if (br != expect) r.brackets = false;
  }
  r.units = std::all_of(sb.u.begin(), sb.u.end(), [&](const OkElem& u) { return K.is_unit(u); });
  OkElem prod = K.neg(K.mul(sb.u[1], sb.u[2]));
  std::uint32_t res = K.residue(prod);
  const auto& kap = K.residue_field();
  r.nonsquare = res != 0;
  for (std::uint32_t a = 0; a < kap.size() && r.nonsquare; ++a)
    if (kap.mul(a, a) == res) r.nonsquare = false;
  OfElem xi2 = F.mul(L.tau().tau[1], L.tau().tau[1]);
  r.product_is_4xi2 = F.embed(sb.xi_squared) == xi2 && prod == K.mul(K.from_integer(4), sb.xi_squared);
  PadicMatrix gens(ctx, 3, L.rank());
  for (int i = 0; i < 3; ++i) std::copy(sb.e[i].begin(), sb.e[i].end(), gens.row(static_cast<std::size_t>(i)).begin());
  r.spans = L.ok_module().span(gens) == L.lie().lattice();
  return r;
}

}  // namespace padiclie
