#include "padiclie/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "padiclie/errors.hpp"

namespace padiclie {

SInvariants::SInvariants(std::vector<int> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
}

std::optional<SInvariants> SInvariants::from_counts(
    const std::vector<std::pair<int, int>>& counts) {
  std::vector<int> v;
  for (auto [value, count] : counts) {
    if (count < 0) return std::nullopt;
    v.insert(v.end(), static_cast<std::size_t>(count), value);
  }
  return SInvariants(std::move(v));
}

int SInvariants::sum() const { return std::accumulate(values_.begin(), values_.end(), 0); }

SInvariants SInvariants::shifted(int k) const {
  std::vector<int> v = values_;
  for (auto& x : v) x += k;
  return SInvariants(std::move(v));
}

std::string SInvariants::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < values_.size(); ++i) os << (i ? "," : "") << values_[i];
  os << ')';
  return os.str();
}

namespace {

int pivot_sum(const PadicMatrix& basis) {
  int total = 0;
  for (std::size_t i = 0; i < basis.rows(); ++i) total += basis.ctx().valuation(basis(i, i));
  return total;
}

// All elementary divisors below prec makes the residues exact.
void require_faithful(const PadicMatrix& basis) {
  const auto& ctx = basis.ctx();
  if (pivot_sum(basis) < ctx.prec()) return;
  for (int v : elementary_divisors(basis))
    if (v >= ctx.prec())
      throw PrecisionError("insufficient precision: lattice has an elementary divisor >= p^" +
                           std::to_string(ctx.prec()));
}

void require_compatible(const Lattice& a, const Lattice& b) {
  if (!(a.ctx() == b.ctx())) throw StructuralError("lattices have different (p, prec)");
  if (a.rank() != b.rank()) throw StructuralError("lattices have different rank");
}

}  // namespace

Lattice::Lattice(PadicMatrix basis, int scale) : basis_(std::move(basis)), scale_(scale) {
  basis_valuation_ = pivot_sum(basis_);
}

Lattice Lattice::from_generators(const PadicMatrix& gens, int scale) {
  const auto& ctx = gens.ctx();
  std::size_t r = gens.cols();
  PadicMatrix h = hermite_basis(gens);
  PadicMatrix basis(ctx, r, r);
  for (std::size_t i = 0; i < r; ++i)
    std::copy(h.row(i).begin(), h.row(i).end(), basis.row(i).begin());
  require_faithful(basis);
  // Pull out common powers of p into the scale.
  while (r > 0) {
    bool divisible = true;
    for (std::size_t i = 0; i < r && divisible; ++i)
      for (std::size_t j = i; j < r; ++j)
        if (basis(i, j) % ctx.p() != 0) {
          divisible = false;
          break;
        }
    if (!divisible) break;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) basis(i, j) /= ctx.p();
    --scale;
  }
  return Lattice(std::move(basis), scale);
}

Lattice Lattice::standard(PadicContext ctx, std::size_t rank) {
  return Lattice(PadicMatrix::identity(ctx, rank), 0);
}

bool is_canonical_basis(const PadicMatrix& b) {
  const auto& ctx = b.ctx();
  std::size_t r = b.rows();
  if (b.cols() != r) return false;
  bool primitive = r == 0;
  for (std::size_t i = 0; i < r; ++i) {
    int k = ctx.valuation(b(i, i));
    if (k >= ctx.prec() || b(i, i) != ctx.power(k)) return false;
    for (std::size_t j = 0; j < r; ++j) {
      if (j < i && b(i, j) != 0) return false;
      if (b(i, j) % ctx.p() != 0) primitive = true;
    }
    for (std::size_t above = 0; above < i; ++above)
      if (b(above, i) >= b(i, i)) return false;
  }
  return primitive;
}

Lattice Lattice::from_canonical(const PadicMatrix& basis, int scale) {
  if (!is_canonical_basis(basis)) throw StructuralError("basis is not in canonical Hermite form");
  require_faithful(basis);
  return Lattice(basis, scale);
}

Lattice Lattice::scaled(int k) const { return Lattice(basis_, scale_ - k); }

PadicMatrix Lattice::basis_at_scale(int s) const {
  if (s < scale_) throw StructuralError("cannot rewrite a lattice at a finer denominator");
  return basis_.scaled_by_power(s - scale_);
}

std::vector<std::uint64_t> Lattice::basis_row(std::size_t i) const {
  auto r = basis_.row(i);
  return {r.begin(), r.end()};
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  require_compatible(a, b);
  int s = std::max(a.scale(), b.scale());
  PadicMatrix gens = a.basis_at_scale(s);
  PadicMatrix other = b.basis_at_scale(s);
  for (std::size_t i = 0; i < other.rows(); ++i) gens.append_row(other.row(i));
  return Lattice::from_generators(gens, s);
}

ScaledMap coordinate_map(const Lattice& L) {
  auto inv = triangular_scaled_inverse(L.basis());
  return {std::move(inv.adjugate), L.scale() - inv.shift};
}

namespace {

// True iff p^shift * w is integral, given w modulo p^prec.
bool integral_after_shift(const PadicContext& ctx, std::span<const std::uint64_t> w, int shift) {
  for (auto x : w) {
    int v = ctx.valuation(x);
    if (v + shift >= 0) continue;
    if (x == 0) throw PrecisionError("insufficient precision for membership test");
    return false;
  }
  return true;
}

}  // namespace

bool lattice_membership(const Lattice& L, std::span<const std::uint64_t> v, int vscale) {
  if (v.size() != L.rank()) throw StructuralError("vector length does not match lattice rank");
  auto cm = coordinate_map(L);
  auto w = row_times_matrix(v, cm.matrix);
  return integral_after_shift(L.ctx(), w, cm.shift - vscale);
}

bool lattice_contains(const Lattice& L, const Lattice& M) {
  require_compatible(L, M);
  auto cm = coordinate_map(L);
  PadicMatrix w = M.basis() * cm.matrix;
  for (std::size_t i = 0; i < w.rows(); ++i)
    if (!integral_after_shift(L.ctx(), w.row(i), cm.shift - M.scale())) return false;
  return true;
}

int lattice_index(const Lattice& L, const Lattice& M) {
  if (!lattice_contains(L, M)) throw NotSubmoduleError("not a submodule");
  return M.basis_valuation() - L.basis_valuation() +
         static_cast<int>(L.rank()) * (L.scale() - M.scale());
}

SInvariants relative_invariant_exponents(const Lattice& L, const Lattice& M) {
  require_compatible(L, M);
  auto cm = coordinate_map(L);
  auto divisors = elementary_divisors(M.basis() * cm.matrix);
  std::vector<int> s;
  for (int t : divisors) {
    if (t >= L.ctx().prec())
      throw PrecisionError("insufficient precision for relative invariant exponents");
    s.push_back(t + cm.shift - M.scale());
  }
  return SInvariants(std::move(s));
}

Lattice apply_linear_map(const Lattice& L, const PadicMatrix& a) {
  return Lattice::from_generators(L.basis() * a, L.scale());
}

Lattice constrained_sublattice(const Lattice& J, std::span<const MembershipCondition> conditions) {
  const auto& ctx = J.ctx();
  const int N = ctx.prec();
  std::size_t r = J.rank();
  // x = p^{-s} a Jb; condition k reads a H_k = 0 mod p^{E_k}.
  std::vector<PadicMatrix> blocks;
  std::vector<int> exps;
  int E = 0;
  for (const auto& cond : conditions) {
    if (!(cond.map.matrix.ctx() == ctx) || !(cond.target->ctx() == ctx))
      throw StructuralError("condition has different (p, prec)");
    auto tm = coordinate_map(*cond.target);
    int ek = -(tm.shift + cond.map.shift - J.scale());
    if (ek <= 0) continue;
    if (ek > N) throw PrecisionError("insufficient precision for sublattice condition");
    blocks.push_back(J.basis() * cond.map.matrix * tm.matrix);
    exps.push_back(ek);
    E = std::max(E, ek);
  }
  if (blocks.empty()) return J;
  std::size_t cols = 0;
  for (const auto& b : blocks) cols += b.cols();
  PadicMatrix h(ctx, r, cols);
  std::size_t off = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    PadicMatrix scaled = blocks[k].scaled_by_power(E - exps[k]);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < scaled.cols(); ++j) h(i, off + j) = scaled(i, j);
    off += scaled.cols();
  }
  SmithForm sf = smith_decomposition(h);
  PadicMatrix sol(ctx, r, r);
  for (std::size_t i = 0; i < r; ++i) {
    int g = i < sf.valuations.size() ? sf.valuations[i] : N;
    int need = std::max(E - std::min(g, N), 0);
    std::uint64_t f = ctx.power(need);
    for (std::size_t j = 0; j < r; ++j) sol(i, j) = ctx.mul(f, sf.left(i, j));
  }
  return Lattice::from_generators(sol * J.basis(), J.scale());
}

Lattice lattice_intersection(const Lattice& a, const Lattice& b) {
  require_compatible(a, b);
  MembershipCondition cond{{PadicMatrix::identity(a.ctx(), a.rank()), 0}, &b};
  return constrained_sublattice(a, std::span<const MembershipCondition>(&cond, 1));
}

std::string to_string(const MaxSubmoduleParam& param) {
  std::ostringstream os;
  os << "mu=" << param.mu << " b=(";
  for (std::size_t i = 0; i < param.b.size(); ++i) os << (i ? "," : "") << param.b[i];
  os << ')';
  return os.str();
}

namespace {

std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) {
  return PadicContext(p, 1).inverse(a % p);
}

}  // namespace

std::vector<std::uint64_t> param_functional(const MaxSubmoduleParam& param, std::uint64_t p) {
  std::vector<std::uint64_t> g(param.b.size());
  for (std::size_t l = 0; l < g.size(); ++l)
    g[l] = l == param.mu ? 1 : (p - param.b[l] % p) % p;
  return g;
}

MaxSubmoduleParam param_from_functional(std::span<const std::uint64_t> g, std::size_t mu,
                                        std::uint64_t p) {
  if (mu >= g.size() || g[mu] % p == 0)
    throw StructuralError("functional does not vanish-normalize at the requested index");
  std::uint64_t inv = inv_mod_p(g[mu], p);
  MaxSubmoduleParam out{mu, std::vector<std::uint64_t>(g.size(), 0)};
  for (std::size_t l = 0; l < g.size(); ++l)
    if (l != mu) out.b[l] = (p - (g[l] % p) * inv % p) % p;
  return out;
}

MaxSubmoduleParam canonical_param(const MaxSubmoduleParam& param, std::uint64_t p) {
  auto g = param_functional(param, p);
  std::size_t last = 0;
  for (std::size_t l = 0; l < g.size(); ++l)
    if (g[l] != 0) last = l;
  return param_from_functional(g, last, p);
}

std::vector<MaxSubmoduleParam> equivalent_params(const MaxSubmoduleParam& param, std::uint64_t p) {
  auto g = param_functional(param, p);
  std::vector<MaxSubmoduleParam> out;
  for (std::size_t l = 0; l < g.size(); ++l)
    if (g[l] != 0) out.push_back(param_from_functional(g, l, p));
  return out;
}

bool param_equivalent(const MaxSubmoduleParam& a, const MaxSubmoduleParam& c, std::uint64_t p) {
  if (a.b.size() != c.b.size()) throw StructuralError("parameters for different ranks");
  std::size_t mu = a.mu, nu = c.mu;
  if (mu == nu) {
    for (std::size_t l = 0; l < a.b.size(); ++l)
      if (l != mu && a.b[l] % p != c.b[l] % p) return false;
    return true;
  }
  std::uint64_t b_nu = a.b[nu] % p;
  if (b_nu == 0) return false;
  std::uint64_t inv = inv_mod_p(b_nu, p);
  if (c.b[mu] % p != inv) return false;
  for (std::size_t l = 0; l < a.b.size(); ++l) {
    if (l == mu || l == nu) continue;
    std::uint64_t want = (p - (a.b[l] % p) * inv % p) % p;
    if (c.b[l] % p != want) return false;
  }
  return true;
}

Lattice submodule_from_param(const Lattice& L, const MaxSubmoduleParam& param) {
  const auto& ctx = L.ctx();
  std::size_t r = L.rank();
  if (param.mu >= r || param.b.size() != r) throw StructuralError("parameter does not match rank");
  const PadicMatrix& x = L.basis();
  PadicMatrix y(ctx, r, r);
  for (std::size_t l = 0; l < r; ++l) {
    std::uint64_t coef = l == param.mu ? 0 : param.b[l] % ctx.p();
    for (std::size_t c = 0; c < r; ++c) {
      if (l == param.mu)
        y(l, c) = ctx.mul(ctx.p() % ctx.modulus(), x(l, c));
      else
        y(l, c) = ctx.add(x(l, c), ctx.mul(coef, x(param.mu, c)));
    }
  }
  return Lattice::from_generators(y, L.scale());
}

std::uint64_t maximal_submodule_count(std::size_t rank, std::uint64_t p) {
  std::uint64_t total = 0, pw = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    if (total > UINT64_MAX - pw) throw CapExceeded("submodule count overflows 64 bits");
    total += pw;
    if (i + 1 < rank) {
      if (pw > UINT64_MAX / p) throw CapExceeded("submodule count overflows 64 bits");
      pw *= p;
    }
  }
  return total;
}

MaximalSubmodules::MaximalSubmodules(Lattice L)
    : L_(std::move(L)), count_(maximal_submodule_count(L_.rank(), L_.ctx().p())) {}

MaxSubmoduleParam MaximalSubmodules::param(std::uint64_t index) const {
  if (index >= count_) throw StructuralError("submodule index out of range");
  std::uint64_t p = L_.ctx().p();
  std::size_t r = L_.rank();
  for (std::size_t mu = r; mu-- > 0;) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < mu; ++i) size *= p;
    if (index < size) {
      MaxSubmoduleParam out{mu, std::vector<std::uint64_t>(r, 0)};
      for (std::size_t l = mu; l-- > 0;) {
        out.b[l] = index % p;
        index /= p;
      }
      return out;
    }
    index -= size;
  }
  throw StructuralError("submodule index out of range");
}

}  // namespace padiclie
