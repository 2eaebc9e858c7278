#include "padiclie/lie_lattice.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "padiclie/errors.hpp"

namespace padiclie {

namespace {

std::string triple_string(const std::array<std::size_t, 3>& t) {
  std::ostringstream os;
  os << "(" << t[0] << "," << t[1] << "," << t[2] << ")";
  return os.str();
}

// Rows are the pairwise brackets of the basis rows of M (without the scale).
PadicMatrix bracket_generators(const LieLattice& L, const Lattice& M) {
  std::size_t m = M.rank();
  PadicMatrix gens(L.ctx(), 0, L.rank());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) gens.append_row(L.bracket(M.basis().row(i), M.basis().row(j)));
  return gens;
}

void require_inside(const LieLattice& L, const Lattice& M) {
  if (M.rank() != L.rank() || !(M.ctx() == L.ctx()))
    throw StructuralError("lattice does not live in the ambient Lie lattice");
  if (!lattice_contains(L.lattice(), M)) throw NotSubmoduleError("lattice is not inside L");
}

}  // namespace

LieLattice::LieLattice(PadicContext ctx, std::size_t rank, std::vector<std::uint64_t> constants)
    : ctx_(ctx), r_(rank), c_(std::move(constants)) {
  if (c_.size() != r_ * r_ * r_) throw StructuralError("structure constant tensor has wrong size");
  if (auto t = antisymmetry_violation(*this))
    throw StructuralError("structure constants are not antisymmetric at " + triple_string(*t));
  if (auto t = jacobi_violation(*this))
    throw StructuralError("Jacobi identity fails at " + triple_string(*t));
}

LieLattice LieLattice::abelian(PadicContext ctx, std::size_t d) {
  if (d == 0) throw StructuralError("abelian model needs d >= 1");
  return LieLattice(ctx, d, std::vector<std::uint64_t>(d * d * d, 0));
}

LieLattice LieLattice::metabelian(PadicContext ctx, std::size_t d, int s) {
  if (d < 2 || s < 0) throw StructuralError("metabelian model needs d >= 2 and s >= 0");
  std::vector<std::uint64_t> c(d * d * d, 0);
  std::uint64_t ps = s < ctx.prec() ? ctx.power(s) : 0;
  for (std::size_t v = 1; v < d; ++v) {
    c[(0 * d + v) * d + v] = ps;
    c[(v * d + 0) * d + v] = ctx.neg(ps);
  }
  return LieLattice(ctx, d, std::move(c));
}

LieLattice LieLattice::split_sl2(PadicContext ctx) {
  std::vector<std::uint64_t> c(27, 0);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, std::int64_t v) {
    c[(i * 3 + j) * 3 + k] = ctx.from_signed(v);
    c[(j * 3 + i) * 3 + k] = ctx.from_signed(-v);
  };
  set(0, 1, 1, 2);
  set(0, 2, 2, -2);
  set(1, 2, 0, 1);
  return LieLattice(ctx, 3, std::move(c));
}

std::vector<std::uint64_t> LieLattice::bracket(std::span<const std::uint64_t> x,
                                               std::span<const std::uint64_t> y) const {
  std::vector<std::uint64_t> out(r_, 0);
  for (std::size_t i = 0; i < r_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < r_; ++j) {
      if (y[j] == 0 || i == j) continue;
      std::uint64_t w = ctx_.mul(x[i], y[j]);
      const std::uint64_t* row = &c_[(i * r_ + j) * r_];
      for (std::size_t k = 0; k < r_; ++k)
        if (row[k]) out[k] = ctx_.add(out[k], ctx_.mul(w, row[k]));
    }
  }
  return out;
}

PadicMatrix LieLattice::right_ad(std::span<const std::uint64_t> y) const {
  PadicMatrix m(ctx_, r_, r_);
  std::vector<std::uint64_t> bk(r_, 0);
  for (std::size_t k = 0; k < r_; ++k) {
    bk[k] = 1;
    auto v = bracket(bk, y);
    std::copy(v.begin(), v.end(), m.row(k).begin());
    bk[k] = 0;
  }
  return m;
}

PadicMatrix LieLattice::ad(std::span<const std::uint64_t> x) const {
  PadicMatrix m(ctx_, r_, r_);
  std::vector<std::uint64_t> bk(r_, 0);
  for (std::size_t k = 0; k < r_; ++k) {
    bk[k] = 1;
    auto v = bracket(x, bk);
    std::copy(v.begin(), v.end(), m.row(k).begin());
    bk[k] = 0;
  }
  return m;
}

LieLattice LieLattice::change_basis(const PadicMatrix& g) const {
  if (g.rows() != r_ || g.cols() != r_) throw StructuralError("change of basis has wrong shape");
  PadicMatrix ginv = inverse(g);
  std::vector<std::uint64_t> c(r_ * r_ * r_, 0);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < r_; ++j) {
      auto v = row_times_matrix(bracket(g.row(i), g.row(j)), ginv);
      std::copy(v.begin(), v.end(), c.begin() + static_cast<std::ptrdiff_t>((i * r_ + j) * r_));
    }
  return LieLattice(ctx_, r_, std::move(c));
}

std::optional<std::array<std::size_t, 3>> antisymmetry_violation(const LieLattice& L) {
  const auto& ctx = L.ctx();
  std::size_t r = L.rank();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        if (L.constant(i, j, k) != ctx.neg(L.constant(j, i, k))) return std::array{i, j, k};
  return std::nullopt;
}

std::optional<std::array<std::size_t, 3>> jacobi_violation(const LieLattice& L) {
  const auto& ctx = L.ctx();
  std::size_t r = L.rank();
  auto basis = [&](std::size_t i) {
    std::vector<std::uint64_t> v(r, 0);
    v[i] = 1;
    return v;
  };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      for (std::size_t k = j + 1; k < r; ++k) {
        auto bi = basis(i), bj = basis(j), bk = basis(k);
        auto a = L.bracket(L.bracket(bi, bj), bk);
        auto b = L.bracket(L.bracket(bj, bk), bi);
        auto c = L.bracket(L.bracket(bk, bi), bj);
        for (std::size_t t = 0; t < r; ++t)
          if (ctx.add(ctx.add(a[t], b[t]), c[t]) != 0) return std::array{i, j, k};
      }
  return std::nullopt;
}

std::size_t commutator_rank(const LieLattice& L, const Lattice& M) {
  require_inside(L, M);
  auto gens = bracket_generators(L, M);
  if (gens.rows() == 0) return 0;
  return echelon_form(gens).pivot_cols.size();
}

std::optional<Lattice> commutator_sublattice(const LieLattice& L, const Lattice& M) {
  require_inside(L, M);
  auto gens = bracket_generators(L, M);
  if (gens.rows() == 0 || echelon_form(gens).pivot_cols.size() < L.rank()) return std::nullopt;
  return Lattice::from_generators(gens, 2 * M.scale());
}

SInvariants s_invariants(const LieLattice& L, const Lattice& M) {
  auto C = commutator_sublattice(L, M);
  if (!C) throw HypothesisViolated("perfectness hypothesis violated: [M,M] is not of full rank");
  return relative_invariant_exponents(M, *C);
}

bool is_subalgebra(const LieLattice& L, const Lattice& M) {
  require_inside(L, M);
  for (std::size_t i = 0; i < M.rank(); ++i)
    for (std::size_t j = i + 1; j < M.rank(); ++j)
      if (!lattice_membership(M, L.bracket(M.basis().row(i), M.basis().row(j)), 2 * M.scale()))
        return false;
  return true;
}

bool is_ideal(const LieLattice& L, const Lattice& M) {
  require_inside(L, M);
  std::vector<std::uint64_t> bk(L.rank(), 0);
  for (std::size_t i = 0; i < M.rank(); ++i)
    for (std::size_t k = 0; k < L.rank(); ++k) {
      bk[k] = 1;
      bool ok = lattice_membership(M, L.bracket(M.basis().row(i), bk), M.scale());
      bk[k] = 0;
      if (!ok) return false;
    }
  return true;
}

KillingForm killing_form_check(const LieLattice& L) {
  const auto& ctx = L.ctx();
  std::size_t r = L.rank();
  KillingForm out{PadicMatrix(ctx, r, r), std::nullopt};
  // K(b_i, b_j) = sum_{k,l} c(i,k,l) c(j,l,k)
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < r; ++l) {
          std::uint64_t a = L.constant(i, k, l);
          if (a) s = ctx.add(s, ctx.mul(a, L.constant(j, l, k)));
        }
      out.gram(i, j) = out.gram(j, i) = s;
    }
  int v = r == 0 ? ctx.prec() : determinant_valuation(out.gram);
  if (v < ctx.prec()) out.det_valuation = v;
  return out;
}

// -------------------------------------------------------- virtual endomorphisms

namespace {

ScaledMap phi_map(const VirtualEndomorphism& phi) {
  auto cm = coordinate_map(phi.domain);
  return {cm.matrix * phi.images, cm.shift};
}

}  // namespace

std::vector<std::uint64_t> apply_virtual(const VirtualEndomorphism& phi, std::span<const std::uint64_t> v,
                                         int vscale, int& valid_prec) {
  const auto& ctx = phi.images.ctx();
  auto m = phi_map(phi);
  auto w = row_times_matrix(v, m.matrix);
  int k = m.shift - vscale;
  valid_prec = ctx.prec();
  if (k >= 0) {
    if (k >= ctx.prec()) return std::vector<std::uint64_t>(w.size(), 0);
    for (auto& x : w) x = ctx.mul(x, ctx.power(k));
    return w;
  }
  // Exact division by p^{-k}; the top -k digits are unknown.
  valid_prec = ctx.prec() + k;
  if (valid_prec <= 0) throw PrecisionError("insufficient precision to apply the virtual endomorphism");
  for (auto& x : w) {
    if (ctx.valuation(x) < -k) throw NotSubmoduleError("vector is not in the domain");
    x = ctx.divide_by_power(x, -k);
  }
  return w;
}

VirtualEndomorphism make_virtual_endomorphism(const LieLattice& L, Lattice domain, PadicMatrix images) {
  require_inside(L, domain);
  if (images.rows() != domain.rank() || images.cols() != L.rank())
    throw StructuralError("images must have one ambient row per domain basis vector");
  if (!is_subalgebra(L, domain)) throw StructuralError("domain is not closed under the bracket");
  VirtualEndomorphism phi{std::move(domain), std::move(images), 0};
  phi.index_exponent = lattice_index(L.lattice(), phi.domain);
  const auto& ctx = L.ctx();
  const auto& B = phi.domain.basis();
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = i + 1; j < B.rows(); ++j) {
      int valid = 0;
      auto lhs = apply_virtual(phi, L.bracket(B.row(i), B.row(j)), 2 * phi.domain.scale(), valid);
      auto rhs = L.bracket(phi.images.row(i), phi.images.row(j));
      std::uint64_t mod = ctx.power(valid);
      for (std::size_t k = 0; k < lhs.size(); ++k)
        if (lhs[k] % mod != rhs[k] % mod)
          throw StructuralError("map does not respect the bracket on basis pair (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
    }
  return phi;
}

bool is_injective(const VirtualEndomorphism& phi) {
  if (phi.images.rows() < phi.images.cols()) return false;
  auto ed = elementary_divisors(phi.images);
  if (ed.size() < phi.images.cols()) return false;
  return std::all_of(ed.begin(), ed.end(), [&](int v) { return v < phi.images.ctx().prec(); });
}

std::string to_string(ChainVerdict v) {
  switch (v) {
    case ChainVerdict::SimpleToDepth: return "simple-to-depth";
    case ChainVerdict::InvariantIdeal: return "invariant-ideal";
    case ChainVerdict::NotInjective: return "not-injective";
    case ChainVerdict::PrecisionInsufficient: return "precision-insufficient";
  }
  return "unknown";
}

ChainResult invariant_ideal_chain(const LieLattice& L, const VirtualEndomorphism& phi, int depth) {
  if (depth < 1) throw StructuralError("depth must be positive");
  ChainResult out;
  const auto& ctx = L.ctx();
  std::size_t r = L.rank();
  Lattice whole = L.lattice();
  try {
    if (!is_injective(phi)) {
      auto LL = commutator_sublattice(L, whole);
      auto kf = killing_form_check(L);
      if (LL && kf.det_valuation) {
        out.verdict = ChainVerdict::NotInjective;
        out.note = "kernel is nonzero and L has finite-index commutator and nondegenerate Killing form";
        return out;
      }
    }
    std::vector<PadicMatrix> ads;
    std::vector<std::uint64_t> bk(r, 0);
    for (std::size_t k = 0; k < r; ++k) {
      bk[k] = 1;
      ads.push_back(L.right_ad(bk));
      bk[k] = 0;
    }
    ScaledMap pm = phi_map(phi);
    Lattice J = phi.domain;
    const int cap = ctx.prec() * static_cast<int>(std::max<std::size_t>(r, 1));
    for (int step = 0; step <= cap; ++step) {
      out.steps = step;
      out.final_index = lattice_index(whole, J);
      if (out.final_index > depth) {
        out.verdict = ChainVerdict::SimpleToDepth;
        return out;
      }
      std::vector<MembershipCondition> conds;
      for (const auto& a : ads) conds.push_back({{a, 0}, &J});
      conds.push_back({pm, &J});
      Lattice next = constrained_sublattice(J, conds);
      if (next == J) {
        out.verdict = ChainVerdict::InvariantIdeal;
        out.witness = J;
        if (!verify_invariant_ideal(L, phi, J)) throw VerificationFailure("chain fixed point is not a phi-invariant ideal");
        return out;
      }
      J = std::move(next);
    }
    out.note = "chain step cap reached";
  } catch (const PrecisionError& e) {
    out.note = e.what();
  }
  out.verdict = ChainVerdict::PrecisionInsufficient;
  out.witness.reset();
  return out;
}

bool verify_invariant_ideal(const LieLattice& L, const VirtualEndomorphism& phi, const Lattice& I) {
  if (!lattice_contains(phi.domain, I)) return false;
  if (!is_ideal(L, I)) return false;
  const auto& ctx = L.ctx();
  for (std::size_t i = 0; i < I.rank(); ++i) {
    int valid = 0;
    auto img = apply_virtual(phi, I.basis().row(i), I.scale(), valid);
    // Membership is decided by residues mod p^valid only when p^valid Z_p^r lies in I.
    if (!lattice_contains(I, L.lattice().scaled(valid)))
      throw PrecisionError("insufficient precision to test phi(I) inside I");
    std::uint64_t mod = ctx.power(valid);
    for (auto& x : img) x %= mod;
    if (!lattice_membership(I, img, 0)) return false;
  }
  return true;
}

std::optional<Lattice> find_invariant_ideal_exhaustive(const LieLattice& L, const VirtualEndomorphism& phi,
                                                       int depth, std::uint64_t cap, std::uint64_t* examined) {
  const auto& ctx = L.ctx();
  std::size_t r = L.rank();
  if (depth >= ctx.prec()) throw PrecisionError("depth must stay below the precision");
  std::uint64_t seen = 0;
  std::vector<int> a(r, 0);
  PadicMatrix B(ctx, r, r);
  std::optional<Lattice> found;
  // Fill entries above the diagonal, column by column; entry (i, j) ranges over [0, p^{a_j}).
  std::function<bool(std::size_t, std::size_t)> entries = [&](std::size_t i, std::size_t j) -> bool {
    if (j == r) {
      if (++seen > cap) throw CapExceeded("invariant ideal search exceeded its cap");
      Lattice I = Lattice::from_generators(B);
      if (lattice_contains(phi.domain, I) && verify_invariant_ideal(L, phi, I)) {
        found = I;
        return true;
      }
      return false;
    }
    if (i == j) return entries(0, j + 1);
    for (std::uint64_t v = 0; v < ctx.power(a[j]); ++v) {
      B(i, j) = v;
      if (entries(i + 1, j)) return true;
    }
    B(i, j) = 0;
    return false;
  };
  std::function<bool(std::size_t, int)> diagonal = [&](std::size_t i, int budget) -> bool {
    if (i == r) return entries(0, 0);
    for (int k = 0; k <= budget; ++k) {
      a[i] = k;
      B(i, i) = ctx.power(k);
      if (diagonal(i + 1, budget - k)) return true;
    }
    return false;
  };
  diagonal(0, depth);
  if (examined) *examined = seen;
  return found;
}

bool index_stability_spotcheck(const LieLattice& L, const VirtualEndomorphism& phi) {
  if (!is_injective(phi)) throw StructuralError("index stability needs an injective virtual endomorphism");
  Lattice image = Lattice::from_generators(phi.images, 0);
  return lattice_index(L.lattice(), image) == lattice_index(L.lattice(), phi.domain);
}

}  // namespace padiclie
