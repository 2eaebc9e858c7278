#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "padiclie/cyclic_algebra.hpp"
#include "padiclie/errors.hpp"
#include "padiclie/lie_lattice.hpp"

using namespace padiclie;

namespace {

PadicContext ctx(std::uint64_t p, int prec = 12) { return PadicContext(p, prec); }

std::vector<std::uint64_t> e(std::size_t r, std::size_t i) {
  std::vector<std::uint64_t> v(r, 0);
  v[i] = 1;
  return v;
}

Lattice diag(const PadicContext& c, std::vector<int> exps) {
  PadicMatrix m(c, exps.size(), exps.size());
  for (std::size_t i = 0; i < exps.size(); ++i) m(i, i) = c.power(exps[i]);
  return Lattice::from_generators(m);
}

SL1Lattice sl1(std::uint64_t p, int e, int f, int n) {
  return SL1Lattice::build(UnramifiedExt::build(LocalField::build(p, e, f), n));
}

}  // namespace

TEST(Models, StructureConstants) {
  auto A = LieLattice::abelian(ctx(3), 3);
  EXPECT_TRUE(std::all_of(A.constants().begin(), A.constants().end(), [](auto v) { return v == 0; }));
  auto M0 = LieLattice::metabelian(ctx(2), 2, 0);
  EXPECT_EQ(M0.bracket(e(2, 0), e(2, 1)), e(2, 1));
  auto M1 = LieLattice::metabelian(ctx(3), 3, 1);
  EXPECT_EQ(M1.bracket(e(3, 0), e(3, 1)), (std::vector<std::uint64_t>{0, 3, 0}));
  EXPECT_EQ(M1.bracket(e(3, 0), e(3, 2)), (std::vector<std::uint64_t>{0, 0, 3}));
  EXPECT_EQ(M1.bracket(e(3, 1), e(3, 2)), (std::vector<std::uint64_t>{0, 0, 0}));
  EXPECT_THROW(LieLattice::metabelian(ctx(3), 1, 0), StructuralError);
  EXPECT_THROW(LieLattice::abelian(ctx(3), 0), StructuralError);
}

TEST(Models, ConstructorRejectsBadConstants) {
  auto c = ctx(5);
  std::vector<std::uint64_t> bad(8, 0);
  bad[(0 * 2 + 1) * 2 + 1] = 1;  // [b0,b1] = b1 but [b1,b0] = 0
  EXPECT_THROW(LieLattice(c, 2, bad), StructuralError);
  // Antisymmetric but not Jacobi: [b0,b1]=b2, [b1,b2]=b0, [b0,b2]=b0.
  std::vector<std::uint64_t> nj(27, 0);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k) {
    nj[(i * 3 + j) * 3 + k] = 1;
    nj[(j * 3 + i) * 3 + k] = c.neg(1);
  };
  set(0, 1, 2);
  set(1, 2, 0);
  set(0, 2, 0);
  try {
    LieLattice(c, 3, nj);
    FAIL() << "expected a Jacobi failure";
  } catch (const StructuralError& err) {
    EXPECT_NE(std::string(err.what()).find("(0,1,2)"), std::string::npos);
  }
  EXPECT_THROW(LieLattice(c, 2, std::vector<std::uint64_t>(5, 0)), StructuralError);
}

TEST(Commutator, AbelianAndMetabelian) {
  auto A = LieLattice::abelian(ctx(2), 3);
  EXPECT_EQ(commutator_rank(A, A.lattice()), 0u);
  EXPECT_FALSE(commutator_sublattice(A, A.lattice()));
  EXPECT_THROW(s_invariants(A, A.lattice()), HypothesisViolated);

  auto M = LieLattice::metabelian(ctx(3), 2, 1);
  EXPECT_EQ(commutator_rank(M, M.lattice()), 1u);
  // The span is p^s times the second line.
  PadicMatrix gens(ctx(3), 0, 2);
  gens.append_row(M.bracket(e(2, 0), e(2, 1)));
  auto ech = echelon_form(gens);
  EXPECT_EQ(ech.pivot_cols, (std::vector<std::size_t>{1}));
  EXPECT_EQ(ech.rows(0, 1), 3u);

  EXPECT_THROW(commutator_sublattice(M, M.lattice().scaled(-1)), NotSubmoduleError);
}

TEST(Commutator, SplitSl2AndScaling) {
  auto S = LieLattice::split_sl2(ctx(3));
  auto LL = commutator_sublattice(S, S.lattice());
  ASSERT_TRUE(LL);
  // [h,e] = 2e, [h,f] = -2f, [e,f] = h: all of L when p = 3.
  EXPECT_EQ(*LL, S.lattice());
  auto S2 = LieLattice::split_sl2(ctx(2));
  EXPECT_EQ(lattice_index(S2.lattice(), *commutator_sublattice(S2, S2.lattice())), 2);
  for (int m = 0; m <= 3; ++m) {
    auto base = *commutator_sublattice(S2, S2.lattice());
    auto scaled = commutator_sublattice(S2, S2.lattice().scaled(m));
    ASSERT_TRUE(scaled);
    EXPECT_EQ(*scaled, base.scaled(2 * m));
  }
}

TEST(Commutator, MonotoneInM) {
  auto L = sl1(3, 1, 1, 2);
  std::mt19937_64 rng(8);
  MaximalSubmodules subs(L.lie().lattice());
  for (std::uint64_t i = 0; i < subs.count(); ++i) {
    Lattice N = subs.submodule(i);
    Lattice N2 = lattice_intersection(N, subs.submodule((i * 7 + 3) % subs.count()));
    auto c1 = commutator_sublattice(L.lie(), N);
    auto c2 = commutator_sublattice(L.lie(), N2);
    ASSERT_TRUE(c1 && c2);
    EXPECT_TRUE(lattice_contains(*c1, *c2));
  }
}

TEST(SInvariantsTest, NamedValues) {
  auto L = SL1Lattice::build(UnramifiedExt::build(LocalField::build(5, 1, 1), 2));
  EXPECT_EQ(s_invariants(L.lie(), L.lie().lattice()), SInvariants({0, 0, 1}));
  // M_0 = span(pi e0, e1, e2) for the standard basis (e0 is the first coordinate).
  Lattice M0 = diag(L.lie().ctx(), {1, 0, 0});
  EXPECT_EQ(s_invariants(L.lie(), M0), SInvariants({0, 1, 1}));
}

TEST(SInvariantsTest, InvariantUnderChangeOfBasis) {
  std::mt19937_64 rng(21);
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{5, 2}, {2, 3}}) {
    auto L = sl1(p, 1, 1, n);
    const auto& lie = L.lie();
    auto g = oracle::random_unimodular(lie.ctx(), lie.rank(), rng);
    auto lie2 = lie.change_basis(g);
    EXPECT_FALSE(jacobi_violation(lie2));
    PadicMatrix ginv = inverse(g);
    MaximalSubmodules subs(lie.lattice());
    for (std::uint64_t i = 0; i < subs.count(); i += std::max<std::uint64_t>(1, subs.count() / 20)) {
      Lattice N = subs.submodule(i);
      Lattice N2 = apply_linear_map(N, ginv);
      EXPECT_EQ(s_invariants(lie, N), s_invariants(lie2, N2));
    }
  }
}

TEST(Killing, NamedValues) {
  auto S = LieLattice::split_sl2(ctx(2));
  auto kf = killing_form_check(S);
  ASSERT_TRUE(kf.det_valuation);
  EXPECT_EQ(*kf.det_valuation, 7);  // det = -128
  auto g = oracle::to_ints(kf.gram);
  auto c2 = ctx(2);
  for (auto& row : g)
    for (auto& x : row) x = c2.to_signed(static_cast<std::uint64_t>(x));
  EXPECT_EQ(static_cast<std::int64_t>(oracle::det(g)), -128);
  EXPECT_EQ(*killing_form_check(LieLattice::split_sl2(ctx(3))).det_valuation, 0);
  EXPECT_FALSE(killing_form_check(LieLattice::abelian(ctx(3), 2)).det_valuation);
  EXPECT_FALSE(killing_form_check(LieLattice::metabelian(ctx(3), 2, 0)).det_valuation);
  auto L = SL1Lattice::build(UnramifiedExt::build(LocalField::build(5, 1, 1), 2));
  EXPECT_TRUE(killing_form_check(L.lie()).det_valuation);
}

TEST(VirtualEndo, ValidationAndApplication) {
  auto c = ctx(3);
  auto Z = LieLattice::abelian(c, 1);
  Lattice pZ = Z.lattice().scaled(1);
  PadicMatrix one = PadicMatrix::from_integers(c, {{1}});
  auto phi = make_virtual_endomorphism(Z, pZ, one);
  EXPECT_EQ(phi.index_exponent, 1);
  EXPECT_TRUE(is_injective(phi));
  int valid = 0;
  // phi(p) = 1, so phi(p^2) = p.
  std::vector<std::uint64_t> p2{9};
  EXPECT_EQ(apply_virtual(phi, p2, 0, valid), (std::vector<std::uint64_t>{3}));
  EXPECT_EQ(valid, c.prec() - 1);
  EXPECT_THROW(apply_virtual(phi, std::vector<std::uint64_t>{1}, 0, valid), NotSubmoduleError);

  auto M = LieLattice::metabelian(c, 2, 1);
  // span{x, p y} is a subalgebra; x -> x, py -> y is a homomorphism.
  Lattice dom = diag(c, {0, 1});
  auto psi = make_virtual_endomorphism(M, dom, PadicMatrix::from_integers(c, {{1, 0}, {0, 1}}));
  EXPECT_EQ(psi.index_exponent, 1);
  // x -> 2x is not a homomorphism.
  EXPECT_THROW(make_virtual_endomorphism(M, dom, PadicMatrix::from_integers(c, {{2, 0}, {0, 1}})),
               StructuralError);
  // span{h + e, 3e, f} is not closed: [h + e, f] = h - 2f.
  auto S = LieLattice::split_sl2(c);
  Lattice notsub = Lattice::from_generators(PadicMatrix::from_integers(c, {{1, 1, 0}, {0, 3, 0}, {0, 0, 1}}));
  EXPECT_TRUE(is_subalgebra(S, S.lattice()));
  EXPECT_FALSE(is_subalgebra(S, notsub));
  EXPECT_THROW(make_virtual_endomorphism(S, notsub, PadicMatrix::identity(c, 3)), StructuralError);
}

TEST(Chain, NamedVerdicts) {
  auto c = ctx(2);
  auto Z = LieLattice::abelian(c, 1);
  Lattice pZ = Z.lattice().scaled(1);
  auto shrink = make_virtual_endomorphism(Z, pZ, PadicMatrix::from_integers(c, {{1}}));
  for (int depth = 1; depth <= c.prec() - 1; ++depth) {
    auto res = invariant_ideal_chain(Z, shrink, depth);
    EXPECT_EQ(res.verdict, ChainVerdict::SimpleToDepth) << depth;
    EXPECT_FALSE(res.witness);
  }
  auto incl = make_virtual_endomorphism(Z, pZ, PadicMatrix::from_integers(c, {{2}}));
  auto res = invariant_ideal_chain(Z, incl, 8);
  EXPECT_EQ(res.verdict, ChainVerdict::InvariantIdeal);
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(*res.witness, pZ);
  EXPECT_TRUE(verify_invariant_ideal(Z, incl, *res.witness));

  auto M = LieLattice::metabelian(c, 2, 1);
  auto psi = make_virtual_endomorphism(M, diag(c, {0, 1}), PadicMatrix::from_integers(c, {{1, 0}, {0, 1}}));
  auto mres = invariant_ideal_chain(M, psi, 8);
  EXPECT_EQ(mres.verdict, ChainVerdict::SimpleToDepth);
  EXPECT_GT(mres.final_index, 8);
}

TEST(Chain, NotInjectiveOnSemisimple) {
  auto c = ctx(3);
  auto S = LieLattice::split_sl2(c);
  // The zero map is a homomorphism from any subalgebra.
  auto zero = make_virtual_endomorphism(S, S.lattice().scaled(1), PadicMatrix(c, 3, 3));
  EXPECT_FALSE(is_injective(zero));
  EXPECT_EQ(invariant_ideal_chain(S, zero, 5).verdict, ChainVerdict::NotInjective);
  EXPECT_THROW(index_stability_spotcheck(S, zero), StructuralError);
}

TEST(Chain, WitnessIsIndependentlyChecked) {
  auto c = ctx(3);
  auto S = LieLattice::split_sl2(c);
  auto id = make_virtual_endomorphism(S, S.lattice().scaled(1), PadicMatrix::identity(c, 3).scaled_by_power(1));
  auto res = invariant_ideal_chain(S, id, 6);
  ASSERT_EQ(res.verdict, ChainVerdict::InvariantIdeal);
  EXPECT_TRUE(verify_invariant_ideal(S, id, *res.witness));
  // S itself is not inside the domain pS.
  EXPECT_FALSE(verify_invariant_ideal(S, id, S.lattice()));
}

TEST(IndexStability, Examples) {
  auto c = ctx(5);
  auto S = LieLattice::split_sl2(c);
  auto id = make_virtual_endomorphism(S, S.lattice().scaled(1), PadicMatrix::identity(c, 3).scaled_by_power(1));
  EXPECT_TRUE(index_stability_spotcheck(S, id));
  // The metabelian map x -> x, py -> y is onto L, so the indices differ.
  auto M = LieLattice::metabelian(c, 2, 1);
  auto psi = make_virtual_endomorphism(M, diag(c, {0, 1}), PadicMatrix::from_integers(c, {{1, 0}, {0, 1}}));
  EXPECT_FALSE(index_stability_spotcheck(M, psi));
}
