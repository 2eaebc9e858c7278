#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "padiclie/errors.hpp"
#include "padiclie/lattice.hpp"

using namespace padiclie;

namespace {

Lattice gens(const PadicContext& c, const oracle::IntMatrix& rows, int scale = 0) {
  return Lattice::from_generators(PadicMatrix::from_integers(c, rows), scale);
}

std::vector<std::uint64_t> vec(const PadicContext& c, std::vector<std::int64_t> v) {
  std::vector<std::uint64_t> out;
  for (auto x : v) out.push_back(c.from_signed(x));
  return out;
}

}  // namespace

TEST(Lattice, FromGenerators) {
  PadicContext c2(2, 12);
  auto L = gens(c2, {{2, 1}, {0, 1}, {4, 0}});
  EXPECT_EQ(L.basis(), PadicMatrix::from_integers(c2, {{2, 0}, {0, 1}}));
  EXPECT_EQ(L.scale(), 0);
  EXPECT_EQ(gens(c2, {{1, 0}, {0, 1}}), Lattice::standard(c2, 2));
  auto Q = gens(c2, {{1, 0}, {0, 1}}, 1);
  EXPECT_EQ(Q.scale(), 1);
  EXPECT_EQ(Q, Lattice::standard(c2, 2).scaled(-1));
}

TEST(Lattice, ScaleNormalizationKeepsBasisPrimitive) {
  PadicContext c3(3, 6);
  auto L = gens(c3, {{9, 0}, {0, 27}});
  EXPECT_EQ(L.scale(), -2);
  EXPECT_EQ(L.basis(), PadicMatrix::from_integers(c3, {{1, 0}, {0, 3}}));
  // Deep scalings cost nothing.
  auto deep = Lattice::standard(c3, 3).scaled(40);
  EXPECT_EQ(deep.scale(), -40);
  EXPECT_EQ(lattice_index(Lattice::standard(c3, 3), deep), 120);
}

TEST(Lattice, DegenerateGeneratorsAreRejected) {
  PadicContext c(2, 6);
  EXPECT_THROW(gens(c, {{1, 1}, {2, 2}}), PrecisionError);
  EXPECT_THROW(gens(c, {{1, 0}, {0, 64}}), PrecisionError);
  // An elementary divisor of p^prec hidden behind small pivots.
  EXPECT_THROW(gens(c, {{8, 1}, {0, 8}}), PrecisionError);
}

TEST(Lattice, Index) {
  PadicContext c2(2, 12);
  auto Z2 = Lattice::standard(c2, 2);
  EXPECT_EQ(lattice_index(Z2, Z2.scaled(1)), 2);
  EXPECT_EQ(lattice_index(Z2, Z2), 0);
  EXPECT_EQ(lattice_index(Z2, gens(c2, {{1, 1}, {0, 2}})), 1);
  EXPECT_THROW(lattice_index(Z2.scaled(1), Z2), NotSubmoduleError);
}

TEST(Lattice, Membership) {
  PadicContext c2(2, 12);
  auto L = gens(c2, {{2, 0}, {0, 1}});
  EXPECT_TRUE(lattice_membership(L, vec(c2, {2, 0}), 0));
  EXPECT_FALSE(lattice_membership(L, vec(c2, {1, 0}), 0));
  EXPECT_TRUE(lattice_membership(L, vec(c2, {0, 0}), 0));
  EXPECT_TRUE(lattice_membership(L, vec(c2, {0, 0}), 5));
  EXPECT_FALSE(lattice_membership(L, vec(c2, {0, 1}), 1));
  EXPECT_TRUE(lattice_membership(L, vec(c2, {4, 2}), 1));
}

TEST(Lattice, MembershipWhenDeterminantExceedsPrecision) {
  // Index 2^15 at precision 12; the quotient still has exponent 2^5.
  PadicContext c2(2, 12);
  auto L = gens(c2, {{32, 0, 0}, {0, 32, 0}, {0, 0, 32}});
  EXPECT_TRUE(lattice_membership(L, vec(c2, {32, 64, 0}), 0));
  EXPECT_FALSE(lattice_membership(L, vec(c2, {16, 0, 0}), 0));
  EXPECT_TRUE(lattice_contains(Lattice::standard(c2, 3), L));
  EXPECT_FALSE(lattice_contains(L, Lattice::standard(c2, 3)));
}

TEST(Lattice, RelativeInvariantExponents) {
  PadicContext c(5, 12);
  auto Z = Lattice::standard(c, 2);
  EXPECT_EQ(relative_invariant_exponents(Z, gens(c, {{1, 0}, {0, 5}})), SInvariants({0, 1}));
  // span{p^{-1} e0, p^2 e1} = p^{-1} span{e0, p^3 e1}
  EXPECT_EQ(relative_invariant_exponents(Z, gens(c, {{1, 0}, {0, 125}}, 1)), SInvariants({-1, 2}));
  PadicContext c2(2, 12);
  EXPECT_EQ(relative_invariant_exponents(Lattice::standard(c2, 2), gens(c2, {{1, 1}, {1, 3}})),
            SInvariants({0, 1}));
}

TEST(Lattice, RelativeExponentsOfScalings) {
  std::mt19937_64 rng(9);
  PadicContext c(3, 12);
  std::uniform_int_distribution<std::int64_t> d(-9, 9);
  for (int t = 0; t < 30; ++t) {
    oracle::IntMatrix rows(3, std::vector<std::int64_t>(3));
    for (auto& r : rows)
      for (auto& x : r) x = d(rng);
    Lattice L = [&] {
      try {
        return gens(c, rows, t % 3 - 1);
      } catch (const PrecisionError&) {
        return Lattice::standard(c, 3);
      }
    }();
    EXPECT_EQ(relative_invariant_exponents(L, L), SInvariants({0, 0, 0}));
    for (int s = -3; s <= 4; ++s)
      EXPECT_EQ(relative_invariant_exponents(L, L.scaled(s)), SInvariants({s, s, s}));
  }
}

TEST(Lattice, RelativeExponentsMatchDeterminantalDivisors) {
  // Oracle: for L = Z^r and M = rowspan(B), the exponents are the elementary
  // divisors of B computed from minors.
  std::mt19937_64 rng(21);
  for (std::int64_t p : {2, 3}) {
    PadicContext c(static_cast<std::uint64_t>(p), 12);
    std::uniform_int_distribution<std::int64_t> d(-6, 6);
    for (int t = 0; t < 40; ++t) {
      oracle::IntMatrix b(3, std::vector<std::int64_t>(3));
      for (auto& r : b)
        for (auto& x : r) x = d(rng);
      int dv = oracle::vp(oracle::det(b), p, 60);
      if (dv >= 12) continue;
      auto expect = oracle::elementary_divisors(b, p);
      auto M = gens(c, b);
      EXPECT_EQ(relative_invariant_exponents(Lattice::standard(c, 3), M), SInvariants(expect));
      EXPECT_EQ(lattice_index(Lattice::standard(c, 3), M), dv);
      // Sum of exponents equals the scale-adjusted determinant valuation.
      EXPECT_EQ(relative_invariant_exponents(Lattice::standard(c, 3).scaled(-1), M).sum(), dv + 3);
    }
  }
}

TEST(Lattice, SumIntersectionAndContainment) {
  PadicContext c(2, 12);
  auto A = gens(c, {{2, 0}, {0, 1}});
  auto B = gens(c, {{1, 0}, {0, 2}});
  EXPECT_EQ(lattice_sum(A, B), Lattice::standard(c, 2));
  EXPECT_EQ(lattice_intersection(A, B), Lattice::standard(c, 2).scaled(1));
  EXPECT_TRUE(lattice_contains(A, Lattice::standard(c, 2).scaled(1)));
  EXPECT_FALSE(lattice_contains(A, B));
}

TEST(Lattice, CanonicalParserCheck) {
  PadicContext c(2, 12);
  EXPECT_NO_THROW(Lattice::from_canonical(PadicMatrix::from_integers(c, {{2, 1}, {0, 4}}), 0));
  EXPECT_THROW(Lattice::from_canonical(PadicMatrix::from_integers(c, {{2, 5}, {0, 4}}), 0),
               StructuralError);
  EXPECT_THROW(Lattice::from_canonical(PadicMatrix::from_integers(c, {{2, 0}, {0, 4}}), 0),
               StructuralError);
  EXPECT_THROW(Lattice::from_canonical(PadicMatrix::from_integers(c, {{3, 0}, {0, 1}}), 0),
               StructuralError);
}

TEST(MaximalSubmodules, RankTwoOverF2) {
  PadicContext c(2, 12);
  MaximalSubmodules all(Lattice::standard(c, 2));
  ASSERT_EQ(all.count(), 3u);
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<Lattice> expected = {gens(c, {{1, 0}, {0, 2}}), gens(c, {{1, 1}, {0, 2}}),
                                   gens(c, {{2, 0}, {0, 1}})};
  for (std::uint64_t i = 0; i < 3; ++i) EXPECT_EQ(all.submodule(i), expected[i]);
}

TEST(MaximalSubmodules, Counts) {
  EXPECT_EQ(maximal_submodule_count(3, 5), 31u);
  EXPECT_EQ(maximal_submodule_count(8, 2), 255u);
  EXPECT_EQ(MaximalSubmodules(Lattice::standard(PadicContext(5, 6), 3)).count(), 31u);
}

TEST(MaximalSubmodules, CompleteDistinctIndexP) {
  // Oracle: hyperplanes of F_p^m as point sets.
  for (auto [p, m] : std::vector<std::pair<std::uint64_t, std::size_t>>{{2, 3}, {3, 3}, {2, 4}, {5, 2}}) {
    PadicContext c(p, 10);
    auto L = gens(c, m == 3 ? oracle::IntMatrix{{1, 2, 0}, {0, 3, 1}, {0, 0, 4}}
                            : (m == 4 ? oracle::IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}
                                      : oracle::IntMatrix{{1, 1}, {0, 5}}),
                  1);
    MaximalSubmodules all(L);
    std::uint64_t expect = 0, pw = 1;
    for (std::size_t i = 0; i < m; ++i, pw *= p) expect += pw;
    ASSERT_EQ(all.count(), expect);
    std::set<std::vector<std::uint64_t>> distinct;
    for (std::uint64_t i = 0; i < all.count(); ++i) {
      auto param = all.param(i);
      EXPECT_EQ(canonical_param(param, p), param);
      auto N = all.submodule(i);
      EXPECT_EQ(lattice_index(L, N), 1);
      std::vector<std::uint64_t> key(N.basis().row(0).begin(), N.basis().row(0).end());
      for (std::size_t r = 1; r < m; ++r) key.insert(key.end(), N.basis().row(r).begin(), N.basis().row(r).end());
      key.push_back(static_cast<std::uint64_t>(N.scale() + 100));
      distinct.insert(key);
    }
    EXPECT_EQ(distinct.size(), expect);
  }
}

TEST(MaxSubmoduleParam, DefinitionAndEquivalence) {
  PadicContext c3(3, 12);
  auto L = Lattice::standard(c3, 2);
  MaxSubmoduleParam a{0, {0, 2}};
  EXPECT_EQ(submodule_from_param(L, a), gens(c3, {{3, 0}, {2, 1}}));
  MaxSubmoduleParam a2{0, {0, 5}};
  EXPECT_TRUE(param_equivalent(a, a2, 3));

  PadicContext c2(2, 12);
  auto L2 = Lattice::standard(c2, 2);
  MaxSubmoduleParam x{0, {0, 1}}, y{1, {1, 0}};
  EXPECT_TRUE(param_equivalent(x, y, 2));
  EXPECT_EQ(submodule_from_param(L2, x), submodule_from_param(L2, y));
  EXPECT_EQ(submodule_from_param(L2, x), gens(c2, {{2, 0}, {1, 1}}));
}

TEST(MaxSubmoduleParam, EquivalenceAgreesWithLatticeEquality) {
  std::mt19937_64 rng(13);
  for (auto [p, m] : std::vector<std::pair<std::uint64_t, std::size_t>>{{2, 3}, {3, 3}, {5, 2}, {3, 4}}) {
    PadicContext c(p, 10);
    auto L = Lattice::standard(c, m).scaled(-1);
    std::uniform_int_distribution<std::uint64_t> bd(0, 2 * p);
    std::uniform_int_distribution<std::size_t> md(0, m - 1);
    for (int t = 0; t < 150; ++t) {
      MaxSubmoduleParam a{md(rng), std::vector<std::uint64_t>(m)}, b{md(rng), std::vector<std::uint64_t>(m)};
      for (std::size_t i = 0; i < m; ++i) {
        a.b[i] = i == a.mu ? 0 : bd(rng);
        b.b[i] = i == b.mu ? 0 : bd(rng);
      }
      // Bias towards equivalent pairs.
      if (t % 2 == 0) {
        auto reps = equivalent_params(a, p);
        b = reps[t % reps.size()];
        if (t % 4 == 0) b.b[(b.mu + 1) % m] += (b.mu + 1) % m == b.mu ? 0 : p;
      }
      bool same = submodule_from_param(L, a) == submodule_from_param(L, b);
      EXPECT_EQ(param_equivalent(a, b, p), same) << to_string(a) << " vs " << to_string(b);
    }
  }
}

TEST(ConstrainedSublattice, PreimageOfSublattice) {
  PadicContext c(3, 12);
  auto L = Lattice::standard(c, 2);
  // {x : x * diag(1,3) in 9 Z^2} = span{(9,0),(0,3)}
  auto target = L.scaled(2);
  MembershipCondition cond{{PadicMatrix::from_integers(c, {{1, 0}, {0, 3}}), 0}, &target};
  auto X = constrained_sublattice(L, std::span<const MembershipCondition>(&cond, 1));
  EXPECT_EQ(X, gens(c, {{9, 0}, {0, 3}}));
  // Negative shift: {x : x / 3 in Z^2} = 3 Z^2
  MembershipCondition cond2{{PadicMatrix::identity(c, 2), -1}, &L};
  EXPECT_EQ(constrained_sublattice(L, std::span<const MembershipCondition>(&cond2, 1)), L.scaled(1));
}
