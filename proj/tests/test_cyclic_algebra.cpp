#include <gtest/gtest.h>

#include <random>

#include "padiclie/cyclic_algebra.hpp"
#include "padiclie/errors.hpp"

using namespace padiclie;

namespace {

UnramifiedExt sqrt2_over_q5(int prec = 12) {
  auto K = LocalField::build(5, 1, 1, prec);
  return UnramifiedExt::build(K, 2, std::vector<OkElem>{K.from_integer(-2), K.zero(), K.one()});
}

AlgebraElement random_element(const CyclicAlgebra& D, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, D.ctx().modulus() - 1);
  AlgebraElement x = D.zero();
  for (auto& v : x) v = dist(rng);
  return x;
}

OfElem random_of(const UnramifiedExt& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, F.ctx().modulus() - 1);
  OfElem x = F.zero();
  for (auto& v : x) v = dist(rng);
  return x;
}

struct Shape {
  std::uint64_t p;
  int e, f, n;
};

const std::vector<Shape> kShapes = {{5, 1, 1, 2}, {3, 1, 1, 2}, {2, 1, 1, 3}, {3, 1, 1, 3},
                                    {2, 1, 2, 2}, {3, 2, 1, 2}, {2, 2, 1, 3}, {3, 1, 1, 4}};

SL1Lattice build_sl1(const Shape& s) {
  return SL1Lattice::build(UnramifiedExt::build(LocalField::build(s.p, s.e, s.f), s.n));
}

// u_0 comes from dividing by pi, which fixes it only modulo p^{prec-1}.
bool congruent_below_top(const LocalField& K, const OkElem& a, const OkElem& b) {
  std::uint64_t mod = K.ctx().power(K.ctx().prec() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] % mod != b[i] % mod) return false;
  return true;
}

}  // namespace

TEST(CyclicAlgebraTest, TwistedMultiplicationRules) {
  CyclicAlgebra D(sqrt2_over_q5());
  const auto& F = D.field();
  OfElem xi = F.generator();
  auto Pi = D.Pi();
  // Pi alpha = theta(alpha) Pi
  EXPECT_EQ(D.multiply(Pi, D.monomial(xi, 0)), D.monomial(F.frobenius(xi), 1));
  EXPECT_EQ(D.multiply(Pi, D.monomial(xi, 0)), D.monomial(F.neg(xi), 1));
  // Pi^2 = pi = 5
  EXPECT_EQ(D.multiply(Pi, Pi), D.monomial(F.embed(F.base().from_integer(5)), 0));
  // (alpha Pi)(beta Pi) = alpha theta(beta) pi
  std::mt19937_64 rng(3);
  auto a = random_of(F, rng), b = random_of(F, rng);
  auto expect = D.monomial(F.mul(F.mul(a, F.frobenius(b)), F.embed(F.base().from_integer(5))), 0);
  EXPECT_EQ(D.multiply(D.monomial(a, 1), D.monomial(b, 1)), expect);
}

TEST(CyclicAlgebraTest, NamedBrackets) {
  CyclicAlgebra D(sqrt2_over_q5());
  const auto& F = D.field();
  const auto& K = F.base();
  OfElem xi = F.generator();
  auto Pi = D.Pi();
  EXPECT_EQ(D.bracket(Pi, Pi), D.zero());
  EXPECT_EQ(D.bracket(D.monomial(xi, 0), Pi), D.monomial(F.scale(K.from_integer(2), xi), 1));
  EXPECT_EQ(D.bracket(Pi, D.monomial(xi, 1)), D.monomial(F.scale(K.from_integer(-10), xi), 0));
}

TEST(CyclicAlgebraTest, ReducedTrace) {
  CyclicAlgebra D(sqrt2_over_q5());
  const auto& F = D.field();
  const auto& K = F.base();
  OfElem xi = F.generator();
  auto x = D.add(D.add(D.monomial(F.embed(K.from_integer(3)), 0), D.monomial(xi, 0)),
                 D.monomial(F.embed(K.from_integer(2)), 1));
  EXPECT_EQ(D.reduced_trace(x), K.from_integer(6));
  EXPECT_EQ(D.reduced_trace(D.one()), K.from_integer(2));
  EXPECT_EQ(D.reduced_trace(D.Pi()), K.zero());

  CyclicAlgebra D3(UnramifiedExt::build(LocalField::build(2, 1, 1), 3));
  EXPECT_EQ(D3.reduced_trace(D3.one()), D3.field().base().from_integer(3));
  EXPECT_EQ(D3.reduced_trace(D3.monomial(D3.field().one(), 2)), D3.field().base().zero());
}

TEST(CyclicAlgebraTest, RingPropertiesOnRandomElements) {
  std::mt19937_64 rng(11);
  for (const auto& s : kShapes) {
    CyclicAlgebra D(UnramifiedExt::build(LocalField::build(s.p, s.e, s.f), s.n));
    const auto& F = D.field();
    for (int t = 0; t < 6; ++t) {
      auto a = random_element(D, rng), b = random_element(D, rng), c = random_element(D, rng);
      EXPECT_EQ(D.multiply(D.multiply(a, b), c), D.multiply(a, D.multiply(b, c)));
      EXPECT_EQ(D.multiply(a, D.add(b, c)), D.add(D.multiply(a, b), D.multiply(a, c)));
      EXPECT_EQ(D.reduced_trace(D.multiply(a, b)), D.reduced_trace(D.multiply(b, a)));
      EXPECT_EQ(D.reduced_trace(D.bracket(a, b)), F.base().zero());
      // Jacobi and antisymmetry
      auto ab = D.bracket(a, b), ba = D.bracket(b, a);
      EXPECT_EQ(D.add(ab, ba), D.zero());
      auto jac = D.add(D.add(D.bracket(D.bracket(a, b), c), D.bracket(D.bracket(b, c), a)),
                       D.bracket(D.bracket(c, a), b));
      EXPECT_EQ(jac, D.zero());
    }
    // Closed form on monomials.
    for (int j = 0; j < s.n; ++j)
      for (int k = 0; k < s.n; ++k) {
        auto al = random_of(F, rng), be = random_of(F, rng);
        EXPECT_EQ(D.bracket(D.monomial(al, j), D.monomial(be, k)), D.bracket_closed_form(al, j, be, k));
      }
    // Units of Delta invert.
    auto u = random_element(D, rng);
    u[0] = D.ctx().add(u[0], u[0] % s.p == 0 ? 1 : 0);
    for (std::size_t i = 1; i < F.rank(); ++i) u[i] = D.ctx().mul(u[i], s.p);
    EXPECT_EQ(D.multiply(D.unit_inverse(u), u), D.one());
  }
}

TEST(SL1, RanksAndIndexSet) {
  auto L5 = SL1Lattice::build(sqrt2_over_q5());
  EXPECT_EQ(L5.rank(), 3u);
  auto L23 = build_sl1({2, 1, 1, 3});
  EXPECT_EQ(L23.rank(), 8u);
  auto L1 = build_sl1({3, 1, 1, 1});
  EXPECT_EQ(L1.rank(), 0u);
  auto L322 = build_sl1({3, 2, 1, 2});
  EXPECT_EQ(L322.rank(), 6u);
  // Lambda order: eta1 first, then eta0.
  const auto& eta = L23.index_set();
  ASSERT_EQ(eta.size(), 8u);
  EXPECT_EQ(eta[0], (std::array<int, 2>{1, 0}));
  EXPECT_EQ(eta[1], (std::array<int, 2>{2, 0}));
  EXPECT_EQ(eta[2], (std::array<int, 2>{0, 1}));
  EXPECT_EQ(eta[7], (std::array<int, 2>{2, 2}));
  EXPECT_EQ(L23.position(0, 2), 5u);
  EXPECT_THROW(L23.position(0, 0), StructuralError);
}

TEST(SL1, BasisHasTraceZeroAndGrading) {
  for (const auto& s : kShapes) {
    auto L = build_sl1(s);
    const auto& D = L.algebra();
    std::size_t r = L.rank();
    std::size_t d = static_cast<std::size_t>(L.d());
    for (std::size_t k = 0; k < r; ++k) {
      std::vector<std::uint64_t> v(r, 0);
      v[k] = 1;
      auto x = L.to_algebra(v);
      EXPECT_EQ(D.reduced_trace(x), L.base().zero());
      EXPECT_EQ(L.from_algebra(x), v);
    }
    // [L_j, L_k] lands in L_{j+k mod n}.
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        int ja = L.index_set()[a / d][1], jb = L.index_set()[b / d][1];
        auto [first, last] = L.piece((ja + jb) % s.n);
        for (std::size_t k = 0; k < r; ++k)
          if (k < first || k >= last) EXPECT_EQ(L.lie().constant(a, b, k), 0u);
      }
    EXPECT_FALSE(antisymmetry_violation(L.lie()));
    EXPECT_FALSE(jacobi_violation(L.lie()));
  }
  auto L = SL1Lattice::build(sqrt2_over_q5());
  EXPECT_THROW(L.from_algebra(L.algebra().one()), StructuralError);
}

TEST(SL1, CommutatorMatchesClosedForm) {
  struct Case {
    Shape s;
    int index;
  };
  for (auto [s, index] : std::vector<Case>{{{5, 1, 1, 2}, 1}, {{3, 1, 1, 2}, 1}, {{2, 1, 1, 3}, 2},
                                           {{3, 1, 1, 4}, 3}, {{3, 2, 1, 2}, 1}, {{2, 2, 1, 3}, 2},
                                           {{3, 1, 2, 2}, 2}}) {
    SCOPED_TRACE(std::to_string(s.p) + "," + std::to_string(s.e) + "," + std::to_string(s.f) + "," +
                 std::to_string(s.n));
    auto rep = commutator_lattice_sl1(build_sl1(s));
    EXPECT_TRUE(rep.matches);
    EXPECT_EQ(rep.index, index);
    EXPECT_EQ(rep.expected_index, index);
  }
  EXPECT_THROW(commutator_lattice_sl1(build_sl1({2, 1, 1, 2})), HypothesisViolated);
  EXPECT_THROW(commutator_lattice_sl1(build_sl1({2, 1, 2, 2})), HypothesisViolated);
  EXPECT_THROW(commutator_lattice_sl1(build_sl1({3, 1, 1, 1})), HypothesisViolated);
}

TEST(SL1, ExcludedCaseHasSmallerCommutator) {
  // With p = n = 2 the brackets into L_1 pick up a factor 2.
  auto L = build_sl1({2, 1, 2, 2});
  auto LL = commutator_sublattice(L.lie(), L.lie().lattice());
  ASSERT_TRUE(LL);
  Lattice closed = sl1_commutator_closed_form(L);
  EXPECT_NE(*LL, closed);
  EXPECT_TRUE(lattice_contains(closed, *LL));
  EXPECT_GT(lattice_index(L.lie().lattice(), *LL), 2);
}

TEST(StandardBasisTest, SquareRootOfTwo) {
  auto L = SL1Lattice::build(sqrt2_over_q5());
  auto sb = standard_basis_n2(L);
  const auto& K = L.base();
  EXPECT_EQ(sb.u[2], K.from_integer(2));
  EXPECT_EQ(sb.u[1], K.from_integer(-4));
  EXPECT_TRUE(congruent_below_top(K, sb.u[0], K.from_integer(-2)));
  EXPECT_EQ(sb.xi_squared, K.from_integer(2));
  EXPECT_EQ(sb.s, (std::array<int, 3>{1, 0, 0}));
  EXPECT_TRUE(check_standard_basis(L, sb).all());
  EXPECT_EQ(s_invariants(L.lie(), L.lie().lattice()), SInvariants({0, 0, 1}));
}

TEST(StandardBasisTest, DefaultTowersAndErrors) {
  for (const auto& s : std::vector<Shape>{{5, 1, 1, 2}, {3, 1, 1, 2}, {3, 2, 1, 2}, {3, 1, 2, 2}, {7, 1, 1, 2}}) {
    auto L = build_sl1(s);
    auto sb = standard_basis_n2(L);
    auto rep = check_standard_basis(L, sb);
    EXPECT_TRUE(rep.all()) << s.p << " " << s.e << " " << s.f;
    EXPECT_TRUE(congruent_below_top(L.base(), sb.u[0], L.base().from_integer(-2)));
    EXPECT_EQ(sb.u[2], L.base().from_integer(2));
  }
  EXPECT_THROW(standard_basis_n2(build_sl1({2, 1, 1, 2})), HypothesisViolated);
  EXPECT_THROW(standard_basis_n2(build_sl1({3, 1, 1, 3})), HypothesisViolated);
  auto L = SL1Lattice::build(sqrt2_over_q5());
  auto sb = standard_basis_n2(L);
  sb.u[1] = L.base().from_integer(-1);
  EXPECT_FALSE(check_standard_basis(L, sb).brackets);
}
