#include <gtest/gtest.h>

#include <set>

#include "padiclie/errors.hpp"
#include "padiclie/finite_cyclic.hpp"

using namespace padiclie;
using Elt = FiniteFieldExt::Element;

namespace {

struct GridCase {
  std::uint32_t p;
  int f, n;
};

// q <= 5, n <= 4, within the exhaustive cap.
std::vector<GridCase> grid() {
  std::vector<GridCase> out;
  for (GridCase base : {GridCase{2, 1, 0}, GridCase{3, 1, 0}, GridCase{2, 2, 0}, GridCase{5, 1, 0}})
    for (int n = 1; n <= 4; ++n) out.push_back({base.p, base.f, n});
  return out;
}

std::string name(const GridCase& c) {
  return "p=" + std::to_string(c.p) + " f=" + std::to_string(c.f) + " n=" + std::to_string(c.n);
}

// Brute-force set {x : x + theta(x) + ... = 0} from repeated q-th powers.
std::set<Elt> brute_trace_zero(const FiniteFieldExt& E) {
  std::set<Elt> out;
  for (Elt a = 0; a < E.size(); ++a) {
    Elt s = 0, cur = a;
    for (int j = 0; j < E.n(); ++j) {
      s = E.add(s, cur);
      cur = E.pow(cur, E.q());
    }
    if (s == 0) out.insert(a);
  }
  return out;
}

}  // namespace

TEST(FiniteField, DefiningPolynomialsAreLowestIrreducibles) {
  auto E4 = FiniteFieldExt::build(2, 1, 2);
  EXPECT_EQ(E4.top_modulus(), (Poly{1, 1, 1}));
  auto E25 = FiniteFieldExt::build(5, 1, 2);
  EXPECT_EQ(E25.top_modulus(), (Poly{2, 0, 1}));
  auto E16 = FiniteFieldExt::build(2, 2, 2);
  EXPECT_EQ(E16.base().modulus(), (Poly{1, 1, 1}));
  EXPECT_EQ(E16.size(), 16u);
  EXPECT_EQ(FiniteFieldExt::build(3, 1, 3).size(), 27u);
  EXPECT_THROW(FiniteFieldExt::build(4, 1, 2), StructuralError);
  EXPECT_THROW(FiniteFieldExt::build(2, 1, 2).base().inv(0), NotInvertibleError);
}

TEST(FiniteField, FieldAxiomsAndGaloisStructureOnGrid) {
  for (const auto& c : grid()) {
    SCOPED_TRACE(name(c));
    auto E = FiniteFieldExt::build(c.p, c.f, c.n);
    std::uint64_t N = E.size();
    // Distributivity and associativity on a stride sample, inverses everywhere.
    std::uint64_t stride = N > 64 ? 7 : 1;
    for (Elt a = 0; a < N; a += stride)
      for (Elt b = 0; b < N; b += stride) {
        EXPECT_EQ(E.mul(a, b), E.mul(b, a));
        Elt cc = static_cast<Elt>((a * 5 + b * 3 + 1) % N);
        EXPECT_EQ(E.mul(a, E.add(b, cc)), E.add(E.mul(a, b), E.mul(a, cc)));
        EXPECT_EQ(E.mul(E.mul(a, b), cc), E.mul(a, E.mul(b, cc)));
      }
    for (Elt a = 1; a < N; ++a) EXPECT_EQ(E.mul(a, E.inv(a)), 1u);
    // theta^n = id, theta^j != id for 0 < j < n, trace lands in kappa_K and is onto.
    std::set<Elt> traces;
    for (Elt a = 0; a < N; ++a) {
      EXPECT_EQ(E.frobenius(a, E.n()), a);
      Elt t = E.trace(a);
      EXPECT_TRUE(E.in_base(t));
      traces.insert(t);
    }
    EXPECT_EQ(traces.size(), E.q());
    for (int j = 1; j < E.n(); ++j) {
      bool moved = false;
      for (Elt a = 0; a < N && !moved; ++a) moved = E.frobenius(a, j) != a;
      EXPECT_TRUE(moved) << "j=" << j;
    }
  }
}

TEST(FiniteField, CoordinatesRoundTrip) {
  auto E = FiniteFieldExt::build(2, 2, 3);
  for (Elt a = 0; a < E.size(); a += 3) EXPECT_EQ(E.from_coords(E.coords(a)), a);
  EXPECT_THROW(E.from_coords(std::vector<std::uint32_t>{1, 0}), StructuralError);
}

TEST(TraceZero, SmallExamples) {
  auto E4 = FiniteFieldExt::build(2, 1, 2);
  auto tz = trace_zero_space(E4);
  EXPECT_EQ(tz.elements, (std::vector<Elt>{0, 1}));
  // T(x) = x + x^2 by hand.
  for (Elt x = 0; x < 4; ++x) EXPECT_EQ(E4.trace(x), E4.add(x, E4.mul(x, x)));

  auto E2 = FiniteFieldExt::build(2, 1, 1);
  EXPECT_EQ(trace_zero_space(E2).elements, (std::vector<Elt>{0}));
  EXPECT_TRUE(trace_zero_space(E2).basis.empty());

  EXPECT_EQ(trace_zero_space(FiniteFieldExt::build(3, 1, 2)).basis.size(), 1u);
}

TEST(TraceZero, DimensionAndContentOnGrid) {
  for (const auto& c : grid()) {
    SCOPED_TRACE(name(c));
    auto E = FiniteFieldExt::build(c.p, c.f, c.n);
    auto tz = trace_zero_space(E);
    EXPECT_EQ(static_cast<int>(tz.basis.size()), E.n() - 1);
    EXPECT_EQ(E.base_span_dimension(tz.basis), E.n() - 1);
    auto brute = brute_trace_zero(E);
    EXPECT_EQ(std::set<Elt>(tz.elements.begin(), tz.elements.end()), brute);
    for (auto b : tz.basis) EXPECT_TRUE(brute.count(b));
  }
}

TEST(CyclicLemmas, HoldOnEveryGridField) {
  for (const auto& c : grid()) {
    SCOPED_TRACE(name(c));
    auto E = FiniteFieldExt::build(c.p, c.f, c.n);
    EXPECT_TRUE(hilbert90_additive_check(E));
    for (Elt a = 1; a < E.size(); a += (E.size() > 30 ? 11 : 1)) {
      EXPECT_TRUE(skew_image_check(E, a));
      EXPECT_TRUE(skew_image_dual_check(E, a));
    }
    for (int k = 0; k < E.n(); ++k) {
      if ((k + 1) % E.n() == 0) {
        EXPECT_THROW(bracket_span_check(E, k), HypothesisViolated);
      } else {
        EXPECT_TRUE(bracket_span_check(E, k)) << "k=" << k;
      }
    }
    EXPECT_TRUE(trace_form_nondegenerate(E));
    if (!(c.p == 2 && c.n == 2)) {
      if (E.size() <= 256) {
        EXPECT_TRUE(hyperplane_translates_check(E));
      }
      for (int j = 1; j < E.n(); ++j) {
        Elt w = nonfixed_witness(E, j);
        EXPECT_EQ(E.trace(w), 0u);
        EXPECT_NE(E.frobenius(w, j), w);
      }
    }
  }
}

TEST(CyclicLemmas, NamedExamples) {
  auto E4 = FiniteFieldExt::build(2, 1, 2);
  EXPECT_TRUE(hilbert90_additive_check(E4));
  EXPECT_TRUE(skew_image_check(E4, 1));
  EXPECT_TRUE(bracket_span_check(E4, 0));
  EXPECT_THROW(bracket_span_check(E4, 1), HypothesisViolated);
  EXPECT_THROW(nonfixed_witness(E4, 1), HypothesisViolated);
  EXPECT_THROW(skew_image_check(E4, 0), StructuralError);
  EXPECT_THROW(skew_image_dual_check(E4, 0), StructuralError);

  auto E27 = FiniteFieldExt::build(3, 1, 3);
  EXPECT_TRUE(hilbert90_additive_check(E27));
  EXPECT_TRUE(bracket_span_check(E27, 1));

  auto E9 = FiniteFieldExt::build(3, 1, 2);
  Elt w = nonfixed_witness(E9, 1);
  EXPECT_NE(E9.pow(w, 3), w);
  EXPECT_THROW(nonfixed_witness(E9, 0), StructuralError);
  EXPECT_THROW(nonfixed_witness(E9, 2), StructuralError);

  auto E64 = FiniteFieldExt::build(2, 2, 3);
  Elt w64 = nonfixed_witness(E64, 1);
  EXPECT_EQ(E64.trace(w64), 0u);
  EXPECT_NE(E64.frobenius(w64), w64);

  auto E1 = FiniteFieldExt::build(3, 1, 1);
  EXPECT_TRUE(hilbert90_additive_check(E1));
  EXPECT_THROW(bracket_span_check(E1, 0), HypothesisViolated);
}

TEST(CyclicLemmas, ExhaustiveChecksRespectTheCap) {
  auto big = FiniteFieldExt::build(3, 1, 6);  // 729 elements
  EXPECT_THROW(hilbert90_additive_check(big), CapExceeded);
  EXPECT_THROW(skew_image_check(big, 1), CapExceeded);
  EXPECT_THROW(bracket_span_check(big, 0), CapExceeded);
  EXPECT_THROW(nonfixed_witness(big, 1), CapExceeded);
  EXPECT_NO_THROW(hilbert90_additive_check(FiniteFieldExt::build(5, 1, 4)));
  // The trace-zero basis does not need enumeration.
  EXPECT_EQ(trace_zero_space(big).basis.size(), 5u);
  EXPECT_TRUE(trace_zero_space(big).elements.empty());
}

TEST(ResidueBasis, NamedExamples) {
  auto E4 = FiniteFieldExt::build(2, 1, 2);
  auto b4 = special_residue_basis(E4);
  ASSERT_EQ(b4.t.size(), 2u);
  EXPECT_EQ(b4.t[1], 1u);
  EXPECT_EQ(E4.trace(b4.t[0]), 1u);
  EXPECT_TRUE(check_residue_basis(E4, b4).all());

  auto E9 = FiniteFieldExt::build(3, 1, 2);
  auto b9 = special_residue_basis(E9);
  EXPECT_EQ(b9.t[0], 1u);
  EXPECT_EQ(E9.trace(b9.t[1]), 0u);
  EXPECT_FALSE(E9.in_base(b9.t[1]));
  EXPECT_TRUE(check_residue_basis(E9, b9).all());

  auto E27 = FiniteFieldExt::build(3, 1, 3);
  auto b27 = special_residue_basis(E27);
  EXPECT_EQ(b27.t[1], 1u);
  EXPECT_FALSE(E27.in_base(b27.t[2]));
  EXPECT_TRUE(check_residue_basis(E27, b27).all());
}

TEST(ResidueBasis, PropertiesOnGrid) {
  for (const auto& c : grid()) {
    SCOPED_TRACE(name(c));
    auto E = FiniteFieldExt::build(c.p, c.f, c.n);
    auto b = special_residue_basis(E);
    auto r = check_residue_basis(E, b);
    EXPECT_TRUE(r.is_basis);
    EXPECT_TRUE(r.tail_spans_trace_zero);
    EXPECT_TRUE(r.unit_position);
    EXPECT_TRUE(r.last_outside_base);
    EXPECT_TRUE(r.differences_independent);
  }
}

TEST(ResidueBasis, ReportDetectsBrokenBases) {
  auto E9 = FiniteFieldExt::build(3, 1, 2);
  ResidueBasis bad;
  bad.t = {1, 2};  // both in kappa_K
  auto r = check_residue_basis(E9, bad);
  EXPECT_FALSE(r.is_basis);
  EXPECT_FALSE(r.all());
  ResidueBasis swapped = special_residue_basis(E9);
  std::swap(swapped.t[0], swapped.t[1]);
  EXPECT_FALSE(check_residue_basis(E9, swapped).unit_position);
}
