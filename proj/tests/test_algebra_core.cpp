#include "lietwist/algebra.hpp"
#include "lietwist/salamon.hpp"

#include <gtest/gtest.h>

using namespace lietwist;

namespace {

Vec e(std::size_t n, std::size_t i) { return basis_vec(n, i - 1); }

// rr_{3,1} pattern placed on e3..e6 of a 6-dim space: [e3,e4]=e4, [e3,e5]=e5.
LieAlgebra rr31_on_3456() {
  LieAlgebra L(6);
  L.set_bracket(2, 3, e(6, 4));
  L.set_bracket(2, 4, e(6, 5));
  return L;
}

}  // namespace

TEST(Salamon, ParsesRr31) {
  auto L = parse_salamon("(0, -12, -13, 0)");
  EXPECT_EQ(L.bracket(0, 1), e(4, 2));
  EXPECT_EQ(L.bracket(0, 2), e(4, 3));
  EXPECT_EQ(L.bracket(1, 0), -e(4, 2));
  EXPECT_TRUE(is_zero(L.bracket(1, 2)));
  EXPECT_TRUE(is_zero(L.bracket(0, 3)));
}

TEST(Salamon, ParsesAbelian) {
  auto L = parse_salamon("(0,0,0,0)");
  EXPECT_EQ(L.dim(), 4u);
  EXPECT_TRUE(L.abelian());
}

TEST(Salamon, ExpandsAffD42String) {
  auto L = parse_salamon("(-12,0,2×36,-46,56-34,0)");
  // de1=-e12, de3=2e36, de4=-e46, de5=e56-e34, expanded by hand.
  EXPECT_EQ(L.bracket(0, 1), e(6, 1));
  EXPECT_EQ(L.bracket(2, 5), Rational(-2) * e(6, 3));
  EXPECT_EQ(L.bracket(3, 5), e(6, 4));
  EXPECT_EQ(L.bracket(4, 5), -e(6, 5));
  EXPECT_EQ(L.bracket(2, 3), e(6, 5));
  int nonzero = 0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) nonzero += !is_zero(L.bracket(i, j));
  EXPECT_EQ(nonzero, 5);
  EXPECT_TRUE(jacobi_defect(L).empty());
}

TEST(Salamon, ReversedPairFlipsSign) {
  EXPECT_EQ(parse_salamon("(0,21,0)"), parse_salamon("(0,-12,0)"));
}

TEST(Salamon, Parameters) {
  ParamBinding b{{"x", Rational::parse("1/2")}, {"t", -2}};
  auto L = parse_salamon("(-13-x23-t26, x13+t16-23, 0, -34, -35, 0)", b);
  EXPECT_EQ(L.bracket(0, 2), e(6, 1) - Rational::parse("1/2") * e(6, 2));
  EXPECT_EQ(L.bracket(0, 5), Rational(2) * e(6, 2));
  EXPECT_EQ(SalamonTemplate::parse("(-13-x23-t26, x13+t16-23, 0, -34, -35, 0)").parameters(),
            (std::set<std::string>{"t", "x"}));
}

TEST(Salamon, Errors) {
  EXPECT_THROW(parse_salamon("0,-12,-13,0"), ParseError);
  EXPECT_THROW(parse_salamon("(0,-12,-15,0)"), ParseError);
  EXPECT_THROW(parse_salamon("(0,-10,0)"), ParseError);
  EXPECT_THROW(parse_salamon("(0,-11,0)"), ParseError);
  EXPECT_THROW(parse_salamon("(0,,0)"), ParseError);
  EXPECT_THROW(parse_salamon("(0,x12,0)"), UnboundParameter);
  EXPECT_THROW(parse_salamon("(0,1/x 12,0)", {{"x", 0}}), EvalError);
  try {
    parse_salamon("(0, -12, -15, 0)");
    FAIL();
  } catch (const ParseError& err) {
    EXPECT_EQ(err.position(), 10u);
  }
}

TEST(Salamon, Print) {
  EXPECT_EQ(print_salamon(LieAlgebra(4)), "(0,0,0,0)");
  EXPECT_EQ(print_salamon(parse_salamon("(0, -12, -13, 0)")), "(0,-12,-13,0)");
  EXPECT_EQ(print_salamon(parse_salamon("(-12,0,2×36,-46,56-34,0)")), "(-12,0,2*36,-46,-34+56,0)");
  EXPECT_EQ(print_salamon(parse_salamon("(0,12/1*13,3/2 13)")), "(0,12/1*13,3/2*13)");
  EXPECT_THROW(print_salamon(LieAlgebra(10)), DomainError);
}

TEST(Salamon, PrintRoundTrip) {
  auto L = parse_salamon("(delta/2 13 + sigma/(2 delta) 15, x13 - 23, 0, -34, 0, 0)",
                         {{"delta", 3}, {"sigma", -7}, {"x", Rational::parse("12/5")}});
  EXPECT_EQ(parse_salamon(print_salamon(L)), L);
}

TEST(Jacobi, Defects) {
  EXPECT_TRUE(jacobi_defect(LieAlgebra(5)).empty());
  EXPECT_TRUE(jacobi_defect(parse_salamon("(0,-12,-13,0)")).empty());

  LieAlgebra L(3);
  L.set_bracket(0, 1, e(3, 2));
  L.set_bracket(0, 2, e(3, 3));
  L.set_bracket(1, 2, e(3, 1));
  auto d = jacobi_defect(L);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].i, 0u);
  EXPECT_EQ(d[0].j, 1u);
  EXPECT_EQ(d[0].k, 2u);
  EXPECT_EQ(d[0].defect, Rational(2) * e(3, 1));
}

TEST(KForm, StorageAndSigns) {
  KForm w(2, 4);
  w.set({3, 1}, 5);
  EXPECT_EQ(w.coeff({1, 3}), Rational(-5));
  EXPECT_EQ(w.coeff({3, 1}), Rational(5));
  EXPECT_EQ(w.coeff({1, 1}), Rational(0));
  EXPECT_EQ(w(e(4, 2), e(4, 4)), Rational(-5));
  EXPECT_THROW(w.set({1, 1}, 1), DomainError);
  EXPECT_EQ(w.str(), "-5 e24");
  EXPECT_THROW(KForm(4, 6), DomainError);
}

TEST(CeD, DegreeOne) {
  auto L = rr31_on_3456();
  EXPECT_EQ(ce_d(L, KForm::covector(e(6, 4))), parse_form("-e34", 6, 2));
  EXPECT_TRUE(ce_d(L, KForm(1, 6)).is_zero());
}

TEST(CeD, DegreeTwo) {
  auto L = rr31_on_3456();
  auto w2 = parse_form("sigma e36 + e45", 6, 2, {{"sigma", 3}});
  EXPECT_EQ(ce_d(L, w2), parse_form("-2 e345", 6, 3));
  EXPECT_TRUE(ce_d(L, KForm(2, 6)).is_zero());
  EXPECT_THROW(ce_d(L, KForm(3, 6)), DomainError);
}

TEST(CeD, SquaresToZeroOnLieAlgebra) {
  auto L = parse_salamon("(-12,0,2×36,-46,56-34,0)");
  for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(ce_d(L, ce_d(L, KForm::covector(e(6, i + 1)))).is_zero());
}

TEST(Wedge, Examples) {
  auto theta = parse_form("-2 e3", 6, 1);
  auto w2 = parse_form("3 e36 + e45", 6, 2);
  EXPECT_EQ(wedge(theta, w2), parse_form("-2 e345", 6, 3));
  EXPECT_TRUE(wedge(KForm(1, 6), w2).is_zero());
  EXPECT_EQ(wedge(parse_form("e1", 3, 1), parse_form("e23", 3, 2)), parse_form("e123", 3, 3));
  EXPECT_THROW(wedge(w2, w2), DomainError);
}

TEST(Wedge, MatchesDefinition) {
  auto a = parse_form("e1 - 2 e3 + 1/2 e4", 4, 1);
  auto b = parse_form("e12 + 3 e24 - e34 + 5/3 e13", 4, 2);
  auto ab = wedge(a, b);
  for (std::size_t x = 1; x <= 4; ++x)
    for (std::size_t y = 1; y <= 4; ++y)
      for (std::size_t z = 1; z <= 4; ++z) {
        Vec X = e(4, x), Y = e(4, y), Z = e(4, z);
        EXPECT_EQ(ab(X, Y, Z), a(X) * b(Y, Z) - a(Y) * b(X, Z) + a(Z) * b(X, Y));
      }
}
