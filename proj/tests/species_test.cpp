#include <random>
#include <string>

#include <gtest/gtest.h>

#include "agc/species.hpp"

namespace agc {
namespace {

TEST(Parse, BinaryTreeEquation) {
  const auto sys = parse("B = 1 + Z*B^2");
  const auto& ex = sys.extraction("B");
  ASSERT_EQ(ex.degree(), 2u);
  EXPECT_EQ(ex.p(0), (NatPolynomial{1}));
  EXPECT_TRUE(ex.p(1).is_zero());
  EXPECT_EQ(ex.p(2), (NatPolynomial{0, 1}));
}

TEST(Parse, MotzkinEquation) {
  const auto ex = parse("M = Z + Z*M + Z*M^2").extraction("M");
  ASSERT_EQ(ex.degree(), 2u);
  for (std::size_t i = 0; i <= 2; ++i) EXPECT_EQ(ex.p(i), (NatPolynomial{0, 1})) << i;
}

TEST(Parse, ExpandsProductsAndCollectsCoefficients) {
  const auto ex = parse("G = 1 + Z + (Z + Z^2)*G").extraction("G");
  ASSERT_EQ(ex.degree(), 1u);
  EXPECT_EQ(ex.p(0), (NatPolynomial{1, 1}));
  EXPECT_EQ(ex.p(1), (NatPolynomial{0, 1, 1}));

  const auto sq = parse("T = (1 + Z*T)^2").extraction("T");
  ASSERT_EQ(sq.degree(), 2u);
  EXPECT_EQ(sq.p(0), (NatPolynomial{1}));
  EXPECT_EQ(sq.p(1), (NatPolynomial{0, 2}));
  EXPECT_EQ(sq.p(2), (NatPolynomial{0, 0, 1}));
}

TEST(Parse, CommentsAndWhitespace) {
  const auto sys = parse("# binary trees\nB =\n  1 + Z * B ^ 2   # trailing\n\nO = 1 + Z*O");
  EXPECT_EQ(sys.equations().size(), 2u);
  EXPECT_EQ(sys.equations()[1].name, "O");
}

TEST(Parse, SyntaxErrors) {
  EXPECT_THROW(parse("G = 1 +"), SyntaxError);
  EXPECT_THROW(parse("G 1"), SyntaxError);
  EXPECT_THROW(parse("G = (1 + Z"), SyntaxError);
  EXPECT_THROW(parse("G = Z^0"), SyntaxError);
  EXPECT_THROW(parse("G = 1 - Z"), SyntaxError);
  EXPECT_THROW(parse("G = 1\nG = Z"), SyntaxError);
  EXPECT_THROW(parse("Z = 1"), SyntaxError);
  try {
    parse("G = 1 +\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.expected(), "term");
  }
}

TEST(Parse, UndefinedName) {
  try {
    parse("G = 1 + Z*H");
    FAIL();
  } catch (const UndefinedName& e) {
    EXPECT_EQ(e.name(), "H");
  }
}

TEST(Parse, ClosedNamesAreSubstituted) {
  const auto sys = parse("P = Z + Z^2\nG = 1 + Z + P*G");
  const auto& ex = sys.extraction("G");
  EXPECT_EQ(ex.p(1), (NatPolynomial{0, 1, 1}));
  EXPECT_FALSE(sys.is_recursive("P"));
  EXPECT_EQ(sys.extraction("P").degree(), 0u);
}

TEST(Parse, NotPolynomialInSelf) {
  const auto mutual = parse("A = 1 + Z*B\nB = Z*A");
  EXPECT_FALSE(mutual.has_extraction("A"));
  EXPECT_THROW(mutual.extraction("A"), NotPolynomialInSelf);
  EXPECT_THROW(parse("S = E + Z*S").extraction("S"), NotPolynomialInSelf);
  EXPECT_THROW(parse("O = 1 + Z*O\nG = 1 + O*Z*G").extraction("G"), NotPolynomialInSelf);
}

TEST(Parse, ExponentialClosedForm) {
  const auto sys = parse("S = E\nT = 1 + Z*E");
  ASSERT_TRUE(sys.exponential_form("S").has_value());
  EXPECT_NEAR(sys.exponential_form("S")->at_one().real(), 2.718281828459045, 1e-15);
  EXPECT_NEAR(sys.exponential_form("T")->at_one().real(), 1 + 2.718281828459045, 1e-15);
}

TEST(StructuralPolynomialTest, CorpusExamples) {
  EXPECT_EQ(structural_polynomial(parse("B = 1 + Z*B^2").extraction("B")).coefficients,
            (std::vector<Integer>{1, 0, 1}));
  EXPECT_EQ(structural_polynomial(parse("G = 1 + Z + (Z + Z^2)*G").extraction("G")).coefficients,
            (std::vector<Integer>{2, 2}));
  const auto o = structural_polynomial(parse("O = 1 + Z*O").extraction("O"));
  EXPECT_EQ(o.coefficients, (std::vector<Integer>{1, 1}));
  EXPECT_EQ(o.to_string(), "1+z");
  EXPECT_EQ(structural_polynomial(parse("M = Z + Z*M + Z*M^2").extraction("M")).to_string(), "1+z+z^2");
}

// Random expression trees over a small alphabet, printed and re-parsed.
Expr random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 3);
  switch (pick(rng)) {
    case 0:
      return Expr::constant(std::uniform_int_distribution<int>(0, 12)(rng));
    case 1:
      return Expr::atom_z();
    case 2:
      return Expr::atom_e();
    case 3:
      return Expr::reference(std::uniform_int_distribution<int>(0, 1)(rng) ? "A" : "Bee_2");
    case 4:
    case 5: {
      std::vector<Expr> kids;
      const int n = std::uniform_int_distribution<int>(2, 3)(rng);
      for (int i = 0; i < n; ++i) kids.push_back(random_expr(rng, depth - 1));
      return pick(rng) % 2 ? Expr::sum(std::move(kids)) : Expr::product(std::move(kids));
    }
    default:
      return Expr::power(random_expr(rng, depth - 1), std::uniform_int_distribution<unsigned>(1, 4)(rng));
  }
}

TEST(Parse, PrintParseRoundTrip) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    NestedSystem sys({{"A", random_expr(rng, 4)}, {"Bee_2", random_expr(rng, 3)}});
    const std::string text = to_string(sys);
    EXPECT_EQ(parse(text), sys) << text;
  }
}

}  // namespace
}  // namespace agc
