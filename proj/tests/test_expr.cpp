#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "nambu/brackets.hpp"
#include "nambu/error.hpp"
#include "nambu/expr.hpp"
#include "nambu/models.hpp"
#include "nambu/random.hpp"

namespace nambu {
namespace {

TEST(Parse, Examples) {
  EXPECT_EQ(describe(parse("pb(L[1,2], P[1])")), "call(pb, [name(L,[1,2]), name(P,[1])])");
  EXPECT_EQ(describe(parse("star(x[1], p[1]) - x[1]*p[1]")),
            "sub(call(star, [name(x,[1]), name(p,[1])]), mul(name(x,[1]), name(p,[1])))");
  EXPECT_EQ(describe(parse("  hbar*i ")), describe(parse("hbar * i")));
}

TEST(Parse, Precedence) {
  EXPECT_EQ(describe(parse("-a*b+c")), "add(mul(neg(name(a)), name(b)), name(c))");
  EXPECT_EQ(describe(parse("a-b-c")), "sub(sub(name(a), name(b)), name(c))");
  EXPECT_EQ(describe(parse("a+b*c")), "add(name(a), mul(name(b), name(c)))");
  EXPECT_EQ(describe(parse("(a+b)*c")), "mul(add(name(a), name(b)), name(c))");
}

TEST(Parse, ErrorsCarrySpans) {
  try {
    parse("qnb(f, Lx, Ly");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.span().begin, 13u);
    EXPECT_EQ(e.span().column, 14);
    EXPECT_EQ(e.expected(), (std::vector<std::string>{"\")\"", "\",\""}));
  }
  try {
    parse("a\n +* b");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.span().line, 2);
    EXPECT_EQ(e.span().column, 3);
    EXPECT_EQ(e.span().end - e.span().begin, 1u);
  }
  for (const char* bad : {"", "pb(Lx,", "x[0]", "x[1", "a b", "#", "f(,)", "2^", "((x)"}) {
    EXPECT_THROW(parse(bad), SyntaxError) << bad;
  }
}

TEST(Parse, TotalOnRandomInput) {
  // Every input either parses or is rejected with a span inside the text.
  const std::string alphabet = "xp[]1,2()+-*/^ ihbarstmqnoLH#\n0";
  auto rng = seeded_rng(1, "fuzz");
  int accepted = 0;
  for (int t = 0; t < 3000; ++t) {
    std::string text;
    const int len = uniform_int(rng, 0, 16);
    for (int k = 0; k < len; ++k) text += alphabet[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(alphabet.size()) - 1))];
    try {
      parse(text);
      ++accepted;
    } catch (const SyntaxError& e) {
      EXPECT_LE(e.span().begin, e.span().end) << text;
      EXPECT_LE(e.span().end, text.size()) << text;
    }
  }
  EXPECT_GT(accepted, 0);
}

TEST(Evaluate, ModelExamples) {
  Model m = build_sphere(2);
  Binding b(m);
  EXPECT_EQ(evaluate_text("mb(Lx,Ly)", b), m.charge("Lz"));
  EXPECT_EQ(evaluate_text("h0(Hqm)", b), m.h_classical);
  EXPECT_TRUE(evaluate_text("mb(Lx,Hqm)", b).is_zero());
  EXPECT_EQ(evaluate_text("nb(x[1],p[1],x[2],p[2])", b), PhaseExpr::constant(2, GaussScalar(1)));
  EXPECT_EQ(evaluate_text("diff(x[1]*p[1], p[1])", b), PhaseExpr::x(2, 0));
  EXPECT_EQ(evaluate_text("res4(x[1],p[1],x[2],p[2])", b), evaluate_text("qnb(x[1],p[1],x[2],p[2])", b));
}

TEST(Evaluate, PhaseSpaceExamples) {
  Binding b(1);
  EXPECT_EQ(evaluate_text("divh(qnb(x[1],p[1]),1)", b), PhaseExpr::constant(1, GaussScalar(1)));
  EXPECT_EQ(print_canonical(evaluate_text("star(x[1],p[1])", b)), "x1*p1 + (1/2)*i*hbar");
  EXPECT_EQ(print_canonical(PhaseExpr(1)), "0");
  EXPECT_EQ(evaluate_text("jordan(x[1])", b), PhaseExpr::x(1, 0));
}

TEST(Evaluate, Errors) {
  Model m = build_sphere(2);
  Binding b(m);
  EXPECT_THROW(evaluate_text("pb(Lx)", b), ArityError);
  EXPECT_THROW(evaluate_text("nb(Lx,Ly,Lz)", b), ArityError);
  EXPECT_THROW(evaluate_text("mystery + 1", b), UnknownName);
  EXPECT_THROW(evaluate_text("x[3]", b), Error);
  EXPECT_THROW(evaluate_text("divh(x[1],1)", b), InexactDivision);
  EXPECT_THROW(evaluate_text("1/(x[1]-x[1])", b), Error);
  EXPECT_THROW(b.define("star", PhaseExpr(2)), UsageError);
  EXPECT_THROW(b.define("hbar", PhaseExpr(2)), UsageError);
  b.define("f", PhaseExpr::x(2, 1));
  EXPECT_EQ(evaluate_text("pb(f, p[2])", b), PhaseExpr::constant(2, GaussScalar(1)));
}

TEST(Print, RoundTripOnRandomExpressions) {
  auto rng = seeded_rng(2, "roundtrip");
  RandomExprOptions o;
  o.use_radical = true;
  o.use_hbar = true;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    PhaseExpr e = random_expr(n, rng, o);
    if (t % 3 == 0) e = e * (PhaseExpr::constant(n, GaussScalar(2)) + PhaseExpr::radical_s(n)).inverse();
    if (t % 4 == 1) e = e.scaled(GaussScalar(Rational(1, 3), Rational(-2, 5)));
    Binding b(n);
    const std::string text = print_canonical(e);
    ASSERT_EQ(evaluate_text(text, b), e) << text;
  }
}

}  // namespace
}  // namespace nambu
