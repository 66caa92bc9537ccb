#include <doctest.h>

#include <cmath>
#include <random>

#include "sheffer/expr.hpp"

using namespace sheffer;

namespace {

Expr random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> kind(0, depth <= 0 ? 1 : 6);
    std::uniform_real_distribution<double> lit(0.0, 9.0);
    switch (kind(rng)) {
        case 0: return Expr::constant(lit(rng));
        case 1: return Expr::var();
        case 2: return Expr::add(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 3: return Expr::sub(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 4: return Expr::mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 5: return Expr::neg(random_expr(rng, depth - 1));
        default: {
            std::uniform_int_distribution<int> e(0, 4);
            return Expr::pow(random_expr(rng, depth - 1), e(rng));
        }
    }
}

}  // namespace

TEST_CASE("parse and evaluate the reference functions") {
    const Expr f1 = Expr::parse("(x-0.5)*(x-0.33333333333333331)");
    CHECK(f1(0.5) == doctest::Approx(0.0));
    const Expr f2 = Expr::parse("-4*x^3");
    CHECK(f2(0.5) == doctest::Approx(-0.5));
    CHECK(f2(1.0) == -4.0);
}

TEST_CASE("parse handles precedence and parentheses") {
    CHECK(Expr::parse("1+2*3")(0) == 7.0);
    CHECK(Expr::parse("(1+2)*3")(0) == 9.0);
    CHECK(Expr::parse("2*x^2")(3) == 18.0);
    CHECK(Expr::parse("-x^2")(3) == -9.0);
    CHECK(Expr::parse(" 1 + x * ( x - 2 ) ")(5) == 16.0);
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_AS(Expr::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("x+"), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("(x"), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("x^-2"), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("x y"), std::invalid_argument);
    CHECK_THROWS_AS(Expr::parse("sin(x)"), std::invalid_argument);
}

TEST_CASE("derivatives are exact") {
    const Expr f = Expr::parse("-4*x^3");
    const Expr d1 = f.derivative();
    const Expr d2 = d1.derivative();
    for (double x : {0.0, 0.3, 1.0, 2.0}) {
        CHECK(d1(x) == doctest::Approx(-12.0 * x * x).epsilon(1e-14));
        CHECK(d2(x) == doctest::Approx(-24.0 * x).epsilon(1e-14));
    }
    const Expr g = Expr::parse("(x-0.5)*(x-0.25)");
    for (double x : {0.0, 0.7})
        CHECK(g.derivative()(x) == doctest::Approx(2 * x - 0.75).epsilon(1e-14));
}

TEST_CASE("parse(print(e)) == e for random expressions") {
    std::mt19937 rng(123);
    for (int rep = 0; rep < 200; ++rep) {
        const Expr e = random_expr(rng, 4);
        CHECK(Expr::parse(e.str()) == e);
    }
}
