#include <gtest/gtest.h>

#include <cmath>

#include "barcodes/expression.hpp"

using namespace barcodes;

namespace {

double at(const Expression& e, double x, double y) { return e.evaluate({{"x", x}, {"y", y}}); }
const std::set<std::string> XY{"x", "y"};

} // namespace

TEST(Expression, PrecedenceAndAssociativity)
{
    EXPECT_DOUBLE_EQ(at(Expression::parse("1 + 2*3", XY), 0, 0), 7);
    EXPECT_DOUBLE_EQ(at(Expression::parse("(1 + 2)*3", XY), 0, 0), 9);
    EXPECT_DOUBLE_EQ(at(Expression::parse("8 - 3 - 2", XY), 0, 0), 3);
    EXPECT_DOUBLE_EQ(at(Expression::parse("8 / 4 / 2", XY), 0, 0), 1);
    EXPECT_DOUBLE_EQ(at(Expression::parse("2^3^2", XY), 0, 0), 512);
    EXPECT_DOUBLE_EQ(at(Expression::parse("-x^2", XY), 3, 0), -9);
    EXPECT_DOUBLE_EQ(at(Expression::parse("x^-1", XY), 4, 0), 0.25);
    EXPECT_DOUBLE_EQ(at(Expression::parse("1/2*x", XY), 4, 0), 2);
    EXPECT_DOUBLE_EQ(at(Expression::parse("0.5*y + 3/4", XY), 0, 1), 1.25);
}

TEST(Expression, Errors)
{
    for (const char* bad : {"", "1 +", "(x", "x)", "z", "2 $ 3", "1..2", "x y"})
        EXPECT_THROW(Expression::parse(bad, XY), FormatError) << bad;
    EXPECT_THROW(Expression::parse("x^y", XY).derivative("x"), DomainError);
    EXPECT_THROW(Expression::parse("x", XY).evaluate({}), DomainError);
}

TEST(Expression, ConstantFolding)
{
    EXPECT_EQ(Expression::parse("1/3 + 1/6", XY).constant_value(), make_rational(1, 2));
    EXPECT_EQ(Expression::parse("(2/3)^-2", XY).constant_value(), make_rational(9, 4));
    EXPECT_FALSE(Expression::parse("x + 1", XY).constant_value().has_value());
    EXPECT_EQ(Expression::parse("x^2", XY).derivative("y").constant_value(), Rational(0));
}

TEST(Expression, SymbolicDerivatives)
{
    auto f = Expression::parse("x^3 - 3*x*y^2 + 1/(1 + x^2) + 5", XY);
    auto fx = f.derivative("x"), fy = f.derivative("y");
    for (double x : {-1.5, -0.2, 0.0, 0.7, 2.0})
        for (double y : {-1.0, 0.3, 1.1}) {
            double ex = 3 * x * x - 3 * y * y - 2 * x / ((1 + x * x) * (1 + x * x));
            double ey = -6 * x * y;
            EXPECT_NEAR(at(fx, x, y), ex, 1e-12);
            EXPECT_NEAR(at(fy, x, y), ey, 1e-12);
        }
    EXPECT_EQ(Expression::parse("7*x", XY).derivative("x").constant_value(), Rational(7));
}

TEST(Expression, DerivativesAgreeWithFiniteDifferences)
{
    auto f = Expression::parse("(x^2 - y)^3 / (2 + y^2) - x*y^4", XY);
    auto fx = f.derivative("x"), fy = f.derivative("y");
    const double h = 1e-6;
    for (double x : {-1.0, 0.4, 1.3})
        for (double y : {-0.8, 0.2, 0.9}) {
            EXPECT_NEAR(at(fx, x, y), (at(f, x + h, y) - at(f, x - h, y)) / (2 * h), 1e-6);
            EXPECT_NEAR(at(fy, x, y), (at(f, x, y + h) - at(f, x, y - h)) / (2 * h), 1e-6);
        }
}

TEST(Expression, PrintedFormReparses)
{
    auto f = Expression::parse("-(x - 2)^2 * y / 3 + x^-1", XY);
    auto g = Expression::parse(f.str(), XY);
    for (double x : {0.5, 1.5, -2.0})
        for (double y : {-1.0, 2.0}) EXPECT_DOUBLE_EQ(at(f, x, y), at(g, x, y));
}
