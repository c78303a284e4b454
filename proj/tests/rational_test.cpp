#include <gtest/gtest.h>

#include "barcodes/rational.hpp"

using namespace barcodes;

TEST(Rational, ParsesIntegersFractionsAndDecimalsExactly)
{
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational("-7/14"), make_rational(-1, 2));
    EXPECT_EQ(parse_rational("+2/4"), make_rational(1, 2));
    EXPECT_EQ(parse_rational("0.1"), make_rational(1, 10));
    EXPECT_EQ(parse_rational("-0.125"), make_rational(-1, 8));
    EXPECT_EQ(parse_rational(".5"), make_rational(1, 2));
    EXPECT_EQ(parse_rational("2."), Rational(2));
    EXPECT_EQ(parse_rational("1.5e2"), Rational(150));
    EXPECT_EQ(parse_rational("25e-2"), make_rational(1, 4));
}

TEST(Rational, RejectsMalformedText)
{
    for (const char* bad : {"", "abc", "1/0", "1/-2", "1.2.3", ".", "e5", "1e", "--1", "1 2", "0x10", "1/2/3"})
        EXPECT_FALSE(try_parse_rational(bad).has_value()) << bad;
    EXPECT_THROW(parse_rational("x", 7), FormatError);
    try {
        parse_rational("x", 7);
    } catch (const FormatError& e) {
        EXPECT_EQ(e.line(), 7u);
    }
}

TEST(Rational, PrintsCanonicalForm)
{
    EXPECT_EQ(to_string(make_rational(6, 4)), "3/2");
    EXPECT_EQ(to_string(make_rational(-4, 2)), "-2");
    EXPECT_EQ(to_string(Rational(0)), "0");
}

TEST(Extended, OrdersInfinitiesAroundFiniteValues)
{
    Extended lo = Extended::neg_inf(), hi = Extended::pos_inf(), mid(make_rational(1, 3));
    EXPECT_LT(lo, mid);
    EXPECT_LT(mid, hi);
    EXPECT_LT(lo, hi);
    EXPECT_EQ(hi, Extended::pos_inf());
    EXPECT_EQ(hi + Rational(5), hi);
    EXPECT_EQ(lo - Rational(5), lo);
    EXPECT_EQ(mid + Rational(1), Extended(make_rational(4, 3)));
    EXPECT_THROW((void)hi.value(), std::logic_error);
}

TEST(Extended, ParsesAndPrintsInfinityLiterals)
{
    EXPECT_EQ(parse_extended("inf"), Extended::pos_inf());
    EXPECT_EQ(parse_extended("-inf"), Extended::neg_inf());
    EXPECT_EQ(parse_extended("1/2"), Extended(make_rational(1, 2)));
    EXPECT_EQ(Extended::pos_inf().str(), "inf");
    EXPECT_EQ(Extended::neg_inf().str(), "-inf");
    EXPECT_EQ(Extended(make_rational(-1, 2)).str(), "-1/2");
}

TEST(Extended, EndpointDeviation)
{
    EXPECT_EQ(endpoint_deviation(Rational(1), Rational(4)), Extended(3));
    EXPECT_EQ(endpoint_deviation(Extended::pos_inf(), Extended::pos_inf()), Extended(0));
    EXPECT_EQ(endpoint_deviation(Extended::pos_inf(), Rational(4)), Extended::pos_inf());
    EXPECT_EQ(endpoint_deviation(Extended::neg_inf(), Extended::pos_inf()), Extended::pos_inf());
}
