#include <gtest/gtest.h>

#include <numbers>

#include "oracles/oracles.hpp"

using namespace barcodes;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }
Interval ray(const Rational& a) { return Interval(a, Extended::pos_inf()); }

FilteredComplex circle()
{
    FilteredComplex fc;
    auto v0 = fc.add_cell(10, 0, 0);
    auto v1 = fc.add_cell(11, 0, 1);
    fc.add_cell(20, 1, 2, {{1, v0}, {1, v1}});
    fc.add_cell(21, 1, 3, {{1, v0}, {1, v1}});
    return fc;
}

} // namespace

TEST(BruteBottleneck, HandComputedValues)
{
    EXPECT_EQ(oracles::brute_bottleneck(Barcode({bar(0, 4)}), Barcode()), Extended(2));
    EXPECT_EQ(oracles::brute_bottleneck(Barcode({bar(0, 2)}), Barcode({bar(q(1, 2), q(5, 2))})), Extended(q(1, 2)));
    EXPECT_EQ(oracles::brute_bottleneck(Barcode({ray(0)}), Barcode()), Extended::pos_inf());
    EXPECT_EQ(oracles::brute_bottleneck(Barcode({ray(0)}), Barcode({ray(1)})), Extended(1));
    EXPECT_EQ(oracles::brute_bottleneck(Barcode(), Barcode()), Extended(0));
    // matching the long bars and dropping the short one beats the diagonal pairing
    EXPECT_EQ(oracles::brute_bottleneck(Barcode({bar(0, 10), bar(0, 1)}), Barcode({bar(1, 11)})), Extended(1));
}

TEST(BruteBottleneck, Cap)
{
    Barcode five({bar(0, 1), bar(0, 2), bar(0, 3), bar(0, 4), bar(0, 5)});
    EXPECT_THROW(oracles::brute_bottleneck(five, Barcode()), CapExceeded);
    EXPECT_NO_THROW(oracles::brute_bottleneck(five, Barcode(), 5));
}

TEST(RankModP, SmallMatrices)
{
    using oracles::detail::rank_mod_p;
    EXPECT_EQ(rank_mod_p({{1, 1}, {1, 1}}, 2), 1u);
    EXPECT_EQ(rank_mod_p({{1, 2}, {2, 1}}, 3), 1u);
    EXPECT_EQ(rank_mod_p({{1, 2}, {2, 1}}, 5), 2u);
    EXPECT_EQ(rank_mod_p({{0, 0, 0}}, 7), 0u);
    EXPECT_EQ(rank_mod_p({}, 2), 0u);
}

TEST(DirectHomology, Circle)
{
    auto fc = circle();
    EXPECT_EQ(oracles::direct_homology_rank(fc, 0, q(1, 2)), 1u);
    EXPECT_EQ(oracles::direct_homology_rank(fc, 0, q(3, 2)), 2u);
    EXPECT_EQ(oracles::direct_homology_rank(fc, 0, q(5, 2)), 1u);
    EXPECT_EQ(oracles::direct_homology_rank(fc, 1, q(5, 2)), 0u);
    EXPECT_EQ(oracles::direct_homology_rank(fc, 1, q(7, 2)), 1u);
    // strict: the cell at exactly t is not yet present
    EXPECT_EQ(oracles::direct_homology_rank(fc, 0, 1), 1u);
    EXPECT_EQ(oracles::direct_homology_rank(FilteredComplex(), 0, 5), 0u);
}

TEST(GridShift, FindsTheBestGridPoint)
{
    EXPECT_EQ(oracles::grid_shift_min(Barcode({bar(0, 1)}), Barcode({bar(5, 6)}), 0, 10, 1), Extended(0));
    EXPECT_EQ(oracles::grid_shift_min(Barcode({bar(0, 1)}), Barcode({bar(0, 3)}), -2, 2, q(1, 2)), Extended(1));
    EXPECT_THROW(oracles::grid_shift_min(Barcode(), Barcode(), 0, 1, 0), DomainError);
}

TEST(LinearFlow, KnownSolutions)
{
    constexpr double pi = std::numbers::pi;
    // F = (x^2 + y^2)/2 rotates clockwise at unit speed
    auto p = oracles::linear_flow(1, 0, 1, pi / 2, {1, 0});
    EXPECT_NEAR(p.x, 0, 1e-15);
    EXPECT_NEAR(p.y, -1, 1e-15);
    // F = xy stretches x and contracts y
    auto h = oracles::linear_flow(0, 1, 0, 2, {1, 1});
    EXPECT_NEAR(h.x, std::exp(2.0), 1e-12);
    EXPECT_NEAR(h.y, std::exp(-2.0), 1e-12);
    // F = x^2/2: shear
    auto s = oracles::linear_flow(1, 0, 0, 3, {1, 2});
    EXPECT_NEAR(s.x, 1, 1e-15);
    EXPECT_NEAR(s.y, -1, 1e-15);
    // group law
    for (double a : {1.0, -1.0, 0.5})
        for (double b : {0.0, 0.7}) {
            auto once = oracles::linear_flow(a, b, 1, 0.7, {0.3, -0.4});
            auto twice = oracles::linear_flow(a, b, 1, 0.4, oracles::linear_flow(a, b, 1, 0.3, {0.3, -0.4}));
            EXPECT_NEAR(once.x, twice.x, 1e-13);
            EXPECT_NEAR(once.y, twice.y, 1e-13);
        }
}
