#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "barcodes/barcode.hpp"
#include "barcodes/errors.hpp"
#include "barcodes/expression.hpp"

namespace barcodes {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

using VectorField = std::function<Vec2(Vec2)>;
using PlanarMap = std::function<Vec2(Vec2)>;

/// Germ of a function F at `center`, with its gradient. F is shifted so that
/// F(center) = 0.
class PlanarGerm {
public:
    PlanarGerm(std::function<double(Vec2)> f, VectorField grad, Vec2 center = {})
        : grad_(std::move(grad)), center_(center)
    {
        const double base = f(center);
        f_ = [f = std::move(f), base](Vec2 p) { return f(p) - base; };
    }

    /// Builds a germ from an expression in x and y using exact symbolic
    /// partial derivatives.
    static PlanarGerm from_expression(const std::string& text, Vec2 center = {})
    {
        auto e = Expression::parse(text, {"x", "y"});
        auto ex = e.derivative("x"), ey = e.derivative("y");
        auto env = [](Vec2 p) { return std::map<std::string, double>{{"x", p.x}, {"y", p.y}}; };
        return PlanarGerm([e, env](Vec2 p) { return e.evaluate(env(p)); },
                          [ex, ey, env](Vec2 p) { return Vec2{ex.evaluate(env(p)), ey.evaluate(env(p))}; }, center);
    }

    double value(Vec2 p) const { return f_(p); }
    Vec2 gradient(Vec2 p) const { return grad_(p); }
    Vec2 center() const noexcept { return center_; }

    /// The Hamiltonian vector field (dF/dy, -dF/dx).
    VectorField hamiltonian_field() const
    {
        return [grad = grad_](Vec2 p) {
            Vec2 g = grad(p);
            return Vec2{g.y, -g.x};
        };
    }

private:
    std::function<double(Vec2)> f_;
    VectorField grad_;
    Vec2 center_;
};

struct CircleSampling {
    double radius = 1e-2;
    std::size_t initial_samples = 256;
    std::size_t budget = std::size_t{1} << 16;
};

namespace detail {

inline Vec2 on_circle(Vec2 c, double r, double theta) { return {c.x + r * std::cos(theta), c.y + r * std::sin(theta)}; }

/// Winding number of a nonvanishing direction field sampled along the
/// positively oriented circle. Consecutive samples are bisected until every
/// principal-value angle increment is below pi/2.
template <typename Sample, typename OnZero>
int winding_number(Sample sample, const CircleSampling& cs, OnZero on_zero)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    struct Point {
        double theta;
        double angle;
    };
    auto probe = [&](double theta) {
        Vec2 v = sample(theta);
        if (!std::isfinite(v.x) || !std::isfinite(v.y) || (v.x == 0.0 && v.y == 0.0)) on_zero(theta);
        return Point{theta, std::atan2(v.y, v.x)};
    };
    auto increment = [](double from, double to) {
        double d = std::remainder(to - from, two_pi);
        return d;
    };

    std::size_t used = 0;
    const std::size_t n0 = std::max<std::size_t>(cs.initial_samples, 4);
    std::vector<Point> pts;
    for (std::size_t k = 0; k < n0; ++k) pts.push_back(probe(two_pi * static_cast<double>(k) / static_cast<double>(n0)));
    used = n0;
    Point first = pts.front();
    pts.push_back(Point{two_pi, first.angle});

    double total = 0.0;
    std::vector<Point> stack;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        stack.assign({pts[k + 1]});
        Point cur = pts[k];
        while (!stack.empty()) {
            Point next = stack.back();
            double d = increment(cur.angle, next.angle);
            if (std::abs(d) < std::numbers::pi / 2) {
                total += d;
                cur = next;
                stack.pop_back();
                continue;
            }
            if (++used > cs.budget)
                throw RefinementBudgetExceeded("winding number did not resolve within " + std::to_string(cs.budget) +
                                               " samples");
            stack.push_back(probe(0.5 * (cur.theta + next.theta)));
        }
    }
    return static_cast<int>(std::lround(total / two_pi));
}

} // namespace detail

/// Degree of v/|v| along the circle of the given radius around center.
inline int vector_field_index(const VectorField& v, Vec2 center, const CircleSampling& cs = {})
{
    return detail::winding_number([&](double t) { return v(detail::on_circle(center, cs.radius, t)); }, cs,
                                  [&](double t) {
                                      throw VanishingOnCircle("vector field vanishes at angle " + std::to_string(t));
                                  });
}

/// Lefschetz index of an isolated fixed point: the degree of the
/// displacement direction (f(p) - p) / |f(p) - p| on a small circle.
inline int map_fixed_point_index(const PlanarMap& f, Vec2 center, const CircleSampling& cs = {})
{
    return detail::winding_number(
        [&](double t) {
            Vec2 p = detail::on_circle(center, cs.radius, t);
            Vec2 q = f(p);
            return Vec2{q.x - p.x, q.y - p.y};
        },
        cs, [&](double t) { throw FixedPointOnCircle("map fixes a point at angle " + std::to_string(t)); });
}

/// Rank of the local Morse homology of F at the center, read off the sign
/// pattern of F on a small circle: with m arcs where F < 0 the rank is m - 1,
/// and an extremum (no sign change) has rank 1. The sample count is doubled
/// until the arc count is stable; a sample where F is exactly zero is nudged,
/// and a zero that persists raises VanishingOnCircle.
inline std::size_t local_morse_rank(const PlanarGerm& g, const CircleSampling& cs = {})
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const Vec2 c = g.center();
    auto negative_at = [&](double theta, double spacing) {
        for (int attempt = 0; attempt < 8; ++attempt) {
            double f = g.value(detail::on_circle(c, cs.radius, theta));
            if (!std::isfinite(f)) break;
            if (f != 0.0) return f < 0.0;
            theta += spacing / 7.0;
        }
        throw VanishingOnCircle("F vanishes on the circle near angle " + std::to_string(theta));
    };
    auto count_arcs = [&](std::size_t n) -> std::size_t {
        std::vector<bool> neg(n);
        const double spacing = two_pi / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) neg[k] = negative_at(spacing * static_cast<double>(k), spacing);
        std::size_t starts = 0, negatives = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (neg[k]) ++negatives;
            if (neg[k] && !neg[(k + n - 1) % n]) ++starts;
        }
        if (negatives == 0 || negatives == n) return 0;  // extremum
        return starts;
    };
    std::size_t n = std::max<std::size_t>(cs.initial_samples, 16);
    std::size_t arcs = count_arcs(n);
    while (true) {
        if (2 * n > cs.budget)
            throw RefinementBudgetExceeded("sign pattern did not stabilize within " + std::to_string(cs.budget) +
                                           " samples");
        std::size_t finer = count_arcs(2 * n);
        n *= 2;
        if (finer == arcs) break;
        arcs = finer;
    }
    return arcs == 0 ? 1 : arcs - 1;
}

/// Total number of finite endpoints, counted with multiplicity.
inline std::size_t absolute_lefschetz_from_barcode(const Barcode& b) { return endpoint_multiset(b).size(); }

/// Endpoints of a tau-periodic barcode in one period window [0, tau).
inline std::size_t absolute_lefschetz_from_barcode(const PeriodicBarcode& pb)
{
    return count_endpoints_in_window(pb, Rational(0));
}

/// Time-t map of the Hamiltonian flow of F, integrated with classical RK4 in
/// ceil(t / step) equal steps.
inline PlanarMap hamiltonian_time1(const PlanarGerm& g, double step, double t = 1.0)
{
    if (!(step > 0.0)) throw DomainError("integration step must be positive");
    const auto n = static_cast<std::size_t>(std::ceil(t / step));
    const double h = n == 0 ? 0.0 : t / static_cast<double>(n);
    VectorField field = g.hamiltonian_field();
    return [field, n, h](Vec2 p) {
        auto axpy = [](Vec2 a, double s, Vec2 b) { return Vec2{a.x + s * b.x, a.y + s * b.y}; };
        for (std::size_t k = 0; k < n; ++k) {
            Vec2 k1 = field(p);
            Vec2 k2 = field(axpy(p, h / 2, k1));
            Vec2 k3 = field(axpy(p, h / 2, k2));
            Vec2 k4 = field(axpy(p, h, k3));
            p.x += h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
            p.y += h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
        }
        return p;
    };
}

} // namespace barcodes
