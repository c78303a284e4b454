#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "barcodes/errors.hpp"
#include "barcodes/expression.hpp"

namespace barcodes {

/// Radial Hamiltonian G(x, y) = h(r^2 / 2) on the punctured disk, described
/// by h and h' on the open interval (0, s_max).
struct RadialHamiltonian {
    std::function<double(double)> h;
    std::function<double(double)> h_prime;
    double s_max = 1.0;

    /// h given as an expression in `s`; h' is its symbolic derivative.
    static RadialHamiltonian from_expression(const std::string& text, double s_max = 1.0)
    {
        auto e = Expression::parse(text, {"s"});
        auto d = e.derivative("s");
        return {[e](double s) { return e.evaluate({{"s", s}}); }, [d](double s) { return d.evaluate({{"s", s}}); },
                s_max};
    }
};

struct SpectrumOptions {
    std::size_t grid = 4096;        // log-spaced samples used for bracketing and monotonicity
    double s_min_ratio = 1e-12;     // searched range is [s_max * ratio, s_max)
    double relative_tolerance = 1e-12;
};

struct ActionValue {
    int k;
    double r;  // radius of the k-th family of 1-periodic orbits
    double c;  // its action h(s) - s h'(s), s = r^2 / 2
};

/// For k = 1..k_max solves h'(r_k^2 / 2) = -2 pi k by bisection and returns
/// the action c_k = h(s_k) - s_k h'(s_k).
inline std::vector<ActionValue> radial_action_spectrum(const RadialHamiltonian& rh, int k_max,
                                                       const SpectrumOptions& opt = {})
{
    if (k_max < 1) throw DomainError("k_max must be positive");
    if (!(rh.s_max > 0.0)) throw DomainError("s_max must be positive");

    const double lo = rh.s_max * opt.s_min_ratio;
    std::vector<double> grid(opt.grid);
    for (std::size_t i = 0; i < opt.grid; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(opt.grid);
        grid[i] = lo * std::pow(rh.s_max / lo, t);
    }
    std::vector<double> slope(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) slope[i] = rh.h_prime(grid[i]);

    auto check_monotone = [&](std::size_t a, std::size_t b) {
        // strict monotonicity of h' on the sampled bracket region
        int dir = 0;
        for (std::size_t i = a; i < b; ++i) {
            double d = slope[i + 1] - slope[i];
            int sd = d > 0 ? 1 : (d < 0 ? -1 : 0);
            if (sd == 0 || (dir != 0 && sd != dir))
                throw NonMonotone("h' is not strictly monotone near s = " + std::to_string(grid[i]));
            dir = sd;
        }
    };

    std::vector<ActionValue> out;
    for (int k = 1; k <= k_max; ++k) {
        const double target = -2.0 * std::numbers::pi * k;
        std::size_t bracket = grid.size();
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            double a = slope[i] - target, b = slope[i + 1] - target;
            if (a == 0.0 || (a < 0) != (b < 0)) {
                bracket = i;
                break;
            }
        }
        if (bracket == grid.size())
            throw RootNotBracketed("no s in the searched range with h'(s) = " + std::to_string(target));
        check_monotone(0, grid.size() - 1);

        double a = grid[bracket], b = grid[bracket + 1];
        double fa = rh.h_prime(a) - target;
        while (b - a > opt.relative_tolerance * b) {
            double m = 0.5 * (a + b);
            double fm = rh.h_prime(m) - target;
            if (fm == 0.0) {
                a = b = m;
                break;
            }
            if ((fm < 0) == (fa < 0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        double s = 0.5 * (a + b);
        out.push_back({k, std::sqrt(2.0 * s), rh.h(s) - s * rh.h_prime(s)});
    }
    return out;
}

} // namespace barcodes
