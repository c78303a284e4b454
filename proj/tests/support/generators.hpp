#pragma once

// Hand-rolled random generators for property tests. Every generator takes
// the engine explicitly so failures replay from the seed.

#include <cstdint>
#include <random>
#include <vector>

#include "barcodes/barannikov.hpp"
#include "barcodes/barcode.hpp"
#include "barcodes/complex.hpp"
#include "barcodes/module.hpp"
#include "barcodes/rational.hpp"

namespace gen {

using Rng = std::mt19937_64;
using barcodes::Barcode;
using barcodes::Extended;
using barcodes::Interval;
using barcodes::Rational;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// n / d with |n| <= range * d and d in 1..max_den.
inline Rational rational(Rng& rng, long range = 8, long max_den = 4)
{
    long d = uniform(rng, 1, max_den);
    return barcodes::make_rational(uniform(rng, -range * d, range * d), d);
}

inline Rational positive_rational(Rng& rng, long range = 8, long max_den = 4)
{
    long d = uniform(rng, 1, max_den);
    return barcodes::make_rational(uniform(rng, 1, range * d), d);
}

/// A nontrivial bar; with probability p_inf the death is +inf.
inline Interval bar(Rng& rng, double p_inf = 0.0, long range = 8, long max_den = 4)
{
    Rational b = rational(rng, range, max_den);
    if (coin(rng, p_inf)) return Interval(b, Extended::pos_inf());
    return Interval(b, b + positive_rational(rng, range, max_den));
}

inline Barcode barcode(Rng& rng, std::size_t max_bars, double p_inf = 0.0, long range = 8, long max_den = 4)
{
    Barcode out;
    auto n = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_bars)));
    while (out.size() < n) out.add(bar(rng, p_inf, range, max_den));
    return out;
}

/// A barcode whose endpoints come from a small lattice, so that coincident
/// endpoints and repeated bars are common.
inline Barcode lattice_barcode(Rng& rng, std::size_t max_bars, double p_inf = 0.2)
{
    Barcode out;
    auto n = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_bars)));
    while (out.size() < n) {
        Rational b = barcodes::make_rational(uniform(rng, 0, 6), 2);
        if (coin(rng, p_inf))
            out.add(Interval(b, Extended::pos_inf()));
        else
            out.add(Interval(b, b + barcodes::make_rational(uniform(rng, 1, 6), 2)));
    }
    return out;
}

inline barcodes::Matrix matrix(Rng& rng, const barcodes::PrimeField& f, std::size_t rows, std::size_t cols)
{
    barcodes::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = static_cast<barcodes::Matrix::Element>(uniform(rng, 0, f.characteristic() - 1));
    return m;
}

/// A module with random critical values, slot dimensions and transitions.
/// With `bounded_below` the first slot is zero, so no bar is born at -inf.
inline barcodes::PersistenceModule module(Rng& rng, const barcodes::PrimeField& f, std::size_t max_critical = 4,
                                          std::size_t max_dim = 3, bool bounded_below = false)
{
    auto m = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_critical)));
    std::vector<Rational> crit;
    Rational c = rational(rng, 4, 2);
    for (std::size_t i = 0; i < m; ++i) {
        crit.push_back(c);
        c += positive_rational(rng, 2, 2);
    }
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i <= m; ++i) dims.push_back(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_dim))));
    if (bounded_below) dims[0] = 0;
    std::vector<barcodes::Matrix> maps;
    for (std::size_t i = 1; i <= m; ++i) maps.push_back(matrix(rng, f, dims[i], dims[i - 1]));
    return barcodes::PersistenceModule(f, crit, dims, maps);
}

/// A random simple module: pairs (minus, plus) with value(plus) > value(minus)
/// and unpaired zero generators, all ungraded, with values on a small lattice.
inline barcodes::SimpleModule simple_module(Rng& rng, const barcodes::PrimeField& f, std::size_t max_pairs = 3,
                                            std::size_t max_zero = 2)
{
    std::vector<barcodes::Generator> gens;
    std::map<std::int64_t, std::int64_t> pairing;
    std::int64_t id = 0;
    auto pairs = uniform(rng, 0, static_cast<long>(max_pairs));
    for (long k = 0; k < pairs; ++k) {
        Rational lo = barcodes::make_rational(uniform(rng, 0, 8), 2);
        Rational hi = lo + barcodes::make_rational(uniform(rng, 1, 6), 2);
        gens.push_back({id, lo, std::nullopt, barcodes::GeneratorClass::Minus});
        gens.push_back({id + 1, hi, std::nullopt, barcodes::GeneratorClass::Plus});
        pairing.emplace(id + 1, id);
        id += 2;
    }
    auto zeros = uniform(rng, 0, static_cast<long>(max_zero));
    for (long k = 0; k < zeros; ++k)
        gens.push_back({id++, barcodes::make_rational(uniform(rng, 0, 8), 2), std::nullopt, barcodes::GeneratorClass::Zero});
    std::shuffle(gens.begin(), gens.end(), rng);
    return barcodes::SimpleModule(f, gens, pairing);
}

/// A random filtered simplicial complex on up to `max_vertices` vertices,
/// closed under faces, with lower-star-compatible values, at most
/// `max_cells` cells. Boundaries use the alternating-sign orientation.
inline barcodes::FilteredComplex simplicial_complex(Rng& rng, const barcodes::PrimeField& f, std::size_t max_cells = 12,
                                                    std::size_t max_vertices = 5)
{
    barcodes::FilteredComplex fc(f);
    auto nv = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_vertices)));
    std::map<std::vector<std::size_t>, std::size_t> index;
    std::vector<Rational> vertex_value;
    std::int64_t id = 0;
    for (std::size_t v = 0; v < nv && fc.size() < max_cells; ++v) {
        vertex_value.push_back(barcodes::make_rational(uniform(rng, 0, 6), 2));
        index[{v}] = fc.add_cell(id++, 0, vertex_value.back());
    }
    nv = vertex_value.size();
    // candidate edges and triangles in random order; each enters at or after
    // its faces
    std::vector<std::vector<std::size_t>> cand;
    for (std::size_t a = 0; a < nv; ++a)
        for (std::size_t b = a + 1; b < nv; ++b) cand.push_back({a, b});
    std::shuffle(cand.begin(), cand.end(), rng);
    auto max_face_value = [&](const std::vector<std::size_t>& s) {
        Rational m = fc.cells()[index.at({s[0]})].value;
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::vector<std::size_t> face;
            for (std::size_t j = 0; j < s.size(); ++j)
                if (j != i) face.push_back(s[j]);
            if (s.size() == 1) break;
            m = std::max(m, fc.cells()[index.at(face)].value);
        }
        return m;
    };
    auto add_simplex = [&](const std::vector<std::size_t>& s) {
        std::vector<std::pair<long long, std::size_t>> bd;
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::vector<std::size_t> face;
            for (std::size_t j = 0; j < s.size(); ++j)
                if (j != i) face.push_back(s[j]);
            bd.emplace_back(i % 2 == 0 ? 1 : -1, index.at(face));
        }
        Rational v = max_face_value(s) + barcodes::make_rational(uniform(rng, 0, 2), 2);
        index[s] = fc.add_cell(id++, static_cast<int>(s.size()) - 1, v, bd);
    };
    for (const auto& e : cand) {
        if (fc.size() >= max_cells) break;
        if (coin(rng, 0.7)) add_simplex(e);
    }
    std::vector<std::vector<std::size_t>> tris;
    for (std::size_t a = 0; a < nv; ++a)
        for (std::size_t b = a + 1; b < nv; ++b)
            for (std::size_t c = b + 1; c < nv; ++c)
                if (index.count({a, b}) && index.count({a, c}) && index.count({b, c})) tris.push_back({a, b, c});
    std::shuffle(tris.begin(), tris.end(), rng);
    for (const auto& t : tris) {
        if (fc.size() >= max_cells) break;
        if (coin(rng, 0.6)) add_simplex(t);
    }
    return fc;
}

} // namespace gen
