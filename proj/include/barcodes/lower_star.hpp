#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "barcodes/complex.hpp"
#include "barcodes/errors.hpp"
#include "barcodes/metric.hpp"
#include "barcodes/rational.hpp"

namespace barcodes {

/// A simplicial 2-complex given by its triangles. Vertices not used by any
/// triangle are allowed and become isolated points.
class TriangulatedSurface {
public:
    using Triangle = std::array<std::size_t, 3>;
    using Edge = std::array<std::size_t, 2>;

    TriangulatedSurface(std::size_t vertex_count, std::vector<Triangle> triangles)
        : vertex_count_(vertex_count), triangles_(std::move(triangles))
    {
        std::set<Triangle> seen;
        std::map<Edge, int> incidence;
        for (auto& t : triangles_) {
            for (auto v : t)
                if (v >= vertex_count_) throw InvalidMesh("triangle refers to vertex " + std::to_string(v));
            if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) throw InvalidMesh("degenerate triangle");
            Triangle sorted = t;
            std::sort(sorted.begin(), sorted.end());
            if (!seen.insert(sorted).second) throw InvalidMesh("duplicate triangle");
            for (int k = 0; k < 3; ++k) {
                Edge e{sorted[k == 2 ? 1 : 0], sorted[k == 0 ? 1 : 2]};
                if (++incidence[e] > 2) throw InvalidMesh("an edge bounds more than two triangles");
            }
        }
        for (const auto& [e, n] : incidence) edges_.push_back(e);
    }

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
    /// Sorted edges with ascending vertex indices.
    const std::vector<Edge>& edges() const noexcept { return edges_; }

private:
    std::size_t vertex_count_;
    std::vector<Triangle> triangles_;
    std::vector<Edge> edges_;
};

using ScalarField = std::vector<Rational>;

/// Lower-star filtration: each simplex enters at the maximum of its vertex
/// values. Cell ids are assigned vertices first (id = vertex index), then
/// edges, then triangles. Boundaries use the sorted-vertex orientation.
inline FilteredComplex lower_star(const TriangulatedSurface& ts, const ScalarField& f, PrimeField field = PrimeField(2))
{
    if (f.size() != ts.vertex_count())
        throw InvalidMesh("scalar field has " + std::to_string(f.size()) + " values for " +
                          std::to_string(ts.vertex_count()) + " vertices");
    FilteredComplex fc(field);
    std::int64_t next = 0;
    for (std::size_t v = 0; v < ts.vertex_count(); ++v) fc.add_cell(next++, 0, f[v]);

    std::map<TriangulatedSurface::Edge, std::size_t> edge_index;
    for (const auto& e : ts.edges()) {
        Rational value = std::max(f[e[0]], f[e[1]]);
        edge_index[e] = fc.add_cell(next++, 1, value, {{-1, e[0]}, {1, e[1]}});
    }
    for (const auto& t : ts.triangles()) {
        auto s = t;
        std::sort(s.begin(), s.end());
        Rational value = std::max({f[s[0]], f[s[1]], f[s[2]]});
        fc.add_cell(next++, 2, value,
                    {{1, edge_index.at({s[1], s[2]})}, {-1, edge_index.at({s[0], s[2]})}, {1, edge_index.at({s[0], s[1]})}});
    }
    return fc;
}

struct StabilityTrial {
    std::map<int, Extended> bottleneck_by_degree;
    Rational sup_norm;
};

/// Bottleneck distance per degree between the lower-star barcodes of f and g,
/// together with sup |f - g|. Checking the inequality is left to callers.
inline StabilityTrial stability_trial(const TriangulatedSurface& ts, const ScalarField& f, const ScalarField& g,
                                      PrimeField field = PrimeField(2))
{
    if (f.size() != g.size() || f.size() != ts.vertex_count())
        throw MeshMismatch("both fields must have one value per mesh vertex");
    StabilityTrial out{{}, Rational(0)};
    for (std::size_t v = 0; v < f.size(); ++v) out.sup_norm = std::max(out.sup_norm, Rational(abs(f[v] - g[v])));
    auto bf = reduce(lower_star(ts, f, field)).graded_barcode;
    auto bg = reduce(lower_star(ts, g, field)).graded_barcode;
    std::set<int> degrees;
    for (const auto& [d, b] : bf.by_degree()) degrees.insert(d);
    for (const auto& [d, b] : bg.by_degree()) degrees.insert(d);
    for (int d : degrees) out.bottleneck_by_degree[d] = bottleneck_distance(bf.at(d), bg.at(d)).value;
    return out;
}

/// The 9-vertex triangulation of the flat torus: vertex (i, j) of the 3x3
/// grid has index 3*i + j, indices wrap modulo 3, and each grid square is
/// cut along its main diagonal.
inline TriangulatedSurface flat_torus_3x3()
{
    std::vector<TriangulatedSurface::Triangle> tris;
    auto idx = [](std::size_t i, std::size_t j) { return 3 * (i % 3) + (j % 3); };
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            tris.push_back({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)});
            tris.push_back({idx(i, j), idx(i, j + 1), idx(i + 1, j + 1)});
        }
    return TriangulatedSurface(9, std::move(tris));
}

} // namespace barcodes
