#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "barcodes/errors.hpp"

namespace barcodes {

/// Z/pZ for a prime p. Elements are represented by integers in [0, p).
class PrimeField {
public:
    using Element = std::uint32_t;

    explicit PrimeField(std::uint32_t p = 2) : p_(p)
    {
        if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
        if (p > 46337) throw DomainError("field characteristic too large for 32-bit products");
    }

    std::uint32_t characteristic() const noexcept { return p_; }

    Element reduce(long long v) const
    {
        long long r = v % static_cast<long long>(p_);
        return static_cast<Element>(r < 0 ? r + p_ : r);
    }
    Element add(Element a, Element b) const { return (a + b) % p_; }
    Element sub(Element a, Element b) const { return (a + p_ - b) % p_; }
    Element mul(Element a, Element b) const { return (a * b) % p_; }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }

    Element inv(Element a) const
    {
        if (a == 0) throw std::domain_error("inverse of zero");
        // Fermat: a^(p-2)
        Element result = 1, base = a;
        for (std::uint32_t e = p_ - 2; e > 0; e >>= 1) {
            if (e & 1U) result = mul(result, base);
            base = mul(base, base);
        }
        return result;
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

    static bool is_prime(std::uint32_t n)
    {
        if (n < 2) return false;
        for (std::uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    std::uint32_t p_;
};

/// Dense row-major matrix over a prime field. Shapes with zero rows or zero
/// columns are legal and stand for maps from or to the zero space.
class Matrix {
public:
    using Element = PrimeField::Element;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Element operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const
    {
        for (auto v : data_)
            if (v != 0) return false;
        return true;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Element> data_;
};

inline Matrix multiply(const PrimeField& f, const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shapes do not compose");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            auto aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
        }
    return out;
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(const PrimeField& f, Matrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr = row;
        while (pr < m.rows() && m(pr, col) == 0) ++pr;
        if (pr == m.rows()) continue;
        if (pr != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pr, c), m(row, c));
        auto inv = f.inv(m(row, col));
        for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), inv);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0) continue;
            auto factor = m(r, col);
            for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(const PrimeField& f, Matrix m) { return row_reduce(f, m).size(); }

/// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<std::vector<PrimeField::Element>> nullspace(const PrimeField& f, Matrix m)
{
    auto pivots = row_reduce(f, m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<PrimeField::Element>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<PrimeField::Element> v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One solution of m x = rhs, if any.
inline std::optional<std::vector<PrimeField::Element>> solve(const PrimeField& f, const Matrix& m,
                                                             const std::vector<PrimeField::Element>& rhs)
{
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = rhs[r];
    }
    auto pivots = row_reduce(f, aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    std::vector<PrimeField::Element> x(m.cols(), 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
    return x;
}

} // namespace barcodes
