#pragma once

#include "arblink/common.hpp"
#include "arblink/diagram.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <vector>

namespace arblink::fox {

// One row per crossing over the arc columns: under_in + under_out - 2*over = 0.
// Coefficients of coincident arcs accumulate, so entries lie in {-2,...,2}.
struct ColoringMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<BigInt> a;  // row-major

    const BigInt& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    BigInt& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
};

inline ColoringMatrix coloring_matrix(const diagram::PlanarDiagram& d) {
    std::map<long long, std::size_t> col_of;
    for (std::size_t i = 0; i < d.arcs.size(); ++i) col_of[d.arcs[i]] = i;
    ColoringMatrix m;
    m.rows = d.crossings.size();
    m.cols = d.arcs.size();
    m.a.assign(m.rows * m.cols, BigInt(0));
    for (std::size_t r = 0; r < m.rows; ++r) {
        const auto& c = d.crossings[r];
        m.at(r, col_of.at(c.under_in)) += 1;
        m.at(r, col_of.at(c.under_out)) += 1;
        m.at(r, col_of.at(c.over_in)) -= 2;
    }
    return m;
}

// Diagonal d_1 | d_2 | ... | d_r of UMV with unimodular U, V.
struct SNFResult {
    std::vector<BigInt> diag;  // nonzero entries, divisibility chain, all positive
    std::size_t rank = 0;
    std::size_t cols = 0;

    std::vector<BigInt> u;  // rows x rows
    std::vector<BigInt> v;  // cols x cols
    std::size_t rows = 0;

    // Checks U*M*V == diag(d) for the original matrix.
    bool verify(const ColoringMatrix& m) const {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                BigInt acc = 0;
                for (std::size_t k = 0; k < rows; ++k)
                    for (std::size_t l = 0; l < cols; ++l)
                        acc += u[i * rows + k] * m.at(k, l) * v[l * cols + j];
                BigInt expect = (i == j && i < rank) ? diag[i] : BigInt(0);
                if (acc != expect) return false;
            }
        return true;
    }
};

// Smallest-pivot Smith normal form over Z with row/column transform tracking.
inline SNFResult smith_normal_form(const ColoringMatrix& m) {
    const std::size_t rows = m.rows, cols = m.cols;
    std::vector<BigInt> a = m.a;
    std::vector<BigInt> u(rows * rows, BigInt(0)), v(cols * cols, BigInt(0));
    for (std::size_t i = 0; i < rows; ++i) u[i * rows + i] = 1;
    for (std::size_t j = 0; j < cols; ++j) v[j * cols + j] = 1;

    auto A = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * cols + j]; };

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < cols; ++k) std::swap(A(i, k), A(j, k));
        for (std::size_t k = 0; k < rows; ++k) std::swap(u[i * rows + k], u[j * rows + k]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < rows; ++k) std::swap(A(k, i), A(k, j));
        for (std::size_t k = 0; k < cols; ++k) std::swap(v[k * cols + i], v[k * cols + j]);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t k = 0; k < cols; ++k) A(dst, k) += f * A(src, k);
        for (std::size_t k = 0; k < rows; ++k) u[dst * rows + k] += f * u[src * rows + k];
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t k = 0; k < rows; ++k) A(k, dst) += f * A(k, src);
        for (std::size_t k = 0; k < cols; ++k) v[k * cols + dst] += f * v[k * cols + src];
    };
    auto negate_row = [&](std::size_t i) {
        for (std::size_t k = 0; k < cols; ++k) A(i, k) = -A(i, k);
        for (std::size_t k = 0; k < rows; ++k) u[i * rows + k] = -u[i * rows + k];
    };

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero |entry| in the trailing block
        std::size_t pi = t, pj = t;
        BigInt best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (A(i, j) == 0) continue;
                BigInt mag = boost::multiprecision::abs(A(i, j));
                if (best == 0 || mag < best) {
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        if (A(t, t) < 0) negate_row(t);

        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (A(i, t) == 0) continue;
            BigInt q = A(i, t) / A(t, t);
            add_row(i, t, -q);
            if (A(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            if (A(t, j) == 0) continue;
            BigInt q = A(t, j) / A(t, t);
            add_col(j, t, -q);
            if (A(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainder exists, pick a new pivot

        // divisibility fix-up: fold in any entry the pivot does not divide
        bool fixed = false;
        for (std::size_t i = t + 1; i < rows && !fixed; ++i)
            for (std::size_t j = t + 1; j < cols && !fixed; ++j)
                if (A(i, j) % A(t, t) != 0) {
                    add_row(t, i, 1);
                    fixed = true;
                }
        if (fixed) continue;
        ++t;
    }

    SNFResult res;
    res.rows = rows;
    res.cols = cols;
    res.rank = t;
    for (std::size_t i = 0; i < t; ++i) res.diag.push_back(A(i, i));
    res.u = std::move(u);
    res.v = std::move(v);
#ifndef NDEBUG
    if (!res.verify(m)) throw Error("internal: SNF transform verification failed");
#endif
    return res;
}

// Number of solutions of Mx = 0 over Z/n: n^(cols - rank) * prod gcd(d_i, n).
inline unsigned long long count_colorings(const diagram::PlanarDiagram& d, long long n) {
    if (n < 3 || n % 2 == 0) throw EvenOrder("coloring order must be odd and >= 3");
    ColoringMatrix m = coloring_matrix(d);
    SNFResult snf = smith_normal_form(m);
    BigInt count = 1;
    for (std::size_t i = 0; i < m.cols - snf.rank; ++i) count *= n;
    for (const BigInt& di : snf.diag) count *= boost::multiprecision::gcd(di, BigInt(n));
    if (count > BigInt(std::numeric_limits<unsigned long long>::max()))
        throw BudgetExceeded("coloring count does not fit in 64 bits");
    return count.convert_to<unsigned long long>();
}

// Exhaustive count over all n^(arcs) assignments; guarded by a work budget.
inline unsigned long long count_colorings_naive(const diagram::PlanarDiagram& d, long long n) {
    if (n < 3 || n % 2 == 0) throw EvenOrder("coloring order must be odd and >= 3");
    const std::size_t arcs = d.arcs.size();
    double work = 1.0;
    for (std::size_t i = 0; i < arcs; ++i) {
        work *= static_cast<double>(n);
        if (work > 1e7) throw BudgetExceeded("naive enumeration budget of 1e7 exceeded");
    }
    ColoringMatrix m = coloring_matrix(d);
    std::vector<long long> x(arcs, 0);
    unsigned long long count = 0;
    while (true) {
        bool ok = true;
        for (std::size_t r = 0; r < m.rows && ok; ++r) {
            long long acc = 0;
            for (std::size_t c = 0; c < arcs; ++c)
                acc += m.at(r, c).convert_to<long long>() * x[c];
            if (mod_euclid(acc, n) != 0) ok = false;
        }
        if (ok) ++count;
        std::size_t i = 0;
        while (i < arcs && ++x[i] == n) x[i++] = 0;
        if (i == arcs) break;
    }
    return count;
}

}  // namespace arblink::fox
