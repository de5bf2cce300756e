#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqwall/expr/rational_fn.hpp"

namespace dqwall::expr {

struct LinearRow {
    std::vector<RationalFn> coeffs;
    RationalFn rhs;
};

struct ReducedRow {
    std::vector<RationalFn> coeffs;
    RationalFn rhs;
    std::optional<std::size_t> pivot;
    /// Multipliers of the input rows whose sum reproduces this row (empty unless tracked).
    std::vector<RationalFn> combination;
};

struct SolveOptions {
    /// Elimination order of the columns; default is 0..n-1.
    std::vector<std::size_t> column_order;
    bool track_combination = false;
    /// Clear entries above pivots and scale pivots to one.
    bool reduce = true;
};

struct SolveReport {
    std::vector<ReducedRow> rows;
    std::size_t rank = 0;
    std::optional<std::vector<RationalFn>> solution;
};

class InconsistentSystem : public std::runtime_error {
public:
    InconsistentSystem(const std::string& what, ReducedRow row) : std::runtime_error(what), row_(std::move(row)) {}
    const ReducedRow& row() const { return row_; }

private:
    ReducedRow row_;
};

namespace detail {

inline Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    return *(a * b).divide_exact(gcd(a, b));
}

// Fraction-free (Bareiss) forward elimination. Every intermediate entry is a minor of the
// input, so the division by the previous pivot is exact.
struct BareissResult {
    std::vector<std::vector<Poly>> rows;
    std::vector<std::optional<std::size_t>> pivots;
};

inline BareissResult bareiss(std::vector<std::vector<Poly>> m, std::size_t pivot_columns,
                             const std::vector<std::size_t>& order) {
    BareissResult out;
    const std::size_t nrows = m.size();
    out.pivots.assign(nrows, std::nullopt);
    Poly prev(1);
    std::size_t k = 0;
    for (std::size_t c : order) {
        if (k == nrows) break;
        if (c >= pivot_columns) throw std::invalid_argument("column order out of range");
        std::optional<std::size_t> best;
        for (std::size_t r = k; r < nrows; ++r) {
            if (m[r][c].is_zero()) continue;
            if (!best || m[r][c].total_degree() < m[*best][c].total_degree()) best = r;
        }
        if (!best) continue;
        std::swap(m[k], m[*best]);
        const Poly pivot = m[k][c];
        for (std::size_t i = k + 1; i < nrows; ++i) {
            const Poly factor = m[i][c];
            for (std::size_t j = 0; j < m[i].size(); ++j) {
                Poly v = pivot * m[i][j];
                if (!factor.is_zero() && !m[k][j].is_zero()) v -= factor * m[k][j];
                auto q = v.divide_exact(prev);
                if (!q) throw std::logic_error("fraction-free elimination lost exactness");
                m[i][j] = std::move(*q);
            }
        }
        out.pivots[k] = c;
        prev = pivot;
        ++k;
    }
    out.rows = std::move(m);
    return out;
}

}  // namespace detail

/// Gaussian elimination over the rational-function field with deterministic pivoting:
/// columns are visited in the given order and, within a column, the row whose entry has the
/// lowest total degree wins (earliest row on ties). Throws InconsistentSystem when a row
/// reduces to 0 = nonzero.
inline SolveReport linear_solve(const std::vector<LinearRow>& rows, SolveOptions options = {}) {
    SolveReport report;
    if (rows.empty()) return report;
    const std::size_t ncols = rows.front().coeffs.size();
    for (const auto& r : rows)
        if (r.coeffs.size() != ncols) throw std::invalid_argument("inconsistent row dimensions");
    if (options.column_order.empty()) {
        options.column_order.resize(ncols);
        std::iota(options.column_order.begin(), options.column_order.end(), 0);
    }
    const std::size_t nrows = rows.size();

    // clear denominators row by row; scales[r] remembers the factor applied
    std::vector<Poly> scales(nrows, Poly(1));
    std::vector<std::vector<Poly>> m(nrows);
    for (std::size_t r = 0; r < nrows; ++r) {
        Poly l(1);
        for (const auto& c : rows[r].coeffs) l = detail::lcm(l, c.den());
        l = detail::lcm(l, rows[r].rhs.den());
        scales[r] = l;
        auto to_poly = [&](const RationalFn& f) { return f.num() * *l.divide_exact(f.den()); };
        for (const auto& c : rows[r].coeffs) m[r].push_back(to_poly(c));
        m[r].push_back(to_poly(rows[r].rhs));
        if (options.track_combination) {
            for (std::size_t j = 0; j < nrows; ++j) m[r].push_back(j == r ? Poly(1) : Poly());
        }
    }

    auto ech = detail::bareiss(std::move(m), ncols, options.column_order);

    for (std::size_t r = 0; r < nrows; ++r) {
        ReducedRow row;
        row.pivot = ech.pivots[r];
        for (std::size_t j = 0; j < ncols; ++j) row.coeffs.emplace_back(ech.rows[r][j]);
        row.rhs = RationalFn(ech.rows[r][ncols]);
        if (options.track_combination) {
            for (std::size_t j = 0; j < nrows; ++j) row.combination.push_back(RationalFn(ech.rows[r][ncols + 1 + j] * scales[j]));
        }
        if (!row.pivot && !row.rhs.is_zero()) {
            throw InconsistentSystem("inconsistent system: reduced row 0 = " + row.rhs.to_string(), row);
        }
        report.rows.push_back(std::move(row));
        if (ech.pivots[r]) ++report.rank;
    }

    if (options.reduce) {
        for (std::size_t r = 0; r < report.rank; ++r) {
            auto& row = report.rows[r];
            const RationalFn inv = RationalFn(1) / row.coeffs[*row.pivot];
            for (auto& c : row.coeffs) c *= inv;
            row.rhs *= inv;
            for (auto& c : row.combination) c *= inv;
        }
        for (std::size_t r = report.rank; r-- > 0;) {
            const auto& piv = report.rows[r];
            for (std::size_t above = 0; above < r; ++above) {
                auto& row = report.rows[above];
                const RationalFn f = row.coeffs[*piv.pivot];
                if (f.is_zero()) continue;
                for (std::size_t j = 0; j < ncols; ++j) row.coeffs[j] -= f * piv.coeffs[j];
                row.rhs -= f * piv.rhs;
                for (std::size_t j = 0; j < row.combination.size(); ++j) row.combination[j] -= f * piv.combination[j];
            }
        }
        if (report.rank == ncols) {
            std::vector<RationalFn> x(ncols);
            for (std::size_t r = 0; r < report.rank; ++r) x[*report.rows[r].pivot] = report.rows[r].rhs;
            report.solution = std::move(x);
        }
    }
    return report;
}

}  // namespace dqwall::expr
