#include "diffiety/linalg.hpp"

#include <algorithm>
#include <map>

namespace diffiety {

namespace {

/* a -= c * b, keeping columns sorted and dropping zeros. */
SparseRow axpy(const SparseRow& a, const Rational& c, const SparseRow& b) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, -c * b[j].second);
            ++j;
        } else {
            Rational v = a[i].second - c * b[j].second;
            if (v != 0) out.emplace_back(a[i].first, v);
            ++i, ++j;
        }
    }
    return out;
}

SparseRow scale(SparseRow r, const Rational& c) {
    for (auto& e : r) e.second *= c;
    return r;
}

}  // namespace

RrefResult rref(const std::vector<SparseRow>& rows, int cols) {
    std::vector<SparseRow> reduced;
    std::map<int, std::size_t> pivot_row;

    for (const SparseRow& input : rows) {
        SparseRow r = input;
        /* clear every entry sitting in an existing pivot column; eliminating
         * one can only introduce non-pivot columns, so a single sweep works */
        std::size_t i = 0;
        while (i < r.size()) {
            auto it = pivot_row.find(r[i].first);
            if (it == pivot_row.end()) {
                ++i;
                continue;
            }
            r = axpy(r, r[i].second, reduced[it->second]);
        }
        if (r.empty()) continue;
        int lead = r.front().first;
        if (lead >= cols) throw shape_error("rref: column index out of range");
        r = scale(std::move(r), Rational(1) / r.front().second);
        /* clear the new pivot column from every earlier row */
        for (auto& [col, idx] : pivot_row) {
            (void)col;
            SparseRow& prev = reduced[idx];
            auto hit = std::lower_bound(prev.begin(), prev.end(), lead,
                                        [](const auto& e, int c) { return e.first < c; });
            if (hit != prev.end() && hit->first == lead) prev = axpy(prev, hit->second, r);
        }
        pivot_row.emplace(lead, reduced.size());
        reduced.push_back(std::move(r));
    }

    RrefResult out;
    for (const auto& [col, idx] : pivot_row) {
        out.pivot_cols.push_back(col);
        out.rows.push_back(reduced[idx]);
    }
    return out;
}

int rank(const std::vector<SparseRow>& rows, int cols) {
    return (int)rref(rows, cols).pivot_cols.size();
}

std::vector<std::vector<Rational>> nullspace(const std::vector<SparseRow>& rows, int cols) {
    RrefResult r = rref(rows, cols);
    std::vector<bool> is_pivot((std::size_t)cols, false);
    for (int p : r.pivot_cols) is_pivot[(std::size_t)p] = true;

    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[(std::size_t)f]) continue;
        std::vector<Rational> x((std::size_t)cols, Rational(0));
        x[(std::size_t)f] = 1;
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            const SparseRow& row = r.rows[i];
            auto hit = std::lower_bound(row.begin(), row.end(), f,
                                        [](const auto& e, int c) { return e.first < c; });
            if (hit != row.end() && hit->first == f)
                x[(std::size_t)r.pivot_cols[i]] = -hit->second;
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::vector<int> column_space_pivots(const std::vector<SparseRow>& rows, int target_dim) {
    /* transpose: the columns of M, read as sparse vectors in the target */
    std::map<int, std::vector<std::pair<int, Rational>>> by_col;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if ((int)i >= target_dim) throw shape_error("column_space_pivots: bad target dimension");
        for (const auto& [c, v] : rows[i]) by_col[c].emplace_back((int)i, v);
    }
    std::vector<SparseRow> cols_as_rows;
    for (auto& [c, entries] : by_col) {
        (void)c;
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        cols_as_rows.push_back(std::move(entries));
    }
    return rref(cols_as_rows, target_dim).pivot_cols;
}

}  // namespace diffiety
