#pragma once

// Exact sparse elimination: rank over F_p, Q (fraction-free over Z), and
// integer invariant factors. Integer work runs on overflow-checked int64 and
// restarts on BigInt when a value leaves the int64 range.

#include "nerve/ring.hpp"
#include "nerve/smith.hpp"
#include "nerve/sparse_matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace nerve {

namespace detail {

// Scalar helpers shared by the int64 (checked) and BigInt paths.
inline std::int64_t s_mul(std::int64_t a, std::int64_t b) { return checked_mul(a, b); }
inline std::int64_t s_sub(std::int64_t a, std::int64_t b) { return checked_sub(a, b); }
inline std::int64_t s_abs(std::int64_t a)
{
    if (a == INT64_MIN)
        throw Overflow{};
    return a < 0 ? -a : a;
}
inline std::int64_t s_gcd(std::int64_t a, std::int64_t b) { return std::gcd(s_abs(a), s_abs(b)); }
inline BigInt s_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt s_sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt s_abs(const BigInt& a) { return abs(a); }
inline BigInt s_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

template <class T>
struct Entry {
    std::uint32_t col;
    T val;
};

template <class T>
using SparseRow = std::vector<Entry<T>>;

/// Arithmetic over F_p; every nonzero is a unit.
struct ModPolicy {
    using value_type = std::int64_t;
    std::int64_t p;

    value_type load(std::int64_t v) const { return mod_reduce(v, p); }
    bool is_zero(value_type v) const { return v == 0; }
    bool acceptable(value_type) const { return true; }
    // Lower is preferred.
    int pivot_class(value_type) const { return 0; }

    // row <- row - (v / pv) * pivot_row
    void combine(SparseRow<value_type>& row, value_type v, const SparseRow<value_type>& pivot, value_type pv,
                 SparseRow<value_type>& out, std::vector<std::uint32_t>& fill) const
    {
        const value_type f = v * mod_inverse(pv, p) % p;
        out.clear();
        auto a = row.begin();
        auto b = pivot.begin();
        while (a != row.end() || b != pivot.end()) {
            if (b == pivot.end() || (a != row.end() && a->col < b->col)) {
                out.push_back(*a++);
            } else if (a == row.end() || b->col < a->col) {
                out.push_back({b->col, mod_reduce(-f * b->val, p)});
                fill.push_back(b->col);
                ++b;
            } else {
                value_type x = mod_reduce(a->val - f * b->val, p);
                if (x != 0)
                    out.push_back({a->col, x});
                ++a;
                ++b;
            }
        }
        row.swap(out);
    }
};

/// Fraction-free integer arithmetic. With `units_only` the eliminator pivots
/// only on +-1, so every row operation is unimodular and the untouched
/// remainder keeps the invariant factors. Otherwise any nonzero pivot is used
/// and only the rank is preserved.
template <class T>
struct IntegerPolicy {
    using value_type = T;
    bool units_only;

    value_type load(std::int64_t v) const { return value_type(v); }
    bool is_zero(const value_type& v) const { return v == 0; }
    bool is_unit(const value_type& v) const { return v == 1 || v == -1; }
    bool acceptable(const value_type& v) const { return !units_only || is_unit(v); }
    int pivot_class(const value_type& v) const { return is_unit(v) ? 0 : 1; }

    void combine(SparseRow<value_type>& row, const value_type& v, const SparseRow<value_type>& pivot,
                 const value_type& pv, SparseRow<value_type>& out, std::vector<std::uint32_t>& fill) const
    {
        // row <- a*row - b*pivot with a = pv/g, b = v/g.
        value_type a_coef, b_coef;
        if (is_unit(pv)) {
            a_coef = value_type(1);
            b_coef = s_mul(v, pv);
        } else {
            value_type g = s_gcd(pv, v);
            a_coef = pv / g;
            b_coef = v / g;
        }
        const bool scale_row = !(a_coef == 1);
        out.clear();
        auto a = row.begin();
        auto b = pivot.begin();
        while (a != row.end() || b != pivot.end()) {
            if (b == pivot.end() || (a != row.end() && a->col < b->col)) {
                out.push_back({a->col, scale_row ? s_mul(a_coef, a->val) : a->val});
                ++a;
            } else if (a == row.end() || b->col < a->col) {
                out.push_back({b->col, s_sub(value_type(0), s_mul(b_coef, b->val))});
                fill.push_back(b->col);
                ++b;
            } else {
                value_type x = s_sub(scale_row ? s_mul(a_coef, a->val) : a->val, s_mul(b_coef, b->val));
                if (!(x == 0))
                    out.push_back({a->col, std::move(x)});
                ++a;
                ++b;
            }
        }
        if (scale_row && !out.empty()) {
            value_type content(0);
            for (const auto& e : out) {
                content = s_gcd(content, e.val);
                if (content == 1)
                    break;
            }
            if (!(content == 1))
                for (auto& e : out)
                    e.val /= content;
        }
        row.swap(out);
    }
};

template <class Policy>
class SparseEliminator {
public:
    using T = typename Policy::value_type;

    SparseEliminator(const SparseMatrix& m, Policy policy)
        : policy_(std::move(policy)), rows_(m.rows()), active_(m.rows(), true), col_rows_(m.cols()),
          pivoted_col_(m.cols(), false), cols_(m.cols())
    {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (const auto& e : m.row(r)) {
                T v = policy_.load(e.value);
                if (!policy_.is_zero(v)) {
                    rows_[r].push_back({e.col, std::move(v)});
                    col_rows_[e.col].push_back(static_cast<std::uint32_t>(r));
                }
            }
        }
    }

    /// Eliminates until no acceptable pivot remains; returns the pivot count.
    std::size_t run()
    {
        std::vector<std::uint32_t> order(cols_);
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return col_rows_[a].size() < col_rows_[b].size(); });
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::uint32_t c : order)
                if (!pivoted_col_[c] && eliminate_column(c))
                    progress = true;
        }
        return pivots_;
    }

    /// Rows still active after run(), restricted to unpivoted columns.
    std::vector<std::vector<T>> dense_remainder() const
    {
        std::vector<std::uint32_t> col_map(cols_, UINT32_MAX);
        std::uint32_t ncols = 0;
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (active_[r])
                for (const auto& e : rows_[r])
                    if (col_map[e.col] == UINT32_MAX)
                        col_map[e.col] = ncols++;
        std::vector<std::vector<T>> dense;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (!active_[r] || rows_[r].empty())
                continue;
            std::vector<T> row(ncols, T(0));
            for (const auto& e : rows_[r])
                row[col_map[e.col]] = e.val;
            dense.push_back(std::move(row));
        }
        return dense;
    }

private:
    const Entry<T>* find(std::uint32_t r, std::uint32_t c) const
    {
        const auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry<T>& e, std::uint32_t col) { return e.col < col; });
        return (it != row.end() && it->col == c) ? &*it : nullptr;
    }

    bool eliminate_column(std::uint32_t c)
    {
        // Refresh the candidate list, dropping stale row ids.
        auto& cand = col_rows_[c];
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        std::size_t keep = 0;
        for (std::uint32_t r : cand)
            if (active_[r] && find(r, c))
                cand[keep++] = r;
        cand.resize(keep);
        if (cand.empty())
            return false;

        std::uint32_t best = UINT32_MAX;
        for (std::uint32_t r : cand) {
            const T& v = find(r, c)->val;
            if (!policy_.acceptable(v))
                continue;
            if (best == UINT32_MAX || better(r, v, best, find(best, c)->val))
                best = r;
        }
        if (best == UINT32_MAX)
            return false;

        const T pv = find(best, c)->val;
        const SparseRow<T>& pivot = rows_[best];
        for (std::uint32_t r : cand) {
            if (r == best)
                continue;
            const T v = find(r, c)->val;
            fill_.clear();
            policy_.combine(rows_[r], v, pivot, pv, scratch_, fill_);
            for (std::uint32_t fc : fill_)
                if (!pivoted_col_[fc])
                    col_rows_[fc].push_back(r);
        }
        active_[best] = false;
        SparseRow<T>().swap(rows_[best]);
        pivoted_col_[c] = true;
        std::vector<std::uint32_t>().swap(cand);
        ++pivots_;
        return true;
    }

    bool better(std::uint32_t r, const T& v, std::uint32_t best, const T& bv) const
    {
        int cr = policy_.pivot_class(v), cb = policy_.pivot_class(bv);
        if (cr != cb)
            return cr < cb;
        if (cr != 0 && !(s_abs_any(v) == s_abs_any(bv)))
            return s_abs_any(v) < s_abs_any(bv);
        return rows_[r].size() < rows_[best].size();
    }

    static T s_abs_any(const T& v) { return v < T(0) ? T(-v) : v; }

    Policy policy_;
    std::vector<SparseRow<T>> rows_;
    std::vector<bool> active_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::vector<bool> pivoted_col_;
    std::size_t cols_;
    std::size_t pivots_ = 0;
    SparseRow<T> scratch_;
    std::vector<std::uint32_t> fill_;
};

// Rank and invariant factors are transpose-invariant. Elimination runs over
// the longer dimension as columns: coboundaries have many short rows and few
// long columns, and pivoting across the short side keeps fill-in low.
inline SparseMatrix oriented(const SparseMatrix& m) { return m.rows() > m.cols() ? m.transpose() : m; }

inline std::size_t rank_mod_p(const SparseMatrix& m, std::int64_t p)
{
    SparseEliminator<ModPolicy> e(oriented(m), ModPolicy{p});
    return e.run();
}

inline std::size_t rank_over_q(const SparseMatrix& m)
{
    try {
        SparseEliminator<IntegerPolicy<std::int64_t>> e(oriented(m), IntegerPolicy<std::int64_t>{false});
        return e.run();
    } catch (const Overflow&) {
        SparseEliminator<IntegerPolicy<BigInt>> e(oriented(m), IntegerPolicy<BigInt>{false});
        return e.run();
    }
}

template <class T>
std::vector<BigInt> invariant_factors_with(const SparseMatrix& m)
{
    SparseEliminator<IntegerPolicy<T>> e(oriented(m), IntegerPolicy<T>{true});
    const std::size_t units = e.run();
    std::vector<BigInt> factors(units, BigInt(1));
    auto rest = dense_smith_diagonal(e.dense_remainder());
    for (auto& d : rest)
        factors.push_back(BigInt(d));
    return factors;
}

} // namespace detail

/// Exact rank; over Z this is the rank of the free part (equal to the rank over Q).
inline std::size_t rank(const SparseMatrix& m, const RingSpec& ring)
{
    if (ring.kind() == RingSpec::Kind::PrimeField)
        return detail::rank_mod_p(m, ring.characteristic());
    return detail::rank_over_q(m);
}

/// Nonzero Smith invariant factors of an integer matrix in divisibility order.
inline std::vector<BigInt> invariant_factors(const SparseMatrix& m)
{
    try {
        return detail::invariant_factors_with<std::int64_t>(m);
    } catch (const detail::Overflow&) {
        return detail::invariant_factors_with<BigInt>(m);
    }
}

} // namespace nerve
