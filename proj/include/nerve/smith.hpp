#pragma once

// Dense Smith normal form over Z with optional unimodular transforms.
// Pivoting takes the nonzero entry of least absolute value.

#include "nerve/ring.hpp"
#include "nerve/sparse_matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace nerve {

template <class T>
using DenseMatrix = std::vector<std::vector<T>>;

namespace detail {

inline std::int64_t snf_mul(std::int64_t a, std::int64_t b) { return checked_mul(a, b); }
inline std::int64_t snf_sub(std::int64_t a, std::int64_t b) { return checked_sub(a, b); }
inline std::int64_t snf_add(std::int64_t a, std::int64_t b) { return checked_add(a, b); }
inline std::int64_t snf_neg(std::int64_t a) { return checked_sub(0, a); }
inline BigInt snf_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt snf_sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt snf_add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt snf_neg(const BigInt& a) { return -a; }

template <class T>
DenseMatrix<T> identity_dense(std::size_t n)
{
    DenseMatrix<T> m(n, std::vector<T>(n, T(0)));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = T(1);
    return m;
}

template <class T>
class SmithReducer {
public:
    SmithReducer(DenseMatrix<T> a, bool track)
        : a_(std::move(a)), m_(a_.size()), n_(m_ ? a_[0].size() : 0), track_(track)
    {
        if (track_) {
            u_ = identity_dense<T>(m_);
            v_ = identity_dense<T>(n_);
        }
    }

    void run()
    {
        for (std::size_t t = 0; t < std::min(m_, n_); ++t) {
            if (!move_min_to(t, t, m_, n_))
                break;
            for (;;) {
                bool clean = true;
                for (std::size_t i = t + 1; i < m_; ++i)
                    if (!(a_[i][t] == 0)) {
                        row_axpy(i, t, snf_neg(T(a_[i][t] / a_[t][t])));
                        clean = clean && a_[i][t] == 0;
                    }
                for (std::size_t j = t + 1; j < n_; ++j)
                    if (!(a_[t][j] == 0)) {
                        col_axpy(j, t, snf_neg(T(a_[t][j] / a_[t][t])));
                        clean = clean && a_[t][j] == 0;
                    }
                if (!clean) {
                    move_min_in_cross(t);
                    continue;
                }
                // Enforce divisibility: fold an offending row into row t.
                std::size_t bad = m_;
                for (std::size_t i = t + 1; i < m_ && bad == m_; ++i)
                    for (std::size_t j = t + 1; j < n_; ++j)
                        if (!(a_[i][j] % a_[t][t] == 0)) {
                            bad = i;
                            break;
                        }
                if (bad == m_)
                    break;
                row_axpy(t, bad, T(1));
            }
            if (a_[t][t] < 0)
                negate_row(t);
        }
    }

    std::vector<T> diagonal() const
    {
        std::vector<T> d;
        for (std::size_t t = 0; t < std::min(m_, n_); ++t)
            d.push_back(a_[t][t]);
        return d;
    }

    DenseMatrix<T>& u() { return u_; }
    DenseMatrix<T>& v() { return v_; }

private:
    static T abs_of(const T& x) { return x < 0 ? snf_neg(x) : x; }

    bool move_min_to(std::size_t r0, std::size_t c0, std::size_t m, std::size_t n)
    {
        std::size_t bi = m, bj = n;
        T best(0);
        for (std::size_t i = r0; i < m; ++i)
            for (std::size_t j = c0; j < n; ++j)
                if (!(a_[i][j] == 0)) {
                    T av = abs_of(a_[i][j]);
                    if (bi == m || av < best) {
                        best = av;
                        bi = i;
                        bj = j;
                        if (best == 1)
                            goto found;
                    }
                }
        if (bi == m)
            return false;
    found:
        swap_rows(r0, bi);
        swap_cols(c0, bj);
        return true;
    }

    void move_min_in_cross(std::size_t t)
    {
        std::size_t bi = t, bj = t;
        T best = abs_of(a_[t][t]);
        for (std::size_t i = t + 1; i < m_; ++i)
            if (!(a_[i][t] == 0) && abs_of(a_[i][t]) < best) {
                best = abs_of(a_[i][t]);
                bi = i;
                bj = t;
            }
        for (std::size_t j = t + 1; j < n_; ++j)
            if (!(a_[t][j] == 0) && abs_of(a_[t][j]) < best) {
                best = abs_of(a_[t][j]);
                bi = t;
                bj = j;
            }
        swap_rows(t, bi);
        swap_cols(t, bj);
    }

    void swap_rows(std::size_t i, std::size_t k)
    {
        if (i == k)
            return;
        std::swap(a_[i], a_[k]);
        if (track_)
            std::swap(u_[i], u_[k]);
    }

    void swap_cols(std::size_t j, std::size_t k)
    {
        if (j == k)
            return;
        for (auto& row : a_)
            std::swap(row[j], row[k]);
        if (track_)
            for (auto& row : v_)
                std::swap(row[j], row[k]);
    }

    // row_i += f * row_k
    void row_axpy(std::size_t i, std::size_t k, const T& f)
    {
        for (std::size_t j = 0; j < n_; ++j)
            if (!(a_[k][j] == 0))
                a_[i][j] = snf_add(a_[i][j], snf_mul(f, a_[k][j]));
        if (track_)
            for (std::size_t j = 0; j < m_; ++j)
                if (!(u_[k][j] == 0))
                    u_[i][j] = snf_add(u_[i][j], snf_mul(f, u_[k][j]));
    }

    // col_j += f * col_k
    void col_axpy(std::size_t j, std::size_t k, const T& f)
    {
        for (std::size_t i = 0; i < m_; ++i)
            if (!(a_[i][k] == 0))
                a_[i][j] = snf_add(a_[i][j], snf_mul(f, a_[i][k]));
        if (track_)
            for (std::size_t i = 0; i < n_; ++i)
                if (!(v_[i][k] == 0))
                    v_[i][j] = snf_add(v_[i][j], snf_mul(f, v_[i][k]));
    }

    void negate_row(std::size_t i)
    {
        for (auto& x : a_[i])
            x = snf_neg(x);
        if (track_)
            for (auto& x : u_[i])
                x = snf_neg(x);
    }

    DenseMatrix<T> a_;
    std::size_t m_, n_;
    bool track_;
    DenseMatrix<T> u_, v_;
};

/// Nonzero invariant factors of a dense integer matrix (no transforms).
template <class T>
std::vector<T> dense_smith_diagonal(DenseMatrix<T> a)
{
    if (a.empty() || a[0].empty())
        return {};
    SmithReducer<T> red(std::move(a), false);
    red.run();
    std::vector<T> d;
    for (auto& x : red.diagonal())
        if (!(x == 0))
            d.push_back(x);
    return d;
}

} // namespace detail

struct SmithResult {
    /// min(rows, cols) entries d_1 | d_2 | ... followed by zeros.
    std::vector<BigInt> diagonal;
    DenseMatrix<BigInt> U;
    DenseMatrix<BigInt> V;
};

/// U * M * V = diag(d_1, ..., d_r, 0, ...) with U, V unimodular.
inline SmithResult smith_normal_form(const SparseMatrix& m)
{
    DenseMatrix<BigInt> a(m.rows(), std::vector<BigInt>(m.cols(), BigInt(0)));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& e : m.row(r))
            a[r][e.col] = e.value;
    if (m.rows() == 0 || m.cols() == 0)
        return SmithResult{{}, detail::identity_dense<BigInt>(m.rows()), detail::identity_dense<BigInt>(m.cols())};
    detail::SmithReducer<BigInt> red(std::move(a), true);
    red.run();
    return SmithResult{red.diagonal(), std::move(red.u()), std::move(red.v())};
}

} // namespace nerve
