#pragma once

#include "nerve/error.hpp"
#include "nerve/ring.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace nerve {

struct Triplet {
    std::size_t row;
    std::size_t col;
    std::int64_t value;
};

struct SparseEntry {
    std::uint32_t col;
    std::int64_t value;

    bool operator==(const SparseEntry&) const = default;
};

/// Exact integer matrix in compressed-row form. Entries within a row are
/// sorted by column; no explicit zeros are stored.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

    /// Duplicate positions are summed; zero sums are dropped.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets)
    {
        for (const auto& t : triplets)
            if (t.row >= rows || t.col >= cols)
                throw Error(ErrorCode::IndexOutOfRange, "entry (" + std::to_string(t.row) + "," + std::to_string(t.col) +
                                                            ") outside " + std::to_string(rows) + "x" +
                                                            std::to_string(cols));
        std::sort(triplets.begin(), triplets.end(),
                  [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
        SparseMatrix m(rows, cols);
        m.entries_.reserve(triplets.size());
        std::size_t k = 0;
        for (std::size_t r = 0; r < rows; ++r) {
            while (k < triplets.size() && triplets[k].row == r) {
                const std::size_t c = triplets[k].col;
                std::int64_t sum = 0;
                while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c)
                    sum = detail::checked_add(sum, triplets[k++].value);
                if (sum != 0)
                    m.entries_.push_back({static_cast<std::uint32_t>(c), sum});
            }
            m.row_ptr_[r + 1] = m.entries_.size();
        }
        return m;
    }

    static SparseMatrix identity(std::size_t n)
    {
        std::vector<Triplet> t;
        t.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            t.push_back({i, i, 1});
        return from_triplets(n, n, std::move(t));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return entries_.size(); }

    std::span<const SparseEntry> row(std::size_t r) const
    {
        return {entries_.data() + row_ptr_[r], entries_.data() + row_ptr_[r + 1]};
    }

    std::int64_t at(std::size_t r, std::size_t c) const
    {
        auto rw = row(r);
        auto it = std::lower_bound(rw.begin(), rw.end(), c, [](const SparseEntry& e, std::size_t col) { return e.col < col; });
        return (it != rw.end() && it->col == c) ? it->value : 0;
    }

    std::vector<Triplet> triplets() const
    {
        std::vector<Triplet> out;
        out.reserve(nnz());
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& e : row(r))
                out.push_back({r, e.col, e.value});
        return out;
    }

    SparseMatrix transpose() const
    {
        std::vector<Triplet> t;
        t.reserve(nnz());
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& e : row(r))
                t.push_back({e.col, r, e.value});
        return from_triplets(cols_, rows_, std::move(t));
    }

    bool is_zero() const noexcept { return entries_.empty(); }

    /// Zero after reduction into the ring (mod p for F_p).
    bool is_zero_in(const RingSpec& ring) const
    {
        if (ring.kind() != RingSpec::Kind::PrimeField)
            return is_zero();
        return std::all_of(entries_.begin(), entries_.end(),
                           [&](const SparseEntry& e) { return e.value % ring.characteristic() == 0; });
    }

    SparseMatrix scaled(std::int64_t s) const
    {
        auto t = triplets();
        for (auto& x : t)
            x.value = detail::checked_mul(x.value, s);
        return from_triplets(rows_, cols_, std::move(t));
    }

    std::vector<std::vector<std::int64_t>> to_dense() const
    {
        std::vector<std::vector<std::int64_t>> d(rows_, std::vector<std::int64_t>(cols_, 0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (const auto& e : row(r))
                d[r][e.col] = e.value;
        return d;
    }

    static SparseMatrix from_dense(const std::vector<std::vector<std::int64_t>>& d)
    {
        const std::size_t r = d.size(), c = r ? d[0].size() : 0;
        std::vector<Triplet> t;
        for (std::size_t i = 0; i < r; ++i) {
            if (d[i].size() != c)
                throw Error(ErrorCode::SizeMismatch, "ragged dense matrix");
            for (std::size_t j = 0; j < c; ++j)
                if (d[i][j] != 0)
                    t.push_back({i, j, d[i][j]});
        }
        return from_triplets(r, c, std::move(t));
    }

    bool operator==(const SparseMatrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && row_ptr_ == o.row_ptr_ && entries_ == o.entries_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<SparseEntry> entries_;
};

inline SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.cols() != b.rows())
        throw Error(ErrorCode::SizeMismatch, "product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                                 " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    std::vector<Triplet> t;
    std::vector<std::int64_t> acc(b.cols(), 0);
    std::vector<bool> marked(b.cols(), false);
    std::vector<std::uint32_t> touched;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (const auto& ea : a.row(r))
            for (const auto& eb : b.row(ea.col)) {
                if (!marked[eb.col]) {
                    marked[eb.col] = true;
                    touched.push_back(eb.col);
                }
                acc[eb.col] = detail::checked_add(acc[eb.col], detail::checked_mul(ea.value, eb.value));
            }
        for (auto c : touched) {
            if (acc[c] != 0)
                t.push_back({r, c, acc[c]});
            acc[c] = 0;
            marked[c] = false;
        }
        touched.clear();
    }
    return SparseMatrix::from_triplets(a.rows(), b.cols(), std::move(t));
}

inline SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::SizeMismatch, "sum of differently shaped matrices");
    auto t = a.triplets();
    auto u = b.triplets();
    t.insert(t.end(), u.begin(), u.end());
    return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

inline SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + b.scaled(-1); }

/// Accumulates blocks at row/column offsets into one matrix.
class BlockAssembler {
public:
    BlockAssembler(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    void add(std::size_t row_offset, std::size_t col_offset, const SparseMatrix& block, std::int64_t sign = 1)
    {
        if (row_offset + block.rows() > rows_ || col_offset + block.cols() > cols_)
            throw Error(ErrorCode::SizeMismatch, "block exceeds assembled matrix");
        for (std::size_t r = 0; r < block.rows(); ++r)
            for (const auto& e : block.row(r))
                triplets_.push_back({row_offset + r, col_offset + e.col, detail::checked_mul(sign, e.value)});
    }

    SparseMatrix build() && { return SparseMatrix::from_triplets(rows_, cols_, std::move(triplets_)); }

private:
    std::size_t rows_, cols_;
    std::vector<Triplet> triplets_;
};

/// Dump format: a `rows cols` line followed by one `r c v` line per entry.
inline void write_matrix(std::ostream& os, const SparseMatrix& m)
{
    os << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& e : m.row(r))
            os << r << ' ' << e.col << ' ' << e.value << '\n';
}

inline SparseMatrix read_matrix(std::istream& is)
{
    long long rows = -1, cols = -1;
    if (!(is >> rows >> cols) || rows < 0 || cols < 0)
        throw Error(ErrorCode::SpecError, "matrix dump: missing or invalid 'rows cols' header");
    std::vector<Triplet> t;
    long long r, c;
    std::int64_t v;
    std::size_t line = 1;
    while (is >> r) {
        ++line;
        if (!(is >> c >> v))
            throw Error(ErrorCode::SpecError, "matrix dump: truncated entry on line " + std::to_string(line));
        if (r < 0 || c < 0)
            throw Error(ErrorCode::IndexOutOfRange, "matrix dump: negative index on line " + std::to_string(line));
        t.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), v});
    }
    if (!is.eof())
        throw Error(ErrorCode::SpecError, "matrix dump: unparsable token after line " + std::to_string(line));
    return SparseMatrix::from_triplets(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(t));
}

} // namespace nerve
