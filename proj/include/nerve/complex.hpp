#pragma once

// Cochain complexes, double and triple complexes with their totalization,
// and cohomology over Z, Q or F_p.

#include "nerve/elimination.hpp"
#include "nerve/error.hpp"
#include "nerve/ring.hpp"
#include "nerve/sparse_matrix.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace nerve {

/// A truncated cochain complex: dims[0..max_degree+1] and differentials
/// d[n] : C^n -> C^{n+1} (a dims[n+1] x dims[n] matrix) for n <= max_degree.
class GradedComplex {
public:
    GradedComplex() = default;
    GradedComplex(std::vector<std::size_t> dims, std::vector<SparseMatrix> d) : dims_(std::move(dims)), d_(std::move(d))
    {
        if (d_.empty() || dims_.size() != d_.size() + 1)
            throw Error(ErrorCode::SizeMismatch, "complex needs dims for degrees 0..n+1 and differentials 0..n");
        for (std::size_t n = 0; n < d_.size(); ++n)
            if (d_[n].cols() != dims_[n] || d_[n].rows() != dims_[n + 1])
                throw Error(ErrorCode::SizeMismatch, "differential d_" + std::to_string(n) + " has shape " +
                                                         std::to_string(d_[n].rows()) + "x" + std::to_string(d_[n].cols()) +
                                                         ", expected " + std::to_string(dims_[n + 1]) + "x" +
                                                         std::to_string(dims_[n]));
    }

    int max_degree() const noexcept { return static_cast<int>(d_.size()) - 1; }
    std::size_t dim(int n) const { return (n < 0 || n >= static_cast<int>(dims_.size())) ? 0 : dims_[n]; }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    const SparseMatrix& differential(int n) const { return d_.at(n); }

    /// Throws InvariantViolation naming the first degree where d_{n+1} d_n != 0.
    void verify_d_squared() const
    {
        for (std::size_t n = 0; n + 1 < d_.size(); ++n)
            if (!(d_[n + 1] * d_[n]).is_zero())
                throw Error(ErrorCode::InvariantViolation, "d_" + std::to_string(n + 1) + " d_" + std::to_string(n) + " != 0");
    }

private:
    std::vector<std::size_t> dims_;
    std::vector<SparseMatrix> d_;
};

struct DegreeCohomology {
    int degree = 0;
    std::size_t betti = 0;
    /// Invariant factors > 1 of the torsion subgroup (integral coefficients only).
    std::vector<std::int64_t> torsion;

    bool operator==(const DegreeCohomology&) const = default;
};

struct BettiTable {
    RingSpec ring = RingSpec::rationals();
    std::vector<DegreeCohomology> degrees;

    std::vector<std::size_t> betti() const
    {
        std::vector<std::size_t> b;
        for (const auto& d : degrees)
            b.push_back(d.betti);
        return b;
    }

    bool operator==(const BettiTable&) const = default;
};

namespace detail {

inline std::vector<std::int64_t> torsion_of(const SparseMatrix& m)
{
    std::vector<std::int64_t> out;
    for (const auto& f : invariant_factors(m)) {
        if (f > 1) {
            if (f > BigInt(INT64_MAX))
                throw Error(ErrorCode::InvariantViolation, "torsion coefficient exceeds int64");
            out.push_back(static_cast<std::int64_t>(f));
        }
    }
    return out;
}

inline void require_truncation(const GradedComplex& c, int n)
{
    if (n < 0 || n > c.max_degree())
        throw Error(ErrorCode::InsufficientTruncation, "H^" + std::to_string(n) + " needs d_" + std::to_string(n) +
                                                           " but the complex stops at d_" + std::to_string(c.max_degree()));
}

} // namespace detail

/// H^n(C; ring): betti = dim ker d_n - rank d_{n-1}; over Z also the
/// invariant factors > 1 of d_{n-1}.
inline DegreeCohomology cohomology(const GradedComplex& c, int n, const RingSpec& ring)
{
    detail::require_truncation(c, n);
    const std::size_t rank_out = rank(c.differential(n), ring);
    const std::size_t rank_in = n > 0 ? rank(c.differential(n - 1), ring) : 0;
    DegreeCohomology h{n, c.dim(n) - rank_out - rank_in, {}};
    if (ring.is_integers() && n > 0)
        h.torsion = detail::torsion_of(c.differential(n - 1));
    return h;
}

/// Cohomology in degrees 0..up_to (default: all computable degrees), each
/// rank computed once.
inline BettiTable betti_table(const GradedComplex& c, const RingSpec& ring, int up_to = -1)
{
    if (up_to < 0)
        up_to = c.max_degree();
    detail::require_truncation(c, up_to);
    std::vector<std::size_t> ranks(up_to + 1);
    for (int n = 0; n <= up_to; ++n)
        ranks[n] = rank(c.differential(n), ring);
    BettiTable t{ring, {}};
    for (int n = 0; n <= up_to; ++n) {
        DegreeCohomology h{n, c.dim(n) - ranks[n] - (n > 0 ? ranks[n - 1] : 0), {}};
        if (ring.is_integers() && n > 0)
            h.torsion = detail::torsion_of(c.differential(n - 1));
        t.degrees.push_back(std::move(h));
    }
    return t;
}

// --- pullbacks of face maps ---------------------------------------------

/// A face map on indexed levels: index of a point at level p+1 -> index of
/// its image at level p.
using IndexedFace = std::function<std::size_t(std::size_t)>;

/// Matrix of f -> f o face on functions: row x, column face(x), value 1.
inline SparseMatrix pullback_matrix(const IndexedFace& face, std::size_t domain_size, std::size_t codomain_size)
{
    std::vector<Triplet> t;
    t.reserve(domain_size);
    for (std::size_t x = 0; x < domain_size; ++x) {
        const std::size_t y = face(x);
        if (y >= codomain_size)
            throw Error(ErrorCode::SizeMismatch, "face sends point " + std::to_string(x) + " to " + std::to_string(y) +
                                                     ", outside a level of size " + std::to_string(codomain_size));
        t.push_back({x, y, 1});
    }
    return SparseMatrix::from_triplets(domain_size, codomain_size, std::move(t));
}

/// sum_i (-1)^i face_i^* between levels of the given sizes.
inline SparseMatrix simplicial_differential(const std::vector<IndexedFace>& faces, std::size_t domain_size,
                                            std::size_t codomain_size)
{
    std::vector<Triplet> t;
    t.reserve(domain_size * faces.size());
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const std::int64_t sign = (i % 2 == 0) ? 1 : -1;
        for (std::size_t x = 0; x < domain_size; ++x) {
            const std::size_t y = faces[i](x);
            if (y >= codomain_size)
                throw Error(ErrorCode::SizeMismatch, "face " + std::to_string(i) + " sends point " + std::to_string(x) +
                                                         " outside a level of size " + std::to_string(codomain_size));
            t.push_back({x, y, sign});
        }
    }
    return SparseMatrix::from_triplets(domain_size, codomain_size, std::move(t));
}

// --- multi-graded complexes ------------------------------------------------

using Tridegree = std::array<int, 3>;

enum class BlockOrder {
    Lexicographic, ///< (p,q,r) ascending
    Reversed,      ///< (r,q,p) ascending, i.e. (q,p) for double complexes
};

/// Triple complex with blocks for p+q+r <= max_degree+1. The three partial
/// differentials carry their signs already; the total differential is their
/// plain sum.
struct TripleComplexSpec {
    int max_degree = 0;
    std::map<Tridegree, std::size_t> dims;
    std::array<std::map<Tridegree, SparseMatrix>, 3> d;

    std::size_t dim(const Tridegree& k) const
    {
        auto it = dims.find(k);
        return it == dims.end() ? 0 : it->second;
    }

    /// Partial differential along `axis` out of bidegree k (zero when absent).
    SparseMatrix partial(int axis, const Tridegree& k) const
    {
        Tridegree t = k;
        ++t[axis];
        auto it = d[axis].find(k);
        if (it != d[axis].end())
            return it->second;
        return SparseMatrix(dim(t), dim(k));
    }
};

/// Double complex: a triple complex with the third grading identically zero.
struct DoubleComplexSpec {
    int max_degree = 0;
    std::map<std::array<int, 2>, std::size_t> dims;
    /// d[0] = d' (p -> p+1), d[1] = d'' (q -> q+1), signs included.
    std::array<std::map<std::array<int, 2>, SparseMatrix>, 2> d;

    std::size_t dim(int p, int q) const
    {
        auto it = dims.find({p, q});
        return it == dims.end() ? 0 : it->second;
    }

    SparseMatrix partial(int axis, int p, int q) const
    {
        auto it = d[axis].find({p, q});
        if (it != d[axis].end())
            return it->second;
        return SparseMatrix(axis == 0 ? dim(p + 1, q) : dim(p, q + 1), dim(p, q));
    }

    TripleComplexSpec as_triple() const
    {
        TripleComplexSpec t;
        t.max_degree = max_degree;
        for (const auto& [k, n] : dims)
            t.dims[{k[0], k[1], 0}] = n;
        for (int axis = 0; axis < 2; ++axis)
            for (const auto& [k, m] : d[axis])
                t.d[axis][{k[0], k[1], 0}] = m;
        return t;
    }
};

namespace detail {

inline std::string show_degree(const Tridegree& k)
{
    return "(" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]) + ")";
}

inline void check_triple_relations(const TripleComplexSpec& tc)
{
    const int top = tc.max_degree + 1;
    for (const auto& [k, n] : tc.dims) {
        (void)n;
        if (k[0] + k[1] + k[2] + 2 > top)
            continue;
        for (int a = 0; a < 3; ++a) {
            Tridegree ka = k;
            ++ka[a];
            if (!(tc.partial(a, ka) * tc.partial(a, k)).is_zero())
                throw Error(ErrorCode::InvariantViolation, "d" + std::to_string(a + 1) + " squared is nonzero at " + show_degree(k));
            for (int b = a + 1; b < 3; ++b) {
                Tridegree kb = k;
                ++kb[b];
                SparseMatrix anti = tc.partial(b, ka) * tc.partial(a, k) + tc.partial(a, kb) * tc.partial(b, k);
                if (!anti.is_zero())
                    throw Error(ErrorCode::InvariantViolation, "d" + std::to_string(a + 1) + " and d" + std::to_string(b + 1) +
                                                                   " do not anticommute at " + show_degree(k));
            }
        }
    }
}

} // namespace detail

/// Tot^n = (+)_{p+q+r=n}, block order per `order`. Relations d_a^2 = 0 and
/// pairwise anticommutation are checked first; failures name the tridegree.
inline GradedComplex totalize_triple(const TripleComplexSpec& tc, BlockOrder order = BlockOrder::Lexicographic)
{
    detail::check_triple_relations(tc);
    const int top = tc.max_degree + 1;
    std::vector<std::vector<Tridegree>> blocks(top + 1);
    for (const auto& [k, n] : tc.dims) {
        (void)n;
        for (int x : k)
            if (x < 0)
                throw Error(ErrorCode::IndexOutOfRange, "negative grading " + detail::show_degree(k));
        const int deg = k[0] + k[1] + k[2];
        if (deg <= top)
            blocks[deg].push_back(k);
    }
    std::vector<std::map<Tridegree, std::size_t>> offset(top + 1);
    std::vector<std::size_t> dims(top + 1, 0);
    for (int n = 0; n <= top; ++n) {
        auto& b = blocks[n];
        if (order == BlockOrder::Reversed)
            std::sort(b.begin(), b.end(), [](const Tridegree& x, const Tridegree& y) {
                return std::array{x[2], x[1], x[0]} < std::array{y[2], y[1], y[0]};
            });
        for (const auto& k : b) {
            offset[n][k] = dims[n];
            dims[n] += tc.dim(k);
        }
    }
    std::vector<SparseMatrix> diffs;
    for (int n = 0; n < top; ++n) {
        BlockAssembler asm_(dims[n + 1], dims[n]);
        for (const auto& k : blocks[n])
            for (int a = 0; a < 3; ++a) {
                Tridegree t = k;
                ++t[a];
                auto it = offset[n + 1].find(t);
                if (it == offset[n + 1].end())
                    continue;
                asm_.add(it->second, offset[n][k], tc.partial(a, k));
            }
        diffs.push_back(std::move(asm_).build());
    }
    GradedComplex c(std::move(dims), std::move(diffs));
    c.verify_d_squared();
    return c;
}

inline GradedComplex totalize_double(const DoubleComplexSpec& dc, BlockOrder order = BlockOrder::Lexicographic)
{
    return totalize_triple(dc.as_triple(), order);
}

/// Cochain complex wrapped as the single column p = 0 of a double complex.
inline DoubleComplexSpec column_double_complex(const GradedComplex& c)
{
    DoubleComplexSpec dc;
    dc.max_degree = c.max_degree();
    for (int q = 0; q <= c.max_degree() + 1; ++q)
        dc.dims[{0, q}] = c.dim(q);
    for (int q = 0; q <= c.max_degree(); ++q)
        dc.d[1][{0, q}] = c.differential(q);
    return dc;
}

} // namespace nerve
