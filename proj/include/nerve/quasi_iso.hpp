#pragma once

// Instance check of the column comparison principle for first-quadrant
// double complexes: a map that is a quasi-isomorphism on every column
// (fixed p, differential d'') induces an isomorphism on total cohomology.

#include "nerve/classifying.hpp"
#include "nerve/complex.hpp"

#include <map>
#include <optional>
#include <vector>

namespace nerve {

struct DoubleComplexMap {
    DoubleComplexSpec source;
    DoubleComplexSpec target;
    /// (p,q) -> target.dim(p,q) x source.dim(p,q); absent blocks are zero.
    std::map<std::array<int, 2>, SparseMatrix> blocks;

    SparseMatrix block(int p, int q) const
    {
        auto it = blocks.find({p, q});
        if (it != blocks.end())
            return it->second;
        return SparseMatrix(target.dim(p, q), source.dim(p, q));
    }
};

struct ColumnCheck {
    int p = 0;
    /// Column cohomology is compared through this q (and injectivity one above).
    int checked_through = 0;
    std::vector<std::size_t> cone_betti;
    /// Lowest column degree where the induced map is not an isomorphism.
    std::optional<int> failing_degree;

    bool quasi_iso() const noexcept { return !failing_degree; }
};

struct QuasiIsoReport {
    std::vector<ColumnCheck> columns;
    BettiTable source_total;
    BettiTable target_total;
    bool totals_agree = false;

    bool columns_pass() const
    {
        for (const auto& c : columns)
            if (!c.quasi_iso())
                return false;
        return true;
    }

    std::optional<int> first_failing_column() const
    {
        for (const auto& c : columns)
            if (!c.quasi_iso())
                return c.p;
        return std::nullopt;
    }

    /// Column-wise quasi-isomorphism without agreeing totals would contradict the column comparison principle.
    bool consistent() const { return !columns_pass() || totals_agree; }
    bool passed() const { return columns_pass() && totals_agree; }
};

namespace detail {

inline void require_chain_map(const DoubleComplexMap& f, const RingSpec& ring, int top)
{
    for (int p = 0; p <= top; ++p)
        for (int q = 0; p + q < top; ++q) {
            const SparseMatrix fpq = f.block(p, q);
            if (!(f.block(p + 1, q) * f.source.partial(0, p, q) - f.target.partial(0, p, q) * fpq).is_zero_in(ring))
                throw Error(ErrorCode::NotChainMap, "map does not commute with d' at (" + std::to_string(p) + "," + std::to_string(q) + ")");
            if (!(f.block(p, q + 1) * f.source.partial(1, p, q) - f.target.partial(1, p, q) * fpq).is_zero_in(ring))
                throw Error(ErrorCode::NotChainMap, "map does not commute with d'' at (" + std::to_string(p) + "," + std::to_string(q) + ")");
        }
}

/// Mapping cone of f restricted to column p, shifted so that index k holds
/// A^k (+) B^{k-1}; H_k(cone) = 0 for k <= Q+1 means f is an isomorphism on
/// column cohomology through degree Q and injective in degree Q+1.
inline GradedComplex column_cone(const DoubleComplexMap& f, int p, int Q)
{
    const auto& A = f.source;
    const auto& B = f.target;
    std::vector<std::size_t> dims;
    for (int k = 0; k <= Q + 2; ++k)
        dims.push_back(A.dim(p, k) + (k >= 1 ? B.dim(p, k - 1) : 0));
    std::vector<SparseMatrix> d;
    for (int k = 0; k <= Q + 1; ++k) {
        BlockAssembler m(dims[k + 1], dims[k]);
        const std::size_t a_next = A.dim(p, k + 1), a_here = A.dim(p, k);
        m.add(0, 0, A.partial(1, p, k), -1);
        m.add(a_next, 0, f.block(p, k));
        if (k >= 1)
            m.add(a_next, a_here, B.partial(1, p, k - 1));
        d.push_back(std::move(m).build());
    }
    return GradedComplex(std::move(dims), std::move(d));
}

/// Column p of a double complex as a complex in q through degree Q+1.
inline GradedComplex column_complex(const DoubleComplexSpec& dc, int p, int Q)
{
    std::vector<std::size_t> dims;
    std::vector<SparseMatrix> d;
    for (int q = 0; q <= Q + 2; ++q)
        dims.push_back(dc.dim(p, q));
    for (int q = 0; q <= Q + 1; ++q)
        d.push_back(dc.partial(1, p, q));
    return GradedComplex(std::move(dims), std::move(d));
}

} // namespace detail

/// Checks f column by column through total degree maxdeg and compares the
/// total Betti tables. Both complexes must carry blocks through total
/// degree maxdeg+2 (max_degree >= maxdeg+1).
inline QuasiIsoReport check_column_quasi_iso_total(const DoubleComplexMap& f, const RingSpec& ring, int maxdeg)
{
    if (f.source.max_degree < maxdeg + 1 || f.target.max_degree < maxdeg + 1)
        throw Error(ErrorCode::InsufficientTruncation, "column check through degree " + std::to_string(maxdeg) +
                                                           " needs double complexes with max_degree >= " +
                                                           std::to_string(maxdeg + 1));
    detail::require_chain_map(f, ring, maxdeg + 2);

    QuasiIsoReport rep;
    for (int p = 0; p <= maxdeg; ++p) {
        const int Q = maxdeg - p;
        ColumnCheck col;
        col.p = p;
        col.checked_through = Q;
        const GradedComplex cone = detail::column_cone(f, p, Q);
        cone.verify_d_squared();
        col.cone_betti = betti_table(cone, ring, Q + 1).betti();
        for (int k = 0; k <= Q + 1; ++k)
            if (col.cone_betti[k] != 0) {
                // A nonzero cone class at k is a cokernel in degree k-1 or a
                // kernel in degree k; equal column cohomology in k-1 together
                // with injectivity there rules out the cokernel.
                col.failing_degree = k;
                if (k >= 1) {
                    const auto a = cohomology(detail::column_complex(f.source, p, Q), k - 1, ring);
                    const auto b = cohomology(detail::column_complex(f.target, p, Q), k - 1, ring);
                    if (!(a.betti == b.betti && a.torsion == b.torsion))
                        col.failing_degree = k - 1;
                }
                break;
            }
        rep.columns.push_back(std::move(col));
    }
    rep.source_total = betti_table(totalize_double(f.source), ring, maxdeg);
    rep.target_total = betti_table(totalize_double(f.target), ring, maxdeg);
    rep.totals_agree = rep.source_total.betti() == rep.target_total.betti();
    return rep;
}

/// Double complex obtained from a triple complex concentrated at r = 0.
inline DoubleComplexSpec collapse_form_degree(const TripleComplexSpec& tc)
{
    DoubleComplexSpec dc;
    dc.max_degree = tc.max_degree;
    for (const auto& [k, n] : tc.dims) {
        if (k[2] != 0) {
            if (n != 0)
                throw Error(ErrorCode::InvariantViolation, "triple complex has cells in positive form degree");
            continue;
        }
        dc.dims[{k[0], k[1]}] = n;
    }
    for (int axis = 0; axis < 2; ++axis)
        for (const auto& [k, m] : tc.d[axis])
            if (k[2] == 0)
                dc.d[axis][{k[0], k[1]}] = m;
    return dc;
}

/// The finite-group comparison instance: H-invariant nerve cochains placed in
/// row q = 0 (zero vertical differential) mapping by inclusion into the
/// semidirect double complex of functions on G^p x H^q.
inline DoubleComplexMap invariant_inclusion_instance(const GroupAction& act, int maxdeg,
                                                     std::size_t cap = kDefaultResourceCap)
{
    const int built = maxdeg + 1;
    DoubleComplexMap f;
    f.target = collapse_form_degree(semidirect_triple_spec(act, built, cap));
    const auto eq = weinstein_equivariant_complex(act, RingSpec::rationals(), built, cap);
    f.source.max_degree = built;
    for (int p = 0; p <= built + 1; ++p)
        f.source.dims[{p, 0}] = eq.complex.dim(p);
    for (int p = 0; p <= built; ++p)
        f.source.d[0][{p, 0}] = eq.complex.differential(p);
    for (int p = 0; p <= built + 1; ++p)
        f.blocks[{p, 0}] = invariant_inclusion(eq.orbits[p]);
    return f;
}

} // namespace nerve
