#pragma once

// Cochain models of classifying spaces of finite groups:
//   * the nerve complex of BG (functions on G^p),
//   * the triple complex of NG(*) x| NH(*), concentrated at form degree 0,
//   * the equivariant (H-invariant) nerve complex of G,
// and the three-way comparison between them for B(G x| H).

#include "nerve/complex.hpp"
#include "nerve/group.hpp"
#include "nerve/ring.hpp"
#include "nerve/simplicial.hpp"

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace nerve {

inline constexpr std::size_t kDefaultResourceCap = 50000;

namespace detail {

inline std::size_t level_size(std::size_t order, int level, std::size_t cap, const char* what)
{
    const std::size_t n = checked_power(order, static_cast<std::size_t>(level), cap);
    if (n > cap)
        throw Error(ErrorCode::ResourceCap, std::string(what) + ": level " + std::to_string(level) + " has " +
                                                std::to_string(order) + "^" + std::to_string(level) +
                                                " points, above the cap of " + std::to_string(cap));
    return n;
}

inline void require_degree(int maxdeg)
{
    if (maxdeg < 0)
        throw Error(ErrorCode::SizeMismatch, "max degree must be nonnegative");
}

/// Point of G^p x H^q <-> index (G-block most significant).
struct BiIndexer {
    std::size_t ng, nh, p, q;

    std::size_t size() const { return checked_power(ng, p, SIZE_MAX / 2) * checked_power(nh, q, SIZE_MAX / 2); }
    std::size_t encode(const BiTuple& t) const { return tuple_index(t.g, ng) * checked_power(nh, q, SIZE_MAX) + tuple_index(t.h, nh); }
    BiTuple decode(std::size_t idx) const
    {
        const std::size_t hs = checked_power(nh, q, SIZE_MAX);
        return BiTuple{tuple_from_index(idx / hs, p, ng), tuple_from_index(idx % hs, q, nh)};
    }
};

} // namespace detail

/// Coboundary C(G^p) -> C(G^{p+1}) of the nerve: sum_i (-1)^i eps_i^*.
inline SparseMatrix nerve_coboundary(const Group& g, int p)
{
    const std::size_t n = g.order();
    const std::size_t src = checked_power(n, p, SIZE_MAX), dst = checked_power(n, p + 1, SIZE_MAX);
    std::vector<IndexedFace> faces;
    for (int i = 0; i <= p + 1; ++i)
        faces.push_back([&g, i, p, n](std::size_t x) {
            return tuple_index(face_ng(g, i, tuple_from_index(x, p + 1, n)), n);
        });
    return simplicial_differential(faces, dst, src);
}

/// Unnormalized cochain complex of the nerve NG in degrees 0..maxdeg+1.
inline GradedComplex bg_complex(const Group& g, int maxdeg, std::size_t cap = kDefaultResourceCap)
{
    detail::require_degree(maxdeg);
    std::vector<std::size_t> dims;
    for (int p = 0; p <= maxdeg + 1; ++p)
        dims.push_back(detail::level_size(g.order(), p, cap, "bg_complex"));
    std::vector<SparseMatrix> d;
    for (int p = 0; p <= maxdeg; ++p)
        d.push_back(nerve_coboundary(g, p));
    GradedComplex c(std::move(dims), std::move(d));
    c.verify_d_squared();
    return c;
}

inline GradedComplex bar_complex_of_product_group(const SemidirectProduct& sd, int maxdeg,
                                                  std::size_t cap = kDefaultResourceCap)
{
    return bg_complex(sd.product, maxdeg, cap);
}

/// Triple complex of functions on NG(p) x| NH(q) with
///   d'   = sum_i (-1)^i (eps_i^G)^*,
///   d''  = (-1)^p sum_i (-1)^i (eps_i^H)^*,
///   d''' = 0 (finite groups carry only 0-forms).
inline TripleComplexSpec semidirect_triple_spec(const GroupAction& act, int maxdeg, std::size_t cap = kDefaultResourceCap)
{
    detail::require_degree(maxdeg);
    const Group& G = act.space;
    const Group& H = act.actor;
    const std::size_t ng = G.order(), nh = H.order();
    const int top = maxdeg + 1;
    TripleComplexSpec tc;
    tc.max_degree = maxdeg;
    for (int n = 0; n <= top; ++n) {
        std::size_t total = 0;
        for (int p = 0; p <= n; ++p) {
            const std::size_t s = detail::BiIndexer{ng, nh, std::size_t(p), std::size_t(n - p)}.size();
            total += s;
            tc.dims[{p, n - p, 0}] = s;
        }
        if (total > cap)
            throw Error(ErrorCode::ResourceCap, "semidirect triple complex: total degree " + std::to_string(n) + " has " +
                                                    std::to_string(total) + " cells, above the cap of " + std::to_string(cap));
    }
    for (int p = 0; p < top; ++p)
        for (int q = 0; p + q < top; ++q) {
            const detail::BiIndexer src{ng, nh, std::size_t(p), std::size_t(q)};
            {
                const detail::BiIndexer dst{ng, nh, std::size_t(p + 1), std::size_t(q)};
                std::vector<IndexedFace> faces;
                for (int i = 0; i <= p + 1; ++i)
                    faces.push_back([&G, src, dst, i](std::size_t x) { return src.encode(face_horizontal(G, i, dst.decode(x))); });
                tc.d[0][{p, q, 0}] = simplicial_differential(faces, dst.size(), src.size());
            }
            {
                const detail::BiIndexer dst{ng, nh, std::size_t(p), std::size_t(q + 1)};
                std::vector<IndexedFace> faces;
                for (int i = 0; i <= q + 1; ++i)
                    faces.push_back([&act, src, dst, i](std::size_t x) { return src.encode(face_vertical(act, i, dst.decode(x))); });
                SparseMatrix dv = simplicial_differential(faces, dst.size(), src.size());
                tc.d[1][{p, q, 0}] = (p % 2 == 0) ? std::move(dv) : dv.scaled(-1);
            }
        }
    return tc;
}

inline GradedComplex bsemidirect_triple_complex(const GroupAction& act, int maxdeg, std::size_t cap = kDefaultResourceCap)
{
    return totalize_triple(semidirect_triple_spec(act, maxdeg, cap));
}

/// Orbits of the diagonal action h.(g_1..g_p) = (alpha_h g_1, ..., alpha_h g_p)
/// on G^p. Orbits are numbered by their least point index.
struct LevelOrbits {
    std::vector<std::uint32_t> orbit_of;      ///< point -> orbit number
    std::vector<std::size_t> representative;  ///< orbit -> least point

    std::size_t count() const noexcept { return representative.size(); }
};

inline Tuple act_diagonal(const GroupAction& act, Element h, Tuple t)
{
    for (auto& x : t)
        x = act.apply(h, x);
    return t;
}

inline LevelOrbits level_orbits(const GroupAction& act, int p)
{
    const std::size_t n = act.space.order();
    const std::size_t size = checked_power(n, p, SIZE_MAX);
    LevelOrbits lo;
    lo.orbit_of.assign(size, UINT32_MAX);
    for (std::size_t x = 0; x < size; ++x) {
        if (lo.orbit_of[x] != UINT32_MAX)
            continue;
        const auto id = static_cast<std::uint32_t>(lo.representative.size());
        lo.representative.push_back(x);
        const Tuple t = tuple_from_index(x, p, n);
        for (Element h = 0; h < act.actor.order(); ++h)
            lo.orbit_of[tuple_index(act_diagonal(act, h, t), n)] = id;
    }
    return lo;
}

/// Inclusion of H-invariant functions (orbit-sum basis) into C(G^p).
inline SparseMatrix invariant_inclusion(const LevelOrbits& lo)
{
    std::vector<Triplet> t;
    for (std::size_t x = 0; x < lo.orbit_of.size(); ++x)
        t.push_back({x, lo.orbit_of[x], 1});
    return SparseMatrix::from_triplets(lo.orbit_of.size(), lo.count(), std::move(t));
}

struct Hypotheses {
    /// |H| is invertible in the coefficient ring, so averaging over H exists.
    bool averaging = true;
    std::vector<std::string> notes;
};

inline Hypotheses check_hypotheses(std::size_t order_h, const RingSpec& ring)
{
    Hypotheses h;
    h.averaging = ring.inverts(static_cast<std::int64_t>(order_h));
    if (!h.averaging) {
        if (ring.is_integers())
            h.notes.push_back("|H| = " + std::to_string(order_h) + " is not invertible in Z: equivariant comparison out-of-hypothesis");
        else
            h.notes.push_back("char k divides |H| = " + std::to_string(order_h) + ": equivariant comparison out-of-hypothesis");
    }
    return h;
}

struct EquivariantComplex {
    GradedComplex complex;
    std::vector<LevelOrbits> orbits;
    std::vector<std::string> warnings;
};

namespace detail {

inline void check_face_equivariance(const GroupAction& act, int level)
{
    const Group& G = act.space;
    const std::size_t n = G.order();
    const std::size_t size = checked_power(n, level, SIZE_MAX);
    for (std::size_t x = 0; x < size; ++x) {
        const Tuple t = tuple_from_index(x, level, n);
        for (Element h = 0; h < act.actor.order(); ++h) {
            const Tuple ht = act_diagonal(act, h, t);
            for (int i = 0; i <= level; ++i)
                if (face_ng(G, i, ht) != act_diagonal(act, h, face_ng(G, i, t)))
                    throw Error(ErrorCode::EquivarianceFailure, "face " + std::to_string(i) + " is not H-equivariant at level " +
                                                                    std::to_string(level));
        }
    }
}

} // namespace detail

/// H-invariant cochains on the nerve of G, i.e. the equivariant nerve complex
/// for a finite acting group (polynomial part reduced to constants).
inline EquivariantComplex weinstein_equivariant_complex(const GroupAction& act, const RingSpec& ring, int maxdeg,
                                                        std::size_t cap = kDefaultResourceCap)
{
    detail::require_degree(maxdeg);
    const Group& G = act.space;
    const std::size_t n = G.order();
    EquivariantComplex out;
    for (const auto& note : check_hypotheses(act.actor.order(), ring).notes)
        out.warnings.push_back(note);

    std::vector<std::size_t> dims;
    for (int p = 0; p <= maxdeg + 1; ++p) {
        detail::level_size(n, p, cap, "weinstein_equivariant_complex");
        out.orbits.push_back(level_orbits(act, p));
        dims.push_back(out.orbits.back().count());
        if (p >= 1)
            detail::check_face_equivariance(act, p);
    }
    std::vector<SparseMatrix> d;
    for (int p = 0; p <= maxdeg; ++p) {
        const LevelOrbits& src = out.orbits[p];
        const LevelOrbits& dst = out.orbits[p + 1];
        std::vector<Triplet> t;
        for (std::size_t o = 0; o < dst.count(); ++o) {
            const Tuple rep = tuple_from_index(dst.representative[o], p + 1, n);
            for (int i = 0; i <= p + 1; ++i)
                t.push_back({o, src.orbit_of[tuple_index(face_ng(G, i, rep), n)], (i % 2 == 0) ? 1 : -1});
        }
        d.push_back(SparseMatrix::from_triplets(dst.count(), src.count(), std::move(t)));
    }
    out.complex = GradedComplex(std::move(dims), std::move(d));
    out.complex.verify_d_squared();
    return out;
}

// --- three-way comparison -------------------------------------------------

struct PipelineReport {
    std::string pipeline;
    std::string group;
    RingSpec ring = RingSpec::rationals();
    int max_degree = 0;
    std::optional<BettiTable> table;
    std::string error;
    double wall_seconds = 0.0;
};

enum class Verdict { Pass, Fail, Incomplete };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Incomplete: return "INCOMPLETE";
    }
    return "?";
}

struct ComparisonReport {
    std::string group;
    RingSpec ring = RingSpec::rationals();
    int max_degree = 0;
    Hypotheses hypotheses;
    std::vector<std::string> warnings;
    /// semidirect triple complex, nerve of the product group, equivariant complex.
    std::array<PipelineReport, 3> pipelines;
    std::optional<bool> semidirect_agrees;
    std::optional<bool> equivariant_agrees;
    Verdict verdict = Verdict::Incomplete;
};

namespace detail {

template <class Build>
PipelineReport run_pipeline(std::string name, const std::string& group, const RingSpec& ring, int maxdeg, Build&& build)
{
    PipelineReport r;
    r.pipeline = std::move(name);
    r.group = group;
    r.ring = ring;
    r.max_degree = maxdeg;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.table = betti_table(build(), ring, maxdeg);
    } catch (const Error& e) {
        r.error = e.what();
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

} // namespace detail

inline std::string describe(const GroupAction& act)
{
    return "G of order " + std::to_string(act.space.order()) + " x| H of order " + std::to_string(act.actor.order()) +
           (act.is_trivial() ? " (trivial action)" : "");
}

/// Computes H*(B(G x| H)) three ways and compares degree by degree. The
/// equivariant pipeline only decides the verdict when |H| is invertible in
/// the ring; otherwise its outcome is recorded but not judged.
inline ComparisonReport verify_theorem41(const GroupAction& act, const RingSpec& ring, int maxdeg,
                                        std::size_t cap = kDefaultResourceCap, std::string label = {})
{
    detail::require_degree(maxdeg);
    ComparisonReport rep;
    rep.group = label.empty() ? describe(act) : std::move(label);
    rep.ring = ring;
    rep.max_degree = maxdeg;
    rep.hypotheses = check_hypotheses(act.actor.order(), ring);

    rep.pipelines[0] = detail::run_pipeline("bsemidirect_triple_complex", rep.group, ring, maxdeg,
                                            [&] { return bsemidirect_triple_complex(act, maxdeg, cap); });
    rep.pipelines[1] = detail::run_pipeline("bar_complex_of_product_group", rep.group, ring, maxdeg, [&] {
        return bar_complex_of_product_group(semidirect_product(act.space, act.actor, act), maxdeg, cap);
    });
    rep.pipelines[2] = detail::run_pipeline("weinstein_equivariant_complex", rep.group, ring, maxdeg, [&] {
        auto eq = weinstein_equivariant_complex(act, ring, maxdeg, cap);
        rep.warnings = eq.warnings;
        return std::move(eq.complex);
    });

    const auto& [tri, bar, eqv] = rep.pipelines;
    if (tri.table && bar.table)
        rep.semidirect_agrees = *tri.table == *bar.table;
    if (eqv.table && bar.table)
        rep.equivariant_agrees = *eqv.table == *bar.table;

    if (!rep.semidirect_agrees || (rep.hypotheses.averaging && !rep.equivariant_agrees))
        rep.verdict = Verdict::Incomplete;
    else if (!*rep.semidirect_agrees || (rep.hypotheses.averaging && !*rep.equivariant_agrees))
        rep.verdict = Verdict::Fail;
    else
        rep.verdict = Verdict::Pass;
    return rep;
}

} // namespace nerve
