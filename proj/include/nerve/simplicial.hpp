#pragma once

// Face maps of the nerve NG, of the contractible NGbar, and of the
// bisimplicial set NG(*) x| NH(*), evaluated pointwise on tuples.
// Degeneracies are not modelled.

#include "nerve/error.hpp"
#include "nerve/group.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nerve {

using Tuple = std::vector<Element>;

/// A point of NG(p) x| NH(q): p entries in G followed by q entries in H.
struct BiTuple {
    Tuple g;
    Tuple h;

    bool operator==(const BiTuple&) const = default;
};

namespace detail {

inline void require_index(std::size_t i, std::size_t max, const char* what)
{
    if (i > max)
        throw Error(ErrorCode::IndexOutOfRange,
                    std::string(what) + ": face index " + std::to_string(i) + " exceeds " + std::to_string(max));
}

} // namespace detail

/// eps_i : NG(q) -> NG(q-1). Drops the first entry (i = 0), multiplies
/// entries i and i+1 (0 < i < q) or drops the last entry (i = q).
inline Tuple face_ng(const Group& g, std::size_t i, const Tuple& t)
{
    const std::size_t q = t.size();
    if (q == 0)
        throw Error(ErrorCode::IndexOutOfRange, "face_ng: level 0 has no faces");
    detail::require_index(i, q, "face_ng");
    Tuple out;
    out.reserve(q - 1);
    if (i == 0) {
        out.assign(t.begin() + 1, t.end());
    } else if (i == q) {
        out.assign(t.begin(), t.end() - 1);
    } else {
        out.assign(t.begin(), t.begin() + (i - 1));
        out.push_back(g.mul(t[i - 1], t[i]));
        out.insert(out.end(), t.begin() + (i + 1), t.end());
    }
    return out;
}

/// eps-bar_i : NGbar(q) -> NGbar(q-1) on tuples of length q+1; deletes the
/// entry at zero-based position i.
inline Tuple face_ngbar(std::size_t i, const Tuple& t)
{
    if (t.size() < 2)
        throw Error(ErrorCode::IndexOutOfRange, "face_ngbar: level 0 has no faces");
    detail::require_index(i, t.size() - 1, "face_ngbar");
    Tuple out;
    out.reserve(t.size() - 1);
    for (std::size_t k = 0; k < t.size(); ++k)
        if (k != i)
            out.push_back(t[k]);
    return out;
}

/// gamma(g_1, ..., g_{q+1}) = (g_1 g_2^-1, ..., g_q g_{q+1}^-1).
inline Tuple gamma_map(const Group& g, const Tuple& t)
{
    if (t.empty())
        throw Error(ErrorCode::SizeMismatch, "gamma: empty tuple");
    Tuple out(t.size() - 1);
    for (std::size_t k = 0; k + 1 < t.size(); ++k)
        out[k] = g.mul(t[k], g.inv(t[k + 1]));
    return out;
}

inline BiTuple face_horizontal(const Group& g, std::size_t i, const BiTuple& t)
{
    return BiTuple{face_ng(g, i, t.g), t.h};
}

/// Vertical face eps_i^H. The last face twists the G-part by the
/// automorphism of the dropped last H-entry.
inline BiTuple face_vertical(const GroupAction& act, std::size_t i, const BiTuple& t)
{
    const std::size_t q = t.h.size();
    if (q == 0)
        throw Error(ErrorCode::IndexOutOfRange, "face_vertical: vertical level 0 has no faces");
    detail::require_index(i, q, "face_vertical");
    if (i < q)
        return BiTuple{t.g, face_ng(act.actor, i, t.h)};
    BiTuple out{t.g, Tuple(t.h.begin(), t.h.end() - 1)};
    const Element last = t.h.back();
    for (auto& x : out.g)
        x = act.apply(last, x);
    return out;
}

/// gamma_x| : NGbar(p) x NHbar(q) -> NG(p) x| NH(q); `g` has p+1 entries,
/// `h` has q+1 entries.
inline BiTuple gamma_semidirect(const GroupAction& act, const Tuple& g, const Tuple& h)
{
    if (g.empty() || h.empty())
        throw Error(ErrorCode::SizeMismatch, "gamma_semidirect: both parts need at least one entry");
    BiTuple out{gamma_map(act.space, g), gamma_map(act.actor, h)};
    const Element last = h.back();
    for (auto& x : out.g)
        x = act.apply(last, x);
    return out;
}

/// Point of NGbar(p) x NHbar(q), the total space of gamma_x|.
struct BarPoint {
    Tuple g;
    Tuple h;

    bool operator==(const BarPoint&) const = default;
};

/// Right action of (g,h) in G x| H: g_i -> alpha_{h^-1}(g_i g), h_j -> h_j h.
inline BarPoint right_action(const GroupAction& act, const BarPoint& x, Element g, Element h)
{
    if (!act.space.contains(g) || !act.actor.contains(h))
        throw Error(ErrorCode::EntryOutOfRange, "right_action: acting element out of range");
    const Group& G = act.space;
    const Group& H = act.actor;
    const Element hinv = H.inv(h);
    BarPoint out = x;
    for (auto& gi : out.g)
        gi = act.apply(hinv, G.mul(gi, g));
    for (auto& hj : out.h)
        hj = H.mul(hj, h);
    return out;
}

// Mixed-radix encoding of tuples, leftmost entry most significant.

inline std::size_t tuple_index(const Tuple& t, std::size_t radix)
{
    std::size_t idx = 0;
    for (Element x : t)
        idx = idx * radix + x;
    return idx;
}

inline Tuple tuple_from_index(std::size_t idx, std::size_t level, std::size_t radix)
{
    Tuple t(level);
    for (std::size_t k = level; k-- > 0;) {
        t[k] = static_cast<Element>(idx % radix);
        idx /= radix;
    }
    return t;
}

inline std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap)
{
    std::size_t r = 1;
    for (std::size_t k = 0; k < exp; ++k) {
        if (base != 0 && r > cap / base)
            return cap + 1;
        r *= base;
    }
    return r;
}

} // namespace nerve
