#pragma once

#include "nerve/error.hpp"

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace nerve {

/// Group elements are dense indices 0..order-1.
using Element = std::uint32_t;
using CayleyTable = std::vector<std::vector<Element>>;

/// A finite group given by its full multiplication table. Instances are
/// validated on construction and immutable afterwards.
class Group {
public:
    std::size_t order() const noexcept { return inv_.size(); }
    Element identity() const noexcept { return identity_; }
    Element mul(Element a, Element b) const { return table_[a * order() + b]; }
    Element inv(Element a) const { return inv_[a]; }
    bool contains(Element a) const noexcept { return a < order(); }

    CayleyTable cayley() const
    {
        CayleyTable t(order(), std::vector<Element>(order()));
        for (Element a = 0; a < order(); ++a)
            for (Element b = 0; b < order(); ++b)
                t[a][b] = mul(a, b);
        return t;
    }

    bool operator==(const Group& other) const { return table_ == other.table_; }

    friend Group group_from_cayley(const CayleyTable& table);

private:
    std::vector<Element> table_;
    std::vector<Element> inv_;
    Element identity_ = 0;
};

namespace detail {

inline bool associative_triple(const Group& g, Element a, Element b, Element c)
{
    return g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c));
}

inline constexpr std::size_t kExhaustiveAssociativityOrder = 64;
inline constexpr std::size_t kSampledAssociativityTriples = 100000;

} // namespace detail

/// Validates an n x n table and returns the group it defines. Checks run in
/// the order: shape, entry range, identity, Latin property, associativity.
inline Group group_from_cayley(const CayleyTable& table)
{
    const std::size_t n = table.size();
    if (n == 0)
        throw Error(ErrorCode::NotSquare, "empty table");
    for (std::size_t r = 0; r < n; ++r) {
        if (table[r].size() != n)
            throw Error(ErrorCode::NotSquare, "row " + std::to_string(r) + " has " + std::to_string(table[r].size()) +
                                                  " entries, expected " + std::to_string(n));
        for (std::size_t c = 0; c < n; ++c)
            if (table[r][c] >= n)
                throw Error(ErrorCode::EntryOutOfRange, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                                            ") = " + std::to_string(table[r][c]));
    }

    Group g;
    g.table_.resize(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            g.table_[r * n + c] = table[r][c];

    bool found = false;
    for (Element e = 0; e < n && !found; ++e) {
        bool two_sided = true;
        for (Element x = 0; x < n && two_sided; ++x)
            two_sided = table[e][x] == x && table[x][e] == x;
        if (two_sided) {
            g.identity_ = e;
            found = true;
        }
    }
    if (!found)
        throw Error(ErrorCode::NoIdentity, "no two-sided identity element");

    // Latin property: every row and column is a permutation.
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<bool> row_seen(n, false), col_seen(n, false);
        for (std::size_t c = 0; c < n; ++c) {
            if (row_seen[table[r][c]])
                throw Error(ErrorCode::NotInvertible, "row " + std::to_string(r) + " is not a permutation");
            row_seen[table[r][c]] = true;
            if (col_seen[table[c][r]])
                throw Error(ErrorCode::NotInvertible, "column " + std::to_string(r) + " is not a permutation");
            col_seen[table[c][r]] = true;
        }
    }

    g.inv_.assign(n, 0);
    for (Element a = 0; a < n; ++a) {
        Element b = 0;
        while (table[a][b] != g.identity_)
            ++b;
        if (table[b][a] != g.identity_)
            throw Error(ErrorCode::NotInvertible, "element " + std::to_string(a) + " has no two-sided inverse");
        g.inv_[a] = b;
    }

    auto fail = [](Element a, Element b, Element c) {
        throw Error(ErrorCode::NotAssociative, "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" +
                                                   std::to_string(c) + " != " + std::to_string(a) + "*(" +
                                                   std::to_string(b) + "*" + std::to_string(c) + ")");
    };
    if (n <= detail::kExhaustiveAssociativityOrder) {
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                for (Element c = 0; c < n; ++c)
                    if (!detail::associative_triple(g, a, b, c))
                        fail(a, b, c);
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
        for (std::size_t k = 0; k < detail::kSampledAssociativityTriples; ++k) {
            Element a = pick(rng), b = pick(rng), c = pick(rng);
            if (!detail::associative_triple(g, a, b, c))
                fail(a, b, c);
        }
    }
    return g;
}

inline Group cyclic_group(std::size_t n)
{
    if (n == 0)
        throw Error(ErrorCode::SizeMismatch, "cyclic group order must be at least 1");
    CayleyTable t(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            t[a][b] = static_cast<Element>((a + b) % n);
    return group_from_cayley(t);
}

inline Group trivial_group() { return cyclic_group(1); }

inline std::size_t element_order(const Group& g, Element x)
{
    std::size_t k = 1;
    for (Element y = x; y != g.identity(); y = g.mul(y, x))
        ++k;
    return k;
}

inline bool is_abelian(const Group& g)
{
    for (Element a = 0; a < g.order(); ++a)
        for (Element b = 0; b < a; ++b)
            if (g.mul(a, b) != g.mul(b, a))
                return false;
    return true;
}

/// A validated homomorphism source -> target.
struct GroupHom {
    Group source;
    Group target;
    std::vector<Element> map;

    Element operator()(Element x) const { return map[x]; }

    bool is_injective() const
    {
        std::vector<bool> seen(target.order(), false);
        for (Element y : map) {
            if (seen[y])
                return false;
            seen[y] = true;
        }
        return true;
    }
};

inline GroupHom group_hom(const Group& source, const Group& target, std::vector<Element> images)
{
    if (images.size() != source.order())
        throw Error(ErrorCode::SizeMismatch, "image table has " + std::to_string(images.size()) +
                                                 " entries, group has order " + std::to_string(source.order()));
    for (std::size_t x = 0; x < images.size(); ++x)
        if (!target.contains(images[x]))
            throw Error(ErrorCode::EntryOutOfRange, "image of " + std::to_string(x) + " is " +
                                                       std::to_string(images[x]));
    for (Element a = 0; a < source.order(); ++a)
        for (Element b = 0; b < source.order(); ++b)
            if (images[source.mul(a, b)] != target.mul(images[a], images[b]))
                throw Error(ErrorCode::NotHomomorphism, "f(" + std::to_string(a) + "*" + std::to_string(b) +
                                                            ") != f(" + std::to_string(a) + ")*f(" +
                                                            std::to_string(b) + ")");
    return GroupHom{source, target, std::move(images)};
}

inline GroupHom automorphism_from_images(const Group& g, std::vector<Element> images)
{
    if (images.size() != g.order())
        throw Error(ErrorCode::SizeMismatch, "image table has " + std::to_string(images.size()) +
                                                 " entries, group has order " + std::to_string(g.order()));
    std::vector<bool> hit(g.order(), false);
    for (std::size_t x = 0; x < images.size(); ++x) {
        if (!g.contains(images[x]))
            throw Error(ErrorCode::EntryOutOfRange, "image of " + std::to_string(x) + " is " +
                                                       std::to_string(images[x]));
        if (hit[images[x]])
            throw Error(ErrorCode::NotBijective, "element " + std::to_string(images[x]) + " is hit twice");
        hit[images[x]] = true;
    }
    return group_hom(g, g, std::move(images));
}

inline GroupHom identity_automorphism(const Group& g)
{
    std::vector<Element> id(g.order());
    std::iota(id.begin(), id.end(), Element{0});
    return GroupHom{g, g, std::move(id)};
}

/// An action of `actor` (H) on `space` (G) by automorphisms; alpha[h][g] is
/// the image of g under the automorphism attached to h.
struct GroupAction {
    Group actor;
    Group space;
    std::vector<std::vector<Element>> alpha;

    Element apply(Element h, Element g) const { return alpha[h][g]; }

    bool is_trivial() const
    {
        for (Element h = 0; h < actor.order(); ++h)
            for (Element g = 0; g < space.order(); ++g)
                if (alpha[h][g] != g)
                    return false;
        return true;
    }
};

/// Validates per-h automorphism tables and functoriality
/// alpha(h1 h2) = alpha(h1) o alpha(h2).
inline GroupAction group_action(const Group& actor, const Group& space, std::vector<std::vector<Element>> per_h)
{
    if (per_h.size() != actor.order())
        throw Error(ErrorCode::SizeMismatch, "action lists " + std::to_string(per_h.size()) +
                                                 " automorphisms, acting group has order " +
                                                 std::to_string(actor.order()));
    for (Element h = 0; h < actor.order(); ++h) {
        try {
            automorphism_from_images(space, per_h[h]);
        } catch (const Error& e) {
            throw Error(ErrorCode::NotAutomorphism, "alpha(h=" + std::to_string(h) + "): " + e.what());
        }
    }
    for (Element g = 0; g < space.order(); ++g)
        if (per_h[actor.identity()][g] != g)
            throw Error(ErrorCode::NotHomomorphism, "alpha(identity) moves " + std::to_string(g));
    for (Element h1 = 0; h1 < actor.order(); ++h1)
        for (Element h2 = 0; h2 < actor.order(); ++h2)
            for (Element g = 0; g < space.order(); ++g)
                if (per_h[actor.mul(h1, h2)][g] != per_h[h1][per_h[h2][g]])
                    throw Error(ErrorCode::NotHomomorphism,
                                "alpha(" + std::to_string(h1) + "*" + std::to_string(h2) + ") != alpha(" +
                                    std::to_string(h1) + ") o alpha(" + std::to_string(h2) + ") at g=" +
                                    std::to_string(g));
    return GroupAction{actor, space, std::move(per_h)};
}

inline GroupAction trivial_action(const Group& actor, const Group& space)
{
    std::vector<Element> id(space.order());
    std::iota(id.begin(), id.end(), Element{0});
    return GroupAction{actor, space, std::vector<std::vector<Element>>(actor.order(), id)};
}

/// alpha(h)(g) = embed(h) g embed(h)^-1 for an injective embed: H -> G.
inline GroupAction conjugation_action(const Group& g, const GroupHom& embed)
{
    if (!(embed.target == g))
        throw Error(ErrorCode::CarrierMismatch, "embedding does not land in the given group");
    if (!embed.is_injective())
        throw Error(ErrorCode::NotInjective, "embedding of the acting group is not injective");
    const Group& h = embed.source;
    std::vector<std::vector<Element>> per_h(h.order(), std::vector<Element>(g.order()));
    for (Element a = 0; a < h.order(); ++a) {
        Element k = embed(a);
        for (Element x = 0; x < g.order(); ++x)
            per_h[a][x] = g.mul(g.mul(k, x), g.inv(k));
    }
    return GroupAction{h, g, std::move(per_h)};
}

/// G x| H with (g,h)(g',h') = (g alpha_h(g'), h h'). The pair (g,h) is the
/// product element g*|H| + h.
struct SemidirectProduct {
    Group G;
    Group H;
    GroupAction action;
    Group product;

    Element pair(Element g, Element h) const { return static_cast<Element>(g * H.order() + h); }
    std::pair<Element, Element> split(Element x) const
    {
        return {static_cast<Element>(x / H.order()), static_cast<Element>(x % H.order())};
    }
};

inline SemidirectProduct semidirect_product(const Group& g, const Group& h, const GroupAction& action)
{
    if (!(action.space == g))
        throw Error(ErrorCode::CarrierMismatch, "action does not act on the normal factor");
    if (!(action.actor == h))
        throw Error(ErrorCode::CarrierMismatch, "action's acting group differs from the complement");
    const std::size_t ng = g.order(), nh = h.order(), n = ng * nh;
    CayleyTable t(n, std::vector<Element>(n));
    for (Element g1 = 0; g1 < ng; ++g1)
        for (Element h1 = 0; h1 < nh; ++h1)
            for (Element g2 = 0; g2 < ng; ++g2)
                for (Element h2 = 0; h2 < nh; ++h2)
                    t[g1 * nh + h1][g2 * nh + h2] =
                        static_cast<Element>(g.mul(g1, action.apply(h1, g2)) * nh + h.mul(h1, h2));
    return SemidirectProduct{g, h, action, group_from_cayley(t)};
}

} // namespace nerve
