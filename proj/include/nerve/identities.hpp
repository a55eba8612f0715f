#pragma once

// Structural self-checks for the nerve constructions: simplicial identities,
// bisimplicial commutation, (bi)simpliciality of gamma and gamma_x|, and the
// principal (G x| H)-action. Each property is checked exhaustively on small
// levels and on seeded random samples at larger ones.

#include "nerve/group.hpp"
#include "nerve/simplicial.hpp"

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace nerve {

struct IdentityCheck {
    std::string name;
    std::size_t exhaustive = 0;
    std::size_t sampled = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool ok() const noexcept { return failures == 0; }
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;

    bool ok() const
    {
        for (const auto& c : checks)
            if (!c.ok())
                return false;
        return true;
    }
};

struct IdentityConfig {
    /// Levels whose point count stays below this are enumerated in full.
    std::size_t exhaustive_points = 5000;
    std::size_t exhaustive_level = 4;
    /// Largest level drawn by the random sampler.
    std::size_t random_level = 6;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::string show(const Tuple& t)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < t.size(); ++k)
        os << (k ? "," : "") << t[k];
    os << ')';
    return os.str();
}

inline std::string show(const Tuple& g, const Tuple& h) { return show(g) + "|" + show(h); }

class CheckRunner {
public:
    explicit CheckRunner(IdentityCheck& check) : check_(check) {}

    void record(bool exhaustive, bool passed, const std::function<std::string()>& describe)
    {
        (exhaustive ? check_.exhaustive : check_.sampled)++;
        if (!passed) {
            if (check_.failures == 0)
                check_.first_failure = describe();
            ++check_.failures;
        }
    }

private:
    IdentityCheck& check_;
};

inline Tuple random_tuple(std::mt19937_64& rng, std::size_t level, std::size_t order)
{
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(order - 1));
    Tuple t(level);
    for (auto& x : t)
        x = pick(rng);
    return t;
}

// Visits every tuple pair of bidegree (a,b) over (n1,n2) when small enough.
template <class F>
void for_all_pairs(std::size_t a, std::size_t b, std::size_t n1, std::size_t n2, std::size_t budget, F&& f)
{
    std::size_t c1 = checked_power(n1, a, budget), c2 = checked_power(n2, b, budget);
    if (c1 > budget || c2 > budget || c1 * c2 > budget)
        return;
    for (std::size_t i = 0; i < c1; ++i) {
        Tuple x = tuple_from_index(i, a, n1);
        for (std::size_t j = 0; j < c2; ++j)
            f(x, tuple_from_index(j, b, n2));
    }
}

} // namespace detail

/// Runs every structural property for the action of H on G. Plain groups are
/// checked through the conjugation action of the group on itself.
inline IdentityReport verify_identities(const GroupAction& act, const IdentityConfig& cfg = {})
{
    const Group& G = act.space;
    const Group& H = act.actor;
    const std::size_t ng = G.order(), nh = H.order();
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> level_dist(2, cfg.random_level);

    IdentityReport report;
    auto add = [&report](std::string name) -> IdentityCheck& {
        report.checks.push_back(IdentityCheck{std::move(name)});
        return report.checks.back();
    };

    // eps_i eps_j = eps_{j-1} eps_i for i < j on a level-L tuple.
    auto ng_identity = [](const Group& grp, detail::CheckRunner& run, bool ex, const Tuple& t) {
        const std::size_t L = t.size();
        for (std::size_t j = 1; j <= L; ++j)
            for (std::size_t i = 0; i < j; ++i) {
                bool ok = face_ng(grp, i, face_ng(grp, j, t)) == face_ng(grp, j - 1, face_ng(grp, i, t));
                run.record(ex, ok, [&] { return "i=" + std::to_string(i) + " j=" + std::to_string(j) + " " + detail::show(t); });
            }
    };

    for (const auto* grp : {&G, &H}) {
        IdentityCheck& c = add(grp == &G ? "NG face identities (G)" : "NG face identities (H)");
        detail::CheckRunner run(c);
        for (std::size_t L = 2; L <= cfg.exhaustive_level; ++L)
            detail::for_all_pairs(L, 0, grp->order(), 1, cfg.exhaustive_points,
                                  [&](const Tuple& t, const Tuple&) { ng_identity(*grp, run, true, t); });
        for (std::size_t s = 0; s < cfg.samples; ++s)
            ng_identity(*grp, run, false, detail::random_tuple(rng, level_dist(rng), grp->order()));
    }

    {
        IdentityCheck& c = add("NGbar face identities");
        detail::CheckRunner run(c);
        auto check = [&](bool ex, const Tuple& t) {
            const std::size_t q = t.size() - 1;
            for (std::size_t j = 1; j <= q; ++j)
                for (std::size_t i = 0; i < j; ++i) {
                    bool ok = face_ngbar(i, face_ngbar(j, t)) == face_ngbar(j - 1, face_ngbar(i, t));
                    run.record(ex, ok, [&] { return "i=" + std::to_string(i) + " j=" + std::to_string(j) + " " + detail::show(t); });
                }
        };
        for (std::size_t L = 3; L <= cfg.exhaustive_level + 1; ++L)
            detail::for_all_pairs(L, 0, ng, 1, cfg.exhaustive_points, [&](const Tuple& t, const Tuple&) { check(true, t); });
        for (std::size_t s = 0; s < cfg.samples; ++s)
            check(false, detail::random_tuple(rng, level_dist(rng) + 1, ng));
    }

    {
        IdentityCheck& c = add("gamma is simplicial");
        detail::CheckRunner run(c);
        auto check = [&](bool ex, const Tuple& t) {
            const std::size_t q = t.size() - 1;
            const Tuple gt = gamma_map(G, t);
            for (std::size_t i = 0; i <= q; ++i) {
                bool ok = gamma_map(G, face_ngbar(i, t)) == face_ng(G, i, gt);
                run.record(ex, ok, [&] { return "i=" + std::to_string(i) + " " + detail::show(t); });
            }
        };
        for (std::size_t L = 2; L <= cfg.exhaustive_level + 1; ++L)
            detail::for_all_pairs(L, 0, ng, 1, cfg.exhaustive_points, [&](const Tuple& t, const Tuple&) { check(true, t); });
        for (std::size_t s = 0; s < cfg.samples; ++s)
            check(false, detail::random_tuple(rng, level_dist(rng), ng));
    }

    // Random bidegree with p + q >= 1 on each side that the check needs.
    auto random_bidegree = [&](std::size_t min_p, std::size_t min_q) {
        std::uniform_int_distribution<std::size_t> dp(min_p, cfg.random_level), dq(min_q, cfg.random_level);
        return std::pair{dp(rng), dq(rng)};
    };

    {
        IdentityCheck& c = add("bisimplicial identities");
        detail::CheckRunner run(c);
        auto check = [&](bool ex, const Tuple& g, const Tuple& h) {
            const BiTuple t{g, h};
            const std::size_t p = g.size(), q = h.size();
            auto where = [&](const char* kind, std::size_t i, std::size_t j) {
                return std::string(kind) + " i=" + std::to_string(i) + " j=" + std::to_string(j) + " " + detail::show(g, h);
            };
            for (std::size_t i = 0; i <= p && p > 0; ++i)
                for (std::size_t j = 0; j <= q && q > 0; ++j) {
                    bool ok = face_horizontal(G, i, face_vertical(act, j, t)) == face_vertical(act, j, face_horizontal(G, i, t));
                    run.record(ex, ok, [&] { return where("commute", i, j); });
                }
            for (std::size_t j = 1; j <= q && q >= 2; ++j)
                for (std::size_t i = 0; i < j; ++i) {
                    bool ok = face_vertical(act, i, face_vertical(act, j, t)) == face_vertical(act, j - 1, face_vertical(act, i, t));
                    run.record(ex, ok, [&] { return where("vertical", i, j); });
                }
            for (std::size_t j = 1; j <= p && p >= 2; ++j)
                for (std::size_t i = 0; i < j; ++i) {
                    bool ok = face_horizontal(G, i, face_horizontal(G, j, t)) == face_horizontal(G, j - 1, face_horizontal(G, i, t));
                    run.record(ex, ok, [&] { return where("horizontal", i, j); });
                }
        };
        for (std::size_t p = 0; p <= cfg.exhaustive_level; ++p)
            for (std::size_t q = 0; p + q <= cfg.exhaustive_level; ++q)
                if (p + q >= 2)
                    detail::for_all_pairs(p, q, ng, nh, cfg.exhaustive_points, [&](const Tuple& g, const Tuple& h) { check(true, g, h); });
        for (std::size_t s = 0; s < cfg.samples; ++s) {
            auto [p, q] = random_bidegree(1, 1);
            check(false, detail::random_tuple(rng, p, ng), detail::random_tuple(rng, q, nh));
        }
    }

    {
        IdentityCheck& c = add("gamma_semidirect is bisimplicial");
        detail::CheckRunner run(c);
        auto check = [&](bool ex, const Tuple& g, const Tuple& h) {
            const BiTuple image = gamma_semidirect(act, g, h);
            const std::size_t p = g.size() - 1, q = h.size() - 1;
            for (std::size_t i = 0; i <= p && p > 0; ++i) {
                bool ok = gamma_semidirect(act, face_ngbar(i, g), h) == face_horizontal(G, i, image);
                run.record(ex, ok, [&] { return "horizontal i=" + std::to_string(i) + " " + detail::show(g, h); });
            }
            for (std::size_t j = 0; j <= q && q > 0; ++j) {
                bool ok = gamma_semidirect(act, g, face_ngbar(j, h)) == face_vertical(act, j, image);
                run.record(ex, ok, [&] { return "vertical j=" + std::to_string(j) + " " + detail::show(g, h); });
            }
        };
        for (std::size_t a = 1; a <= cfg.exhaustive_level; ++a)
            for (std::size_t b = 1; a + b <= cfg.exhaustive_level + 1; ++b)
                detail::for_all_pairs(a, b, ng, nh, cfg.exhaustive_points, [&](const Tuple& g, const Tuple& h) { check(true, g, h); });
        for (std::size_t s = 0; s < cfg.samples; ++s) {
            auto [p, q] = random_bidegree(1, 1);
            check(false, detail::random_tuple(rng, p, ng), detail::random_tuple(rng, q, nh));
        }
    }

    {
        IdentityCheck& inv = add("gamma_semidirect is action-invariant");
        IdentityCheck& right = add("right action composes as a right action");
        detail::CheckRunner run_inv(inv), run_right(right);
        std::uniform_int_distribution<Element> pg(0, static_cast<Element>(ng - 1)), ph(0, static_cast<Element>(nh - 1));
        auto check = [&](bool ex, const Tuple& g, const Tuple& h, Element a1, Element b1, Element a2, Element b2) {
            const BarPoint x{g, h};
            const BarPoint y = right_action(act, x, a1, b1);
            bool ok = gamma_semidirect(act, y.g, y.h) == gamma_semidirect(act, g, h);
            run_inv.record(ex, ok, [&] { return "(g,h)=(" + std::to_string(a1) + "," + std::to_string(b1) + ") " + detail::show(g, h); });
            // (g1,h1)(g2,h2) = (g1 alpha_h1(g2), h1 h2)
            const Element ga = G.mul(a1, act.apply(b1, a2)), hb = H.mul(b1, b2);
            ok = right_action(act, y, a2, b2) == right_action(act, x, ga, hb);
            run_right.record(ex, ok, [&] { return "composition at " + detail::show(g, h); });
        };
        for (std::size_t a = 1; a <= 2; ++a)
            for (std::size_t b = 1; b <= 2; ++b)
                detail::for_all_pairs(a, b, ng, nh, cfg.exhaustive_points / 10, [&](const Tuple& g, const Tuple& h) {
                    for (Element a1 = 0; a1 < ng; ++a1)
                        for (Element b1 = 0; b1 < nh; ++b1)
                            check(true, g, h, a1, b1, pg(rng), ph(rng));
                });
        for (std::size_t s = 0; s < cfg.samples; ++s) {
            auto [p, q] = random_bidegree(1, 1);
            check(false, detail::random_tuple(rng, p, ng), detail::random_tuple(rng, q, nh), pg(rng), ph(rng), pg(rng), ph(rng));
        }
    }

    {
        IdentityCheck& c = add("right action is free");
        detail::CheckRunner run(c);
        auto check = [&](bool ex, const Tuple& g, const Tuple& h, Element a, Element b) {
            const BarPoint x{g, h};
            const bool fixed = right_action(act, x, a, b) == x;
            const bool trivial = a == G.identity() && b == H.identity();
            run.record(ex, fixed == trivial, [&] { return "(" + std::to_string(a) + "," + std::to_string(b) + ") " + detail::show(g, h); });
        };
        // Exhaustive over NGbar(p) x NHbar(q) for p, q <= 2 when |G|, |H| <= 6.
        if (ng <= 6 && nh <= 6) {
            for (std::size_t a = 1; a <= 3; ++a)
                for (std::size_t b = 1; b <= 3; ++b)
                    detail::for_all_pairs(a, b, ng, nh, std::size_t{1} << 20, [&](const Tuple& g, const Tuple& h) {
                        for (Element x = 0; x < ng; ++x)
                            for (Element y = 0; y < nh; ++y)
                                check(true, g, h, x, y);
                    });
        }
        std::uniform_int_distribution<Element> pg(0, static_cast<Element>(ng - 1)), ph(0, static_cast<Element>(nh - 1));
        for (std::size_t s = 0; s < cfg.samples; ++s) {
            auto [p, q] = random_bidegree(1, 1);
            Tuple g = detail::random_tuple(rng, p, ng), h = detail::random_tuple(rng, q, nh);
            // Half the samples probe the identity element to exercise the fixed-point branch.
            if (s % 2 == 0)
                check(false, g, h, G.identity(), H.identity());
            else
                check(false, g, h, pg(rng), ph(rng));
        }
    }

    return report;
}

} // namespace nerve
