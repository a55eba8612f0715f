#include "nerve/group.hpp"
#include "nerve/group_spec.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>

using namespace nerve;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::SpecError;
}

// Symmetric group on three letters from composition of permutations.
CayleyTable symmetric3()
{
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    CayleyTable t(6, std::vector<Element>(6));
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i)
                c[i] = perms[a][perms[b][i]];
            t[a][b] = static_cast<Element>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return t;
}

// First Latin square of order n with identity 0, two-sided inverses and a
// failure of associativity.
bool find_nonassociative_loop(std::size_t n, CayleyTable& t, std::size_t cell = 0)
{
    if (cell == (n - 1) * (n - 1)) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (t[a][b] == 0 && t[b][a] != 0)
                    return false;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (t[t[a][b]][c] != t[a][t[b][c]])
                        return true;
        return false;
    }
    const std::size_t r = 1 + cell / (n - 1), c = 1 + cell % (n - 1);
    for (Element v = 0; v < n; ++v) {
        bool ok = true;
        for (std::size_t k = 0; k < c && ok; ++k)
            ok = t[r][k] != v;
        for (std::size_t k = 0; k < r && ok; ++k)
            ok = t[k][c] != v;
        if (!ok)
            continue;
        t[r][c] = v;
        if (find_nonassociative_loop(n, t, cell + 1))
            return true;
    }
    return false;
}

std::map<std::size_t, std::size_t> order_census(const Group& g)
{
    std::map<std::size_t, std::size_t> m;
    for (Element x = 0; x < g.order(); ++x)
        ++m[element_order(g, x)];
    return m;
}

} // namespace

TEST(Group, CyclicBasics)
{
    EXPECT_EQ(cyclic_group(1).order(), 1u);
    const Group z4 = cyclic_group(4);
    EXPECT_EQ(z4.mul(3, 2), 1u);
    EXPECT_EQ(z4.inv(3), 1u);
    EXPECT_EQ(code_of([] { cyclic_group(0); }), ErrorCode::SizeMismatch);
}

TEST(Group, CyclicSixHasOneInvolution)
{
    const Group z6 = cyclic_group(6);
    std::size_t count = 0;
    for (Element x = 0; x < 6; ++x)
        if (z6.mul(x, x) == z6.identity() && x != z6.identity())
            ++count;
    EXPECT_EQ(count, 1u);
    EXPECT_EQ(order_census(z6).at(2), 1u);
}

TEST(Group, CayleyValidation)
{
    EXPECT_EQ(group_from_cayley({{0}}).order(), 1u);
    EXPECT_EQ(group_from_cayley({{0, 1}, {1, 0}}), cyclic_group(2));
    EXPECT_EQ(code_of([] { group_from_cayley({{0, 1}}); }), ErrorCode::NotSquare);
    EXPECT_EQ(code_of([] { group_from_cayley({{0, 2}, {1, 0}}); }), ErrorCode::EntryOutOfRange);
    EXPECT_EQ(code_of([] { group_from_cayley({{0, 1}, {1, 1}}); }), ErrorCode::NotInvertible);
}

TEST(Group, NonAssociativeLoopRejected)
{
    CayleyTable t(5, std::vector<Element>(5, 0));
    for (Element k = 0; k < 5; ++k)
        t[0][k] = t[k][0] = k;
    ASSERT_TRUE(find_nonassociative_loop(5, t));
    EXPECT_EQ(code_of([&] { group_from_cayley(t); }), ErrorCode::NotAssociative);
}

TEST(Group, OrderThreeLatinSquareWithoutIdentity)
{
    // Every order-3 Latin square with an identity is Z/3, so these have none.
    EXPECT_EQ(code_of([] { group_from_cayley({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}); }), ErrorCode::NoIdentity);
    EXPECT_EQ(code_of([] { group_from_cayley({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}); }), ErrorCode::NoIdentity);
}

TEST(Group, ExhaustiveAssociativity)
{
    const Group s3 = group_from_cayley(symmetric3());
    for (Element a = 0; a < 6; ++a)
        for (Element b = 0; b < 6; ++b)
            for (Element c = 0; c < 6; ++c)
                EXPECT_EQ(s3.mul(s3.mul(a, b), c), s3.mul(a, s3.mul(b, c)));
}

TEST(Group, Automorphisms)
{
    const Group z3 = cyclic_group(3);
    EXPECT_EQ(automorphism_from_images(z3, {0, 1, 2}).map, identity_automorphism(z3).map);
    const auto inv = automorphism_from_images(z3, {0, 2, 1});
    for (Element x = 0; x < 3; ++x)
        EXPECT_EQ(inv(x), z3.inv(x));
    EXPECT_EQ(code_of([] { automorphism_from_images(cyclic_group(4), {0, 2, 0, 2}); }), ErrorCode::NotBijective);
    EXPECT_EQ(code_of([] { automorphism_from_images(cyclic_group(4), {0, 2, 1, 3}); }), ErrorCode::NotHomomorphism);
}

TEST(Group, ActionValidation)
{
    const Group z3 = cyclic_group(3), z2 = cyclic_group(2);
    try {
        group_action(z2, z3, {{0, 1, 2}, {1, 2, 0}});
        FAIL() << "translation accepted as automorphism";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotAutomorphism);
        EXPECT_NE(std::string(e.what()).find("h=1"), std::string::npos) << e.what();
    }
    // Z/4 acting on Z/3 through a non-functorial assignment.
    EXPECT_EQ(code_of([&] { group_action(cyclic_group(4), z3, {{0, 1, 2}, {0, 2, 1}, {0, 2, 1}, {0, 2, 1}}); }),
              ErrorCode::NotHomomorphism);
    EXPECT_EQ(code_of([&] { group_action(z2, z3, {{0, 1, 2}}); }), ErrorCode::SizeMismatch);
}

TEST(Group, SemidirectIsSymmetricGroup)
{
    const Group z3 = cyclic_group(3), z2 = cyclic_group(2);
    const auto sd = semidirect_product(z3, z2, group_action(z2, z3, {{0, 1, 2}, {0, 2, 1}}));
    EXPECT_EQ(sd.product.order(), 6u);
    EXPECT_FALSE(is_abelian(sd.product));
    const auto census = order_census(sd.product);
    EXPECT_EQ(census.at(3), 2u);
    EXPECT_EQ(census.at(2), 3u);
    EXPECT_EQ(census, order_census(group_from_cayley(symmetric3())));
    // Product rule (g,h)(g',h') = (g alpha_h(g'), hh').
    for (Element g = 0; g < 3; ++g)
        for (Element h = 0; h < 2; ++h)
            for (Element g2 = 0; g2 < 3; ++g2)
                for (Element h2 = 0; h2 < 2; ++h2) {
                    const Element expect_g = (g + (h ? (3 - g2) % 3 : g2)) % 3;
                    EXPECT_EQ(sd.split(sd.product.mul(sd.pair(g, h), sd.pair(g2, h2))),
                              std::make_pair(expect_g, static_cast<Element>((h + h2) % 2)));
                }
}

TEST(Group, SemidirectTrivialCases)
{
    const Group z3 = cyclic_group(3), z2 = cyclic_group(2);
    const auto direct = semidirect_product(z3, z2, trivial_action(z2, z3));
    EXPECT_TRUE(is_abelian(direct.product));
    EXPECT_EQ(order_census(direct.product), order_census(cyclic_group(6)));
    for (Element a = 0; a < 6; ++a)
        for (Element b = 0; b < 6; ++b) {
            const auto [ga, ha] = direct.split(a);
            const auto [gb, hb] = direct.split(b);
            EXPECT_EQ(direct.product.mul(a, b), direct.pair((ga + gb) % 3, (ha + hb) % 2));
        }
    const auto s3 = group_from_cayley(symmetric3());
    EXPECT_EQ(semidirect_product(s3, trivial_group(), trivial_action(trivial_group(), s3)).product, s3);
    EXPECT_EQ(code_of([&] { semidirect_product(z2, z2, trivial_action(z2, z3)); }), ErrorCode::CarrierMismatch);
}

TEST(Group, ConjugationActions)
{
    const Group z4 = cyclic_group(4);
    EXPECT_TRUE(conjugation_action(z4, group_hom(trivial_group(), z4, {0})).is_trivial());
    EXPECT_TRUE(conjugation_action(z4, group_hom(cyclic_group(2), z4, {0, 2})).is_trivial());
    EXPECT_EQ(code_of([&] { conjugation_action(z4, group_hom(cyclic_group(2), z4, {0, 0})); }), ErrorCode::NotInjective);

    const Group s3 = group_from_cayley(symmetric3());
    const auto self = conjugation_action(s3, identity_automorphism(s3));
    std::vector<Element> three_cycles, transpositions;
    for (Element x = 0; x < 6; ++x) {
        if (element_order(s3, x) == 3)
            three_cycles.push_back(x);
        if (element_order(s3, x) == 2)
            transpositions.push_back(x);
    }
    ASSERT_EQ(three_cycles.size(), 2u);
    for (Element t : transpositions) {
        EXPECT_EQ(self.apply(t, three_cycles[0]), three_cycles[1]);
        EXPECT_EQ(self.apply(t, three_cycles[1]), three_cycles[0]);
    }
}

TEST(Group, ActionFunctoriality)
{
    const Group s3 = group_from_cayley(symmetric3());
    const auto act = conjugation_action(s3, identity_automorphism(s3));
    for (Element a = 0; a < 6; ++a)
        for (Element b = 0; b < 6; ++b)
            for (Element g = 0; g < 6; ++g)
                EXPECT_EQ(act.apply(s3.mul(a, b), g), act.apply(a, act.apply(b, g)));
}

TEST(GroupSpec, ParsesAndReportsFields)
{
    EXPECT_EQ(parse_group_spec(R"({"type":"cyclic","n":3})").group, cyclic_group(3));
    const auto sd = parse_group_spec(R"({"type":"semidirect","G":{"type":"cyclic","n":3},"H":{"type":"cyclic","n":2},
        "action":{"type":"images","per_h":[[0,1,2],[0,2,1]]}})");
    ASSERT_TRUE(sd.semidirect);
    EXPECT_EQ(sd.group.order(), 6u);

    auto message = [](const std::string& text) {
        try {
            parse_group_spec(text);
        } catch (const Error& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message(R"({"type":"cyclic"})").find("n: missing field"), std::string::npos);
    EXPECT_NE(message(R"({"type":"cyclic","n":0})").find("n:"), std::string::npos);
    EXPECT_NE(message(R"({"type":"semidirect","G":{"type":"cyclic","n":3},"H":{"type":"cyclic","n":2},
        "action":{"type":"images","per_h":[[0,1,2],[1,2,0]]}})")
                  .find("NotAutomorphism: action: alpha(h=1)"),
              std::string::npos);
    EXPECT_NE(message(R"({"type":"cayley","table":[[0,1],[1,"x"]]})").find("table[1][1]"), std::string::npos);
    EXPECT_NE(message("{").find("SpecError"), std::string::npos);
}
