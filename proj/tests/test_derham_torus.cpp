#include "nerve/derham_torus.hpp"

#include <gtest/gtest.h>

using namespace nerve;

namespace {

using Betti = std::vector<std::size_t>;

Betti betti_q(const GradedComplex& c) { return betti_table(c, RingSpec::rationals()).betti(); }

std::size_t binomial(std::size_t n, std::size_t k)
{
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

TEST(Exterior, KoszulSigns)
{
    const auto a = ExteriorElement::form(0), b = ExteriorElement::form(1);
    EXPECT_EQ(a * b, (b * a) * Rational(-1));
    EXPECT_TRUE((a * a).is_zero());
    const auto u = ExteriorElement::poly(0);
    EXPECT_EQ(u * a, a * u);
    EXPECT_EQ((a * b).terms().begin()->first.degree(), 2u);
    EXPECT_EQ(u.terms().begin()->first.degree(), 2u);
    // d(theta_0 theta_1) with d theta_i = u_i: u_0 theta_1 - theta_0 u_1.
    const std::vector<ExteriorElement> d{ExteriorElement::poly(0), ExteriorElement::poly(1)};
    EXPECT_EQ((a * b).derivation(d), ExteriorElement::poly(0) * b - a * ExteriorElement::poly(1));
}

TEST(TorusFaces, Examples)
{
    EXPECT_EQ(torus_face_pullback(0, 1, 1).nnz(), 0u);
    EXPECT_EQ(torus_face_pullback(1, 1, 1).nnz(), 0u);
    const auto m = torus_face_pullback(1, 2, 1);
    EXPECT_EQ(m.to_dense(), (std::vector<std::vector<std::int64_t>>{{1}, {1}}));
    EXPECT_EQ(torus_face_pullback(0, 2, 1).to_dense(), (std::vector<std::vector<std::int64_t>>{{0}, {1}}));
    EXPECT_EQ(torus_face_pullback(2, 2, 1).to_dense(), (std::vector<std::vector<std::int64_t>>{{1}, {0}}));
}

TEST(TorusFaces, SimplicialIdentitiesOnExteriorPowers)
{
    // eps_i eps_j = eps_{j-1} eps_i on points; pulled back, the order flips.
    for (std::size_t n = 1; n <= 2; ++n)
        for (std::size_t p = 2; p <= 5; ++p)
            for (std::size_t q = 0; q <= 3 && q <= n * (p - 2); ++q)
                for (std::size_t j = 1; j <= p; ++j)
                    for (std::size_t i = 0; i < j; ++i) {
                        const auto lhs = exterior_power_pullback(j, p, n, q) * exterior_power_pullback(i, p - 1, n, q);
                        const auto rhs = exterior_power_pullback(i, p, n, q) * exterior_power_pullback(j - 1, p - 1, n, q);
                        ASSERT_EQ(lhs, rhs) << "n=" << n << " p=" << p << " q=" << q << " i=" << i << " j=" << j;
                    }
}

TEST(TorusFaces, DifferentialSquaresToZero)
{
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto spec = bt_double_complex_spec(n, 4);
        for (const auto& [k, d] : spec.d[0]) {
            auto next = spec.d[0].find({k[0] + 1, k[1]});
            if (next != spec.d[0].end())
                EXPECT_TRUE((next->second * d).is_zero());
        }
    }
}

TEST(BT, RankZeroIsAPoint)
{
    EXPECT_EQ(betti_q(bt_double_complex(0, 4)), (Betti{1, 0, 0, 0, 0}));
    EXPECT_EQ(betti_q(weinstein_torus_complex(0, 4)), (Betti{1, 0, 0, 0, 0}));
}

TEST(BT, Circle)
{
    EXPECT_EQ(betti_q(bt_double_complex(1, 6)), (Betti{1, 0, 1, 0, 1, 0, 1}));
}

TEST(BT, RankTwoDegreeFour)
{
    EXPECT_EQ(betti_q(bt_double_complex(2, 4))[4], 3u);
}

TEST(BT, EvenConcentration)
{
    for (std::size_t n = 1; n <= 3; ++n) {
        const int maxdeg = n == 3 ? 4 : 6;
        const auto b = betti_q(bt_double_complex(n, maxdeg));
        for (int k = 0; k <= maxdeg; ++k) {
            // Poincare series of k[u_1..u_n] with generators in degree 2.
            const std::size_t expect = k % 2 ? 0 : binomial(n - 1 + k / 2, k / 2);
            EXPECT_EQ(b[k], expect) << "n=" << n << " degree " << k;
        }
    }
}

TEST(WeinsteinTorus, CircleActingOnItself)
{
    const auto b = betti_q(weinstein_torus_complex(1, 6));
    EXPECT_EQ(b, (Betti{1, 0, 2, 0, 3, 0, 4}));
    for (int k = 0; k <= 6; k += 2)
        EXPECT_EQ(b[k], binomial(1 + k / 2, k / 2));
}

TEST(WeinsteinTorus, DegreeTwoClasses)
{
    // One class from the nerve direction (block (1,1)), one from u (block (0,2)).
    const auto spec = weinstein_torus_spec(1, 3);
    EXPECT_EQ(spec.dim(0, 2), 1u);
    EXPECT_TRUE(spec.partial(0, 0, 2).is_zero());
    const auto bt = betti_q(bt_double_complex(1, 3));
    EXPECT_EQ(betti_q(weinstein_torus_complex(1, 3))[2], bt[2] + 1);
}

TEST(Cartan, FreeCircle)
{
    const GradedComplex c = cartan_free_circle(6);
    EXPECT_EQ(betti_q(c), (Betti{1, 0, 0, 0, 0, 0, 0}));
    EXPECT_EQ(betti_q(cartan_free_circle(6, +1)), betti_q(c));
    EXPECT_EQ(betti_table(c, RingSpec::integers()), betti_table(cartan_free_circle(6, +1), RingSpec::integers()));
}

TEST(Torus, EulerCharacteristicOfTruncation)
{
    // For a complex truncated at degree m, sum (-1)^k dim C^k over k <= m
    // equals sum (-1)^k betti_k plus (-1)^m rank d_m.
    const GradedComplex c = weinstein_torus_complex(2, 4);
    long long chi_c = 0, chi_h = 0;
    const auto b = betti_q(c);
    for (int k = 0; k <= 4; ++k) {
        chi_c += (k % 2 ? -1 : 1) * static_cast<long long>(c.dim(k));
        chi_h += (k % 2 ? -1 : 1) * static_cast<long long>(b[k]);
    }
    EXPECT_EQ(chi_c, chi_h + static_cast<long long>(rank(c.differential(4), RingSpec::rationals())));
}
