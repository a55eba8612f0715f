#include "nerve/quasi_iso.hpp"

#include <gtest/gtest.h>

using namespace nerve;

namespace {

GroupAction inversion_z3()
{
    return group_action(cyclic_group(2), cyclic_group(3), {{0, 1, 2}, {0, 2, 1}});
}

DoubleComplexMap identity_map(const DoubleComplexSpec& dc)
{
    DoubleComplexMap f{dc, dc, {}};
    for (const auto& [k, n] : dc.dims)
        f.blocks[k] = SparseMatrix::identity(n);
    return f;
}

} // namespace

TEST(QuasiIso, IdentityPasses)
{
    const auto dc = collapse_form_degree(semidirect_triple_spec(inversion_z3(), 4));
    const auto rep = check_column_quasi_iso_total(identity_map(dc), RingSpec::integers(), 3);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.columns.size(), 4u);
    for (const auto& c : rep.columns)
        for (auto b : c.cone_betti)
            EXPECT_EQ(b, 0u);
}

TEST(QuasiIso, InvariantInclusionOverF3)
{
    const auto f = invariant_inclusion_instance(inversion_z3(), 4);
    const auto rep = check_column_quasi_iso_total(f, RingSpec::prime_field(3), 4);
    EXPECT_TRUE(rep.columns_pass());
    EXPECT_TRUE(rep.totals_agree);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.source_total.betti(), (std::vector<std::size_t>{1, 0, 0, 1, 1}));
}

TEST(QuasiIso, InvariantInclusionOutOfHypothesisIsConsistent)
{
    // Over F2 averaging fails; whatever the columns do, the report must not
    // claim column quasi-isomorphism with disagreeing totals.
    const auto f = invariant_inclusion_instance(inversion_z3(), 3);
    EXPECT_TRUE(check_column_quasi_iso_total(f, RingSpec::prime_field(2), 3).consistent());
}

TEST(QuasiIso, ZeroMapOnAColumnIsFlagged)
{
    // Column 0 split off from the rest; the map is zero there and the
    // identity elsewhere.
    auto dc = collapse_form_degree(semidirect_triple_spec(inversion_z3(), 4));
    for (int q = 0; q <= 5; ++q)
        dc.d[0].erase({0, q});
    DoubleComplexMap f = identity_map(dc);
    for (int q = 0; q <= 5; ++q)
        f.blocks.erase({0, q});
    const auto rep = check_column_quasi_iso_total(f, RingSpec::prime_field(3), 3);
    EXPECT_FALSE(rep.columns_pass());
    EXPECT_EQ(rep.first_failing_column(), std::optional<int>(0));
    EXPECT_EQ(rep.columns[0].failing_degree, std::optional<int>(0));
    for (std::size_t p = 1; p < rep.columns.size(); ++p)
        EXPECT_TRUE(rep.columns[p].quasi_iso());
    EXPECT_FALSE(rep.passed());
    EXPECT_TRUE(rep.consistent());
}

TEST(QuasiIso, RejectsNonChainMaps)
{
    const auto dc = collapse_form_degree(semidirect_triple_spec(inversion_z3(), 3));
    DoubleComplexMap f = identity_map(dc);
    f.blocks[{1, 0}] = SparseMatrix(dc.dim(1, 0), dc.dim(1, 0));
    try {
        check_column_quasi_iso_total(f, RingSpec::rationals(), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotChainMap);
    }
    EXPECT_THROW(check_column_quasi_iso_total(identity_map(dc), RingSpec::rationals(), 3), Error);
}
