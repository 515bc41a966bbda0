#include <gtest/gtest.h>

#include <mixmult/errors.hpp>
#include <mixmult/filtration.hpp>

#include "support.hpp"

using namespace mixmult;
using test::diagonal;
using test::ideal;

namespace
{

const MonomialIdeal m2 = MonomialIdeal::maximal(2);

std::vector<Filtration> shipped_kinds()
{
    return {Filtration::powers(ideal(2, {{2, 0}, {0, 1}})),
            Filtration::scaled_powers(m2, 2, 3),
            Filtration::weighted({Rational(1), Rational(2)}),
            Filtration::weighted({Rational(3, 2), Rational(1)}),
            Filtration::subpolynomial_sqrt(m2),
            Filtration::subpolynomial_sqrt(m2).truncate(3),
            Filtration::powers(diagonal({1, 2, 1}))};
}

} // namespace

TEST(Filtration, Members)
{
    const auto I = ideal(2, {{2, 0}, {0, 1}});
    EXPECT_EQ(Filtration::powers(I).ideal_at(3), power(I, 3));
    EXPECT_EQ(Filtration::powers(I).ideal_at(0), MonomialIdeal::unit(2));
    EXPECT_EQ(Filtration::scaled_powers(m2, 1, 2).ideal_at(3), power(m2, 2));
    EXPECT_EQ(Filtration::weighted({Rational(1), Rational(2)}).ideal_at(1), m2);
    EXPECT_EQ(Filtration::weighted({Rational(1), Rational(2)}).ideal_at(2), ideal(2, {{2, 0}, {0, 1}}));
    EXPECT_EQ(Filtration::weighted({Rational(1, 2), Rational(1)}).ideal_at(1), ideal(2, {{2, 0}, {1, 1}, {0, 1}}));
    EXPECT_EQ(Filtration::subpolynomial_sqrt(m2).ideal_at(5), power(m2, 3));
    EXPECT_EQ(Filtration::subpolynomial_sqrt(m2).ideal_at(9), power(m2, 3));
}

TEST(Filtration, FactoryErrors)
{
    EXPECT_THROW(Filtration::scaled_powers(m2, 0, 1), InputError);
    EXPECT_THROW(Filtration::weighted({Rational(1), Rational(0)}), InputError);
    EXPECT_THROW(Filtration::powers(m2).truncate(0), InputError);
    EXPECT_THROW(Filtration::weighted({Rational(1), Rational(1)}).base(), InputError);
}

TEST(Filtration, TruncationOfSqrt)
{
    const auto T = Filtration::subpolynomial_sqrt(m2).truncate(2);
    EXPECT_EQ(T.ideal_at(1), m2);
    EXPECT_EQ(T.ideal_at(2), power(m2, 2));
    EXPECT_EQ(T.ideal_at(3), power(m2, 3));
    EXPECT_EQ(T.ideal_at(4), power(m2, 4));
    EXPECT_EQ(T.level(), 2u);
    EXPECT_EQ(T.parent(), Filtration::subpolynomial_sqrt(m2));
}

TEST(Filtration, GradedFamilyLawOnAllKinds)
{
    for (const auto &F : shipped_kinds()) {
        EXPECT_EQ(check_graded_family(F, 12), "") << to_string(F.kind());
    }
}

TEST(Filtration, TruncationsIncreaseTowardTheParent)
{
    for (const auto &F : shipped_kinds()) {
        for (unsigned a = 1; a <= 4; ++a) {
            const auto Ta = F.truncate(a);
            const auto Tb = F.truncate(a + 1);
            for (unsigned t = 1; t <= 10; ++t) {
                EXPECT_TRUE(Ta.ideal_at(t).is_subset_of(Tb.ideal_at(t)));
                EXPECT_TRUE(Tb.ideal_at(t).is_subset_of(F.ideal_at(t)));
            }
        }
    }
}

TEST(Rescale, PowersNeedNoRescaling)
{
    const auto I = ideal(2, {{2, 0}, {0, 1}});
    const std::vector<Filtration> T{Filtration::powers(I).truncate(3)};
    const auto stage = find_rescale(T, 3);
    EXPECT_EQ(stage.f, 1u);
    EXPECT_EQ(stage.J.front(), I);
    EXPECT_EQ(stage.verified_horizon, default_horizon(3));
}

TEST(Rescale, SqrtAtLevelFour)
{
    const std::vector<Filtration> T{Filtration::subpolynomial_sqrt(m2).truncate(4)};
    const auto stage = find_rescale(T, 4);
    EXPECT_EQ(stage.f, 4u);
    EXPECT_EQ(stage.J.front(), power(m2, 2));

    RescaleOptions tight;
    tight.f_cap = 3;
    try {
        find_rescale(T, 4, tight);
        FAIL() << "expected RescaleNotFound";
    } catch (const RescaleNotFound &e) {
        EXPECT_GE(e.best_candidate(), 1u);
        EXPECT_LE(e.best_candidate(), 3u);
        EXPECT_GE(e.first_failing_t(), 2u);
    }
}

TEST(Rescale, InputChecks)
{
    const std::vector<Filtration> raw{Filtration::powers(m2)};
    EXPECT_THROW(find_rescale(raw, 2), InputError);
    const std::vector<Filtration> wrong_level{Filtration::powers(m2).truncate(3)};
    EXPECT_THROW(find_rescale(wrong_level, 2), InputError);
    EXPECT_EQ(default_f_cap(4), 24u);
}

TEST(FiltrationMixed, Weighted)
{
    const std::vector<Filtration> W{Filtration::weighted({Rational(1), Rational(2)})};
    const auto r = filtration_mixed(W, 2);
    EXPECT_EQ(r.stage.f, 2u);
    EXPECT_EQ(r.stage.J.front(), ideal(2, {{2, 0}, {0, 1}}));
    EXPECT_EQ(r.table.pure(0), Rational(1, 2));

    const unsigned schedule[] = {1, 2, 4};
    const auto sweep = convergence_sweep(W, schedule);
    ASSERT_EQ(sweep.size(), 3u);
    EXPECT_EQ(sweep[0].table.pure(0), 1);
    EXPECT_EQ(sweep[1].table.pure(0), Rational(1, 2));
    EXPECT_EQ(sweep[2].table.pure(0), Rational(1, 2));
    EXPECT_TRUE(sweep[0].delta.empty());
    EXPECT_EQ(sweep[1].delta.at({2}), Rational(-1, 2));
    EXPECT_EQ(sweep[2].delta.at({2}), 0);
}

TEST(FiltrationMixed, TwoWeightedFiltrations)
{
    // Co-regions are triangles with intercepts (1, 1/2) and (2/3, 1).
    const std::vector<Filtration> W{Filtration::weighted({Rational(1), Rational(2)}),
                                    Filtration::weighted({Rational(3, 2), Rational(1)})};
    const auto r = filtration_mixed(W, 3);
    EXPECT_EQ(r.table.at({2, 0}), Rational(1, 2));
    EXPECT_EQ(r.table.at({1, 1}), Rational(1, 3));
    EXPECT_EQ(r.table.at({0, 2}), Rational(2, 3));
}

TEST(FiltrationMixed, SqrtSweepPairedWithPowers)
{
    const std::vector<Filtration> F{Filtration::subpolynomial_sqrt(m2), Filtration::powers(m2)};
    const unsigned schedule[] = {1, 4, 9, 16};
    FiltrationOptions opts;
    opts.mixed.jobs = 4;
    const auto sweep = convergence_sweep(F, schedule, opts);
    const Rational expected_pure[] = {1, Rational(1, 4), Rational(1, 9), Rational(1, 16)};
    const Rational expected_mixed[] = {1, Rational(1, 2), Rational(1, 3), Rational(1, 4)};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(sweep[k].table.at({2, 0}), expected_pure[k]);
        EXPECT_EQ(sweep[k].table.at({1, 1}), expected_mixed[k]);
        EXPECT_EQ(sweep[k].table.at({0, 2}), 1);
    }
    const auto serial = convergence_sweep(F, schedule);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(serial[k].table, sweep[k].table);
        EXPECT_EQ(serial[k].stage.f, sweep[k].stage.f);
        EXPECT_EQ(serial[k].delta, sweep[k].delta);
    }
}

TEST(FiltrationMixed, RescaleIdentityAndDoubling)
{
    const auto I = ideal(2, {{2, 0}, {0, 1}});
    const auto J = ideal(2, {{1, 0}, {0, 2}});
    const std::vector<Filtration> P{Filtration::powers(I), Filtration::powers(J)};
    const std::vector<MonomialIdeal> ideals{I, J};
    for (unsigned a = 1; a <= 3; ++a) {
        const auto r = filtration_mixed(P, a);
        EXPECT_EQ(r.stage.f, 1u);
        EXPECT_EQ(r.table, mixed_table(ideals));
        EXPECT_EQ(stage_mixed(doubled(r.stage)), r.table);
    }

    const std::vector<Filtration> S{Filtration::subpolynomial_sqrt(m2), Filtration::weighted({Rational(1), Rational(2)})};
    for (unsigned a : {2u, 4u}) {
        const auto r = filtration_mixed(S, a);
        EXPECT_EQ(stage_mixed(doubled(r.stage)), r.table) << "a=" << a;
    }
}
