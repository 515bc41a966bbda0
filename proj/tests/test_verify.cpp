#include <gtest/gtest.h>

#include <mixmult/errors.hpp>
#include <mixmult/runner.hpp>
#include <mixmult/verify.hpp>

#include "support.hpp"

using namespace mixmult;
using test::ideal;

namespace
{

const InequalityReport &find(const std::vector<InequalityReport> &reps, const Composition &c)
{
    for (const auto &r : reps) {
        if (r.composition == c) {
            return r;
        }
    }
    throw std::out_of_range("composition not reported");
}

} // namespace

TEST(Minkowski, RunningExample)
{
    const MixedTable t(2, 2, {{{2, 0}, 2}, {{1, 1}, 1}, {{0, 2}, 2}});
    const auto reps = minkowski_report(t);
    ASSERT_EQ(reps.size(), 3u);
    const auto &mixed = find(reps, {1, 1});
    EXPECT_EQ(mixed.lhs, 1);
    EXPECT_EQ(mixed.rhs, 4);
    EXPECT_TRUE(mixed.holds);
    EXPECT_FALSE(mixed.equality);
    EXPECT_TRUE(find(reps, {2, 0}).equality);
    EXPECT_TRUE(all_hold(reps));
}

TEST(Minkowski, RepeatedIdealGivesEquality)
{
    const auto I = ideal(2, {{3, 0}, {1, 1}, {0, 3}});
    const std::vector<MonomialIdeal> same{I, I, I};
    for (const auto &r : minkowski_report(mixed_table(same))) {
        EXPECT_TRUE(r.equality) << composition_key(r.composition);
    }
}

TEST(Minkowski, DetectsViolation)
{
    const MixedTable bad(2, 2, {{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}});
    const auto reps = minkowski_report(bad);
    EXPECT_FALSE(find(reps, {1, 1}).holds);
    EXPECT_FALSE(all_hold(reps));
}

TEST(Minkowski, MixedCompositions)
{
    EXPECT_TRUE(is_mixed_composition({1, 1}));
    EXPECT_TRUE(is_mixed_composition({1, 0, 2}));
    EXPECT_FALSE(is_mixed_composition({0, 3, 0}));
}

TEST(Generator, StreamIsPinned)
{
    Lcg64 s(0);
    EXPECT_EQ(s.next(), Lcg64::increment);
    EXPECT_EQ(s.next(), Lcg64::increment * Lcg64::multiplier + Lcg64::increment);
    Lcg64 a(42), b(42);
    for (int k = 0; k < 100; ++k) {
        const unsigned x = a.uniform(3, 9);
        EXPECT_EQ(x, b.uniform(3, 9));
        EXPECT_GE(x, 3u);
        EXPECT_LE(x, 9u);
    }
}

TEST(Generator, GoldenFirstDraw)
{
    SuiteConfig cfg;
    cfg.dim = 2;
    cfg.max_exponent = 3;
    cfg.seed = 42;
    Lcg64 s(cfg.seed);
    EXPECT_EQ(random_ideal(cfg, s), ideal(2, {{1, 0}, {0, 3}}));
}

TEST(Generator, DrawsAreMPrimaryInsideTheBox)
{
    SuiteConfig cfg;
    cfg.dim = 3;
    cfg.max_exponent = 4;
    Lcg64 s(3);
    for (int k = 0; k < 100; ++k) {
        const auto I = random_ideal(cfg, s);
        EXPECT_TRUE(is_m_primary(I));
        EXPECT_FALSE(I.is_unit());
        EXPECT_LE(I.max_pure_power(), 4u);
    }
}

TEST(Suite, EmptyIsVacuous)
{
    SuiteConfig cfg;
    const auto rep = suite(cfg);
    EXPECT_TRUE(rep.passed);
    EXPECT_TRUE(rep.instances.empty());
}

TEST(Suite, ConfigValidation)
{
    SuiteConfig cfg;
    cfg.dim = 4;
    EXPECT_THROW(suite(cfg), InputError);
    cfg.dim = 2;
    cfg.r = 0;
    EXPECT_THROW(suite(cfg), InputError);
}

TEST(Suite, DeterministicAcrossRunsAndJobs)
{
    SuiteConfig cfg;
    cfg.dim = 2;
    cfg.r = 2;
    cfg.count = 8;
    cfg.max_exponent = 4;
    cfg.seed = 7;
    cfg.paranoid = true;
    const auto a = render(suite_json(suite(cfg, 1)));
    EXPECT_EQ(a, render(suite_json(suite(cfg, 1))));
    EXPECT_EQ(a, render(suite_json(suite(cfg, 3))));
    const auto rep = suite(cfg);
    EXPECT_TRUE(rep.passed);
    for (const auto &inst : rep.instances) {
        EXPECT_EQ(inst.oracle_agrees, true);
    }
}

TEST(Suite, ForcedEqualityIsReported)
{
    SuiteConfig cfg;
    cfg.dim = 2;
    cfg.r = 2;
    cfg.count = 5;
    cfg.max_exponent = 3;
    cfg.seed = 1;
    cfg.force_equal = true;
    const auto rep = suite(cfg);
    EXPECT_TRUE(rep.passed);
    EXPECT_EQ(rep.equality_cases, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(ZeroPropagation, SqrtAgainstPowers)
{
    const auto m = MonomialIdeal::maximal(2);
    const std::vector<Filtration> F{Filtration::subpolynomial_sqrt(m), Filtration::powers(m)};
    const unsigned schedule[] = {1, 4, 9, 16};
    const auto rep = zero_propagation_check(F, 1, schedule, Rational(1, 3));
    EXPECT_EQ(rep.status, ZeroCheckStatus::passed);
    ASSERT_EQ(rep.levels.size(), 4u);
    for (const auto &reps : rep.minkowski) {
        EXPECT_TRUE(all_hold(reps));
    }
    // Equality on (1,1) at a = 4: (1/2)^2 = (1/4) * 1.
    EXPECT_TRUE(find(rep.minkowski[1], {1, 1}).equality);

    EXPECT_THROW(zero_propagation_check(F, 1, schedule, Rational(1, 5)), ToleranceNotMet);
    EXPECT_EQ(zero_propagation_report(F, 1, schedule, Rational(1, 5)).status, ZeroCheckStatus::tolerance_not_met);
    // The powers(m) entries do not vanish.
    EXPECT_EQ(zero_propagation_report(F, 2, schedule, Rational(1, 3)).status, ZeroCheckStatus::tolerance_not_met);
    EXPECT_THROW(zero_propagation_report(F, 3, schedule, Rational(1, 3)), InputError);
    EXPECT_THROW(zero_propagation_report(F, 0, schedule, Rational(1, 3)), InputError);
    EXPECT_THROW(zero_propagation_report(F, 1, schedule, Rational(0)), InputError);
}
