#include <gtest/gtest.h>

#include <set>

#include <mixmult/errors.hpp>
#include <mixmult/gridpoly.hpp>
#include <mixmult/verify.hpp>

using namespace mixmult;

namespace
{

struct Drawn {
    CoeffTable poly;
    std::vector<unsigned> bounds;
    Grid grid;
};

Rational small_rational(Lcg64 &s)
{
    const long p = static_cast<long>(s.uniform(0, 40)) - 20;
    const long q = s.uniform(1, 6);
    return Rational(p, q);
}

// Random polynomial with per-variable degree bounds and a grid of matching size
// whose members are distinct small rationals.
Drawn draw(Lcg64 &s, unsigned extra = 0)
{
    const unsigned r = s.uniform(1, 3);
    std::vector<unsigned> bounds(r);
    std::vector<std::vector<Rational>> sets(r);
    for (unsigned i = 0; i < r; ++i) {
        bounds[i] = s.uniform(0, r == 3 ? 3 : 4);
        std::set<Rational> seen;
        while (seen.size() < bounds[i] + 1 + extra) {
            const Rational q = small_rational(s);
            if (seen.insert(q).second) {
                sets[i].push_back(q);
            }
        }
    }
    CoeffTable p(r);
    const unsigned terms = s.uniform(1, 6);
    for (unsigned t = 0; t < terms; ++t) {
        MultiIndex idx(r);
        for (unsigned i = 0; i < r; ++i) {
            idx[i] = s.uniform(0, bounds[i]);
        }
        p.set(idx, small_rational(s));
    }
    return {p, bounds, Grid(sets)};
}

GridFunction as_function(const CoeffTable &p)
{
    return [p](std::span<const Rational> x) { return evaluate(p, x); };
}

} // namespace

TEST(Gridpoly, RecoversKnownBivariate)
{
    CoeffTable p(2);
    p.set({2, 0}, 1);
    p.set({1, 1}, Rational(-3, 2));
    p.set({0, 0}, 7);
    const std::vector<unsigned> bounds{2, 1};
    const auto grid = Grid::integer_box(2, 1, 3);
    const Grid fitted({grid.axis(0), {Rational(1), Rational(2)}});
    EXPECT_EQ(interpolate_on_grid(as_function(p), bounds, fitted), p);
}

TEST(Gridpoly, SetErasesZeros)
{
    CoeffTable p(1);
    p.set({3}, 2);
    p.set({3}, 0);
    EXPECT_TRUE(p.is_zero());
}

TEST(Gridpoly, GridValidation)
{
    EXPECT_THROW(Grid({{Rational(1), Rational(1)}}), InputError);
    EXPECT_THROW(Grid(std::vector<std::vector<Rational>>{std::vector<Rational>{}}), InputError);
    const auto g = Grid::integer_box(2, 0, 2);
    EXPECT_EQ(g.num_points(), 9u);
    EXPECT_EQ(g.point(5), (std::vector<Rational>{1, 2}));
}

TEST(Gridpoly, RoundTrip200)
{
    Lcg64 s(2024);
    for (int k = 0; k < 200; ++k) {
        const auto d = draw(s);
        const auto got = interpolate_on_grid(as_function(d.poly), d.bounds, d.grid);
        ASSERT_EQ(got, d.poly) << "case " << k;
    }
}

TEST(Gridpoly, DenseAndTensorAgree)
{
    Lcg64 s(77);
    for (int k = 0; k < 60; ++k) {
        const auto d = draw(s);
        const auto f = as_function(d.poly);
        EXPECT_EQ(interpolate_on_grid(f, d.bounds, d.grid, InterpolationMethod::dense),
                  interpolate_on_grid(f, d.bounds, d.grid, InterpolationMethod::tensor));
    }
}

TEST(Gridpoly, ResultIndependentOfGrid)
{
    Lcg64 s(5);
    for (int k = 0; k < 40; ++k) {
        const auto a = draw(s);
        // Same polynomial on a shifted integer grid.
        std::vector<std::vector<Rational>> sets;
        for (unsigned i = 0; i < a.grid.vars(); ++i) {
            std::vector<Rational> axis;
            for (unsigned j = 0; j <= a.bounds[i]; ++j) {
                axis.emplace_back(static_cast<long>(j) + 100);
            }
            sets.push_back(axis);
        }
        EXPECT_EQ(interpolate_on_grid(as_function(a.poly), a.bounds, Grid(sets)), a.poly);
    }
}

TEST(Gridpoly, NonzeroWitness200)
{
    Lcg64 s(99);
    int checked = 0;
    while (checked < 200) {
        auto d = draw(s, s.uniform(0, 2));
        if (d.poly.is_zero()) {
            continue;
        }
        ++checked;
        const auto f = as_function(d.poly);
        const auto w = nonzero_witness(f, d.bounds, d.grid);
        ASSERT_TRUE(w.has_value()) << "case " << checked;
        EXPECT_NE(evaluate(d.poly, *w), 0);
        EXPECT_FALSE(zero_test(f, d.bounds, d.grid));
    }
}

TEST(Gridpoly, ZeroPolynomialHasNoWitness)
{
    const std::vector<unsigned> bounds{2, 3};
    const auto grid = Grid::integer_box(2, -1, 2);
    const GridFunction zero = [](std::span<const Rational>) { return Rational(0); };
    EXPECT_FALSE(nonzero_witness(zero, bounds, grid).has_value());
    EXPECT_TRUE(zero_test(zero, bounds, grid));
}

TEST(Gridpoly, VanishingOnGridNeedsTheDegreeBound)
{
    // x(x-1)(x-2) vanishes on {0,1,2} but has degree 3.
    const GridFunction f = [](std::span<const Rational> x) { return x[0] * (x[0] - 1) * (x[0] - 2); };
    const std::vector<unsigned> too_small{2};
    EXPECT_TRUE(zero_test(f, too_small, Grid::integer_box(1, 0, 2)));
    const std::vector<unsigned> honest{3};
    EXPECT_FALSE(zero_test(f, honest, Grid::integer_box(1, 0, 3)));
    EXPECT_THROW(zero_test(f, honest, Grid::integer_box(1, 0, 2)), InputError);
}
