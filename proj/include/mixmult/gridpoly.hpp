#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <mixmult/rational.hpp>

namespace mixmult
{

using MultiIndex = std::vector<unsigned>;

// Sparse multivariate polynomial over Q, keyed by exponent multi-index.
// Zero coefficients are never stored.
class CoeffTable
{
public:
    explicit CoeffTable(unsigned vars) : vars_(vars) {}

    unsigned vars() const noexcept { return vars_; }
    const std::map<MultiIndex, Rational> &coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    // Overwrites the coefficient at `index`; zero erases it.
    void set(const MultiIndex &index, const Rational &value);
    Rational coefficient(const MultiIndex &index) const;

    // True iff every stored index has total degree `degree`.
    bool is_homogeneous(unsigned degree) const;

    friend bool operator==(const CoeffTable &, const CoeffTable &) = default;

private:
    unsigned vars_;
    std::map<MultiIndex, Rational> coeffs_;
};

// A product grid S_1 x ... x S_r of finite sets of rationals.
class Grid
{
public:
    // Throws InputError if some set repeats a member or is empty.
    explicit Grid(std::vector<std::vector<Rational>> sets);

    // {lo, lo+1, ..., hi}^r.
    static Grid integer_box(unsigned r, long lo, long hi);

    unsigned vars() const noexcept { return static_cast<unsigned>(sets_.size()); }
    const std::vector<Rational> &axis(unsigned i) const { return sets_[i]; }
    std::size_t num_points() const;
    // Point number `index` in row-major order (last axis fastest).
    std::vector<Rational> point(std::size_t index) const;

private:
    std::vector<std::vector<Rational>> sets_;
};

using GridFunction = std::function<Rational(std::span<const Rational>)>;

enum class InterpolationMethod
{
    automatic, // dense solve for r <= 2, tensor steps above
    dense,
    tensor,
};

// Values are given in Grid::point order. Grid sizes must equal bounds + 1.
CoeffTable interpolate_values(std::span<const Rational> values, std::span<const unsigned> bounds, const Grid &grid,
                              InterpolationMethod method = InterpolationMethod::automatic);

// Unique polynomial with per-variable degree <= bounds agreeing with eval on the grid.
// Grid points may be evaluated on up to `jobs` threads.
CoeffTable interpolate_on_grid(const GridFunction &eval, std::span<const unsigned> bounds, const Grid &grid,
                               InterpolationMethod method = InterpolationMethod::automatic, unsigned jobs = 1);

// A grid point where eval does not vanish, if any. Grid sizes must be at least bounds + 1.
std::optional<std::vector<Rational>> nonzero_witness(const GridFunction &eval, std::span<const unsigned> bounds,
                                                     const Grid &grid);

// True iff eval vanishes on the whole grid. For a polynomial whose degree in
// x_i is at most bounds[i] this certifies that it is identically zero.
bool zero_test(const GridFunction &eval, std::span<const unsigned> bounds, const Grid &grid);

Rational evaluate(const CoeffTable &p, std::span<const Rational> point);

} // namespace mixmult
