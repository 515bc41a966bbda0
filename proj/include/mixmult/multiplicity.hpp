#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <mixmult/ideal.hpp>
#include <mixmult/rational.hpp>

namespace mixmult
{

// Where finite differences of a length function are trusted to be constant.
struct StabilizationWindow {
    unsigned t_start = 1;
    unsigned width = 3;

    friend bool operator==(const StabilizationWindow &, const StabilizationWindow &) = default;
};

// Window search: start at t_start (default 1 + sum of the inputs' largest pure
// powers), require constancy over `width` consecutive offsets, double t_start
// on failure, give up once t_start exceeds `cap`.
struct StabilizationPolicy {
    std::optional<unsigned> t_start;
    unsigned width = 3;
    unsigned cap = 64;
};

struct MultiplicityResult {
    Integer value;
    // Set for the unit ideal, whose multiplicity is reported as 0.
    bool degenerate = false;
    StabilizationWindow window;
};

MultiplicityResult multiplicity_detail(const MonomialIdeal &ideal, const StabilizationPolicy &policy = {});

// Hilbert-Samuel multiplicity e(I) as the stabilized d-th forward difference
// of t -> colength(I^t).
Integer multiplicity(const MonomialIdeal &ideal, const StabilizationPolicy &policy = {});

using Composition = std::vector<unsigned>;

// All compositions of `total` into `parts` nonnegative parts, lexicographically ascending.
std::vector<Composition> compositions(unsigned total, unsigned parts);

// "d1,d2,...,dr".
std::string composition_key(const Composition &c);
Composition parse_composition_key(const std::string &key);

Integer multinomial(const Composition &c);

// Mixed multiplicities e(I_1^[d_1], ..., I_r^[d_r]) for every composition of d.
// Stores the mixed multiplicity itself (no factorial normalization).
class MixedTable
{
public:
    // Throws InputError unless the keys are exactly the compositions of dim into parts.
    MixedTable(unsigned dim, unsigned parts, std::map<Composition, Rational> entries);

    unsigned dim() const noexcept { return dim_; }
    unsigned parts() const noexcept { return parts_; }
    const std::map<Composition, Rational> &entries() const noexcept { return entries_; }
    const Rational &at(const Composition &c) const;
    // Entry with all weight on input i, i.e. the multiplicity of input i.
    const Rational &pure(unsigned i) const;

    MixedTable scaled(const Rational &factor) const;
    // Table of the inputs reordered so that new input k is old input order[k].
    MixedTable permuted(std::span<const unsigned> order) const;

    friend bool operator==(const MixedTable &, const MixedTable &) = default;

private:
    unsigned dim_;
    unsigned parts_;
    std::map<Composition, Rational> entries_;
};

struct MixedOptions {
    StabilizationPolicy policy;
    unsigned jobs = 1;
};

// Default t_start for a tuple of inputs: 1 + sum of their largest pure powers.
unsigned default_t_start(std::span<const MonomialIdeal> ideals);

// Grid path: interpolates n -> e(I_1^n_1 ... I_r^n_r) on {1..d+1}^r and reads
// the mixed multiplicities off the coefficients of the resulting degree-d form.
MixedTable mixed_table(std::span<const MonomialIdeal> ideals, const MixedOptions &options = {});

// Difference path: mixed forward differences of n -> colength(I_1^n_1 ... I_r^n_r)
// inside a stabilized window. Shares no code with the grid path beyond ideal_core.
MixedTable mixed_table_oracle(std::span<const MonomialIdeal> ideals, const MixedOptions &options = {});

} // namespace mixmult
