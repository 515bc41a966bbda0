#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <mixmult/filtration.hpp>
#include <mixmult/multiplicity.hpp>

namespace mixmult
{

// e(I_1^[d_1], ..., I_r^[d_r])^d against prod_i e(I_i)^{d_i}, compared in
// powered form so no roots are ever taken.
struct InequalityReport {
    Composition composition;
    Rational lhs;
    Rational rhs;
    bool holds = false;
    bool equality = false;
};

std::vector<InequalityReport> minkowski_report(const MixedTable &table);

bool all_hold(const std::vector<InequalityReport> &reports);

// True for compositions putting weight on at least two inputs; equality on the
// other ones is automatic.
bool is_mixed_composition(const Composition &c);

enum class ZeroCheckStatus
{
    passed,
    not_monotone,     // some entry with d_j > 0 increased between levels
    inequality_fails, // a level violated the Minkowski bound
    tolerance_not_met,
};

std::string to_string(ZeroCheckStatus status);

// Zero propagation observed on truncations: entries with d_j > 0 must not
// increase along the schedule and must end strictly below tol. This checks the
// truncated values, not the limit itself.
struct ZeroPropagationReport {
    unsigned j = 1; // 1-based index of the filtration with vanishing multiplicity
    Rational tol;
    std::vector<SweepLevel> levels;
    std::vector<std::vector<InequalityReport>> minkowski;
    ZeroCheckStatus status = ZeroCheckStatus::passed;
    std::string message;
};

ZeroPropagationReport zero_propagation_report(std::span<const Filtration> filtrations, unsigned j,
                                              std::span<const unsigned> schedule, const Rational &tol,
                                              const FiltrationOptions &options = {});

// As zero_propagation_report, but throws VerificationFailure on a monotonicity
// or inequality violation and ToleranceNotMet when the final level is not below tol.
ZeroPropagationReport zero_propagation_check(std::span<const Filtration> filtrations, unsigned j,
                                             std::span<const unsigned> schedule, const Rational &tol,
                                             const FiltrationOptions &options = {});

// Linear congruential stream x <- a x + c mod 2^64 with
// a = 6364136223846793005, c = 1442695040888963407, seeded with x = seed.
// uniform(lo, hi) advances once and returns lo + ((x >> 32) mod (hi - lo + 1)).
class Lcg64
{
public:
    static constexpr std::uint64_t multiplier = 6364136223846793005ULL;
    static constexpr std::uint64_t increment = 1442695040888963407ULL;

    explicit Lcg64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        state_ = state_ * multiplier + increment;
        return state_;
    }
    unsigned uniform(unsigned lo, unsigned hi)
    {
        const std::uint64_t span = std::uint64_t(hi) - lo + 1;
        return lo + static_cast<unsigned>((next() >> 32) % span);
    }

private:
    std::uint64_t state_;
};

struct SuiteConfig {
    unsigned dim = 2;
    unsigned r = 2;
    unsigned count = 0;
    unsigned max_exponent = 1;
    std::uint64_t seed = 0;
    // Every tuple repeats a single drawn ideal r times.
    bool force_equal = false;
    // Also run the difference-path oracle and require exact agreement.
    bool paranoid = false;

    friend bool operator==(const SuiteConfig &, const SuiteConfig &) = default;
};

// Throws InputError unless dim is 2 or 3, r >= 1 and max_exponent >= 1.
void validate(const SuiteConfig &cfg);

// Pure powers x_i^{a_i} with a_i uniform in [1, max_exponent], then a uniform
// number in [0, dim] of extra points drawn inside the box prod [0, a_i)
// (the origin is skipped), minimalized.
MonomialIdeal random_ideal(const SuiteConfig &cfg, Lcg64 &stream);

struct SuiteInstance {
    std::size_t draw_index = 0;
    std::vector<MonomialIdeal> ideals;
    std::optional<MixedTable> table;
    std::vector<InequalityReport> reports;
    std::optional<bool> oracle_agrees;
    bool holds = false;
    std::string error;
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<SuiteInstance> instances;
    bool passed = true;
    // Draw indices with equality on some mixed composition.
    std::vector<std::size_t> equality_cases;
};

// Draws count tuples sequentially from one stream, then evaluates them on up
// to `jobs` threads; the report is in draw order.
SuiteReport suite(const SuiteConfig &cfg, unsigned jobs = 1);

} // namespace mixmult
