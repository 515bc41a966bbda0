#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <mixmult/ideal.hpp>
#include <mixmult/multiplicity.hpp>
#include <mixmult/rational.hpp>

namespace mixmult
{

enum class FiltrationKind
{
    powers,              // I_t = base^t
    scaled_powers,       // I_t = base^ceil(t * num / den)
    weighted,            // I_t = (x^e : <w, e> >= t)
    subpolynomial_sqrt,  // I_t = base^ceil(sqrt(t)), not Noetherian
    truncation,          // generated by the first `level` members of a parent
};

std::string to_string(FiltrationKind kind);
FiltrationKind parse_filtration_kind(const std::string &name);

// A graded family t -> I_t of m-primary monomial ideals with I_0 = R.
//
// Copies share one memo of computed members; members are pure functions of t,
// so the memo is safe under concurrent readers and racing writers.
class Filtration
{
public:
    static Filtration powers(MonomialIdeal base);
    static Filtration scaled_powers(MonomialIdeal base, unsigned num, unsigned den);
    // One positive rational weight per variable.
    static Filtration weighted(std::vector<Rational> weights);
    static Filtration subpolynomial_sqrt(MonomialIdeal base);

    // I_{a,t} = I_t for t <= a, and sum_{i=1}^{min(a, t/2)} I_{a,i} I_{a,t-i} beyond.
    Filtration truncate(unsigned level) const;

    MonomialIdeal ideal_at(unsigned t) const;

    unsigned dim() const;
    FiltrationKind kind() const;
    // For every kind except weighted and truncation.
    const MonomialIdeal &base() const;
    unsigned num() const;
    unsigned den() const;
    const std::vector<Rational> &weights() const;
    // Truncation only.
    unsigned level() const;
    const Filtration &parent() const;

    // Structural equality of the defining data (memo state is ignored).
    friend bool operator==(const Filtration &a, const Filtration &b);

private:
    struct State;
    explicit Filtration(std::shared_ptr<const State> state);
    std::shared_ptr<const State> state_;
};

// Checks I_s I_t inside I_{s+t} and I_{t+1} inside I_t for 1 <= s, t <= horizon,
// and that every member I_1..I_horizon is m-primary. Returns a description of
// the first violation, or an empty string.
std::string check_graded_family(const Filtration &f, unsigned horizon);

// One truncation level made Noetherian: I_{a,f t} = J^t verified for t <= verified_horizon.
struct RescaledStage {
    unsigned level = 0;
    unsigned f = 1;
    std::vector<MonomialIdeal> J;
    unsigned verified_horizon = 0;
};

unsigned default_horizon(unsigned level);
// lcm(1, ..., level) * 2, saturating at the largest unsigned.
unsigned default_f_cap(unsigned level);

struct RescaleOptions {
    unsigned horizon = 0; // 0: default_horizon(level)
    unsigned f_cap = 0;   // 0: default_f_cap(level)
};

// Least common f with I_i(f t) = I_i(f)^t for every input and 1 <= t <= horizon.
// Inputs must be truncations at `level`. Throws RescaleNotFound past the cap.
RescaledStage find_rescale(std::span<const Filtration> truncations, unsigned level, const RescaleOptions &options = {});

// The same stage represented with f doubled and J squared.
RescaledStage doubled(const RescaledStage &stage);

struct FiltrationOptions {
    RescaleOptions rescale;
    MixedOptions mixed;
};

// Mixed table of a rescaled stage: mixed_table(J) / f^d.
MixedTable stage_mixed(const RescaledStage &stage, const MixedOptions &options = {});

struct FiltrationMixedResult {
    RescaledStage stage;
    MixedTable table;
};

// Truncates each filtration at `level`, rescales, and divides the ideal table by f^d.
FiltrationMixedResult filtration_mixed(std::span<const Filtration> filtrations, unsigned level,
                                       const FiltrationOptions &options = {});

struct SweepLevel {
    unsigned level = 0;
    RescaledStage stage;
    MixedTable table;
    // entry minus the entry at the previous level; empty on the first level.
    std::map<Composition, Rational> delta;
};

// filtration_mixed along a strictly increasing schedule of levels. Levels may
// run concurrently (options.mixed.jobs); results are in schedule order.
std::vector<SweepLevel> convergence_sweep(std::span<const Filtration> filtrations, std::span<const unsigned> schedule,
                                          const FiltrationOptions &options = {});

} // namespace mixmult
