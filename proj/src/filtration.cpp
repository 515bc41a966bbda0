#include <mixmult/filtration.hpp>

#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include <mixmult/errors.hpp>
#include <mixmult/parallel.hpp>

namespace mixmult
{

std::string to_string(FiltrationKind kind)
{
    switch (kind) {
    case FiltrationKind::powers:
        return "powers";
    case FiltrationKind::scaled_powers:
        return "scaled_powers";
    case FiltrationKind::weighted:
        return "weighted";
    case FiltrationKind::subpolynomial_sqrt:
        return "subpolynomial_sqrt";
    case FiltrationKind::truncation:
        return "truncation";
    }
    return "unknown";
}

FiltrationKind parse_filtration_kind(const std::string &name)
{
    for (auto kind : {FiltrationKind::powers, FiltrationKind::scaled_powers, FiltrationKind::weighted,
                      FiltrationKind::subpolynomial_sqrt, FiltrationKind::truncation}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    throw InputError("unknown filtration kind '" + name + "'");
}

struct Filtration::State {
    FiltrationKind kind = FiltrationKind::powers;
    unsigned dim = 0;
    std::optional<MonomialIdeal> base;
    unsigned num = 1;
    unsigned den = 1;
    std::vector<Rational> weights;
    unsigned level = 0;
    std::optional<Filtration> parent;

    mutable std::shared_mutex mutex;
    mutable std::unordered_map<unsigned, MonomialIdeal> memo;

    std::optional<MonomialIdeal> lookup(unsigned t) const
    {
        std::shared_lock lock(mutex);
        const auto it = memo.find(t);
        if (it == memo.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    // First writer wins; every writer holds the same value.
    void store(unsigned t, const MonomialIdeal &ideal) const
    {
        std::unique_lock lock(mutex);
        memo.emplace(t, ideal);
    }
};

namespace
{

unsigned ceil_div(std::uint64_t a, std::uint64_t b)
{
    return static_cast<unsigned>((a + b - 1) / b);
}

unsigned ceil_sqrt(unsigned t)
{
    unsigned r = 0;
    while (std::uint64_t(r) * r < t) {
        ++r;
    }
    return r;
}

// ceil(q) for a nonnegative rational.
Integer ceil_nonnegative(const Rational &q)
{
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    return (num + den - 1) / den;
}

MonomialIdeal weighted_member(const std::vector<Rational> &w, unsigned t)
{
    const unsigned dim = static_cast<unsigned>(w.size());
    if (t == 0) {
        return MonomialIdeal::unit(dim);
    }
    // Box of the first d-1 coordinates; the last coordinate is the least one
    // reaching weight t.
    std::vector<unsigned> box(dim);
    for (unsigned k = 0; k < dim; ++k) {
        box[k] = static_cast<unsigned>(ceil_nonnegative(Rational(t) / w[k]));
    }
    std::vector<std::uint32_t> flat;
    std::vector<std::uint32_t> e(dim, 0);
    while (true) {
        Rational reached = 0;
        for (unsigned k = 0; k + 1 < dim; ++k) {
            reached += w[k] * e[k];
        }
        const Rational missing = Rational(t) - reached;
        e[dim - 1] = missing <= 0 ? 0u : static_cast<std::uint32_t>(ceil_nonnegative(missing / w[dim - 1]));
        flat.insert(flat.end(), e.begin(), e.end());
        unsigned k = 0;
        while (k + 1 < dim && ++e[k] > box[k]) {
            e[k] = 0;
            ++k;
        }
        if (k + 1 >= dim) {
            break;
        }
    }
    return MonomialIdeal::from_flat(dim, std::move(flat));
}

} // namespace

Filtration::Filtration(std::shared_ptr<const State> state) : state_(std::move(state)) {}

Filtration Filtration::powers(MonomialIdeal base)
{
    auto s = std::make_shared<State>();
    s->kind = FiltrationKind::powers;
    s->dim = base.dim();
    s->base = std::move(base);
    return Filtration(std::move(s));
}

Filtration Filtration::scaled_powers(MonomialIdeal base, unsigned num, unsigned den)
{
    if (num == 0 || den == 0) {
        throw InputError("scaled_powers needs positive num and den");
    }
    auto s = std::make_shared<State>();
    s->kind = FiltrationKind::scaled_powers;
    s->dim = base.dim();
    s->base = std::move(base);
    s->num = num;
    s->den = den;
    return Filtration(std::move(s));
}

Filtration Filtration::weighted(std::vector<Rational> weights)
{
    if (weights.empty()) {
        throw InputError("weighted filtration needs one weight per variable");
    }
    for (const auto &w : weights) {
        if (w <= 0) {
            throw InputError("weights must be positive, got " + to_string(w));
        }
    }
    auto s = std::make_shared<State>();
    s->kind = FiltrationKind::weighted;
    s->dim = static_cast<unsigned>(weights.size());
    s->weights = std::move(weights);
    return Filtration(std::move(s));
}

Filtration Filtration::subpolynomial_sqrt(MonomialIdeal base)
{
    auto s = std::make_shared<State>();
    s->kind = FiltrationKind::subpolynomial_sqrt;
    s->dim = base.dim();
    s->base = std::move(base);
    return Filtration(std::move(s));
}

Filtration Filtration::truncate(unsigned level) const
{
    if (level == 0) {
        throw InputError("truncation level must be at least 1");
    }
    auto s = std::make_shared<State>();
    s->kind = FiltrationKind::truncation;
    s->dim = state_->dim;
    s->level = level;
    s->parent = *this;
    return Filtration(std::move(s));
}

MonomialIdeal Filtration::ideal_at(unsigned t) const
{
    const State &s = *state_;
    if (t == 0) {
        return MonomialIdeal::unit(s.dim);
    }
    if (auto hit = s.lookup(t)) {
        return *hit;
    }
    switch (s.kind) {
    case FiltrationKind::powers:
        // Fill upwards so later members reuse earlier ones.
        for (unsigned u = 1; u <= t; ++u) {
            if (!s.lookup(u)) {
                s.store(u, u == 1 ? *s.base : product(*s.lookup(u - 1), *s.base));
            }
        }
        break;
    case FiltrationKind::scaled_powers:
        s.store(t, power(*s.base, ceil_div(std::uint64_t(t) * s.num, s.den)));
        break;
    case FiltrationKind::weighted:
        s.store(t, weighted_member(s.weights, t));
        break;
    case FiltrationKind::subpolynomial_sqrt:
        s.store(t, power(*s.base, ceil_sqrt(t)));
        break;
    case FiltrationKind::truncation:
        for (unsigned u = 1; u <= t; ++u) {
            if (s.lookup(u)) {
                continue;
            }
            if (u <= s.level) {
                s.store(u, s.parent->ideal_at(u));
                continue;
            }
            // Any product of members of index <= level with total u > level has
            // at least two factors, the smallest of index <= min(level, u/2).
            std::optional<MonomialIdeal> acc;
            for (unsigned i = 1; i <= std::min(s.level, u / 2); ++i) {
                const MonomialIdeal term = product(*s.lookup(i), *s.lookup(u - i));
                acc = acc ? sum(*acc, term) : term;
            }
            s.store(u, *acc);
        }
        break;
    }
    return *s.lookup(t);
}

unsigned Filtration::dim() const
{
    return state_->dim;
}

FiltrationKind Filtration::kind() const
{
    return state_->kind;
}

const MonomialIdeal &Filtration::base() const
{
    if (!state_->base) {
        throw InputError(to_string(state_->kind) + " filtration has no base ideal");
    }
    return *state_->base;
}

unsigned Filtration::num() const
{
    return state_->num;
}

unsigned Filtration::den() const
{
    return state_->den;
}

const std::vector<Rational> &Filtration::weights() const
{
    return state_->weights;
}

unsigned Filtration::level() const
{
    return state_->level;
}

const Filtration &Filtration::parent() const
{
    if (!state_->parent) {
        throw InputError(to_string(state_->kind) + " filtration has no parent");
    }
    return *state_->parent;
}

bool operator==(const Filtration &a, const Filtration &b)
{
    const auto &x = *a.state_;
    const auto &y = *b.state_;
    return x.kind == y.kind && x.dim == y.dim && x.base == y.base && x.num == y.num && x.den == y.den &&
           x.weights == y.weights && x.level == y.level && x.parent == y.parent;
}

std::string check_graded_family(const Filtration &f, unsigned horizon)
{
    for (unsigned t = 1; t <= horizon; ++t) {
        const MonomialIdeal It = f.ideal_at(t);
        if (!is_m_primary(It)) {
            return "member " + std::to_string(t) + " is not m-primary";
        }
        if (!f.ideal_at(t + 1).is_subset_of(It)) {
            return "member " + std::to_string(t + 1) + " is not contained in member " + std::to_string(t);
        }
        for (unsigned u = t; u <= horizon; ++u) {
            if (!product(It, f.ideal_at(u)).is_subset_of(f.ideal_at(t + u))) {
                return "product of members " + std::to_string(t) + " and " + std::to_string(u) +
                       " is not contained in member " + std::to_string(t + u);
            }
        }
    }
    return {};
}

unsigned default_horizon(unsigned level)
{
    return std::max(2 * level, 8u);
}

unsigned default_f_cap(unsigned level)
{
    std::uint64_t l = 1;
    constexpr std::uint64_t limit = std::numeric_limits<unsigned>::max();
    for (unsigned k = 2; k <= level; ++k) {
        l = l / std::gcd(l, std::uint64_t(k)) * k;
        if (l > limit) {
            return std::numeric_limits<unsigned>::max();
        }
    }
    return static_cast<unsigned>(std::min(2 * l, limit));
}

RescaledStage find_rescale(std::span<const Filtration> truncations, unsigned level, const RescaleOptions &options)
{
    if (truncations.empty()) {
        throw InputError("rescale search needs at least one filtration");
    }
    for (const auto &F : truncations) {
        if (F.kind() != FiltrationKind::truncation || F.level() != level) {
            throw InputError("rescale search expects truncations at level " + std::to_string(level));
        }
        if (F.dim() != truncations.front().dim()) {
            throw DimensionMismatch("filtrations of different dimensions");
        }
    }
    const unsigned horizon = options.horizon ? options.horizon : default_horizon(level);
    const unsigned f_cap = options.f_cap ? options.f_cap : default_f_cap(level);
    if (horizon < 2) {
        throw InputError("rescale horizon must be at least 2");
    }

    unsigned best_f = 0;
    unsigned best_fail = 0;
    for (unsigned f = 1; f <= f_cap; ++f) {
        unsigned first_fail = horizon + 1;
        std::vector<MonomialIdeal> J;
        for (const auto &F : truncations) {
            J.push_back(F.ideal_at(f));
            MonomialIdeal P = J.back();
            for (unsigned t = 2; t < first_fail; ++t) {
                P = product(P, J.back());
                if (F.ideal_at(f * t) != P) {
                    first_fail = t;
                    break;
                }
            }
        }
        if (first_fail > horizon) {
            return {level, f, std::move(J), horizon};
        }
        if (first_fail > best_fail) {
            best_fail = first_fail;
            best_f = f;
        }
    }
    throw RescaleNotFound("no rescaling factor f <= " + std::to_string(f_cap) + " at level " + std::to_string(level) +
                              " (best f = " + std::to_string(best_f) + ", first failing t = " +
                              std::to_string(best_fail) + ")",
                          best_f, best_fail);
}

RescaledStage doubled(const RescaledStage &stage)
{
    RescaledStage out = stage;
    out.f = stage.f * 2;
    for (auto &J : out.J) {
        J = power(J, 2);
    }
    out.verified_horizon = stage.verified_horizon / 2;
    return out;
}

MixedTable stage_mixed(const RescaledStage &stage, const MixedOptions &options)
{
    const MixedTable ideal_table = mixed_table(stage.J, options);
    Rational scale = 1;
    for (unsigned k = 0; k < ideal_table.dim(); ++k) {
        scale /= stage.f;
    }
    return ideal_table.scaled(scale);
}

FiltrationMixedResult filtration_mixed(std::span<const Filtration> filtrations, unsigned level,
                                       const FiltrationOptions &options)
{
    if (level == 0) {
        throw InputError("truncation level must be at least 1");
    }
    std::vector<Filtration> truncations;
    for (const auto &F : filtrations) {
        truncations.push_back(F.truncate(level));
    }
    RescaledStage stage = find_rescale(truncations, level, options.rescale);
    MixedTable table = stage_mixed(stage, options.mixed);
    return {std::move(stage), std::move(table)};
}

std::vector<SweepLevel> convergence_sweep(std::span<const Filtration> filtrations, std::span<const unsigned> schedule,
                                          const FiltrationOptions &options)
{
    if (schedule.empty()) {
        throw InputError("sweep schedule is empty");
    }
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (schedule[k] == 0 || (k > 0 && schedule[k] <= schedule[k - 1])) {
            throw InputError("sweep schedule must be strictly increasing positive levels");
        }
    }
    std::vector<std::optional<FiltrationMixedResult>> results(schedule.size());
    FiltrationOptions inner = options;
    inner.mixed.jobs = schedule.size() > 1 ? 1 : options.mixed.jobs;
    parallel_for(schedule.size(), options.mixed.jobs,
                 [&](std::size_t k) { results[k] = filtration_mixed(filtrations, schedule[k], inner); });

    std::vector<SweepLevel> out;
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        SweepLevel lvl{schedule[k], std::move(results[k]->stage), std::move(results[k]->table), {}};
        if (k > 0) {
            for (const auto &[c, v] : lvl.table.entries()) {
                lvl.delta.emplace(c, v - out.back().table.at(c));
            }
        }
        out.push_back(std::move(lvl));
    }
    return out;
}

} // namespace mixmult
