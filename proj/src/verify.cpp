#include <mixmult/verify.hpp>

#include <algorithm>

#include <mixmult/errors.hpp>
#include <mixmult/parallel.hpp>

namespace mixmult
{

std::vector<InequalityReport> minkowski_report(const MixedTable &table)
{
    const unsigned d = table.dim();
    std::vector<InequalityReport> out;
    for (const auto &[c, value] : table.entries()) {
        InequalityReport rep;
        rep.composition = c;
        rep.lhs = pow(value, d);
        rep.rhs = 1;
        for (unsigned i = 0; i < table.parts(); ++i) {
            rep.rhs *= pow(table.pure(i), c[i]);
        }
        rep.holds = rep.lhs <= rep.rhs;
        rep.equality = rep.lhs == rep.rhs;
        out.push_back(std::move(rep));
    }
    return out;
}

bool all_hold(const std::vector<InequalityReport> &reports)
{
    return std::all_of(reports.begin(), reports.end(), [](const auto &r) { return r.holds; });
}

bool is_mixed_composition(const Composition &c)
{
    return std::count_if(c.begin(), c.end(), [](unsigned p) { return p > 0; }) >= 2;
}

std::string to_string(ZeroCheckStatus status)
{
    switch (status) {
    case ZeroCheckStatus::passed:
        return "passed";
    case ZeroCheckStatus::not_monotone:
        return "not_monotone";
    case ZeroCheckStatus::inequality_fails:
        return "inequality_fails";
    case ZeroCheckStatus::tolerance_not_met:
        return "tolerance_not_met";
    }
    return "unknown";
}

ZeroPropagationReport zero_propagation_report(std::span<const Filtration> filtrations, unsigned j,
                                              std::span<const unsigned> schedule, const Rational &tol,
                                              const FiltrationOptions &options)
{
    if (j == 0 || j > filtrations.size()) {
        throw InputError("zero-check index j = " + std::to_string(j) + " out of range 1.." +
                         std::to_string(filtrations.size()));
    }
    if (tol <= 0) {
        throw InputError("zero-check tolerance must be positive");
    }
    ZeroPropagationReport rep;
    rep.j = j;
    rep.tol = tol;
    rep.levels = convergence_sweep(filtrations, schedule, options);
    for (const auto &lvl : rep.levels) {
        rep.minkowski.push_back(minkowski_report(lvl.table));
    }

    const unsigned axis = j - 1;
    for (std::size_t k = 1; k < rep.levels.size() && rep.status == ZeroCheckStatus::passed; ++k) {
        for (const auto &[c, delta] : rep.levels[k].delta) {
            if (c[axis] > 0 && delta > 0) {
                rep.status = ZeroCheckStatus::not_monotone;
                rep.message = "entry (" + composition_key(c) + ") increased from level " +
                              std::to_string(rep.levels[k - 1].level) + " to " + std::to_string(rep.levels[k].level);
                break;
            }
        }
    }
    for (std::size_t k = 0; k < rep.levels.size() && rep.status == ZeroCheckStatus::passed; ++k) {
        if (!all_hold(rep.minkowski[k])) {
            rep.status = ZeroCheckStatus::inequality_fails;
            rep.message = "Minkowski bound violated at level " + std::to_string(rep.levels[k].level);
        }
    }
    if (rep.status == ZeroCheckStatus::passed) {
        for (const auto &[c, value] : rep.levels.back().table.entries()) {
            if (c[axis] > 0 && value >= tol) {
                rep.status = ZeroCheckStatus::tolerance_not_met;
                rep.message = "entry (" + composition_key(c) + ") = " + to_string(value) + " at level " +
                              std::to_string(rep.levels.back().level) + " is not below " + to_string(tol) +
                              "; extend the schedule";
                break;
            }
        }
    }
    if (rep.status == ZeroCheckStatus::passed) {
        rep.message = "truncated values with d_" + std::to_string(j) + " > 0 decrease below " + to_string(tol);
    }
    return rep;
}

ZeroPropagationReport zero_propagation_check(std::span<const Filtration> filtrations, unsigned j,
                                             std::span<const unsigned> schedule, const Rational &tol,
                                             const FiltrationOptions &options)
{
    auto rep = zero_propagation_report(filtrations, j, schedule, tol, options);
    switch (rep.status) {
    case ZeroCheckStatus::passed:
        return rep;
    case ZeroCheckStatus::tolerance_not_met:
        throw ToleranceNotMet(rep.message);
    default:
        throw VerificationFailure(rep.message);
    }
}

void validate(const SuiteConfig &cfg)
{
    if (cfg.dim != 2 && cfg.dim != 3) {
        throw InputError("suite dimension must be 2 or 3");
    }
    if (cfg.r == 0) {
        throw InputError("suite needs r >= 1");
    }
    if (cfg.max_exponent == 0) {
        throw InputError("suite needs max_exponent >= 1");
    }
}

MonomialIdeal random_ideal(const SuiteConfig &cfg, Lcg64 &stream)
{
    validate(cfg);
    std::vector<Exponent::value_type> box(cfg.dim);
    std::vector<Exponent> gens;
    for (unsigned i = 0; i < cfg.dim; ++i) {
        box[i] = stream.uniform(1, cfg.max_exponent);
        std::vector<Exponent::value_type> e(cfg.dim, 0);
        e[i] = box[i];
        gens.emplace_back(std::move(e));
    }
    const unsigned extras = stream.uniform(0, cfg.dim);
    for (unsigned k = 0; k < extras; ++k) {
        std::vector<Exponent::value_type> e(cfg.dim);
        for (unsigned i = 0; i < cfg.dim; ++i) {
            e[i] = stream.uniform(0, box[i] - 1);
        }
        if (std::any_of(e.begin(), e.end(), [](auto c) { return c != 0; })) {
            gens.emplace_back(std::move(e));
        }
    }
    return MonomialIdeal(cfg.dim, gens);
}

SuiteReport suite(const SuiteConfig &cfg, unsigned jobs)
{
    validate(cfg);
    SuiteReport report;
    report.config = cfg;
    Lcg64 stream(cfg.seed);
    report.instances.resize(cfg.count);
    for (std::size_t k = 0; k < cfg.count; ++k) {
        auto &inst = report.instances[k];
        inst.draw_index = k;
        if (cfg.force_equal) {
            inst.ideals.assign(cfg.r, random_ideal(cfg, stream));
        } else {
            for (unsigned i = 0; i < cfg.r; ++i) {
                inst.ideals.push_back(random_ideal(cfg, stream));
            }
        }
    }

    parallel_for(report.instances.size(), jobs, [&](std::size_t k) {
        auto &inst = report.instances[k];
        try {
            inst.table = mixed_table(inst.ideals);
            inst.reports = minkowski_report(*inst.table);
            inst.holds = all_hold(inst.reports);
            if (cfg.paranoid) {
                inst.oracle_agrees = mixed_table_oracle(inst.ideals) == *inst.table;
                inst.holds = inst.holds && *inst.oracle_agrees;
            }
        } catch (const Error &e) {
            inst.holds = false;
            inst.error = e.what();
        }
    });

    for (const auto &inst : report.instances) {
        report.passed = report.passed && inst.holds;
        if (std::any_of(inst.reports.begin(), inst.reports.end(),
                        [](const auto &r) { return r.equality && is_mixed_composition(r.composition); })) {
            report.equality_cases.push_back(inst.draw_index);
        }
    }
    return report;
}

} // namespace mixmult
