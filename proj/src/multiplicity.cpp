#include <mixmult/multiplicity.hpp>

#include <numeric>
#include <set>
#include <sstream>

#include <mixmult/errors.hpp>
#include <mixmult/gridpoly.hpp>
#include <mixmult/parallel.hpp>

namespace mixmult
{

namespace
{

void check_policy(const StabilizationPolicy &policy)
{
    if (policy.width < 2) {
        throw InputError("stabilization window width must be at least 2");
    }
    if (policy.t_start && *policy.t_start == 0) {
        throw InputError("stabilization window must start at t >= 1");
    }
}

void check_inputs(std::span<const MonomialIdeal> ideals)
{
    if (ideals.empty()) {
        throw InputError("mixed multiplicities need at least one ideal");
    }
    const unsigned dim = ideals.front().dim();
    for (const auto &I : ideals) {
        if (I.dim() != dim) {
            throw DimensionMismatch("ideals of dimensions " + std::to_string(dim) + " and " + std::to_string(I.dim()));
        }
        if (!is_m_primary(I)) {
            throw NotMPrimary("not m-primary: " + I.to_string());
        }
        if (I.is_unit()) {
            throw InputError("the unit ideal has no mixed multiplicities");
        }
    }
}

Integer forward_difference(std::span<const std::uint64_t> values, std::size_t at, unsigned order)
{
    Integer total = 0;
    for (unsigned k = 0; k <= order; ++k) {
        const Integer term = binomial(order, k) * values[at + k];
        if ((order - k) % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

} // namespace

namespace
{

// e(K) for K = prod_i bases[i]^exps[i]. K^t is stepped to K^(t+1) by multiplying
// with each base the prescribed number of times, which keeps every product's
// candidate set small.
MultiplicityResult stabilized_multiplicity(std::span<const MonomialIdeal> bases, std::span<const unsigned> exps,
                                           unsigned t_start, const StabilizationPolicy &policy,
                                           const std::string &label)
{
    const unsigned d = bases.front().dim();
    auto step = [&](const MonomialIdeal &from) {
        MonomialIdeal out = from;
        for (std::size_t i = 0; i < bases.size(); ++i) {
            for (unsigned k = 0; k < exps[i]; ++k) {
                out = product(out, bases[i]);
            }
        }
        return out;
    };

    MonomialIdeal current = MonomialIdeal::unit(d);
    unsigned current_exponent = 0;
    while (true) {
        while (current_exponent < t_start) {
            current = step(current);
            ++current_exponent;
        }
        std::vector<std::uint64_t> lengths;
        const unsigned count = d + policy.width;
        for (unsigned k = 0; k < count; ++k) {
            if (k > 0) {
                current = step(current);
                ++current_exponent;
            }
            lengths.push_back(colength(current));
        }
        const Integer first = forward_difference(lengths, 0, d);
        bool constant = true;
        for (unsigned s = 1; s < policy.width && constant; ++s) {
            constant = forward_difference(lengths, s, d) == first;
        }
        if (constant) {
            return {first, false, {t_start, policy.width}};
        }
        if (t_start * 2 > policy.cap) {
            throw NonStabilizing("d-th differences of colength(I^t) not constant below t_start cap " +
                                 std::to_string(policy.cap) + " for " + label + "; retry with a larger t_start");
        }
        t_start *= 2;
    }
}

} // namespace

MultiplicityResult multiplicity_detail(const MonomialIdeal &ideal, const StabilizationPolicy &policy)
{
    check_policy(policy);
    if (ideal.is_unit()) {
        return {Integer(0), true, {}};
    }
    if (!is_m_primary(ideal)) {
        throw NotMPrimary("multiplicity of a non-m-primary ideal: " + ideal.to_string());
    }
    const unsigned exps[] = {1};
    return stabilized_multiplicity(std::span(&ideal, 1), exps, policy.t_start.value_or(1 + ideal.max_pure_power()),
                                   policy, ideal.to_string());
}

Integer multiplicity(const MonomialIdeal &ideal, const StabilizationPolicy &policy)
{
    return multiplicity_detail(ideal, policy).value;
}

std::vector<Composition> compositions(unsigned total, unsigned parts)
{
    std::vector<Composition> out;
    if (parts == 0) {
        if (total == 0) {
            out.emplace_back();
        }
        return out;
    }
    Composition c(parts, 0);
    // Recursive fill, first part ascending.
    auto fill = [&](auto &&self, unsigned pos, unsigned left) -> void {
        if (pos + 1 == parts) {
            c[pos] = left;
            out.push_back(c);
            return;
        }
        for (unsigned v = 0; v <= left; ++v) {
            c[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    fill(fill, 0, total);
    return out;
}

std::string composition_key(const Composition &c)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < c.size(); ++i) {
        os << (i ? "," : "") << c[i];
    }
    return os.str();
}

Composition parse_composition_key(const std::string &key)
{
    Composition out;
    std::istringstream is(key);
    std::string part;
    while (std::getline(is, part, ',')) {
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
            throw InputError("malformed composition key '" + key + "'");
        }
        out.push_back(static_cast<unsigned>(std::stoul(part)));
    }
    if (out.empty()) {
        throw InputError("empty composition key");
    }
    return out;
}

Integer multinomial(const Composition &c)
{
    const unsigned total = std::accumulate(c.begin(), c.end(), 0u);
    Integer out = factorial(total);
    for (unsigned part : c) {
        out /= factorial(part);
    }
    return out;
}

MixedTable::MixedTable(unsigned dim, unsigned parts, std::map<Composition, Rational> entries)
    : dim_(dim), parts_(parts), entries_(std::move(entries))
{
    const auto keys = compositions(dim, parts);
    if (keys.size() != entries_.size() ||
        !std::equal(keys.begin(), keys.end(), entries_.begin(), [](const auto &k, const auto &kv) { return k == kv.first; })) {
        throw InputError("mixed table keys must be exactly the compositions of " + std::to_string(dim) + " into " +
                         std::to_string(parts) + " parts");
    }
}

const Rational &MixedTable::at(const Composition &c) const
{
    const auto it = entries_.find(c);
    if (it == entries_.end()) {
        throw InputError("no mixed table entry for (" + composition_key(c) + ")");
    }
    return it->second;
}

const Rational &MixedTable::pure(unsigned i) const
{
    Composition c(parts_, 0);
    c.at(i) = dim_;
    return at(c);
}

MixedTable MixedTable::scaled(const Rational &factor) const
{
    auto entries = entries_;
    for (auto &[key, value] : entries) {
        value *= factor;
    }
    return MixedTable(dim_, parts_, std::move(entries));
}

MixedTable MixedTable::permuted(std::span<const unsigned> order) const
{
    if (order.size() != parts_) {
        throw InputError("permutation length does not match the table");
    }
    std::map<Composition, Rational> entries;
    for (const auto &[key, value] : entries_) {
        Composition relabeled(parts_);
        for (unsigned k = 0; k < parts_; ++k) {
            relabeled[k] = key.at(order[k]);
        }
        entries.emplace(std::move(relabeled), value);
    }
    return MixedTable(dim_, parts_, std::move(entries));
}

unsigned default_t_start(std::span<const MonomialIdeal> ideals)
{
    unsigned t = 1;
    for (const auto &I : ideals) {
        t += I.max_pure_power();
    }
    return t;
}

MixedTable mixed_table(std::span<const MonomialIdeal> ideals, const MixedOptions &options)
{
    check_inputs(ideals);
    check_policy(options.policy);
    const unsigned d = ideals.front().dim();
    const unsigned r = static_cast<unsigned>(ideals.size());

    StabilizationPolicy policy = options.policy;
    if (!policy.t_start) {
        policy.t_start = default_t_start(ideals);
    }

    const Grid grid = Grid::integer_box(r, 1, d + 1);
    const std::vector<unsigned> bounds(r, d);
    const GridFunction eval = [&](std::span<const Rational> n) {
        std::vector<unsigned> exps(r);
        std::string label = "product with exponents (";
        for (unsigned i = 0; i < r; ++i) {
            exps[i] = static_cast<unsigned>(boost::multiprecision::numerator(n[i]));
            label += (i ? "," : "") + std::to_string(exps[i]);
        }
        return Rational(stabilized_multiplicity(ideals, exps, *policy.t_start, policy, label + ")").value);
    };
    const CoeffTable form = interpolate_on_grid(eval, bounds, grid, InterpolationMethod::automatic, options.jobs);
    if (!form.is_homogeneous(d)) {
        throw InternalError("multiplicities of products did not interpolate to a form of degree " + std::to_string(d) +
                            "; stabilization failed upstream");
    }

    std::map<Composition, Rational> entries;
    for (const auto &c : compositions(d, r)) {
        const Rational value = form.coefficient(c) / Rational(multinomial(c));
        if (boost::multiprecision::denominator(value) != 1 || value < 0) {
            throw InternalError("non-integral mixed multiplicity " + to_string(value) + " at (" + composition_key(c) + ")");
        }
        entries.emplace(c, value);
    }
    return MixedTable(d, r, std::move(entries));
}

MixedTable mixed_table_oracle(std::span<const MonomialIdeal> ideals, const MixedOptions &options)
{
    check_inputs(ideals);
    check_policy(options.policy);
    const unsigned d = ideals.front().dim();
    const unsigned r = static_cast<unsigned>(ideals.size());
    const unsigned width = options.policy.width;
    unsigned t_start = options.policy.t_start.value_or(default_t_start(ideals));
    const auto comps = compositions(d, r);

    std::vector<std::vector<MonomialIdeal>> powers(r);
    for (unsigned i = 0; i < r; ++i) {
        powers[i].push_back(MonomialIdeal::unit(d));
    }
    auto ensure_powers = [&](unsigned upto) {
        for (unsigned i = 0; i < r; ++i) {
            while (powers[i].size() <= upto) {
                powers[i].push_back(product(powers[i].back(), ideals[i]));
            }
        }
    };

    while (true) {
        // Every lattice point touched by some difference at some window offset.
        std::set<std::vector<unsigned>> needed;
        for (unsigned s = 0; s < width; ++s) {
            for (const auto &c : comps) {
                std::vector<unsigned> k(r, 0);
                while (true) {
                    std::vector<unsigned> n(r);
                    for (unsigned i = 0; i < r; ++i) {
                        n[i] = t_start + s + k[i];
                    }
                    needed.insert(std::move(n));
                    unsigned i = 0;
                    while (i < r && ++k[i] > c[i]) {
                        k[i] = 0;
                        ++i;
                    }
                    if (i == r) {
                        break;
                    }
                }
            }
        }
        ensure_powers(t_start + width + d);

        const std::vector<std::vector<unsigned>> points(needed.begin(), needed.end());
        std::vector<std::uint64_t> lengths(points.size());
        parallel_for(points.size(), options.jobs, [&](std::size_t p) {
            MonomialIdeal K = powers[0][points[p][0]];
            for (unsigned i = 1; i < r; ++i) {
                K = product(K, powers[i][points[p][i]]);
            }
            lengths[p] = colength(K);
        });
        std::map<std::vector<unsigned>, std::uint64_t> F;
        for (std::size_t p = 0; p < points.size(); ++p) {
            F.emplace(points[p], lengths[p]);
        }

        auto mixed_difference = [&](const Composition &c, unsigned base) {
            Integer total = 0;
            std::vector<unsigned> k(r, 0);
            while (true) {
                Integer coeff = 1;
                unsigned removed = 0;
                std::vector<unsigned> n(r);
                for (unsigned i = 0; i < r; ++i) {
                    coeff *= binomial(c[i], k[i]);
                    removed += c[i] - k[i];
                    n[i] = base + k[i];
                }
                const Integer term = coeff * F.at(n);
                if (removed % 2 == 0) {
                    total += term;
                } else {
                    total -= term;
                }
                unsigned i = 0;
                while (i < r && ++k[i] > c[i]) {
                    k[i] = 0;
                    ++i;
                }
                if (i == r) {
                    return total;
                }
            }
        };

        std::map<Composition, Rational> entries;
        bool stable = true;
        for (const auto &c : comps) {
            const Integer first = mixed_difference(c, t_start);
            for (unsigned s = 1; s < width && stable; ++s) {
                stable = mixed_difference(c, t_start + s) == first;
            }
            if (!stable) {
                break;
            }
            entries.emplace(c, Rational(first));
        }
        if (stable) {
            return MixedTable(d, r, std::move(entries));
        }
        if (t_start * 2 > options.policy.cap) {
            throw NonStabilizing("mixed differences of colength not constant below t_start cap " +
                                 std::to_string(options.policy.cap));
        }
        t_start *= 2;
    }
}

} // namespace mixmult
