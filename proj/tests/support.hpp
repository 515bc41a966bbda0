#pragma once

#include <initializer_list>
#include <vector>

#include <mixmult/ideal.hpp>
#include <mixmult/verify.hpp>

namespace mixmult::test
{

inline MonomialIdeal ideal(unsigned dim, std::initializer_list<std::initializer_list<std::uint32_t>> gens)
{
    std::vector<Exponent> raw;
    for (const auto &g : gens) {
        raw.emplace_back(g);
    }
    return MonomialIdeal(dim, raw);
}

// (x_1^a_1, ..., x_d^a_d)
inline MonomialIdeal diagonal(std::initializer_list<std::uint32_t> a)
{
    const unsigned d = static_cast<unsigned>(a.size());
    std::vector<Exponent> raw;
    unsigned i = 0;
    for (auto e : a) {
        std::vector<std::uint32_t> v(d, 0);
        v[i++] = e;
        raw.emplace_back(std::move(v));
    }
    return MonomialIdeal(d, raw);
}

inline std::vector<MonomialIdeal> random_tuple(unsigned dim, unsigned r, unsigned max_exp, Lcg64 &stream)
{
    SuiteConfig cfg;
    cfg.dim = dim;
    cfg.r = r;
    cfg.max_exponent = max_exp;
    std::vector<MonomialIdeal> out;
    for (unsigned i = 0; i < r; ++i) {
        out.push_back(random_ideal(cfg, stream));
    }
    return out;
}

} // namespace mixmult::test
