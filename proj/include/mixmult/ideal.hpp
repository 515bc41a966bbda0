#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mixmult
{

// A lattice point of N^d, i.e. the exponent vector of a monomial.
class Exponent
{
public:
    using value_type = std::uint32_t;

    Exponent() = default;
    explicit Exponent(std::vector<value_type> coords) : coords_(std::move(coords)) {}
    Exponent(std::initializer_list<value_type> coords) : coords_(coords) {}
    explicit Exponent(std::span<const value_type> coords) : coords_(coords.begin(), coords.end()) {}

    std::size_t dim() const noexcept { return coords_.size(); }
    value_type operator[](std::size_t i) const { return coords_[i]; }
    std::span<const value_type> coords() const noexcept { return coords_; }

    friend bool operator==(const Exponent &, const Exponent &) = default;
    friend auto operator<=>(const Exponent &, const Exponent &) = default;

private:
    std::vector<value_type> coords_;
};

// Componentwise <=, i.e. divisibility of monomials.
bool divides(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

// A monomial ideal of k[x_1, ..., x_d], stored by its minimal generators.
//
// Generators are kept as a lexicographically sorted antichain in one flat
// buffer, so two ideals are equal iff their buffers are equal. The zero ideal
// is not representable; the unit ideal is the single zero vector.
class MonomialIdeal
{
public:
    using value_type = std::uint32_t;

    // Minimalizes raw_gens. Throws InputError on an empty set or ragged lengths.
    MonomialIdeal(unsigned dim, const std::vector<Exponent> &raw_gens);

    static MonomialIdeal unit(unsigned dim);
    // The maximal ideal (x_1, ..., x_d).
    static MonomialIdeal maximal(unsigned dim);
    // Builds from a flat buffer of dim-strided candidates (minimalized).
    static MonomialIdeal from_flat(unsigned dim, std::vector<value_type> flat);

    unsigned dim() const noexcept { return dim_; }
    std::size_t num_gens() const noexcept { return data_.size() / dim_; }
    std::span<const value_type> generator(std::size_t i) const
    {
        return std::span<const value_type>(data_).subspan(i * dim_, dim_);
    }
    std::vector<Exponent> gens() const;
    std::span<const value_type> flat() const noexcept { return data_; }

    bool is_unit() const noexcept;
    bool contains(std::span<const value_type> e) const;
    bool contains(const Exponent &e) const { return contains(e.coords()); }

    // I is a subset of J, checked generator-wise.
    bool is_subset_of(const MonomialIdeal &other) const;

    // Exponent of the pure power x_axis^p in the ideal, 0 if there is none.
    value_type pure_power(unsigned axis) const;
    value_type max_pure_power() const;

    std::string to_string() const;

    friend bool operator==(const MonomialIdeal &, const MonomialIdeal &) = default;

private:
    MonomialIdeal(unsigned dim, std::vector<value_type> normalized, int);
    friend MonomialIdeal product(const MonomialIdeal &a, const MonomialIdeal &b);

    unsigned dim_ = 0;
    std::vector<value_type> data_;
};

// Returns the unique antichain generating the same ideal as raw_gens.
MonomialIdeal minimalize(const std::vector<Exponent> &raw_gens, unsigned dim);

MonomialIdeal product(const MonomialIdeal &a, const MonomialIdeal &b);
MonomialIdeal power(const MonomialIdeal &base, unsigned n);
MonomialIdeal sum(const MonomialIdeal &a, const MonomialIdeal &b);
bool is_m_primary(const MonomialIdeal &ideal);

// Number of standard monomials (lattice points outside the ideal).
// Throws NotMPrimary when that number is infinite.
std::uint64_t colength(const MonomialIdeal &ideal);

namespace detail
{

// Sorted, deduplicated minimal elements of a dim-strided point buffer.
std::vector<std::uint32_t> minimal_elements(unsigned dim, std::vector<std::uint32_t> flat);
// Quadratic pairwise-divisibility scan; reference for minimal_elements.
std::vector<std::uint32_t> minimal_elements_naive(unsigned dim, std::vector<std::uint32_t> flat);
// Minimal elements of all pairwise sums a_i + b_j (the generators of a product).
std::vector<std::uint32_t> minimal_sums(unsigned dim, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

// Colength by slicing on the last coordinate.
std::uint64_t colength_sliced(const MonomialIdeal &ideal);
// Colength by scanning every point of the pure-power bounding box.
std::uint64_t colength_scan(const MonomialIdeal &ideal);

} // namespace detail

} // namespace mixmult
