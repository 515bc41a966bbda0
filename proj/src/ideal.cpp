#include <mixmult/ideal.hpp>

#include <algorithm>
#include <array>
#include <cstring>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include <mixmult/errors.hpp>

namespace mixmult
{

using Coord = std::uint32_t;

bool divides(std::span<const Coord> a, std::span<const Coord> b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
    }
    return true;
}

namespace detail
{

namespace
{

template <std::size_t Dim>
std::vector<Coord> sorted_unique_fixed(const std::vector<Coord> &flat)
{
    using Point = std::array<Coord, Dim>;
    std::vector<Point> pts(flat.size() / Dim);
    std::memcpy(pts.data(), flat.data(), pts.size() * sizeof(Point));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Coord> out(pts.size() * Dim);
    std::memcpy(out.data(), pts.data(), pts.size() * sizeof(Point));
    return out;
}

// Sorts the dim-strided points lexicographically and removes duplicates.
std::vector<Coord> sorted_unique(unsigned dim, const std::vector<Coord> &flat)
{
    switch (dim) {
    case 1:
        return sorted_unique_fixed<1>(flat);
    case 2:
        return sorted_unique_fixed<2>(flat);
    case 3:
        return sorted_unique_fixed<3>(flat);
    case 4:
        return sorted_unique_fixed<4>(flat);
    default:
        break;
    }
    const std::size_t n = flat.size() / dim;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto row = [&](std::size_t i) { return std::span<const Coord>(flat).subspan(i * dim, dim); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto ra = row(a), rb = row(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    });
    std::vector<Coord> out;
    out.reserve(flat.size());
    for (std::size_t k = 0; k < n; ++k) {
        const auto r = row(order[k]);
        if (!out.empty() && std::equal(r.begin(), r.end(), out.end() - dim)) {
            continue;
        }
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

std::vector<Coord> minimal_2d(std::vector<Coord> pts)
{
    std::vector<Coord> out;
    Coord best = std::numeric_limits<Coord>::max();
    for (std::size_t i = 0; i < pts.size(); i += 2) {
        // Lex order: every point that could divide this one was already seen.
        if (pts[i + 1] < best) {
            best = pts[i + 1];
            out.push_back(pts[i]);
            out.push_back(pts[i + 1]);
        }
    }
    return out;
}

std::vector<Coord> minimal_3d(std::vector<Coord> pts)
{
    // Points arrive in lex order, so every possible divisor of a point has been
    // seen before it. A Fenwick tree over y keeps the prefix minimum of z among
    // accepted points.
    Coord max_y = 0;
    for (std::size_t i = 1; i < pts.size(); i += 3) {
        max_y = std::max(max_y, pts[i]);
    }
    std::vector<Coord> tree(std::size_t(max_y) + 2, std::numeric_limits<Coord>::max());
    std::vector<Coord> out;
    for (std::size_t i = 0; i < pts.size(); i += 3) {
        const Coord y = pts[i + 1];
        const Coord z = pts[i + 2];
        Coord best = std::numeric_limits<Coord>::max();
        for (std::size_t k = std::size_t(y) + 1; k > 0; k -= k & (~k + 1)) {
            best = std::min(best, tree[k]);
        }
        if (best <= z) {
            continue;
        }
        for (std::size_t k = std::size_t(y) + 1; k < tree.size(); k += k & (~k + 1)) {
            tree[k] = std::min(tree[k], z);
        }
        out.insert(out.end(), {pts[i], y, z});
    }
    return out;
}

} // namespace

std::vector<Coord> minimal_elements_naive(unsigned dim, std::vector<Coord> flat)
{
    const auto pts = sorted_unique(dim, flat);
    const std::size_t n = pts.size() / dim;
    auto row = [&](std::size_t i) { return std::span<const Coord>(pts).subspan(i * dim, dim); };
    std::vector<Coord> out;
    for (std::size_t i = 0; i < n; ++i) {
        bool minimal = true;
        for (std::size_t j = 0; j < n && minimal; ++j) {
            if (j != i && divides(row(j), row(i))) {
                minimal = false;
            }
        }
        if (minimal) {
            const auto r = row(i);
            out.insert(out.end(), r.begin(), r.end());
        }
    }
    return out;
}

namespace
{

// pts: lexicographically sorted, without duplicates.
std::vector<Coord> minimal_of_sorted(unsigned dim, std::vector<Coord> pts)
{
    switch (dim) {
    case 1:
        pts.resize(std::min<std::size_t>(pts.size(), 1));
        return pts;
    case 2:
        return minimal_2d(std::move(pts));
    case 3:
        return minimal_3d(std::move(pts));
    default:
        break;
    }
    // Higher dimensions: anything dividing a point has no larger degree, so scan
    // by degree and test only against already accepted points.
    const std::size_t n = pts.size() / dim;
    std::vector<std::pair<std::uint64_t, std::size_t>> by_degree;
    by_degree.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t deg = 0;
        for (unsigned k = 0; k < dim; ++k) {
            deg += pts[i * dim + k];
        }
        by_degree.emplace_back(deg, i);
    }
    std::sort(by_degree.begin(), by_degree.end());
    std::vector<std::size_t> kept;
    auto row = [&](std::size_t i) { return std::span<const Coord>(pts).subspan(i * dim, dim); };
    for (const auto &[deg, i] : by_degree) {
        const bool dominated = std::any_of(kept.begin(), kept.end(), [&](std::size_t j) { return divides(row(j), row(i)); });
        if (!dominated) {
            kept.push_back(i);
        }
    }
    std::sort(kept.begin(), kept.end());
    std::vector<Coord> out;
    out.reserve(kept.size() * dim);
    for (std::size_t i : kept) {
        const auto r = row(i);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

// Sorted, deduplicated pairwise sums of two lex-sorted antichains. Each
// generator of the smaller ideal shifts the larger one into an already sorted
// run, so the runs only need merging.
template <std::size_t Dim>
std::vector<Coord> sorted_sums_fixed(std::span<const Coord> big, std::span<const Coord> small)
{
    using Point = std::array<Coord, Dim>;
    const std::size_t nb = big.size() / Dim;
    const std::size_t ns = small.size() / Dim;
    std::vector<Point> pts(nb * ns);
    std::vector<std::size_t> bounds{0};
    for (std::size_t j = 0; j < ns; ++j) {
        for (std::size_t i = 0; i < nb; ++i) {
            Point &p = pts[j * nb + i];
            for (std::size_t k = 0; k < Dim; ++k) {
                p[k] = big[i * Dim + k] + small[j * Dim + k];
            }
        }
        bounds.push_back((j + 1) * nb);
    }
    while (bounds.size() > 2) {
        std::vector<std::size_t> merged{0};
        for (std::size_t r = 0; r + 2 < bounds.size(); r += 2) {
            std::inplace_merge(pts.begin() + bounds[r], pts.begin() + bounds[r + 1], pts.begin() + bounds[r + 2]);
            merged.push_back(bounds[r + 2]);
        }
        if (bounds.size() % 2 == 0) {
            merged.push_back(bounds.back());
        }
        bounds = std::move(merged);
    }
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Coord> out(pts.size() * Dim);
    std::memcpy(out.data(), pts.data(), pts.size() * sizeof(Point));
    return out;
}

} // namespace

std::vector<Coord> minimal_elements(unsigned dim, std::vector<Coord> flat)
{
    return minimal_of_sorted(dim, sorted_unique(dim, flat));
}

std::vector<Coord> minimal_sums(unsigned dim, std::span<const Coord> a, std::span<const Coord> b)
{
    const bool a_big = a.size() >= b.size();
    const auto big = a_big ? a : b;
    const auto small = a_big ? b : a;
    switch (dim) {
    case 2:
        return minimal_of_sorted(2, sorted_sums_fixed<2>(big, small));
    case 3:
        return minimal_of_sorted(3, sorted_sums_fixed<3>(big, small));
    case 4:
        return minimal_of_sorted(4, sorted_sums_fixed<4>(big, small));
    default:
        break;
    }
    std::vector<Coord> candidates;
    candidates.reserve(a.size() / dim * b.size());
    for (std::size_t i = 0; i < a.size(); i += dim) {
        for (std::size_t j = 0; j < b.size(); j += dim) {
            for (unsigned k = 0; k < dim; ++k) {
                candidates.push_back(a[i + k] + b[j + k]);
            }
        }
    }
    return minimal_elements(dim, std::move(candidates));
}

namespace
{

Coord pure_power_flat(unsigned dim, std::span<const Coord> gens, unsigned axis)
{
    for (std::size_t i = 0; i < gens.size(); i += dim) {
        bool pure = true;
        for (unsigned k = 0; k < dim && pure; ++k) {
            pure = k == axis || gens[i + k] == 0;
        }
        if (pure) {
            return gens[i + axis];
        }
    }
    return 0;
}

// Slices along z, keeping the (x, y) staircase of each slice incrementally.
std::uint64_t colength_3d(std::span<const Coord> gens)
{
    std::vector<std::array<Coord, 3>> pts(gens.size() / 3);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pts[i] = {gens[3 * i], gens[3 * i + 1], gens[3 * i + 2]};
    }
    std::sort(pts.begin(), pts.end(), [](const auto &a, const auto &b) { return a[2] < b[2]; });
    const Coord height = pure_power_flat(3, gens, 2);

    std::map<Coord, Coord> stairs; // x increasing, y strictly decreasing
    std::uint64_t slice_area = 0;
    std::uint64_t total = 0;
    std::size_t next = 0;
    for (Coord level = 0; level < height; ++level) {
        bool changed = false;
        for (; next < pts.size() && pts[next][2] == level; ++next) {
            const Coord x = pts[next][0];
            const Coord y = pts[next][1];
            auto it = stairs.upper_bound(x);
            if (it != stairs.begin() && std::prev(it)->second <= y) {
                continue;
            }
            it = stairs.lower_bound(x);
            while (it != stairs.end() && it->second >= y) {
                it = stairs.erase(it);
            }
            stairs.emplace_hint(it, x, y);
            changed = true;
        }
        if (changed) {
            slice_area = 0;
            for (auto it = stairs.begin(); std::next(it) != stairs.end(); ++it) {
                slice_area += std::uint64_t(std::next(it)->first - it->first) * it->second;
            }
        }
        total += slice_area;
    }
    return total;
}

// gens: minimal, lex-sorted, containing a pure power on every axis.
std::uint64_t colength_flat(unsigned dim, std::span<const Coord> gens)
{
    if (dim == 1) {
        return gens[0];
    }
    if (dim == 2) {
        // Lex-sorted antichain: x increasing, y decreasing, from (0, p_y) to (p_x, 0).
        std::uint64_t total = 0;
        for (std::size_t i = 0; i + 2 < gens.size(); i += 2) {
            total += std::uint64_t(gens[i + 2] - gens[i]) * gens[i + 1];
        }
        return total;
    }
    if (dim == 3) {
        return colength_3d(gens);
    }
    const unsigned last = dim - 1;
    const Coord height = pure_power_flat(dim, gens, last);

    std::vector<std::size_t> order(gens.size() / dim);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return gens[a * dim + last] < gens[b * dim + last]; });

    std::vector<Coord> slice;
    std::uint64_t slice_colength = 0;
    std::uint64_t total = 0;
    std::size_t next = 0;
    for (Coord level = 0; level < height; ++level) {
        bool changed = false;
        while (next < order.size() && gens[order[next] * dim + last] == level) {
            const auto g = gens.subspan(order[next] * dim, last);
            slice.insert(slice.end(), g.begin(), g.end());
            changed = true;
            ++next;
        }
        if (changed) {
            slice = minimal_elements(last, std::move(slice));
            slice_colength = colength_flat(last, slice);
        }
        total += slice_colength;
    }
    return total;
}

} // namespace

std::uint64_t colength_sliced(const MonomialIdeal &ideal)
{
    if (!is_m_primary(ideal)) {
        throw NotMPrimary("colength of a non-m-primary ideal is infinite: " + ideal.to_string());
    }
    return colength_flat(ideal.dim(), ideal.flat());
}

std::uint64_t colength_scan(const MonomialIdeal &ideal)
{
    if (!is_m_primary(ideal)) {
        throw NotMPrimary("colength of a non-m-primary ideal is infinite: " + ideal.to_string());
    }
    const unsigned dim = ideal.dim();
    std::vector<Coord> box(dim);
    for (unsigned k = 0; k < dim; ++k) {
        box[k] = ideal.pure_power(k);
    }
    if (std::any_of(box.begin(), box.end(), [](Coord c) { return c == 0; })) {
        return 0;
    }
    std::vector<Coord> point(dim, 0);
    std::uint64_t count = 0;
    while (true) {
        if (!ideal.contains(point)) {
            ++count;
        }
        unsigned k = 0;
        while (k < dim && ++point[k] == box[k]) {
            point[k] = 0;
            ++k;
        }
        if (k == dim) {
            break;
        }
    }
    return count;
}

} // namespace detail

MonomialIdeal::MonomialIdeal(unsigned dim, std::vector<value_type> normalized, int) : dim_(dim), data_(std::move(normalized))
{
}

MonomialIdeal::MonomialIdeal(unsigned dim, const std::vector<Exponent> &raw_gens) : dim_(dim)
{
    if (dim == 0) {
        throw InputError("ambient dimension must be at least 1");
    }
    if (raw_gens.empty()) {
        throw InputError("a monomial ideal needs at least one generator");
    }
    std::vector<value_type> flat;
    flat.reserve(raw_gens.size() * dim);
    for (const auto &g : raw_gens) {
        if (g.dim() != dim) {
            throw DimensionMismatch("generator of length " + std::to_string(g.dim()) + " in dimension " + std::to_string(dim));
        }
        flat.insert(flat.end(), g.coords().begin(), g.coords().end());
    }
    data_ = detail::minimal_elements(dim, std::move(flat));
}

MonomialIdeal MonomialIdeal::unit(unsigned dim)
{
    if (dim == 0) {
        throw InputError("ambient dimension must be at least 1");
    }
    return MonomialIdeal(dim, std::vector<value_type>(dim, 0), 0);
}

MonomialIdeal MonomialIdeal::maximal(unsigned dim)
{
    if (dim == 0) {
        throw InputError("ambient dimension must be at least 1");
    }
    std::vector<value_type> flat(std::size_t(dim) * dim, 0);
    // Lex order puts x_d first and x_1 last.
    for (unsigned k = 0; k < dim; ++k) {
        flat[k * dim + (dim - 1 - k)] = 1;
    }
    return MonomialIdeal(dim, std::move(flat), 0);
}

MonomialIdeal MonomialIdeal::from_flat(unsigned dim, std::vector<value_type> flat)
{
    if (dim == 0 || flat.empty() || flat.size() % dim != 0) {
        throw InputError("malformed generator buffer");
    }
    return MonomialIdeal(dim, detail::minimal_elements(dim, std::move(flat)), 0);
}

std::vector<Exponent> MonomialIdeal::gens() const
{
    std::vector<Exponent> out;
    out.reserve(num_gens());
    for (std::size_t i = 0; i < num_gens(); ++i) {
        out.emplace_back(generator(i));
    }
    return out;
}

bool MonomialIdeal::is_unit() const noexcept
{
    return std::all_of(data_.begin(), data_.end(), [](value_type c) { return c == 0; });
}

bool MonomialIdeal::contains(std::span<const value_type> e) const
{
    if (e.size() != dim_) {
        throw DimensionMismatch("exponent of length " + std::to_string(e.size()) + " tested against ideal of dimension " +
                                std::to_string(dim_));
    }
    for (std::size_t i = 0; i < num_gens(); ++i) {
        if (divides(generator(i), e)) {
            return true;
        }
    }
    return false;
}

bool MonomialIdeal::is_subset_of(const MonomialIdeal &other) const
{
    if (other.dim_ != dim_) {
        throw DimensionMismatch("containment test across dimensions");
    }
    for (std::size_t i = 0; i < num_gens(); ++i) {
        if (!other.contains(generator(i))) {
            return false;
        }
    }
    return true;
}

MonomialIdeal::value_type MonomialIdeal::pure_power(unsigned axis) const
{
    return detail::pure_power_flat(dim_, data_, axis);
}

MonomialIdeal::value_type MonomialIdeal::max_pure_power() const
{
    value_type best = 0;
    for (unsigned k = 0; k < dim_; ++k) {
        best = std::max(best, pure_power(k));
    }
    return best;
}

std::string MonomialIdeal::to_string() const
{
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < num_gens(); ++i) {
        os << (i ? ", (" : "(");
        const auto g = generator(i);
        for (unsigned k = 0; k < dim_; ++k) {
            os << (k ? "," : "") << g[k];
        }
        os << ')';
    }
    os << '}';
    return os.str();
}

MonomialIdeal minimalize(const std::vector<Exponent> &raw_gens, unsigned dim)
{
    return MonomialIdeal(dim, raw_gens);
}

MonomialIdeal product(const MonomialIdeal &a, const MonomialIdeal &b)
{
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("product of ideals in dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
    return MonomialIdeal(a.dim(), detail::minimal_sums(a.dim(), a.flat(), b.flat()), 0);
}

MonomialIdeal power(const MonomialIdeal &base, unsigned n)
{
    if (n == 0) {
        return MonomialIdeal::unit(base.dim());
    }
    MonomialIdeal out = base;
    for (unsigned i = 1; i < n; ++i) {
        out = product(out, base);
    }
    return out;
}

MonomialIdeal sum(const MonomialIdeal &a, const MonomialIdeal &b)
{
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("sum of ideals in dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
    std::vector<Coord> candidates(a.flat().begin(), a.flat().end());
    candidates.insert(candidates.end(), b.flat().begin(), b.flat().end());
    return MonomialIdeal::from_flat(a.dim(), std::move(candidates));
}

bool is_m_primary(const MonomialIdeal &ideal)
{
    if (ideal.is_unit()) {
        return true;
    }
    for (unsigned k = 0; k < ideal.dim(); ++k) {
        if (ideal.pure_power(k) == 0) {
            return false;
        }
    }
    return true;
}

std::uint64_t colength(const MonomialIdeal &ideal)
{
    if (ideal.is_unit()) {
        return 0;
    }
    return detail::colength_sliced(ideal);
}

} // namespace mixmult
