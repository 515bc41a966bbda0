#include <mixmult/gridpoly.hpp>

#include <algorithm>
#include <numeric>
#include <set>

#include <mixmult/errors.hpp>
#include <mixmult/parallel.hpp>

namespace mixmult
{

void CoeffTable::set(const MultiIndex &index, const Rational &value)
{
    if (index.size() != vars_) {
        throw DimensionMismatch("multi-index of length " + std::to_string(index.size()) + " in a " +
                                std::to_string(vars_) + "-variable polynomial");
    }
    if (value == 0) {
        coeffs_.erase(index);
    } else {
        coeffs_[index] = value;
    }
}

Rational CoeffTable::coefficient(const MultiIndex &index) const
{
    const auto it = coeffs_.find(index);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

bool CoeffTable::is_homogeneous(unsigned degree) const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [degree](const auto &kv) {
        return std::accumulate(kv.first.begin(), kv.first.end(), 0u) == degree;
    });
}

Grid::Grid(std::vector<std::vector<Rational>> sets) : sets_(std::move(sets))
{
    for (const auto &s : sets_) {
        if (s.empty()) {
            throw InputError("grid axis is empty");
        }
        std::set<Rational> seen(s.begin(), s.end());
        if (seen.size() != s.size()) {
            throw InputError("grid axis repeats a member");
        }
    }
}

Grid Grid::integer_box(unsigned r, long lo, long hi)
{
    std::vector<Rational> axis;
    for (long v = lo; v <= hi; ++v) {
        axis.emplace_back(v);
    }
    return Grid(std::vector<std::vector<Rational>>(r, axis));
}

std::size_t Grid::num_points() const
{
    std::size_t n = 1;
    for (const auto &s : sets_) {
        n *= s.size();
    }
    return n;
}

std::vector<Rational> Grid::point(std::size_t index) const
{
    std::vector<Rational> out(sets_.size());
    for (std::size_t k = sets_.size(); k-- > 0;) {
        out[k] = sets_[k][index % sets_[k].size()];
        index /= sets_[k].size();
    }
    return out;
}

namespace
{

std::vector<MultiIndex> all_indices(std::span<const unsigned> bounds)
{
    std::vector<MultiIndex> out;
    MultiIndex idx(bounds.size(), 0);
    while (true) {
        out.push_back(idx);
        std::size_t k = bounds.size();
        while (k > 0) {
            --k;
            if (idx[k] < bounds[k]) {
                ++idx[k];
                break;
            }
            idx[k] = 0;
            if (k == 0) {
                return out;
            }
        }
        if (bounds.empty()) {
            return out;
        }
    }
}

Rational monomial_at(const MultiIndex &m, std::span<const Rational> x)
{
    Rational v = 1;
    for (std::size_t k = 0; k < m.size(); ++k) {
        v *= pow(x[k], m[k]);
    }
    return v;
}

// Solves A x = b exactly: rows are scaled to integers, then Bareiss
// fraction-free elimination, then back substitution over Q.
std::vector<Rational> solve_fraction_free(const std::vector<std::vector<Rational>> &a, const std::vector<Rational> &b)
{
    const std::size_t n = a.size();
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        Integer scale = 1;
        auto absorb = [&scale](const Rational &q) {
            const Integer den = boost::multiprecision::denominator(q);
            scale = scale / boost::multiprecision::gcd(scale, den) * den;
        };
        std::for_each(a[i].begin(), a[i].end(), absorb);
        absorb(b[i]);
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = boost::multiprecision::numerator(Rational(a[i][j] * scale));
        }
        m[i][n] = boost::multiprecision::numerator(Rational(b[i] * scale));
    }
    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot][k] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            throw InternalError("singular interpolation system: grid does not fit the degree bounds");
        }
        std::swap(m[k], m[pivot]);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j <= n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = Rational(m[i][n]);
        for (std::size_t j = i + 1; j < n; ++j) {
            acc -= Rational(m[i][j]) * x[j];
        }
        x[i] = acc / Rational(m[i][i]);
    }
    return x;
}

// Monomial coefficients of the degree < n interpolant through (nodes[i], values[i]).
std::vector<Rational> univariate_coefficients(const std::vector<Rational> &nodes, std::vector<Rational> values)
{
    const std::size_t n = nodes.size();
    // Newton divided differences, in place.
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            values[i] = (values[i] - values[i - 1]) / (nodes[i] - nodes[i - level]);
        }
    }
    // Horner expansion of the Newton form.
    std::vector<Rational> coeffs(n, Rational(0));
    for (std::size_t i = n; i-- > 0;) {
        // coeffs <- coeffs * (x - nodes[i]) + values[i]
        for (std::size_t k = n - 1; k > 0; --k) {
            coeffs[k] = coeffs[k - 1] - nodes[i] * coeffs[k];
        }
        coeffs[0] = values[i] - nodes[i] * coeffs[0];
    }
    return coeffs;
}

CoeffTable interpolate_dense(std::span<const Rational> values, std::span<const unsigned> bounds, const Grid &grid)
{
    const auto monomials = all_indices(bounds);
    const std::size_t n = grid.num_points();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t p = 0; p < n; ++p) {
        const auto x = grid.point(p);
        for (std::size_t j = 0; j < n; ++j) {
            a[p][j] = monomial_at(monomials[j], x);
        }
    }
    const auto x = solve_fraction_free(a, std::vector<Rational>(values.begin(), values.end()));
    CoeffTable out(grid.vars());
    for (std::size_t j = 0; j < n; ++j) {
        out.set(monomials[j], x[j]);
    }
    return out;
}

CoeffTable interpolate_tensor(std::span<const Rational> values, std::span<const unsigned> bounds, const Grid &grid)
{
    const unsigned r = grid.vars();
    std::vector<Rational> data(values.begin(), values.end());
    std::vector<std::size_t> extent(r);
    for (unsigned k = 0; k < r; ++k) {
        extent[k] = bounds[k] + 1;
    }
    // One univariate solve per fiber along each axis in turn.
    for (unsigned axis = 0; axis < r; ++axis) {
        std::size_t stride = 1;
        for (unsigned k = axis + 1; k < r; ++k) {
            stride *= extent[k];
        }
        const std::size_t len = extent[axis];
        const std::size_t block = stride * len;
        for (std::size_t base = 0; base < data.size(); base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                std::vector<Rational> fiber(len);
                for (std::size_t i = 0; i < len; ++i) {
                    fiber[i] = data[base + off + i * stride];
                }
                const auto coeffs = univariate_coefficients(grid.axis(axis), std::move(fiber));
                for (std::size_t i = 0; i < len; ++i) {
                    data[base + off + i * stride] = coeffs[i];
                }
            }
        }
    }
    CoeffTable out(r);
    const auto monomials = all_indices(bounds);
    for (std::size_t j = 0; j < monomials.size(); ++j) {
        out.set(monomials[j], data[j]);
    }
    return out;
}

void check_shape(std::span<const unsigned> bounds, const Grid &grid, bool exact)
{
    if (bounds.size() != grid.vars()) {
        throw DimensionMismatch("degree bounds for " + std::to_string(bounds.size()) + " variables on a " +
                                std::to_string(grid.vars()) + "-variable grid");
    }
    for (unsigned k = 0; k < grid.vars(); ++k) {
        const std::size_t need = std::size_t(bounds[k]) + 1;
        const std::size_t have = grid.axis(k).size();
        if (exact ? have != need : have < need) {
            throw InputError("grid axis " + std::to_string(k) + " has " + std::to_string(have) + " points, needs " +
                             (exact ? "exactly " : "at least ") + std::to_string(need));
        }
    }
}

} // namespace

CoeffTable interpolate_values(std::span<const Rational> values, std::span<const unsigned> bounds, const Grid &grid,
                              InterpolationMethod method)
{
    check_shape(bounds, grid, true);
    if (values.size() != grid.num_points()) {
        throw DimensionMismatch("value count does not match the grid");
    }
    if (method == InterpolationMethod::automatic) {
        method = grid.vars() <= 2 ? InterpolationMethod::dense : InterpolationMethod::tensor;
    }
    return method == InterpolationMethod::dense ? interpolate_dense(values, bounds, grid)
                                                : interpolate_tensor(values, bounds, grid);
}

CoeffTable interpolate_on_grid(const GridFunction &eval, std::span<const unsigned> bounds, const Grid &grid,
                               InterpolationMethod method, unsigned jobs)
{
    check_shape(bounds, grid, true);
    std::vector<Rational> values(grid.num_points());
    parallel_for(values.size(), jobs, [&](std::size_t i) { values[i] = eval(grid.point(i)); });
    return interpolate_values(values, bounds, grid, method);
}

std::optional<std::vector<Rational>> nonzero_witness(const GridFunction &eval, std::span<const unsigned> bounds,
                                                     const Grid &grid)
{
    check_shape(bounds, grid, false);
    for (std::size_t i = 0; i < grid.num_points(); ++i) {
        auto x = grid.point(i);
        if (eval(x) != 0) {
            return x;
        }
    }
    return std::nullopt;
}

bool zero_test(const GridFunction &eval, std::span<const unsigned> bounds, const Grid &grid)
{
    return !nonzero_witness(eval, bounds, grid).has_value();
}

Rational evaluate(const CoeffTable &p, std::span<const Rational> point)
{
    if (point.size() != p.vars()) {
        throw DimensionMismatch("evaluation point of length " + std::to_string(point.size()) + " for a " +
                                std::to_string(p.vars()) + "-variable polynomial");
    }
    Rational total = 0;
    for (const auto &[index, c] : p.coeffs()) {
        total += c * monomial_at(index, point);
    }
    return total;
}

} // namespace mixmult
