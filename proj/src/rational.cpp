#include <mixmult/rational.hpp>

#include <algorithm>


#include <mixmult/errors.hpp>

namespace mixmult
{

std::string to_string(const Integer &n)
{
    return n.str();
}

std::string to_string(const Rational &q)
{
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

namespace
{

Integer parse_integer(std::string_view text, std::string_view whole)
{
    std::size_t pos = 0;
    bool negative = false;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        negative = text[0] == '-';
        pos = 1;
    }
    if (pos == text.size()) {
        throw InputError("malformed rational '" + std::string(whole) + "'");
    }
    Integer value = 0;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c < '0' || c > '9') {
            throw InputError("malformed rational '" + std::string(whole) + "'");
        }
        value = value * 10 + (c - '0');
    }
    return negative ? Integer(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text));
    }
    const Integer num = parse_integer(text.substr(0, slash), text);
    const Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) {
        throw InputError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

Integer factorial(unsigned n)
{
    Integer out = 1;
    for (unsigned k = 2; k <= n; ++k) {
        out *= k;
    }
    return out;
}

Integer binomial(unsigned n, unsigned k)
{
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    Integer out = 1;
    for (unsigned i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
    }
    return out;
}

Rational pow(const Rational &base, unsigned exponent)
{
    Rational out = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        out *= base;
    }
    return out;
}

} // namespace mixmult
