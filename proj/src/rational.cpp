#include "riemannx/rational.hpp"

#include "riemannx/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace riemannx {

double to_double(const Rational& q)
{
    const int sign = sgn(q);
    if (sign == 0)
        return 0.0;

    // both exact in a double: one IEEE division is correctly rounded
    if (mpz_sizeinbase(q.get_num_mpz_t(), 2) <= 53 && mpz_sizeinbase(q.get_den_mpz_t(), 2) <= 53)
        return q.get_num().get_d() / q.get_den().get_d();

    mpz_class num = abs(q.get_num());
    mpz_class den = q.get_den();

    // Scale so the integer quotient carries 54 or 55 significant bits.
    const long num_bits = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
    const long den_bits = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    const long shift = 54 - (num_bits - den_bits);
    if (shift > 0)
        num <<= static_cast<mp_bitcnt_t>(shift);
    else if (shift < 0)
        den <<= static_cast<mp_bitcnt_t>(-shift);

    mpz_class quot;
    mpz_class rem;
    mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const bool sticky = rem != 0;

    const long quot_bits = static_cast<long>(mpz_sizeinbase(quot.get_mpz_t(), 2));
    const long extra = quot_bits - 53;
    unsigned long q_bits = quot.get_ui();
    unsigned long mantissa = q_bits >> extra;
    const unsigned long dropped = q_bits & ((1UL << extra) - 1);
    const unsigned long half = 1UL << (extra - 1);
    if (dropped > half || (dropped == half && (sticky || (mantissa & 1UL))))
        ++mantissa;

    const double magnitude =
        std::ldexp(static_cast<double>(mantissa), static_cast<int>(extra - shift));
    return sign < 0 ? -magnitude : magnitude;
}

Rational from_double(double x)
{
    if (!std::isfinite(x))
        throw InvalidInput("cannot represent a non-finite value as a rational");
    return Rational(x);
}

std::string to_string(const Rational& q)
{
    Rational r = q;
    r.canonicalize();
    return r.get_str();
}

Rational parse_rational(std::string_view text)
{
    auto fail = [&]() -> InvalidInput {
        return InvalidInput("not a rational number: '" + std::string(text) + "'");
    };
    if (text.empty())
        throw fail();

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational q;
        if (q.set_str(std::string(text), 10) != 0 || q.get_den() == 0)
            throw fail();
        q.canonicalize();
        return q;
    }

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any_digit = true;
            if (seen_point)
                ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit)
        throw fail();

    long exponent = 0;
    if (pos < text.size()) {
        if (text[pos] != 'e' && text[pos] != 'E')
            throw fail();
        ++pos;
        bool exp_negative = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            exp_negative = text[pos] == '-';
            ++pos;
        }
        if (pos == text.size())
            throw fail();
        for (; pos < text.size(); ++pos) {
            const char c = text[pos];
            if (!std::isdigit(static_cast<unsigned char>(c)) || exponent > 100000)
                throw fail();
            exponent = exponent * 10 + (c - '0');
        }
        if (exp_negative)
            exponent = -exponent;
    }

    Rational q{mpz_class(digits, 10)};
    const long scale = exponent - frac_digits;
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    if (scale >= 0)
        q *= ten_pow;
    else
        q /= ten_pow;
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

Rational pow_int(const Rational& base, unsigned exponent)
{
    Rational result = 1;
    for (unsigned i = 0; i < exponent; ++i)
        result *= base;
    return result;
}

} // namespace riemannx
