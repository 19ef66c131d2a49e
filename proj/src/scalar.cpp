#include "kmirror/scalar.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "kmirror/error.hpp"

namespace kmirror {

cq& cq::operator/=(const cq& o) {
    rational den = o.re * o.re + o.im * o.im;
    if (sgn(den) == 0) throw error("division by zero Gaussian rational");
    rational r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = r;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const cq& c) {
    if (sgn(c.im) == 0) return os << c.re.get_str();
    if (sgn(c.re) == 0) return os << c.im.get_str() << "i";
    return os << "(" << c.re.get_str() << (sgn(c.im) > 0 ? "+" : "") << c.im.get_str() << "i)";
}

rational frac(long a, long b) {
    if (b == 0) throw error("zero denominator");
    rational r(a, b);
    r.canonicalize();
    return r;
}

rational factorial_inverse(int k) {
    mpz_class f = 1;
    for (int j = 2; j <= k; ++j) f *= j;
    return rational(mpz_class(1), f);
}

cq pow(const cq& base, int e) {
    cq r(1);
    for (int j = 0; j < e; ++j) r *= base;
    return r;
}

rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw input_error("non-finite number");
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return parse_rational(std::string(buf.data(), res.ptr));
}

rational parse_rational(const std::string& s) {
    if (s.empty()) throw input_error("empty number");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        rational num = parse_rational(s.substr(0, slash));
        rational den = parse_rational(s.substr(slash + 1));
        if (sgn(den) == 0) throw input_error("zero denominator in '" + s + "'");
        return num / den;
    }
    std::string mant = s;
    long exp10 = 0;
    auto epos = mant.find_first_of("eE");
    if (epos != std::string::npos) {
        try {
            exp10 = std::stol(mant.substr(epos + 1));
        } catch (const std::exception&) {
            throw input_error("bad exponent in '" + s + "'");
        }
        mant = mant.substr(0, epos);
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant = mant.substr(1);
    }
    std::string digits;
    long frac = 0;
    bool seen_dot = false;
    for (char ch : mant) {
        if (ch == '.') {
            if (seen_dot) throw input_error("bad number '" + s + "'");
            seen_dot = true;
        } else if (ch >= '0' && ch <= '9') {
            digits.push_back(ch);
            if (seen_dot) ++frac;
        } else {
            throw input_error("bad number '" + s + "'");
        }
    }
    if (digits.empty()) throw input_error("bad number '" + s + "'");
    mpz_class num(digits, 10);
    mpz_class den = 1;
    exp10 -= frac;
    mpz_class ten = 10;
    if (exp10 > 0) {
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(exp10));
        num *= p;
    } else if (exp10 < 0) {
        mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(-exp10));
    }
    rational r(num, den);
    r.canonicalize();
    return neg ? rational(-r) : r;
}

std::string to_string(const rational& r) { return r.get_str(); }

} // namespace kmirror
