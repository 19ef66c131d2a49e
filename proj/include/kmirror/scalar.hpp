#pragma once

#include <complex>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace kmirror {

using rational = mpq_class;
using cplx = std::complex<double>;

// Gaussian rational re + i*im.
struct cq {
    rational re;
    rational im;

    cq() = default;
    cq(long v) : re(v), im(0) {}
    cq(const rational& r) : re(r), im(0) {}
    cq(const rational& r, const rational& i) : re(r), im(i) {}

    static cq i() { return cq(0, 1); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    cq conj() const { return cq(re, -im); }
    cplx to_complex() const { return {re.get_d(), im.get_d()}; }
    double abs() const { return std::abs(to_complex()); }

    cq operator-() const { return cq(-re, -im); }
    cq& operator+=(const cq& o) { re += o.re; im += o.im; return *this; }
    cq& operator-=(const cq& o) { re -= o.re; im -= o.im; return *this; }
    cq& operator*=(const cq& o) {
        rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    cq& operator/=(const cq& o);

    friend cq operator+(cq a, const cq& b) { return a += b; }
    friend cq operator-(cq a, const cq& b) { return a -= b; }
    friend cq operator*(cq a, const cq& b) { return a *= b; }
    friend cq operator/(cq a, const cq& b) { return a /= b; }
    friend bool operator==(const cq& a, const cq& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const cq& a, const cq& b) { return !(a == b); }
};

std::ostream& operator<<(std::ostream& os, const cq& c);

// Canonical a/b; mpq_class(a, b) does not reduce.
rational frac(long a, long b);
rational factorial_inverse(int k);
cq pow(const cq& base, int e);

// Exact rational from the shortest round-trip decimal form of a double.
rational rational_from_double(double x);
// Accepts "p/q", decimal strings and integers.
rational parse_rational(const std::string& s);

std::string to_string(const rational& r);

} // namespace kmirror
