#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kmirror/novikov.hpp"

namespace kmirror {

// Truncated series in even variables with Novikov symbols and anticommuting dx_1..dx_m.
class form_series {
public:
    struct context {
        monoid_ptr m;
        rational cutoff;
        int nvars = 0;
        int degree = 1;  // keep total polynomial degree < degree
        int ndx = 0;
    };

    struct key {
        monoid_index beta;
        std::vector<int> exps;
        std::uint32_t dx = 0;
        friend bool operator<(const key& a, const key& b) {
            if (a.dx != b.dx) return a.dx < b.dx;
            if (a.exps != b.exps) return a.exps < b.exps;
            return a.beta < b.beta;
        }
        friend bool operator==(const key& a, const key& b) {
            return a.dx == b.dx && a.exps == b.exps && a.beta == b.beta;
        }
    };

    form_series() = default;
    explicit form_series(context ctx);

    static form_series monomial(const context& ctx, const monoid_index& beta, const cq& c);
    static form_series term(const context& ctx, const monoid_index& beta, const std::vector<int>& exps,
                            std::uint32_t dx, const cq& c);
    static form_series constant(const context& ctx, const cq& c);
    static form_series variable(const context& ctx, int i, const cq& c = cq(1));
    static form_series dx(const context& ctx, int i);
    // Embeds a Novikov element as a degree-0 series.
    static form_series from_novikov(const context& ctx, const novikov& x);

    const context& ctx() const { return ctx_; }
    const std::map<key, cq>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const key& k, const cq& c);

    form_series& operator+=(const form_series& o);
    form_series& operator-=(const form_series& o);
    form_series operator-() const;
    friend form_series operator+(form_series a, const form_series& b) { return a += b; }
    friend form_series operator-(form_series a, const form_series& b) { return a -= b; }
    friend form_series operator*(const form_series& a, const form_series& b);
    friend form_series operator*(const form_series& a, const cq& c);
    friend bool operator==(const form_series& a, const form_series& b) { return a.terms_ == b.terms_; }

    form_series times_T(const monoid_index& b) const;
    form_series partial(int i) const;
    // c T^beta -> -<boundary(beta), e_i> c T^beta
    form_series gm(int i) const;
    // Sum_i dx_i (partial_i + gm_i)
    form_series nabla() const;
    // Terms whose polynomial degree is < D.
    form_series restricted_degree(int D) const;
    // Substitutes numeric values for all variables, leaving Novikov symbols and dx.
    std::map<std::pair<monoid_index, std::uint32_t>, cq> substitute(const std::vector<rational>& vals) const;
    int max_degree() const;
    bool has_odd() const;
    form_series even_part() const;
    form_series odd_part() const;
    double max_abs() const;
    // Evaluates symbols with per-class complex weights; result keyed by (exps, dx).
    std::map<std::pair<std::vector<int>, std::uint32_t>, cplx> evaluate_symbols(const std::vector<cplx>& weights) const;

    nlohmann::json to_json() const;

private:
    void check(const form_series& o) const;

    context ctx_;
    std::map<key, cq> terms_;
};

inline bool has_odd(const form_series& c) { return c.has_odd(); }
inline form_series even_part(const form_series& c) { return c.even_part(); }
inline form_series odd_part(const form_series& c) { return c.odd_part(); }

// exp(sum_j a_j x_j) truncated to the ring degree, as a series with rational coefficients.
form_series exp_linear(const form_series::context& ctx, const std::vector<cq>& a);

// g with g * (sum_j l_j x_j) = f up to degree D-1; throws when f is not divisible.
form_series series_div_vanishing(const form_series& f, const std::vector<cq>& l);

} // namespace kmirror
