#include <doctest.h>

#include <numbers>

#include "fixtures.hpp"
#include "kmirror/family.hpp"

using namespace kmirror;

namespace {

const structure& cp2_completed() {
    static const structure A = complete(divisor_core(cp2(), 2, 5), 5);
    return A;
}

std::vector<std::vector<rational>> basepoints(const toric_data& T) {
    if (T.n == 1) return {{frac(1, 2)}, {frac(1, 3)}, {frac(2, 5)}, {frac(3, 5)}, {frac(3, 4)}};
    return {{frac(1, 3), frac(1, 3)}, {frac(1, 4), frac(1, 3)}, {frac(2, 5), frac(1, 5)},
            {frac(1, 5), frac(1, 2)}, {frac(3, 10), frac(3, 10)}};
}

} // namespace

TEST_CASE("gauss-manin connection examples") {
    auto A = divisor_core(cp1(), 3, 6);
    auto ctx = family_context(A, 4);
    CHECK(ctx.nvars == 1);
    CHECK(ctx.ndx == 1);
    family_element f(1);
    f.add(1, form_series::variable(ctx, 0));
    CHECK(gm(f) == omega(ctx));
    family_element g(1);
    g.add(0, form_series::monomial(ctx, A.mon()->generator(0), cq(1)));
    family_element want(1);
    want.add(0, form_series::dx(ctx, 0) * form_series::monomial(ctx, A.mon()->generator(0), cq(-1)));
    CHECK(gm(g) == want);
    CHECK_THROWS_AS(family_context(A, 0), input_error);
}

TEST_CASE("property: gauss-manin connection is flat") {
    auto A = cp2_completed();
    auto ctx = family_context(A, 5);
    std::mt19937 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        family_element f(2);
        for (int c = 0; c < 4; ++c) {
            std::vector<int> e = {static_cast<int>(rng() % 3), static_cast<int>(rng() % 2)};
            form_series s = form_series::term(ctx, ctx.m->zero(), e, rng() % 4, fx::rand_cq(rng));
            if (rng() % 2) s = s.times_T(ctx.m->generator(rng() % 3));
            f.add(rng() % 4, s);
        }
        CHECK(gm(gm(f)).is_zero());
    }
}

TEST_CASE("diffeomorphism identity") {
    auto P = divisor_core(cp1(), 3, 6);
    auto r1 = diffeo_check(P, 4, 4);
    CHECK(r1.checked > 0);
    CHECK(r1.ok());
    auto r2 = diffeo_check(cp2_completed(), 3, 4);
    CHECK(r2.ok());
    CHECK_THROWS_AS(diffeo_check(P, 6, 4), cutoff_error);
}

TEST_CASE("de rham twisted relations need omega") {
    auto A = divisor_core(cp1(), 3, 6);
    CHECK(derham_relations(A, 4, 4).ok());
    CHECK_FALSE(derham_relations(A, 4, 4, true).ok());
    CHECK(derham_relations(cp2_completed(), 3, 4).ok());
}

TEST_CASE("propagation is flat at several basepoints") {
    for (const auto& T : {cp1(), cp2()}) {
        const structure A = T.n == 1 ? divisor_core(T, 3, 6) : cp2_completed();
        for (const auto& p : basepoints(T)) {
            std::vector<rational> alpha(T.n, frac(1, 7));
            auto pr = propagate(T, A, p, alpha, 4);
            CHECK(pr.nabla_theta_is_omega);
            CHECK(pr.flat);
            CHECK(pr.scalar);
            std::vector<double> pd, ad;
            for (int j = 0; j < T.n; ++j) {
                pd.push_back(p[j].get_d());
                ad.push_back(alpha[j].get_d());
            }
            // value at the basepoint is the curvature with holonomy
            CHECK(std::abs(pr.value_at(std::vector<rational>(T.n, 0)) - potential_closed(T, pd, ad, fx::t0())) < 1e-12);
        }
    }
}

TEST_CASE("propagated potential is constant with moving symbols") {
    auto T = cp2();
    auto pr = propagate(T, cp2_completed(), T.basepoint, {0, 0}, 5);
    const std::vector<rational> off = {frac(1, 40), frac(-1, 50)};
    const std::vector<rational> moved = {T.basepoint[0] + off[0], T.basepoint[1] + off[1]};
    cplx got = 0;
    for (const auto& [key, c] : pr.W.substitute(off)) {
        if (key.second) continue;
        cplx w = c.to_complex();
        for (std::size_t i = 0; i < key.first.size(); ++i)
            w *= std::pow(std::exp(-T.ell(i, moved).get_d()), key.first[i]);
        got += w;
    }
    CHECK(std::abs(got - potential_closed(T, {1.0 / 3, 1.0 / 3}, {0, 0}, fx::t0())) < 1e-9);
}

TEST_CASE("two routes to the potential agree") {
    auto P = cp1();
    auto r1 = two_route_check(P, divisor_core(P, 3, 6), P.basepoint, {0}, {frac(2, 5)}, 5);
    CHECK(r1.agree);
    auto T = cp2();
    auto r2 = two_route_check(T, cp2_completed(), T.basepoint, {0, 0}, {frac(1, 4), frac(1, 3)}, 4);
    CHECK(r2.agree);
    CHECK_THROWS_AS(two_route_check(T, cp2_completed(), T.basepoint, {0, 0}, {1, 1}, 4), input_error);
}

TEST_CASE("potential curvature at the basepoint") {
    auto T = cp2();
    const auto& A = cp2_completed();
    auto pr = propagate(T, A, T.basepoint, {0, 0}, 4);
    const novikov lambda = *kmirror::apply(A, std::vector<ext_nov>{}).find(0);
    std::vector<cplx> w(3, std::exp(-1.0 / 3));
    CHECK(std::abs(pr.value_at({0, 0}) - lambda.evaluate_weighted(w)) < 1e-14);
}

TEST_CASE("holomorphicity and descent") {
    auto terms = potential_terms(cp2());
    std::vector<std::vector<double>> xs = {{0.3, 0.3}, {0.2, 0.5}}, ys = {{0.1, -0.4}, {1.0, 2.0}};
    auto h = holomorphic_check(terms, xs, ys, fx::t0());
    CHECK(h.symbolic_zero);
    CHECK(h.max_fd < 1e-6);
    CHECK(descent_check(terms));

    auto bent = terms;
    bent[0].x_weight = 2;
    auto hb = holomorphic_check(bent, xs, ys, fx::t0());
    CHECK_FALSE(hb.symbolic_zero);
    CHECK(hb.max_fd > 1e-3);

    auto twisted = terms;
    twisted[1].y_weight = frac(1, 2);
    CHECK_FALSE(descent_check(twisted));
    const double two_pi = 2 * std::numbers::pi;
    CHECK(std::abs(evaluate_terms(terms, {0.3, 0.3}, {0.1, 0.2}, fx::t0()) -
                   evaluate_terms(terms, {0.3, 0.3}, {0.1 + two_pi, 0.2}, fx::t0())) < 1e-12);
}
