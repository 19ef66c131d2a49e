#include <doctest.h>

#include "fixtures.hpp"
#include "kmirror/cli.hpp"
#include "kmirror/koszul.hpp"

using namespace kmirror;

namespace {

long binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Coefficient of w^m in (W(z0 + w) - W(z0)) / (-w) for W(z) = sum_i exp(c_i - v_i z).
cplx difference_quotient_coeff(const toric_data& T, cplx z0, int m) {
    cplx s = 0;
    double fact = 1;
    for (int q = 1; q <= m + 1; ++q) fact *= q;
    for (const auto& f : T.facets) {
        const double v = static_cast<double>(f.normal[0]);
        const cplx A = std::exp(f.offset.get_d() - v * z0);
        s += A * ((m % 2) ? -1.0 : 1.0) * std::pow(v, m + 1) / fact;
    }
    return s;
}

form_series::context plain_context(int nvars, int degree) {
    return {cp1().base_monoid(), 1, nvars, degree, 0};
}

} // namespace

TEST_CASE("division by a linear form") {
    auto ctx = plain_context(2, 6);
    auto x1 = form_series::variable(ctx, 0), x2 = form_series::variable(ctx, 1);
    auto one = form_series::constant(ctx, cq(1));
    CHECK(series_div_vanishing(x1 * (one + x2), {cq(1), cq(0)}) == one + x2);
    auto l = x1 + x2 * cq(3);
    auto g = x2 * x2 + one * cq(2);
    CHECK(series_div_vanishing(l * g, {cq(1), cq(3)}) == g);
    CHECK_THROWS_AS(series_div_vanishing(one, {cq(1), cq(0)}), error);
    CHECK_THROWS_AS(series_div_vanishing(x1, {cq(0), cq(0)}), error);
    CHECK_THROWS_AS(series_div_vanishing(x1, {cq(1)}), error);
}

TEST_CASE("tau and theta") {
    auto T = cp2();
    brane_chart c{&T, T.basepoint, {0, 0}, 4};
    auto ctx = c.chart_context(T.base_monoid(), 2);
    auto tt = build_tau_theta(c, ctx);
    for (int j = 0; j < 2; ++j) {
        const wedge_index e = wedge_index(1) << j;
        CHECK(*tt.theta.find(e) == form_series::variable(ctx, j));
        CHECK(*tt.tau.find(e) == form_series::variable(ctx, 2 + j, cq(0, -1)));
        CHECK(*tt.zeta.find(e) == form_series::variable(ctx, j) + form_series::variable(ctx, 2 + j, cq(0, 1)));
    }
    CHECK_THROWS_AS(build_tau_theta(c, c.w_context(T.base_monoid(), 2)), error);
}

TEST_CASE("matrix factorization of cp1") {
    auto T = cp1();
    const int D = 8;
    brane_chart c{&T, {frac(1, 3)}, {frac(1, 4)}, D};
    auto Q = mf_from_brane(cli::mf_model(T, c.p, D), c);
    CHECK(Q.holomorphic);
    CHECK(Q.q[1][0] == form_series::variable(Q.ctx, 0));
    CHECK(Q.q[0][0].is_zero());
    CHECK(Q.q[1][1].is_zero());
    const cplx z0(1.0 / 3, 0.25);
    cplx W0 = 0;
    for (const auto& f : T.facets) W0 += std::exp(f.offset.get_d() - static_cast<double>(f.normal[0]) * z0);
    CHECK(std::abs(Q.lambda.evaluate_weighted(Q.weights) - W0) < 1e-12);
    auto entry = evaluate_entry(Q, 0, 1);
    for (int m = 0; m <= D - 2; ++m) {
        auto it = entry.find({m});
        const cplx got = it == entry.end() ? cplx(0) : it->second;
        CHECK(std::abs(got - difference_quotient_coeff(T, z0, m)) < 1e-12);
    }
    auto v = mf_verify(Q);
    CHECK(v.exact_zero);
    CHECK(v.max_abs == 0);
}

TEST_CASE("property: cp1 factorizations on a grid of centers and holonomies") {
    auto T = cp1();
    const int D = 6;
    for (long pn = 1; pn <= 5; ++pn)
        for (const rational& a : {rational(0), frac(1, 4), frac(-1, 3), frac(1, 2), rational(1)}) {
            brane_chart c{&T, {frac(pn, 6)}, {a}, D};
            auto Q = mf_from_brane(cli::mf_model(T, c.p, D), c);
            CHECK(Q.holomorphic);
            CHECK(Q.q[1][0] == form_series::variable(Q.ctx, 0));
            CHECK(mf_verify(Q).exact_zero);
            const cplx z0(frac(pn, 6).get_d(), a.get_d());
            auto entry = evaluate_entry(Q, 0, 1);
            for (int m = 0; m <= D - 2; ++m) {
                auto it = entry.find({m});
                const cplx got = it == entry.end() ? cplx(0) : it->second;
                CHECK(std::abs(got - difference_quotient_coeff(T, z0, m)) < 1e-12);
            }
        }
}

TEST_CASE("matrix factorization of cp2") {
    auto T = cp2();
    const int D = 8;
    brane_chart c{&T, T.basepoint, {0, 0}, D};
    auto Q = mf_from_brane(cli::mf_model(T, c.p, D), c);
    CHECK(Q.holomorphic);
    CHECK(Q.q[1][0] == form_series::variable(Q.ctx, 0));
    CHECK(Q.q[2][0] == form_series::variable(Q.ctx, 1));
    CHECK(Q.q[3][0].is_zero());
    auto v = mf_verify(Q);
    CHECK(v.max_abs < 1e-10);
    CHECK(v.exact_zero);
    CHECK(Q.to_json()["entries"].size() > 0);
}

TEST_CASE("matrix factorization needs enough arity") {
    auto T = cp1();
    brane_chart c{&T, {frac(1, 2)}, {0}, 8};
    CHECK_THROWS_AS(mf_from_brane(cli::mf_model(T, c.p, 5), c), cutoff_error);
    brane_chart outside{&T, {frac(3, 2)}, {0}, 8};
    CHECK_THROWS_AS(mf_from_brane(divisor_core(T, 3, 8), outside), input_error);
    brane_chart low_energy{&T, {frac(1, 2)}, {0}, 4};
    CHECK_THROWS_AS(mf_from_brane(divisor_core(T, frac(1, 4), 4), low_energy), cutoff_error);
}

TEST_CASE("maurer-cartan certificate") {
    for (const auto& T : {cp1(), cp2()}) {
        const int D = T.n == 1 ? 8 : 6;
        brane_chart c{&T, T.basepoint, std::vector<rational>(T.n, frac(1, 5)), D};
        auto cert = mc_certificate_check(cli::mf_model(T, c.p, D), c);
        CHECK(cert.exact_zero);
        CHECK(cert.max_abs == 0);
    }
}

TEST_CASE("phi is a chain map and phi of the unit is the parity operator") {
    auto T = cp1();
    const int D = 6;
    brane_chart c{&T, {frac(1, 2)}, {0}, D};
    auto A = cli::mf_model(T, c.p, D + 1);
    for (wedge_index I : {0u, 1u}) {
        ext<cq> a(1);
        a.add(I, cq(1));
        auto rep = phi_chain_map_check(A, c, a);
        CHECK(rep.exact_zero);
        CHECK(rep.checked == 2);
    }
    ext<cq> one(1);
    one.add(0, cq(1));
    auto P = phi_tau(A, c, {one});
    auto ctx = c.w_context(A.rebased(T.monoid_at(c.p)).mon(), A.energy_cutoff());
    CHECK(P[0][0] == form_series::constant(ctx, cq(1)));
    CHECK(P[1][1] == form_series::constant(ctx, cq(-1)));
    CHECK(P[0][1].is_zero());
    CHECK(P[1][0].is_zero());
}

TEST_CASE("koszul cohomology is concentrated") {
    for (int n = 1; n <= 3; ++n) {
        auto rep = koszul_cohomology(n, 6);
        CHECK_FALSE(rep.degenerate);
        CHECK(rep.concentrated());
        for (const auto& s : rep.strands) {
            int euler_dims = 0, euler_ranks = 0;
            for (int j = 0; j <= n; ++j) {
                const long d = s.strand + j;
                const long expect = (d >= 0 && d <= 5) ? binom(d + n - 1, n - 1) * binom(n, j) : 0;
                CHECK(s.dims[j] == expect);
                euler_dims += (j % 2 ? -1 : 1) * s.dims[j];
                euler_ranks += (j % 2 ? -1 : 1) * s.ranks[j];
            }
            CHECK(euler_dims == euler_ranks);
            if (!s.resolved) continue;
            for (int j = 0; j <= n; ++j) CHECK(s.ranks[j] == ((s.strand == -n && j == n) ? 1 : 0));
        }
    }
}

TEST_CASE("koszul cohomology under linear substitutions") {
    auto base = koszul_cohomology(2, 6);
    auto sub = koszul_cohomology(2, 6, {{2, 1}, {frac(1, 3), -1}});
    REQUIRE(sub.strands.size() == base.strands.size());
    for (std::size_t i = 0; i < base.strands.size(); ++i) CHECK(sub.strands[i].ranks == base.strands[i].ranks);
    auto deg = koszul_cohomology(2, 6, {{1, 2}, {2, 4}});
    CHECK(deg.degenerate);
    CHECK_FALSE(deg.concentrated());
    CHECK_THROWS_AS(koszul_cohomology(2, 6, {{1, 0}}), input_error);
    CHECK_THROWS_AS(koszul_cohomology(0, 6), input_error);
    CHECK(base.to_json()["strands"].size() == base.strands.size());
}
