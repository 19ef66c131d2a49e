#include <doctest.h>

#include <set>

#include "fixtures.hpp"

using namespace kmirror;

namespace {

monoid_ptr cp1_monoid() { return cp1().base_monoid(); }

novikov Tb(const monoid_ptr& m, const rational& E, const monoid_index& b, const cq& c = cq(1)) {
    return novikov::monomial({m, E}, b, c);
}

novikov random_element(const monoid_ptr& m, const rational& E, std::mt19937& rng) {
    novikov x(m, E);
    for (const auto& b : m->enumerate(E))
        if (rng() % 2) x.add_term(b, fx::rand_cq(rng));
    return x;
}

} // namespace

TEST_CASE("cp1 monoid classes") {
    auto m = cp1_monoid();
    REQUIRE(m->size() == 2);
    CHECK(m->energy(m->generator(0)) == frac(1, 2));
    CHECK(m->energy(m->generator(1)) == frac(1, 2));
    CHECK(m->boundary(m->generator(0)) == std::vector<long>{1});
    CHECK(m->boundary(m->generator(1)) == std::vector<long>{-1});
    CHECK(m->maslov(m->generator(0)) == 2);
}

TEST_CASE("monoid construction") {
    auto empty = monoid_new({}, 1);
    CHECK(empty->size() == 0);
    CHECK(empty->enumerate(3).size() == 1);
    CHECK_THROWS_AS(monoid_new({{1, 1, 2, {1}}, {1, 1, 2, {-1}}}, 1), error);
    CHECK_THROWS_AS(monoid_new({{1, 1, 2, {1, 0}}}, 1), error);
    CHECK_THROWS_AS(monoid_new({{1, 1, 3, {1}}}, 1), error);
    CHECK_THROWS_AS(monoid_new({{1, -1, 2, {1}}}, 1), error);
}

TEST_CASE("products and truncation") {
    auto m = cp1_monoid();
    const rational E = 3;
    auto g1 = m->generator(0), g2 = m->generator(1);
    novikov one = novikov::constant({m, E}, cq(1));

    novikov p = Tb(m, E, g1) * Tb(m, E, g2);
    CHECK(p == Tb(m, E, g1 + g2));
    CHECK(m->energy(g1 + g2) == 1);
    CHECK(m->maslov(g1 + g2) == 4);

    novikov q = (one + Tb(m, E, g1)) * (one - Tb(m, E, g1));
    CHECK(q == one - Tb(m, E, g1 + g1));

    const rational small = frac(9, 10);
    CHECK((Tb(m, small, g1) * Tb(m, small, g2)).is_zero());
    CHECK_THROWS_AS(Tb(m, small, g1) * Tb(m, E, g1), error);
    CHECK_THROWS_AS(Tb(m, E, g1) + Tb(cp2().base_monoid(), E, cp2().base_monoid()->generator(0)), error);
}

TEST_CASE("valuation") {
    auto m = cp1_monoid();
    const rational E = 3;
    auto g1 = m->generator(0), g2 = m->generator(1);
    novikov x = Tb(m, E, g1, cq(3)) + Tb(m, E, g1 + g2, cq(5));
    CHECK(*x.valuation() == frac(1, 2));
    CHECK_FALSE(novikov(m, E).valuation().has_value());
    CHECK(*novikov::constant({m, E}, cq(7)).valuation() == 0);
}

TEST_CASE("evaluation") {
    auto m = cp1_monoid();
    const rational E = 3;
    auto g1 = m->generator(0), g2 = m->generator(1);
    CHECK(std::abs(Tb(m, E, g1).evaluate(fx::t0()) - std::exp(-0.5)) < 1e-15);
    CHECK(novikov(m, E).evaluate(fx::t0()) == cplx(0));
    novikov s = Tb(m, E, g1, cq(2)) + Tb(m, E, g2, cq(2));
    CHECK(std::abs(s.evaluate(fx::t0()) - 4 * std::exp(-0.5)) < 1e-14);
}

TEST_CASE("gauss-manin derivative") {
    auto m = cp1_monoid();
    const rational E = 3;
    auto g1 = m->generator(0), g2 = m->generator(1);
    CHECK(Tb(m, E, g1).gm_derivative(0) == Tb(m, E, g1, cq(-1)));
    CHECK(novikov::constant({m, E}, cq(1)).gm_derivative(0).is_zero());
    CHECK(Tb(m, E, g1 + g2).gm_derivative(0).is_zero());
    CHECK_THROWS_AS(Tb(m, E, g1).gm_derivative(1), error);
}

TEST_CASE("json shape") {
    auto m = cp1_monoid();
    auto j = Tb(m, 3, m->generator(0), cq(frac(1, 2), 1)).to_json();
    REQUIRE(j["terms"].size() == 1);
    CHECK(j["terms"][0]["index"] == nlohmann::json::array({1, 0}));
    CHECK(j["terms"][0]["re"].get<double>() == 0.5);
    CHECK(j["terms"][0]["im"].get<double>() == 1.0);
}

TEST_CASE("property: truncation is compatible with products") {
    auto m = cp2().base_monoid();
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const rational E = 2, E2 = frac(static_cast<long>(rng() % 5) + 2, 3);
        novikov a = random_element(m, E, rng), b = random_element(m, E, rng);
        novikov lhs = (a * b).truncated(E2);
        novikov rhs = a.truncated(E2) * b.truncated(E2);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("property: grading is additive on products") {
    auto m = cp2().base_monoid();
    std::mt19937 rng(4);
    const rational E = 2;
    for (int trial = 0; trial < 30; ++trial) {
        novikov a = random_element(m, E, rng), b = random_element(m, E, rng);
        std::set<int> degs;
        for (const auto& [ba, ca] : a.terms())
            for (const auto& [bb, cb] : b.terms())
                if (m->energy(ba + bb) < E) degs.insert(m->maslov(ba) + m->maslov(bb));
        const novikov prod = a * b;
        for (const auto& [bp, cp] : prod.terms()) CHECK(degs.count(m->maslov(bp)) == 1);
    }
}

TEST_CASE("property: evaluation is multiplicative up to the tail") {
    auto m = cp1_monoid();
    std::mt19937 rng(5);
    const rational E = 4;
    for (int trial = 0; trial < 20; ++trial) {
        novikov a = random_element(m, E, rng), b = random_element(m, E, rng);
        const double t = fx::t0();
        double tail = 0;
        for (const auto& [ba, ca] : a.terms())
            for (const auto& [bb, cb] : b.terms())
                if (m->energy(ba + bb) >= E) tail += ca.abs() * cb.abs() * std::pow(t, m->energy(ba + bb).get_d());
        CHECK(std::abs((a * b).evaluate(t) - a.evaluate(t) * b.evaluate(t)) <= tail + 1e-12);
    }
}

TEST_CASE("property: gm derivative obeys leibniz") {
    auto m = cp2().base_monoid();
    std::mt19937 rng(6);
    const rational E = 2;
    for (int trial = 0; trial < 20; ++trial) {
        novikov a = random_element(m, E, rng), b = random_element(m, E, rng);
        for (int i = 0; i < 2; ++i) CHECK((a * b).gm_derivative(i) == a.gm_derivative(i) * b + a * b.gm_derivative(i));
    }
}
