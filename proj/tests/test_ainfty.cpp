#include <doctest.h>

#include "fixtures.hpp"

using namespace kmirror;

namespace {

structure cp1_core(convention c = convention::shifted) { return divisor_core(cp1(), 3, 9, c); }

const structure& cp2_completed() {
    static const structure A = complete(divisor_core(cp2(), 2, 5), 5);
    return A;
}

std::vector<ext_nov> basis_inputs(const structure& A, const std::vector<wedge_index>& tup) {
    std::vector<ext_nov> in;
    for (auto I : tup) in.push_back(fx::e(A, I));
    return in;
}

std::vector<wedge_index> random_tuple(int n, int k, std::mt19937& rng) {
    std::vector<wedge_index> t(k);
    for (auto& I : t) I = static_cast<wedge_index>(rng() % (1u << n));
    return t;
}

} // namespace

TEST_CASE("cp1 operations on the degree one generator") {
    auto A = cp1_core();
    auto one = fx::e(A, 0), e = fx::e(A, 1);
    CHECK(kmirror::apply(A, std::vector<ext_nov>{}) == fx::e(A, 0, fx::T(A, 0) + fx::T(A, 1)));
    CHECK(kmirror::apply(A, {e}) == fx::e(A, 0, fx::T(A, 0) - fx::T(A, 1)));
    CHECK(kmirror::apply(A, {one, e}) == e);
    CHECK(kmirror::apply(A, {e, one}) == -e);
    CHECK(kmirror::apply(A, {one}).is_zero());
}

TEST_CASE("cp1 closed form for m_k(e, ..., e)") {
    auto A = cp1_core();
    auto e = fx::e(A, 1);
    for (int k = 0; k <= 8; ++k) {
        std::vector<ext_nov> in(k, e);
        const cq c(factorial_inverse(k));
        novikov expect = fx::T(A, 0, c) + fx::T(A, 1, (k % 2) ? -c : c);
        CHECK(kmirror::apply(A, in) == fx::e(A, 0, expect));
    }
    CHECK_THROWS_AS(kmirror::apply(A, std::vector<ext_nov>(10, e)), cutoff_error);
}

TEST_CASE("cp1 divisor core satisfies the relations") {
    auto A = divisor_core(cp1(), 3, 6);
    auto rep = check_relations(A, 5);
    CHECK(rep.tuples > 0);
    CHECK(rep.ok());
    CHECK_THROWS_AS(check_relations(A, 6), cutoff_error);
}

TEST_CASE("exterior algebra is a zero-curvature dga") {
    auto A = exterior_algebra(cp2().base_monoid(), 3, 5);
    CHECK(kmirror::apply(A, std::vector<ext_nov>{}).is_zero());
    for (auto I : wedge_basis(2)) CHECK(kmirror::apply(A, {fx::e(A, I)}).is_zero());
    CHECK(kmirror::apply(A, {fx::e(A, 1), fx::e(A, 2)}) == -fx::e(A, 3));
    CHECK(kmirror::apply(A, {fx::e(A, 2), fx::e(A, 1)}) == fx::e(A, 3));
    CHECK(check_relations(A, 4).ok());
    CHECK(check_strict_unit(A).ok());
}

TEST_CASE("completed cp2 satisfies the relations") {
    const auto& A = cp2_completed();
    CHECK(A.term_count() > 0);
    auto rep = check_relations(A, 4);
    CHECK(rep.ok());
    CHECK(check_strict_unit(A).ok());
}

TEST_CASE("convention change on low arities") {
    auto A = divisor_core(cp2(), 3, 6);
    auto B = A.converted();
    CHECK(B.conv() == convention::epsilon);
    for (auto I : wedge_basis(2)) CHECK(kmirror::apply(B, {fx::e(B, I)}) == kmirror::apply(A, {fx::e(A, I)}));
    CHECK(kmirror::apply(B, {fx::e(B, 1), fx::e(B, 2)}) == -kmirror::apply(A, {fx::e(A, 1), fx::e(A, 2)}));
    CHECK(kmirror::apply(B, {fx::e(B, 1), fx::e(B, 1)}) == -kmirror::apply(A, {fx::e(A, 1), fx::e(A, 1)}));
    CHECK(kmirror::apply(B, {fx::e(B, 0), fx::e(B, 1)}) == fx::e(B, 1));
    CHECK(kmirror::apply(B, {fx::e(B, 1), fx::e(B, 0)}) == fx::e(B, 1));
    CHECK(A.in_convention(convention::shifted).conv() == convention::shifted);
}

TEST_CASE("property: output sign under conversion is the epsilon sign") {
    const auto& A = cp2_completed();
    auto B = A.converted();
    std::mt19937 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 4);
        auto tup = random_tuple(2, k, rng);
        std::vector<int> degs;
        for (auto I : tup) degs.push_back(wdeg(I));
        auto a = kmirror::apply(A, basis_inputs(A, tup));
        auto b = kmirror::apply(B, basis_inputs(B, tup));
        CHECK(b == (epsilon_sign(degs) < 0 ? -a : a));
    }
}

TEST_CASE("property: conversion round trip is the identity") {
    const auto& A = cp2_completed();
    auto R = A.converted().converted();
    CHECK(R.conv() == convention::shifted);
    std::mt19937 rng(12);
    for (int trial = 0; trial < 150; ++trial) {
        const int k = static_cast<int>(rng() % 5);
        auto tup = random_tuple(2, k, rng);
        CHECK(kmirror::apply(R, basis_inputs(R, tup)) == kmirror::apply(A, basis_inputs(A, tup)));
    }
    auto B = A.converted();
    CHECK(check_relations(B, 3).ok());
    CHECK(check_relations(B.converted(), 3).ok());
}

TEST_CASE("sign fault breaks the epsilon relations") {
    auto A = divisor_core(cp1(), 3, 6);
    A.set_sign_fault(true);
    auto B = A.converted();
    CHECK_FALSE(check_relations(B, 4).ok());
}

TEST_CASE("strict unit and an injected violation") {
    auto A = cp1_core();
    CHECK(check_strict_unit(A).ok());
    op_term bad;
    bad.type = op_term::kind::table;
    ext<cq> out(1);
    out.add(1, cq(1));
    bad.table[{0, 1, 1}] = out;
    A.add_term(3, A.mon()->zero(), bad);
    auto rep = check_strict_unit(A);
    CHECK_FALSE(rep.ok());
    CHECK(rep.violations.front().find("m3") != std::string::npos);
}

TEST_CASE("tensor with a trivial dga matches the plain operations") {
    auto A = divisor_core(cp2(), 3, 6, convention::epsilon);
    curved_dga<novikov> B;
    B.curvature = novikov(A.mon(), A.energy_cutoff());
    auto ops = tensor_with_cdga<novikov>(A, B, A.ctx());
    std::mt19937 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const int k = static_cast<int>(rng() % 4);
        auto tup = random_tuple(2, k, rng);
        CHECK(ops.m(basis_inputs(A, tup)) == kmirror::apply(A, basis_inputs(A, tup)));
    }
    B.curvature = fx::scalar(A, cq(5));
    auto curved = tensor_with_cdga<novikov>(A, B, A.ctx());
    CHECK(curved.m(std::vector<ext_nov>{}) == kmirror::apply(A, std::vector<ext_nov>{}) + fx::e(A, 0, fx::scalar(A, cq(5))));
    CHECK_THROWS_AS(tensor_with_cdga<novikov>(divisor_core(cp2(), 3, 6), B, A.ctx()), error);
}

TEST_CASE("property: operations have the expected degree parity") {
    const auto& A = cp2_completed();
    std::mt19937 rng(14);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = static_cast<int>(rng() % 5);
        auto tup = random_tuple(2, k, rng);
        int total = k;
        for (auto I : tup) total += wdeg(I);
        const auto out = kmirror::apply(A, basis_inputs(A, tup));
        for (const auto& [J, c] : out.components()) CHECK((wdeg(J) - total) % 2 == 0);
    }
}

TEST_CASE("structure validation") {
    CHECK_THROWS_AS(structure(cp1().base_monoid(), 3, -1), error);
    auto A = cp1_core();
    CHECK_THROWS_AS(kmirror::apply(A, {ext_nov(2)}), error);
    CHECK(to_string(convention::epsilon) != to_string(convention::shifted));
}
