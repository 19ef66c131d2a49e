#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"

using namespace kmirror;

namespace {

// Sorts symbols by target position with adjacent swaps, collecting (-1)^{pq} per swap.
int bubble_sign(std::vector<int> target, std::vector<int> degs) {
    int s = 1;
    for (std::size_t pass = 0; pass < target.size(); ++pass)
        for (std::size_t i = 0; i + 1 < target.size(); ++i)
            if (target[i] > target[i + 1]) {
                std::swap(target[i], target[i + 1]);
                std::swap(degs[i], degs[i + 1]);
                if ((degs[i] & 1) && (degs[i + 1] & 1)) s = -s;
            }
    return s;
}

// epsilon: (s a_1)(s a_2)...(s a_k) -> s^k a_1 ... a_k with odd suspensions s.
int epsilon_oracle(const std::vector<int>& d) {
    const int k = static_cast<int>(d.size());
    std::vector<int> target, degs;
    for (int i = 0; i < k; ++i) {
        target.push_back(i);
        degs.push_back(1);
        target.push_back(k + i);
        degs.push_back(d[i]);
    }
    return bubble_sign(target, degs);
}

// eta: (b_1 a_1)(b_2 a_2)...(b_k a_k) -> b_1..b_k a_1..a_k.
int eta_oracle(const std::vector<int>& a, const std::vector<int>& b) {
    const int k = static_cast<int>(a.size());
    std::vector<int> target, degs;
    for (int i = 0; i < k; ++i) {
        target.push_back(i);
        degs.push_back(b[i]);
        target.push_back(k + i);
        degs.push_back(a[i]);
    }
    return bubble_sign(target, degs);
}

ext<cq> rand_ext(int n, std::mt19937& rng) {
    ext<cq> x(n);
    for (wedge_index I = 0; I < (wedge_index(1) << n); ++I)
        if (rng() % 2) x.add(I, fx::rand_cq(rng));
    return x;
}

ext<cq> homogeneous_rand(int n, int d, std::mt19937& rng) { return rand_ext(n, rng).homogeneous(d); }

ext<cq> unit(int n, wedge_index I, cq c = cq(1)) {
    ext<cq> x(n);
    x.add(I, c);
    return x;
}

} // namespace

TEST_CASE("koszul sign examples") {
    CHECK(koszul_sign({0, 1, 2}, {1, 3, 2}) == 1);
    CHECK(koszul_sign({1, 0}, {1, 1}) == -1);
    // (a, b, c) -> (b, c, a) with degrees (1, 1, 0)
    CHECK(koszul_sign({1, 2, 0}, {1, 1, 0}) == -1);
    CHECK_THROWS_AS(koszul_sign({0, 1}, {1}), error);
    CHECK_THROWS_AS(koszul_sign({0, 0}, {1, 1}), error);
}

TEST_CASE("epsilon and eta examples") {
    CHECK(epsilon_sign({1}) == 1);
    CHECK(epsilon_sign({1, 1}) == -1);
    CHECK(epsilon_sign({0, 0, 0}) == 1);
    CHECK(eta_sign({1}, {1}) == 1);
    CHECK(eta_sign({1, 1}, {1, 1}) == -1);
    CHECK(eta_sign({1, 1, 1}, {0, 2, 0}) == 1);
    CHECK_THROWS_AS(eta_sign({1}, {1, 1}), error);
}

TEST_CASE("property: sign engine matches brute force permutations") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 7);
        std::vector<int> a(k), b(k);
        for (int i = 0; i < k; ++i) {
            a[i] = static_cast<int>(rng() % 4);
            b[i] = static_cast<int>(rng() % 4);
        }
        CHECK(epsilon_sign(a) == epsilon_oracle(a));
        CHECK(eta_sign(a, b) == eta_oracle(a, b));
        std::vector<int> perm(k);
        for (int i = 0; i < k; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        // perm[j] is the input at output position j, so input perm[j] travels to j
        std::vector<int> target(k);
        for (int j = 0; j < k; ++j) target[perm[j]] = j;
        CHECK(koszul_sign(perm, a) == bubble_sign(target, a));
    }
}

TEST_CASE("wedge examples") {
    const int n = 2;
    CHECK(wedge(unit(n, 1), unit(n, 2)) == unit(n, 3));
    CHECK(wedge(unit(n, 2), unit(n, 1)) == unit(n, 3, cq(-1)));
    std::mt19937 rng(1);
    auto a = rand_ext(n, rng);
    CHECK(wedge(unit(n, 0), a) == a);
    auto s = unit(n, 1) + unit(n, 2);
    CHECK(wedge(s, s).is_zero());
    CHECK_THROWS_AS(wedge(unit(1, 1), unit(2, 1)), error);
}

TEST_CASE("contraction examples") {
    CHECK(contract({1, 0}, unit(2, 3)) == unit(2, 2));
    CHECK(contract({1, 1}, unit(2, 0)).is_zero());
    CHECK(contract({1, 1}, wedge(unit(2, 1), unit(2, 2))) == unit(2, 2) - unit(2, 1));
    CHECK_THROWS_AS(contract({1}, unit(2, 1)), error);
}

TEST_CASE("property: wedge is associative and graded commutative") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        auto a = rand_ext(n, rng), b = rand_ext(n, rng), c = rand_ext(n, rng);
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
        const int p = static_cast<int>(rng() % (n + 1)), q = static_cast<int>(rng() % (n + 1));
        auto x = homogeneous_rand(n, p, rng), y = homogeneous_rand(n, q, rng);
        auto yx = wedge(y, x);
        CHECK(wedge(x, y) == ((p * q) % 2 ? -yx : yx));
    }
}

TEST_CASE("property: contraction is a square-zero odd derivation") {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        std::vector<long> v(n);
        for (auto& c : v) c = static_cast<long>(rng() % 5) - 2;
        const int p = static_cast<int>(rng() % (n + 1));
        auto a = homogeneous_rand(n, p, rng), b = rand_ext(n, rng);
        CHECK(contract(v, contract(v, b)).is_zero());
        auto rhs = wedge(contract(v, a), b);
        auto second = wedge(a, contract(v, b));
        rhs += (p % 2) ? -second : second;
        CHECK(contract(v, wedge(a, b)) == rhs);
    }
}
