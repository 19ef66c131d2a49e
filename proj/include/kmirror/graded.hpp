#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kmirror/error.hpp"
#include "kmirror/scalar.hpp"

namespace kmirror {

// Wedge basis element as a bitmask over e_1..e_n.
using wedge_index = std::uint32_t;

inline int wdeg(wedge_index I) { return std::popcount(I); }

// perm[j] is the input slot placed at output position j.
int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees);
// (-1)^{sum_i (k-i) deg_i}, slots counted from 1.
int epsilon_sign(const std::vector<int>& degrees);
// (-1)^{sum_i a_i (b_{i+1} + ... + b_k)}.
int eta_sign(const std::vector<int>& a, const std::vector<int>& b);

// Sign of e_I ^ e_J in the sorted basis; 0 when I and J overlap.
int wedge_sign(wedge_index I, wedge_index J);

std::string wedge_name(wedge_index I);

template <class C>
class ext {
public:
    ext() = default;
    explicit ext(int n) : n_(n) {
        if (n < 0 || n > 30) throw error("exterior dimension out of range");
    }

    int dim() const { return n_; }
    const std::map<wedge_index, C>& components() const { return comp_; }
    bool is_zero() const { return comp_.empty(); }

    void add(wedge_index I, const C& c) {
        if (c.is_zero()) return;
        auto it = comp_.find(I);
        if (it == comp_.end()) {
            comp_.emplace(I, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) comp_.erase(it);
    }

    const C* find(wedge_index I) const {
        auto it = comp_.find(I);
        return it == comp_.end() ? nullptr : &it->second;
    }

    ext& operator+=(const ext& o) {
        check(o);
        for (const auto& [I, c] : o.comp_) add(I, c);
        return *this;
    }
    ext& operator-=(const ext& o) {
        check(o);
        for (const auto& [I, c] : o.comp_) add(I, -c);
        return *this;
    }
    ext operator-() const {
        ext r(n_);
        for (const auto& [I, c] : comp_) r.comp_.emplace(I, -c);
        return r;
    }
    friend ext operator+(ext a, const ext& b) { return a += b; }
    friend ext operator-(ext a, const ext& b) { return a -= b; }
    friend bool operator==(const ext& a, const ext& b) { return a.n_ == b.n_ && a.comp_ == b.comp_; }

    ext scaled(const cq& s) const {
        ext r(n_);
        if (s.is_zero()) return r;
        for (const auto& [I, c] : comp_) r.add(I, c * s);
        return r;
    }

    template <class F>
    ext map_coefficients(F&& f) const {
        ext r(n_);
        for (const auto& [I, c] : comp_) r.add(I, f(c));
        return r;
    }

    ext homogeneous(int d) const {
        ext r(n_);
        for (const auto& [I, c] : comp_)
            if (wdeg(I) == d) r.comp_.emplace(I, c);
        return r;
    }

private:
    void check(const ext& o) const {
        if (n_ != o.n_) throw error("exterior dimension mismatch");
    }

    int n_ = 0;
    std::map<wedge_index, C> comp_;
};

// Coefficients are multiplied in slot order without graded signs.
template <class C>
ext<C> wedge(const ext<C>& a, const ext<C>& b) {
    if (a.dim() != b.dim()) throw error("exterior dimension mismatch");
    ext<C> r(a.dim());
    for (const auto& [I, x] : a.components())
        for (const auto& [J, y] : b.components()) {
            int s = wedge_sign(I, J);
            if (s == 0) continue;
            C p = x * y;
            r.add(I | J, s > 0 ? p : -p);
        }
    return r;
}

template <class C>
ext<C> contract(const std::vector<long>& v, const ext<C>& a) {
    if (static_cast<int>(v.size()) != a.dim()) throw error("contraction vector length mismatch");
    ext<C> r(a.dim());
    for (const auto& [I, x] : a.components()) {
        int pos = 0;
        for (int i = 0; i < a.dim(); ++i) {
            if (!(I >> i & 1u)) continue;
            if (v[i] != 0) {
                long s = (pos % 2 == 0) ? v[i] : -v[i];
                r.add(I & ~(wedge_index(1) << i), x * cq(s));
            }
            ++pos;
        }
    }
    return r;
}

} // namespace kmirror
