#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "kmirror/scalar.hpp"

namespace kmirror {

struct disk_class {
    int id = 0;
    rational energy0;
    int maslov = 2;
    std::vector<long> boundary;
};

// Multiplicity per registered class, indexed by registry position.
using monoid_index = std::vector<int>;

class monoid {
public:
    monoid(std::vector<disk_class> classes, int n);

    int dimension() const { return n_; }
    std::size_t size() const { return classes_.size(); }
    const disk_class& cls(std::size_t pos) const { return classes_.at(pos); }
    const std::vector<disk_class>& classes() const { return classes_; }
    std::size_t position(int id) const;

    monoid_index zero() const { return monoid_index(classes_.size(), 0); }
    monoid_index generator(std::size_t pos) const;

    rational energy(const monoid_index& b) const;
    int maslov(const monoid_index& b) const;
    std::vector<long> boundary(const monoid_index& b) const;
    int total(const monoid_index& b) const;

    // All indices with energy < cutoff, sorted by (energy, index).
    std::vector<monoid_index> enumerate(const rational& cutoff) const;

    // Same classes with energy0 shifted by <boundary, shift>.
    std::shared_ptr<const monoid> rebased(const std::vector<rational>& shift) const;

    bool same_as(const monoid& o) const;

private:
    int n_;
    std::vector<disk_class> classes_;
};

using monoid_ptr = std::shared_ptr<const monoid>;

monoid_ptr monoid_new(std::vector<disk_class> classes, int n);

monoid_index operator+(const monoid_index& a, const monoid_index& b);
bool is_zero_index(const monoid_index& b);
// a <= b componentwise
bool divides(const monoid_index& a, const monoid_index& b);

class novikov {
public:
    struct context {
        monoid_ptr m;
        rational cutoff;
    };

    novikov() = default;
    novikov(monoid_ptr m, rational cutoff);

    static novikov monomial(const context& ctx, const monoid_index& b, const cq& c);
    static novikov constant(const context& ctx, const cq& c);

    context ctx() const { return {m_, cutoff_}; }
    const monoid_ptr& mon() const { return m_; }
    const rational& cutoff() const { return cutoff_; }
    const std::map<monoid_index, cq>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    int parity() const { return 0; }
    cq coefficient(const monoid_index& b) const;
    void add_term(const monoid_index& b, const cq& c);

    novikov& operator+=(const novikov& o);
    novikov& operator-=(const novikov& o);
    novikov operator-() const;
    friend novikov operator+(novikov a, const novikov& b) { return a += b; }
    friend novikov operator-(novikov a, const novikov& b) { return a -= b; }
    friend novikov operator*(const novikov& a, const novikov& b);
    friend novikov operator*(const novikov& a, const cq& c);
    friend bool operator==(const novikov& a, const novikov& b);

    novikov times_T(const monoid_index& b) const;

    // Minimum stored energy; nullopt encodes +infinity.
    std::optional<rational> valuation() const;
    cplx evaluate(double t) const;
    // Each class contributes weight[pos]^multiplicity.
    cplx evaluate_weighted(const std::vector<cplx>& weights) const;
    novikov gm_derivative(int i) const;
    novikov truncated(const rational& cutoff) const;
    // Same terms over another monoid with identical class layout.
    novikov transported(const monoid_ptr& m) const;
    double max_abs() const;

    nlohmann::json to_json() const;

private:
    void check_compatible(const novikov& o) const;

    monoid_ptr m_;
    rational cutoff_;
    std::map<monoid_index, cq> terms_;
};

} // namespace kmirror
