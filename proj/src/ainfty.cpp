#include "kmirror/ainfty.hpp"

#include <sstream>

namespace kmirror {

std::string to_string(convention c) { return c == convention::shifted ? "shifted" : "epsilon"; }

structure::structure(monoid_ptr m, rational energy_cutoff, int arity_cutoff, convention conv)
    : mon_(std::move(m)), E_(std::move(energy_cutoff)), K_(arity_cutoff), conv_(conv) {
    if (!mon_) throw error("structure without monoid");
    if (sgn(E_) <= 0) throw error("energy cutoff must be positive");
    if (K_ < 0) throw error("arity cutoff must be nonnegative");
    core_.assign(mon_->size(), false);
}

void structure::set_arity_cutoff(int K) {
    if (K < 0) throw error("arity cutoff must be nonnegative");
    K_ = K;
}

void structure::set_core_class(std::size_t pos, bool on) { core_.at(pos) = on; }

bool structure::has_core() const {
    for (bool b : core_)
        if (b) return true;
    return false;
}

void structure::add_term(int k, const monoid_index& beta, op_term t) {
    if (k < 0) throw error("negative arity");
    if (beta.size() != mon_->size()) throw error("monoid index does not match registry");
    if (t.type == op_term::kind::ansatz) {
        if (static_cast<int>(t.profile.size()) != k || static_cast<int>(t.contractions.size()) != k)
            throw error("ansatz term arity mismatch");
    }
    if (t.type == op_term::kind::wedge && k != 2) throw error("wedge term must have arity 2");
    ops_[op_key{k, beta}].push_back(std::move(t));
}

void structure::clear_level(int k, const monoid_index& beta) { ops_.erase(op_key{k, beta}); }

const std::vector<op_term>* structure::level(int k, const monoid_index& beta) const {
    auto it = ops_.find(op_key{k, beta});
    return it == ops_.end() ? nullptr : &it->second;
}

int structure::max_stored_arity() const {
    int mx = -1;
    for (const auto& [key, terms] : ops_) mx = std::max(mx, key.k);
    return mx;
}

std::size_t structure::term_count() const {
    std::size_t c = 0;
    for (const auto& [key, terms] : ops_) c += terms.size();
    return c;
}

structure structure::converted() const {
    structure r = *this;
    r.conv_ = conv_ == convention::shifted ? convention::epsilon : convention::shifted;
    if (sign_fault_) return r;
    for (auto& [key, terms] : r.ops_)
        for (auto& t : terms) {
            switch (t.type) {
            case op_term::kind::ansatz:
                if (epsilon_sign(t.profile) < 0) t.coef = -t.coef;
                break;
            case op_term::kind::wedge:
                t.sign_by_first = !t.sign_by_first;
                break;
            case op_term::kind::table:
                for (auto& [tuple, val] : t.table) {
                    std::vector<int> degs;
                    for (auto I : tuple) degs.push_back(wdeg(I));
                    if (epsilon_sign(degs) < 0) val = -val;
                }
                break;
            }
        }
    return r;
}

structure structure::rebased(const monoid_ptr& m) const {
    if (m->size() != mon_->size() || m->dimension() != mon_->dimension()) throw error("monoid layout mismatch");
    structure r = *this;
    r.mon_ = m;
    return r;
}

structure exterior_algebra(monoid_ptr m, rational energy_cutoff, int arity_cutoff, convention conv) {
    structure A(m, std::move(energy_cutoff), arity_cutoff, conv);
    op_term w;
    w.type = op_term::kind::wedge;
    w.sign_by_first = conv == convention::shifted;
    w.origin = "wedge";
    A.add_term(2, A.mon()->zero(), std::move(w));
    return A;
}

ext<novikov> basis_element(const structure& A, wedge_index I, const cq& c) {
    ext<novikov> x(A.dim());
    x.add(I, novikov::constant(A.ctx(), c));
    return x;
}

std::vector<wedge_index> wedge_basis(int n, bool include_unit) {
    std::vector<wedge_index> b;
    for (wedge_index I = include_unit ? 0 : 1; I < (wedge_index(1) << n); ++I) b.push_back(I);
    std::stable_sort(b.begin(), b.end(), [](wedge_index a, wedge_index c) { return wdeg(a) < wdeg(c); });
    return b;
}

namespace {

template <class F>
void for_each_tuple(const std::vector<wedge_index>& basis, int k, F&& f) {
    std::vector<std::size_t> idx(k, 0);
    std::vector<wedge_index> tup(k);
    while (true) {
        for (int i = 0; i < k; ++i) tup[i] = basis[idx[i]];
        f(tup);
        int i = k - 1;
        while (i >= 0 && ++idx[i] == basis.size()) idx[i--] = 0;
        if (i < 0) break;
    }
}

std::string describe(const std::vector<wedge_index>& tup) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < tup.size(); ++i) os << (i ? "," : "") << wedge_name(tup[i]);
    os << ")";
    return os.str();
}

std::string describe(const ext<novikov>& x) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [I, c] : x.components())
        for (const auto& [b, v] : c.terms()) {
            os << (first ? "" : " + ") << v << "*T^[";
            for (std::size_t p = 0; p < b.size(); ++p) os << (p ? "," : "") << b[p];
            os << "]*" << wedge_name(I);
            first = false;
        }
    return first ? "0" : os.str();
}

} // namespace

relation_report check_relations(const structure& A, int max_arity) {
    relation_report rep;
    auto basis = wedge_basis(A.dim());
    auto M = ops_of<novikov>(A, A.ctx());
    for (int N = 0; N <= max_arity; ++N) {
        for_each_tuple(basis, N, [&](const std::vector<wedge_index>& tup) {
            std::vector<ext<novikov>> in;
            for (auto I : tup) in.push_back(basis_element(A, I));
            auto r = relation_residual(M, in);
            ++rep.tuples;
            if (!r.is_zero()) {
                ++rep.failures;
                if (rep.examples.size() < 5) rep.examples.push_back(describe(tup) + " -> " + describe(r));
            }
        });
    }
    return rep;
}

unit_report check_strict_unit(const structure& A, int max_arity) {
    unit_report rep;
    if (max_arity < 0) max_arity = std::min(A.arity_cutoff(), 5);
    auto basis = wedge_basis(A.dim());
    auto one = basis_element(A, 0);
    for (auto I : basis) {
        auto x = basis_element(A, I);
        auto l = kmirror::apply(A, {one, x});
        auto r = kmirror::apply(A, {x, one});
        ++rep.checked;
        if (!(l == x)) rep.violations.push_back("m2(1," + wedge_name(I) + ") = " + describe(l));
        ext<novikov> expect_r = (A.conv() == convention::shifted && (wdeg(I) & 1)) ? -x : x;
        if (!(r == expect_r)) rep.violations.push_back("m2(" + wedge_name(I) + ",1) = " + describe(r));
    }
    for (int k = 1; k <= max_arity; ++k) {
        if (k == 2) continue;
        for_each_tuple(basis, k, [&](const std::vector<wedge_index>& tup) {
            bool has_unit = false;
            for (auto I : tup) has_unit |= I == 0;
            if (!has_unit) return;
            std::vector<ext<novikov>> in;
            for (auto I : tup) in.push_back(basis_element(A, I));
            auto v = kmirror::apply(A, in);
            ++rep.checked;
            if (!v.is_zero() && rep.violations.size() < 20)
                rep.violations.push_back("m" + std::to_string(k) + describe(tup) + " = " + describe(v));
        });
    }
    return rep;
}

} // namespace kmirror
