#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kmirror/graded.hpp"
#include "kmirror/novikov.hpp"

namespace kmirror {

enum class convention { shifted, epsilon };

std::string to_string(convention c);

struct op_term {
    enum class kind { ansatz, wedge, table };

    kind type = kind::ansatz;
    // ansatz: slot wedge degrees and the classes contracted into each slot, applied in order
    std::vector<int> profile;
    std::vector<std::vector<int>> contractions;
    cq coef = cq(1);
    // wedge: extra (-1)^{|a|} on the first slot
    bool sign_by_first = false;
    // table: basis tuple -> output
    std::map<std::vector<wedge_index>, ext<cq>> table;
    std::string origin;
};

struct op_key {
    int k;
    monoid_index beta;
    friend bool operator<(const op_key& a, const op_key& b) {
        if (a.k != b.k) return a.k < b.k;
        return a.beta < b.beta;
    }
};

// Coefficient parity helpers; overloads for odd-capable rings live with those rings.
inline bool has_odd(const cq&) { return false; }
inline cq even_part(const cq& c) { return c; }
inline cq odd_part(const cq&) { return cq(0); }
inline bool has_odd(const novikov&) { return false; }
inline novikov even_part(const novikov& c) { return c; }
inline novikov odd_part(const novikov& c) { return c * cq(0); }

class structure {
public:
    structure(monoid_ptr m, rational energy_cutoff, int arity_cutoff, convention conv = convention::shifted);

    int dim() const { return mon_->dimension(); }
    const monoid_ptr& mon() const { return mon_; }
    const rational& energy_cutoff() const { return E_; }
    int arity_cutoff() const { return K_; }
    void set_arity_cutoff(int K);
    convention conv() const { return conv_; }
    bool strict_unit() const { return strict_unit_; }
    void set_strict_unit(bool s) { strict_unit_ = s; }
    // Drops epsilon_k from conversion and core evaluation; for negative controls.
    bool sign_fault() const { return sign_fault_; }
    void set_sign_fault(bool f) { sign_fault_ = f; }
    novikov::context ctx() const { return {mon_, E_}; }

    // Generator classes carrying the symmetric divisor form at every arity.
    const std::vector<bool>& core_classes() const { return core_; }
    void set_core_class(std::size_t pos, bool on);
    bool has_core() const;

    const std::map<op_key, std::vector<op_term>>& ops() const { return ops_; }
    void add_term(int k, const monoid_index& beta, op_term t);
    void clear_level(int k, const monoid_index& beta);
    const std::vector<op_term>* level(int k, const monoid_index& beta) const;
    int max_stored_arity() const;

    // Same structure re-expressed in the other sign convention.
    structure converted() const;
    structure in_convention(convention c) const { return c == conv_ ? *this : converted(); }

    // Same operators over a monoid with identical class layout (energies may differ).
    structure rebased(const monoid_ptr& m) const;

    std::size_t term_count() const;

private:
    monoid_ptr mon_;
    rational E_;
    int K_;
    convention conv_;
    bool strict_unit_ = true;
    bool sign_fault_ = false;
    std::vector<bool> core_;
    std::map<op_key, std::vector<op_term>> ops_;
};

structure exterior_algebra(monoid_ptr m, rational energy_cutoff, int arity_cutoff, convention conv = convention::shifted);

namespace detail {

using sign_fn = std::function<int(const std::vector<int>&)>;

template <class C>
ext<C> contract_chain(const structure& A, const std::vector<int>& classes, ext<C> a) {
    for (int p : classes) {
        a = contract(A.mon()->cls(p).boundary, a);
        if (a.is_zero()) break;
    }
    return a;
}

// parts[i] maps wedge degree -> homogeneous piece of slot i.
template <class C>
ext<C> eval_ansatz(const structure& A, const std::vector<int>& profile, const std::vector<std::vector<int>>& contr,
                   const cq& coef, const std::vector<std::map<int, ext<C>>>& parts, const sign_fn& sign) {
    const std::size_t k = profile.size();
    for (std::size_t i = 0; i < k; ++i)
        if (!parts[i].count(profile[i])) return ext<C>(A.dim());
    ext<C> el;
    for (std::size_t i = 0; i < k; ++i) {
        ext<C> piece = contract_chain(A, contr[i], parts[i].find(profile[i])->second);
        if (piece.is_zero()) return ext<C>(A.dim());
        el = (i == 0) ? piece : wedge(el, piece);
        if (el.is_zero()) return el;
    }
    cq c = coef;
    if (sign && sign(profile) < 0) c = -c;
    return el.scaled(c);
}

template <class C>
ext<C> eval_term(const structure& A, const op_term& t, const std::vector<std::map<int, ext<C>>>& parts,
                 const sign_fn& sign) {
    const int n = A.dim();
    switch (t.type) {
    case op_term::kind::ansatz:
        return eval_ansatz(A, t.profile, t.contractions, t.coef, parts, sign);
    case op_term::kind::wedge: {
        ext<C> out(n);
        for (const auto& [d0, a] : parts[0])
            for (const auto& [d1, b] : parts[1]) {
                int s = (t.sign_by_first && (d0 & 1)) ? -1 : 1;
                if (sign) s *= sign({d0, d1});
                ext<C> w = wedge(a, b);
                out += w.scaled(t.coef * cq(s));
            }
        return out;
    }
    case op_term::kind::table: {
        ext<C> out(n);
        for (const auto& [key, val] : t.table) {
            if (key.size() != parts.size()) continue;
            const C* prod = nullptr;
            C acc;
            std::vector<int> degs;
            bool ok = true;
            for (std::size_t i = 0; i < key.size(); ++i) {
                auto it = parts[i].find(wdeg(key[i]));
                const C* c = (it == parts[i].end()) ? nullptr : it->second.find(key[i]);
                if (!c) {
                    ok = false;
                    break;
                }
                degs.push_back(wdeg(key[i]));
                if (!prod) {
                    acc = *c;
                    prod = &acc;
                } else {
                    acc = acc * *c;
                }
            }
            if (!ok) continue;
            cq s = t.coef;
            if (sign && sign(degs) < 0) s = -s;
            for (const auto& [J, v] : val.components()) out.add(J, acc * (v * s));
        }
        return out;
    }
    }
    return ext<C>(n);
}

template <class C>
std::vector<std::map<int, ext<C>>> split_by_degree(const std::vector<ext<C>>& in) {
    std::vector<std::map<int, ext<C>>> parts(in.size());
    for (std::size_t i = 0; i < in.size(); ++i)
        for (const auto& [I, c] : in[i].components()) {
            auto& slot = parts[i];
            auto it = slot.find(wdeg(I));
            if (it == slot.end()) it = slot.emplace(wdeg(I), ext<C>(in[i].dim())).first;
            it->second.add(I, c);
        }
    return parts;
}

// Value of m_{k,beta} without the T^beta factor, for k >= 1.
template <class C>
ext<C> eval_level(const structure& A, int k, const monoid_index& beta, const std::vector<std::map<int, ext<C>>>& parts,
                  const sign_fn& sign) {
    ext<C> out(A.dim());
    const auto& core = A.core_classes();
    int pos = -1;
    int total = 0;
    for (std::size_t p = 0; p < beta.size(); ++p) {
        total += beta[p];
        if (beta[p]) pos = static_cast<int>(p);
    }
    if (total == 1 && core[pos]) {
        std::vector<int> prof(k, 1);
        std::vector<std::vector<int>> con(k, std::vector<int>{pos});
        cq coef = cq(factorial_inverse(k));
        if (A.conv() == convention::epsilon && !A.sign_fault() && epsilon_sign(prof) < 0) coef = -coef;
        out += eval_ansatz(A, prof, con, coef, parts, sign);
    }
    if (const auto* terms = A.level(k, beta))
        for (const auto& t : *terms) out += eval_term(A, t, parts, sign);
    return out;
}

inline std::vector<monoid_index> levels_of_arity(const structure& A, int k) {
    std::vector<monoid_index> betas;
    const auto& core = A.core_classes();
    for (std::size_t p = 0; p < core.size(); ++p)
        if (core[p]) betas.push_back(A.mon()->generator(p));
    for (auto it = A.ops().lower_bound(op_key{k, {}}); it != A.ops().end() && it->first.k == k; ++it) {
        bool dup = false;
        for (const auto& b : betas)
            if (b == it->first.beta) dup = true;
        if (!dup) betas.push_back(it->first.beta);
    }
    return betas;
}

template <class C>
ext<C> apply_parts(const structure& A, int k, const std::vector<std::map<int, ext<C>>>& parts,
                   const typename C::context& ctx, const sign_fn& sign) {
    ext<C> out(A.dim());
    for (const auto& beta : levels_of_arity(A, k)) {
        if (A.mon()->energy(beta) >= A.energy_cutoff()) continue;
        if (k == 0) {
            cq c = 0;
            int total = 0, pos = -1;
            for (std::size_t p = 0; p < beta.size(); ++p) {
                total += beta[p];
                if (beta[p]) pos = static_cast<int>(p);
            }
            if (total == 1 && A.core_classes()[pos]) c += cq(1);
            if (const auto* terms = A.level(0, beta))
                for (const auto& t : *terms)
                    if (t.type == op_term::kind::ansatz) c += t.coef;
            out.add(0, C::monomial(ctx, beta, c));
            if (const auto* terms = A.level(0, beta))
                for (const auto& t : *terms)
                    if (t.type == op_term::kind::table)
                        for (const auto& [key, val] : t.table)
                            for (const auto& [J, v] : val.components()) out.add(J, C::monomial(ctx, beta, v * t.coef));
            continue;
        }
        ext<C> v = eval_level(A, k, beta, parts, sign);
        if (v.is_zero()) continue;
        if (is_zero_index(beta))
            out += v;
        else
            out += v.map_coefficients([&](const C& c) { return c.times_T(beta); });
    }
    return out;
}

} // namespace detail

// m_k on inputs with even coefficients, in the structure's own convention.
template <class C>
ext<C> apply(const structure& A, const std::vector<ext<C>>& in, const typename C::context& ctx) {
    if (static_cast<int>(in.size()) > A.arity_cutoff())
        throw cutoff_error("arity " + std::to_string(in.size()) + " exceeds cutoff " + std::to_string(A.arity_cutoff()));
    for (const auto& x : in) {
        if (x.dim() != A.dim()) throw error("input dimension mismatch");
        for (const auto& [I, c] : x.components())
            if (has_odd(c)) throw error("odd coefficients need the tensor formula");
    }
    return detail::apply_parts<C>(A, static_cast<int>(in.size()), detail::split_by_degree(in), ctx, nullptr);
}

inline ext<novikov> apply(const structure& A, const std::vector<ext<novikov>>& in) {
    return apply<novikov>(A, in, A.ctx());
}

// Epsilon-convention operator on B (x) A with a graded-commutative coefficient ring:
// m_k(b_1 a_1, ..., b_k a_k) = (-1)^{eta + k*sum|b|} (b_1...b_k) m_k(a_1, ..., a_k).
template <class C>
ext<C> apply_tensor(const structure& A, const std::vector<ext<C>>& in, const typename C::context& ctx) {
    if (A.conv() != convention::epsilon) throw error("tensor formula requires the epsilon convention");
    const int k = static_cast<int>(in.size());
    if (k > A.arity_cutoff()) throw cutoff_error("arity exceeds cutoff");
    // split each slot by coefficient parity
    std::vector<std::array<ext<C>, 2>> par(k);
    for (int i = 0; i < k; ++i) {
        par[i][0] = ext<C>(A.dim());
        par[i][1] = ext<C>(A.dim());
        for (const auto& [I, c] : in[i].components()) {
            if (has_odd(c)) {
                par[i][0].add(I, even_part(c));
                par[i][1].add(I, odd_part(c));
            } else {
                par[i][0].add(I, c);
            }
        }
    }
    ext<C> out(A.dim());
    if (k == 0) return detail::apply_parts<C>(A, 0, {}, ctx, nullptr);
    std::vector<int> P(k, 0);
    for (long mask = 0; mask < (1L << k); ++mask) {
        bool empty = false;
        int psum = 0;
        for (int i = 0; i < k; ++i) {
            P[i] = (mask >> i) & 1;
            psum += P[i];
            if (par[i][P[i]].is_zero()) empty = true;
        }
        if (empty) continue;
        std::vector<ext<C>> slot(k);
        for (int i = 0; i < k; ++i) slot[i] = par[i][P[i]];
        auto parts = detail::split_by_degree(slot);
        const int pass = (k * psum) & 1;
        detail::sign_fn sign = [P, pass](const std::vector<int>& d) {
            int s = eta_sign(d, P);
            return pass ? -s : s;
        };
        out += detail::apply_parts<C>(A, k, parts, ctx, sign);
    }
    return out;
}

// A curved A-infinity structure presented by its operations on ext<C>.
template <class C>
struct ainf_ops {
    std::function<ext<C>(const std::vector<ext<C>>&)> m;
    convention conv = convention::shifted;
    int max_arity = 0;
    int dim = 0;
};

template <class C>
ainf_ops<C> ops_of(const structure& A, const typename C::context& ctx) {
    ainf_ops<C> o;
    o.conv = A.conv();
    o.max_arity = A.arity_cutoff();
    o.dim = A.dim();
    o.m = [&A, ctx](const std::vector<ext<C>>& in) { return apply<C>(A, in, ctx); };
    return o;
}

namespace detail {

template <class C>
std::array<ext<C>, 2> split_total_parity(const ext<C>& x) {
    std::array<ext<C>, 2> r{ext<C>(x.dim()), ext<C>(x.dim())};
    for (const auto& [I, c] : x.components()) {
        int d = wdeg(I) & 1;
        if (has_odd(c)) {
            r[d].add(I, even_part(c));
            r[d ^ 1].add(I, odd_part(c));
        } else {
            r[d].add(I, c);
        }
    }
    return r;
}

} // namespace detail

// Signed double sum of the A-infinity relation at the given inputs.
template <class C>
ext<C> relation_residual(const ainf_ops<C>& M, const std::vector<ext<C>>& in) {
    const int N = static_cast<int>(in.size());
    if (N + 1 > M.max_arity)
        throw cutoff_error("relation at arity " + std::to_string(N) + " needs arity cutoff " + std::to_string(N + 1));
    std::vector<std::array<ext<C>, 2>> par;
    for (const auto& x : in) par.push_back(detail::split_total_parity(x));
    ext<C> out(M.dim);
    std::vector<int> P(N, 0);
    for (long mask = 0; mask < (1L << N); ++mask) {
        bool empty = false;
        for (int i = 0; i < N; ++i) {
            P[i] = (mask >> i) & 1;
            if (par[i][P[i]].is_zero()) empty = true;
        }
        if (empty) continue;
        std::vector<ext<C>> x(N);
        for (int i = 0; i < N; ++i) x[i] = par[i][P[i]];
        for (int r = 0; r <= N; ++r) {
            int left = 0;
            for (int i = 0; i < r; ++i) left += P[i];
            for (int s = 0; r + s <= N; ++s) {
                const int t = N - r - s;
                int sgn;
                if (M.conv == convention::shifted)
                    sgn = ((left - r) & 1) ? -1 : 1;
                else
                    sgn = ((r + s * t + s * left) & 1) ? -1 : 1;
                std::vector<ext<C>> inner(x.begin() + r, x.begin() + r + s);
                ext<C> v = M.m(inner);
                if (v.is_zero()) continue;
                std::vector<ext<C>> outer(x.begin(), x.begin() + r);
                outer.push_back(v);
                outer.insert(outer.end(), x.begin() + r + s, x.end());
                ext<C> w = M.m(outer);
                out += sgn > 0 ? w : -w;
            }
        }
    }
    return out;
}

template <class C>
ext<C> relation_residual(const structure& A, const std::vector<ext<C>>& in, const typename C::context& ctx) {
    return relation_residual(ops_of<C>(A, ctx), in);
}

inline ext<novikov> relation_residual(const structure& A, const std::vector<ext<novikov>>& in) {
    return relation_residual<novikov>(A, in, A.ctx());
}

ext<novikov> basis_element(const structure& A, wedge_index I, const cq& c = cq(1));
std::vector<wedge_index> wedge_basis(int n, bool include_unit = true);

struct relation_report {
    std::size_t tuples = 0;
    std::size_t failures = 0;
    std::vector<std::string> examples;
    bool ok() const { return failures == 0; }
};

// Relation residual over every basis tuple of arity <= max_arity.
relation_report check_relations(const structure& A, int max_arity);

struct unit_report {
    std::size_t checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

unit_report check_strict_unit(const structure& A, int max_arity = -1);

// Curved differential graded algebra data for the coefficient ring C.
template <class C>
struct curved_dga {
    std::function<C(const C&)> d;
    C curvature;
};

// B (x) A with m_0 = 1 (x) m_0 + W (x) 1, m_1 = d (x) 1 + (-1)^{|b|} b (x) m_1.
template <class C>
ainf_ops<C> tensor_with_cdga(const structure& A, const curved_dga<C>& B, const typename C::context& ctx,
                             const ext<C>& extra_curvature = {}) {
    if (A.conv() != convention::epsilon) throw error("tensor product requires the epsilon convention");
    ainf_ops<C> o;
    o.conv = convention::epsilon;
    o.max_arity = A.arity_cutoff();
    o.dim = A.dim();
    o.m = [&A, B, ctx, extra_curvature](const std::vector<ext<C>>& in) {
        ext<C> v = apply_tensor<C>(A, in, ctx);
        if (in.empty()) {
            if (!B.curvature.is_zero()) v.add(0, B.curvature);
            if (extra_curvature.dim() == v.dim()) v += extra_curvature;
        } else if (in.size() == 1 && B.d) {
            v += in[0].map_coefficients(B.d);
        }
        return v;
    };
    return o;
}

} // namespace kmirror
