#include "kmirror/series.hpp"

#include <bit>
#include <cmath>

#include "kmirror/error.hpp"
#include "kmirror/graded.hpp"

namespace kmirror {

form_series::form_series(context ctx) : ctx_(std::move(ctx)) {
    if (!ctx_.m) throw error("series without monoid");
    if (ctx_.nvars < 0 || ctx_.ndx < 0 || ctx_.ndx > 30) throw error("bad series layout");
    if (ctx_.degree < 1) throw error("series degree bound must be positive");
}

form_series form_series::term(const context& ctx, const monoid_index& beta, const std::vector<int>& exps,
                              std::uint32_t dx, const cq& c) {
    form_series s(ctx);
    if (static_cast<int>(exps.size()) != ctx.nvars) throw error("exponent vector length mismatch");
    if (beta.size() != ctx.m->size()) throw error("monoid index does not match registry");
    s.add_term(key{beta, exps, dx}, c);
    return s;
}

form_series form_series::monomial(const context& ctx, const monoid_index& beta, const cq& c) {
    return term(ctx, beta, std::vector<int>(ctx.nvars, 0), 0, c);
}

form_series form_series::constant(const context& ctx, const cq& c) { return monomial(ctx, ctx.m->zero(), c); }

form_series form_series::variable(const context& ctx, int i, const cq& c) {
    if (i < 0 || i >= ctx.nvars) throw error("variable index out of range");
    std::vector<int> e(ctx.nvars, 0);
    e[i] = 1;
    return term(ctx, ctx.m->zero(), e, 0, c);
}

form_series form_series::dx(const context& ctx, int i) {
    if (i < 0 || i >= ctx.ndx) throw error("dx index out of range");
    return term(ctx, ctx.m->zero(), std::vector<int>(ctx.nvars, 0), std::uint32_t(1) << i, cq(1));
}

form_series form_series::from_novikov(const context& ctx, const novikov& x) {
    form_series s(ctx);
    for (const auto& [b, c] : x.terms()) s.add_term(key{b, std::vector<int>(ctx.nvars, 0), 0}, c);
    return s;
}

void form_series::add_term(const key& k, const cq& c) {
    if (c.is_zero()) return;
    if (ctx_.m->energy(k.beta) >= ctx_.cutoff) return;
    int deg = 0;
    for (int e : k.exps) deg += e;
    if (deg >= ctx_.degree) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void form_series::check(const form_series& o) const {
    if (ctx_.m != o.ctx_.m && !(ctx_.m && o.ctx_.m && ctx_.m->same_as(*o.ctx_.m))) throw error("monoid mismatch");
    if (ctx_.cutoff != o.ctx_.cutoff || ctx_.nvars != o.ctx_.nvars || ctx_.degree != o.ctx_.degree ||
        ctx_.ndx != o.ctx_.ndx)
        throw error("series layout mismatch");
}

form_series& form_series::operator+=(const form_series& o) {
    if (!ctx_.m) {
        *this = o;
        return *this;
    }
    if (!o.ctx_.m) return *this;
    check(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

form_series& form_series::operator-=(const form_series& o) {
    if (!ctx_.m) {
        *this = -o;
        return *this;
    }
    if (!o.ctx_.m) return *this;
    check(o);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

form_series form_series::operator-() const {
    form_series r(*this);
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

form_series operator*(const form_series& a, const form_series& b) {
    if (!a.ctx_.m) return a;
    if (!b.ctx_.m) return b;
    a.check(b);
    form_series r(a.ctx_);
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            if (ka.dx & kb.dx) continue;
            int s = wedge_sign(ka.dx, kb.dx);
            form_series::key k{ka.beta + kb.beta, ka.exps, ka.dx | kb.dx};
            for (std::size_t i = 0; i < k.exps.size(); ++i) k.exps[i] += kb.exps[i];
            cq c = ca * cb;
            r.add_term(k, s > 0 ? c : -c);
        }
    return r;
}

form_series operator*(const form_series& a, const cq& c) {
    form_series r(a.ctx_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : a.terms_) r.add_term(k, v * c);
    return r;
}

form_series form_series::times_T(const monoid_index& b) const {
    form_series r(ctx_);
    for (const auto& [k, c] : terms_) r.add_term(key{k.beta + b, k.exps, k.dx}, c);
    return r;
}

form_series form_series::partial(int i) const {
    if (i < 0 || i >= ctx_.nvars) throw error("variable index out of range");
    form_series r(ctx_);
    for (const auto& [k, c] : terms_) {
        if (k.exps[i] == 0) continue;
        key nk = k;
        nk.exps[i] -= 1;
        r.add_term(nk, c * cq(k.exps[i]));
    }
    return r;
}

form_series form_series::gm(int i) const {
    if (i < 0 || i >= ctx_.m->dimension()) throw error("direction out of range");
    form_series r(ctx_);
    for (const auto& [k, c] : terms_) {
        long v = ctx_.m->boundary(k.beta)[i];
        if (v) r.add_term(k, c * cq(-v));
    }
    return r;
}

form_series form_series::nabla() const {
    if (ctx_.ndx > ctx_.nvars || ctx_.ndx > ctx_.m->dimension()) throw error("connection needs one variable per dx");
    form_series r(ctx_);
    for (int i = 0; i < ctx_.ndx; ++i) r += dx(ctx_, i) * (partial(i) + gm(i));
    return r;
}

form_series form_series::restricted_degree(int D) const {
    form_series r(ctx_);
    for (const auto& [k, c] : terms_) {
        int deg = 0;
        for (int e : k.exps) deg += e;
        if (deg < D) r.terms_.emplace(k, c);
    }
    return r;
}

std::map<std::pair<monoid_index, std::uint32_t>, cq> form_series::substitute(const std::vector<rational>& vals) const {
    if (static_cast<int>(vals.size()) != ctx_.nvars) throw error("substitution length mismatch");
    std::map<std::pair<monoid_index, std::uint32_t>, cq> out;
    for (const auto& [k, c] : terms_) {
        cq v = c;
        for (int i = 0; i < ctx_.nvars; ++i) v *= pow(cq(vals[i]), k.exps[i]);
        auto& slot = out[{k.beta, k.dx}];
        slot += v;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

int form_series::max_degree() const {
    int mx = -1;
    for (const auto& [k, c] : terms_) {
        int deg = 0;
        for (int e : k.exps) deg += e;
        mx = std::max(mx, deg);
    }
    return mx;
}

bool form_series::has_odd() const {
    for (const auto& [k, c] : terms_)
        if (std::popcount(k.dx) & 1) return true;
    return false;
}

form_series form_series::even_part() const {
    form_series r(ctx_);
    for (const auto& [k, c] : terms_)
        if (!(std::popcount(k.dx) & 1)) r.terms_.emplace(k, c);
    return r;
}

form_series form_series::odd_part() const {
    form_series r(ctx_);
    for (const auto& [k, c] : terms_)
        if (std::popcount(k.dx) & 1) r.terms_.emplace(k, c);
    return r;
}

double form_series::max_abs() const {
    double m = 0;
    for (const auto& [k, c] : terms_) m = std::max(m, c.abs());
    return m;
}

std::map<std::pair<std::vector<int>, std::uint32_t>, cplx> form_series::evaluate_symbols(
    const std::vector<cplx>& weights) const {
    if (weights.size() != ctx_.m->size()) throw error("weight count mismatch");
    std::map<std::pair<std::vector<int>, std::uint32_t>, cplx> out;
    for (const auto& [k, c] : terms_) {
        cplx w = c.to_complex();
        for (std::size_t p = 0; p < k.beta.size(); ++p)
            if (k.beta[p]) w *= std::pow(weights[p], k.beta[p]);
        out[{k.exps, k.dx}] += w;
    }
    return out;
}

nlohmann::json form_series::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [k, c] : terms_)
        j.push_back({{"beta", k.beta},
                     {"exponent", k.exps},
                     {"dx", k.dx},
                     {"re", to_string(c.re)},
                     {"im", to_string(c.im)}});
    return j;
}

form_series exp_linear(const form_series::context& ctx, const std::vector<cq>& a) {
    if (static_cast<int>(a.size()) != ctx.nvars) throw error("linear form length mismatch");
    form_series lin(ctx);
    for (int j = 0; j < ctx.nvars; ++j) lin += form_series::variable(ctx, j, a[j]);
    form_series out = form_series::constant(ctx, cq(1));
    form_series power = out;
    for (int k = 1; k < ctx.degree; ++k) {
        power = power * lin * cq(rational(1, k));
        if (power.is_zero()) break;
        out += power;
    }
    return out;
}

form_series series_div_vanishing(const form_series& f, const std::vector<cq>& l) {
    const auto& ctx = f.ctx();
    if (static_cast<int>(l.size()) != ctx.nvars) throw error("linear form length mismatch");
    int piv = -1;
    for (int j = 0; j < ctx.nvars; ++j)
        if (!l[j].is_zero()) {
            piv = j;
            break;
        }
    if (piv < 0) throw error("division by the zero linear form");
    form_series lin(ctx);
    for (int j = 0; j < ctx.nvars; ++j) lin += form_series::variable(ctx, j, l[j]);
    const cq inv = cq(1) / l[piv];
    form_series g(ctx), r = f;
    while (true) {
        const form_series::key* pick = nullptr;
        for (const auto& [k, c] : r.terms())
            if (k.exps[piv] > 0 && (!pick || k.exps[piv] > pick->exps[piv])) pick = &k;
        if (!pick) break;
        form_series::key qk = *pick;
        cq qc = r.terms().at(qk) * inv;
        qk.exps[piv] -= 1;
        form_series q(ctx);
        q.add_term(qk, qc);
        g += q;
        r -= q * lin;
    }
    if (!r.is_zero()) throw error("series does not vanish on the zero locus of the linear form");
    return g;
}

} // namespace kmirror
