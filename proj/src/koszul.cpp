#include "kmirror/koszul.hpp"

#include <cmath>
#include <functional>

namespace kmirror {

namespace {

const cq I_unit(0, 1);

void check_chart(const brane_chart& c) {
    if (!c.T) throw input_error("chart without polytope");
    const int n = c.T->n;
    if (static_cast<int>(c.p.size()) != n || static_cast<int>(c.alpha.size()) != n)
        throw input_error("center has wrong length");
    if (!c.T->interior(c.p)) throw input_error("center is not an interior point");
    if (c.degree < 2) throw input_error("series degree must be at least 2");
}

ext_series basis_series(int n, const form_series::context& ctx, wedge_index I) {
    ext_series x(n);
    x.add(I, form_series::constant(ctx, cq(1)));
    return x;
}

structure at_center(const structure& A, const brane_chart& c) {
    if (A.conv() != convention::shifted) throw error("brane computations use the shifted convention");
    structure B = A.rebased(c.T->monoid_at(c.p));
    const auto& M = *B.mon();
    for (std::size_t pos = 0; pos < M.size(); ++pos)
        if (M.cls(pos).energy0 >= B.energy_cutoff())
            throw cutoff_error("energy cutoff does not cover every facet class at the center");
    return B;
}

// Multiplies each T^beta sector by e^{-<v_beta, s>}.
form_series renormalize(const form_series& f, std::map<monoid_index, form_series>& cache) {
    const auto& ctx = f.ctx();
    const int n = ctx.m->dimension();
    std::map<monoid_index, form_series> sectors;
    for (const auto& [k, c] : f.terms()) {
        auto it = sectors.find(k.beta);
        if (it == sectors.end()) it = sectors.emplace(k.beta, form_series(ctx)).first;
        it->second.add_term(k, c);
    }
    form_series out(ctx);
    for (const auto& [beta, g] : sectors) {
        if (is_zero_index(beta)) {
            out += g;
            continue;
        }
        auto it = cache.find(beta);
        if (it == cache.end()) {
            auto v = ctx.m->boundary(beta);
            std::vector<cq> a(ctx.nvars, cq(0));
            for (int j = 0; j < n; ++j) a[j] = cq(-v[j]);
            it = cache.emplace(beta, exp_linear(ctx, a)).first;
        }
        out += g * it->second;
    }
    return out;
}

bool holomorphic(const form_series& f, int n) {
    const int D = f.ctx().degree;
    for (int j = 0; j < n; ++j) {
        form_series g = f.partial(j) + f.partial(n + j) * I_unit;
        if (!g.restricted_degree(D - 1).is_zero()) return false;
    }
    return true;
}

form_series restrict_r0(const form_series& f, const form_series::context& wctx) {
    const int n = wctx.nvars;
    form_series out(wctx);
    for (const auto& [k, c] : f.terms()) {
        bool zero = true;
        for (int j = n; j < 2 * n; ++j)
            if (k.exps[j]) zero = false;
        if (!zero) continue;
        out.add_term(form_series::key{k.beta, std::vector<int>(k.exps.begin(), k.exps.begin() + n), k.dx}, c);
    }
    return out;
}

// sum over l + i_0 + ... + i_k < degree of m(tau^l, x, theta^{i_0}, a_1, ..., a_k, theta^{i_k})
ext_series insert_sum(const structure& B, const tau_theta& tt, const ext_series& x, const std::vector<ext_series>& a,
                      const form_series::context& ctx) {
    const int n = B.dim();
    const int D = ctx.degree;
    const int slots = static_cast<int>(a.size()) + 2;
    const int fixed = static_cast<int>(a.size()) + 1;
    ext_series out(n);
    std::vector<int> cnt(slots, 0);
    std::function<void(int, int)> rec = [&](int s, int used) {
        if (s == slots) {
            if (used + fixed > B.arity_cutoff()) return;
            std::vector<ext_series> in(cnt[0], tt.tau);
            in.push_back(x);
            in.insert(in.end(), cnt[1], tt.theta);
            for (std::size_t q = 0; q < a.size(); ++q) {
                in.push_back(a[q]);
                in.insert(in.end(), cnt[q + 2], tt.theta);
            }
            out += apply_series(B, in, ctx);
            return;
        }
        for (int c = 0; used + c < D; ++c) {
            cnt[s] = c;
            rec(s + 1, used + c);
        }
    };
    rec(0, 0);
    return out;
}

ext_series lift(const ext<cq>& a, const form_series::context& ctx) {
    ext_series r(a.dim());
    for (const auto& [I, c] : a.components()) r.add(I, form_series::constant(ctx, c));
    return r;
}

void require_arity(const structure& B, int arity) {
    if (B.arity_cutoff() < arity)
        throw cutoff_error("series degree needs arity " + std::to_string(arity) + ", cutoff is " +
                           std::to_string(B.arity_cutoff()));
}

std::vector<std::vector<form_series>> matrix_of(int n, const std::vector<ext_series>& cols,
                                               const form_series::context& ctx) {
    const int nb = 1 << n;
    std::vector<std::vector<form_series>> m(nb, std::vector<form_series>(nb, form_series(ctx)));
    for (int I = 0; I < nb; ++I)
        for (const auto& [J, f] : cols[I].components()) m[J][I] = f;
    return m;
}

} // namespace

form_series::context brane_chart::chart_context(const monoid_ptr& m, const rational& cutoff, int ndx) const {
    return {m, cutoff, 2 * T->n, degree, ndx};
}

form_series::context brane_chart::w_context(const monoid_ptr& m, const rational& cutoff) const {
    return {m, cutoff, T->n, degree, 0};
}

std::vector<cplx> brane_chart::weights() const {
    std::vector<cplx> w;
    for (std::size_t i = 0; i < T->facets.size(); ++i) {
        double e = T->ell(i, p).get_d();
        double ph = 0;
        for (int j = 0; j < T->n; ++j) ph += static_cast<double>(T->facets[i].normal[j]) * alpha[j].get_d();
        w.push_back(std::exp(-e) * std::polar(1.0, -ph));
    }
    return w;
}

tau_theta build_tau_theta(const brane_chart& c, const form_series::context& ctx) {
    const int n = c.T->n;
    if (ctx.nvars != 2 * n) throw error("chart context must have 2n variables");
    tau_theta tt{ext_series(n), ext_series(n), ext_series(n)};
    for (int j = 0; j < n; ++j) {
        wedge_index e = wedge_index(1) << j;
        tt.tau.add(e, form_series::variable(ctx, n + j, -I_unit));
        tt.theta.add(e, form_series::variable(ctx, j));
    }
    tt.zeta = tt.theta - tt.tau;
    return tt;
}

ext_series apply_series(const structure& A, const std::vector<ext_series>& in, const form_series::context& ctx) {
    return apply<form_series>(A, in, ctx);
}

mf_operator mf_from_brane(const structure& A, const brane_chart& c) {
    check_chart(c);
    structure B = at_center(A, c);
    const int n = B.dim();
    const int D = c.degree;
    require_arity(B, D);
    auto ctx = c.chart_context(B.mon(), B.energy_cutoff());
    auto wctx = c.w_context(B.mon(), B.energy_cutoff());
    auto tt = build_tau_theta(c, ctx);
    mf_operator Q;
    Q.n = n;
    Q.degree = D;
    Q.ctx = wctx;
    Q.weights = c.weights();
    Q.holomorphic = true;
    std::map<monoid_index, form_series> cache;
    std::vector<ext_series> cols;
    for (wedge_index I = 0; I < (wedge_index(1) << n); ++I) {
        ext_series v = insert_sum(B, tt, basis_series(n, ctx, I), {}, ctx);
        ext_series w(n);
        for (const auto& [J, f] : v.components()) {
            form_series g = renormalize(f, cache);
            if (!holomorphic(g, n)) Q.holomorphic = false;
            w.add(J, restrict_r0(g, wctx));
        }
        cols.push_back(w);
    }
    Q.q = matrix_of(n, cols, wctx);
    const ext<novikov> m0 = kmirror::apply(B, std::vector<ext<novikov>>{});
    const novikov* l = m0.find(0);
    Q.lambda = l ? *l : novikov(B.mon(), B.energy_cutoff());
    Q.potential = form_series(wctx);
    for (const auto& [beta, coef] : Q.lambda.terms()) {
        auto v = B.mon()->boundary(beta);
        std::vector<cq> a(n);
        for (int j = 0; j < n; ++j) a[j] = cq(-v[j]);
        Q.potential += exp_linear(wctx, a).times_T(beta) * coef;
    }
    return Q;
}

nlohmann::json mf_operator::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    const int nb = 1 << n;
    for (int J = 0; J < nb; ++J)
        for (int I = 0; I < nb; ++I) {
            nlohmann::json coeffs = nlohmann::json::array();
            for (const auto& [e, v] : evaluate_entry(*this, J, I))
                coeffs.push_back({{"exponent", e}, {"re", v.real()}, {"im", v.imag()}});
            if (!coeffs.empty()) entries.push_back({{"entry", {J, I}}, {"coeffs", coeffs}});
        }
    cplx lam = lambda.evaluate_weighted(weights);
    return {{"n", n},
            {"degree", degree},
            {"basis", [&] {
                 nlohmann::json b = nlohmann::json::array();
                 for (int I = 0; I < nb; ++I) b.push_back(wedge_name(static_cast<wedge_index>(I)));
                 return b;
             }()},
            {"lambda", {{"re", lam.real()}, {"im", lam.imag()}}},
            {"holomorphic", holomorphic},
            {"entries", entries}};
}

mf_residual mf_verify(const mf_operator& Q) {
    const int nb = 1 << Q.n;
    mf_residual r;
    r.residual.assign(nb, std::vector<form_series>(nb, form_series(Q.ctx)));
    const form_series shift = form_series::from_novikov(Q.ctx, Q.lambda) - Q.potential;
    r.exact_zero = true;
    for (int K = 0; K < nb; ++K)
        for (int I = 0; I < nb; ++I) {
            form_series s(Q.ctx);
            for (int J = 0; J < nb; ++J) s += Q.q[K][J] * Q.q[J][I];
            if (K == I) s -= shift;
            s = s.restricted_degree(Q.degree - 1);
            if (!s.is_zero()) r.exact_zero = false;
            for (const auto& [e, v] : s.evaluate_symbols(Q.weights)) r.max_abs = std::max(r.max_abs, std::abs(v));
            r.residual[K][I] = std::move(s);
        }
    return r;
}

std::map<std::vector<int>, cplx> evaluate_entry(const mf_operator& Q, int row, int col) {
    std::map<std::vector<int>, cplx> out;
    for (const auto& [k, v] : Q.q.at(row).at(col).evaluate_symbols(Q.weights)) out[k.first] += v;
    return out;
}

std::vector<std::vector<form_series>> phi_tau(const structure& A, const brane_chart& c,
                                             const std::vector<ext<cq>>& a) {
    check_chart(c);
    structure B = at_center(A, c);
    const int n = B.dim();
    require_arity(B, c.degree + static_cast<int>(a.size()));
    auto ctx = c.chart_context(B.mon(), B.energy_cutoff());
    auto wctx = c.w_context(B.mon(), B.energy_cutoff());
    auto tt = build_tau_theta(c, ctx);
    std::vector<ext_series> as;
    for (const auto& x : a) as.push_back(lift(x, ctx));
    std::map<monoid_index, form_series> cache;
    std::vector<ext_series> cols;
    for (wedge_index I = 0; I < (wedge_index(1) << n); ++I) {
        ext_series v = insert_sum(B, tt, basis_series(n, ctx, I), as, ctx);
        ext_series w(n);
        for (const auto& [J, f] : v.components()) w.add(J, restrict_r0(renormalize(f, cache), wctx));
        cols.push_back(w);
    }
    return matrix_of(n, cols, wctx);
}

chain_map_report phi_chain_map_check(const structure& A, const brane_chart& c, const ext<cq>& a) {
    check_chart(c);
    structure B = at_center(A, c);
    const int n = B.dim();
    const int D = c.degree;
    require_arity(B, D + 1);
    auto ctx = c.chart_context(B.mon(), B.energy_cutoff());
    auto tt = build_tau_theta(c, ctx);
    ext_series as = lift(a, ctx);
    // d a = sum m(theta^i, a, theta^j)
    ext_series da(n);
    for (int i = 0; i < D; ++i)
        for (int j = 0; i + j < D && i + j + 1 <= B.arity_cutoff(); ++j) {
            std::vector<ext_series> in(i, tt.theta);
            in.push_back(as);
            in.insert(in.end(), j, tt.theta);
            da += apply_series(B, in, ctx);
        }
    auto Q = [&](const ext_series& x) { return insert_sum(B, tt, x, {}, ctx); };
    auto Phi = [&](const ext_series& y, const ext_series& x) { return insert_sum(B, tt, x, {y}, ctx); };
    chain_map_report rep;
    rep.exact_zero = true;
    for (wedge_index I = 0; I < (wedge_index(1) << n); ++I) {
        ext_series x = basis_series(n, ctx, I);
        ext_series res = Q(Phi(as, x)) + Phi(as, Q(x));
        ext_series t = Phi(da, x);
        res += ((wdeg(I) - 1) & 1) ? -t : t;
        ++rep.checked;
        bool ok = true;
        for (const auto& [J, f] : res.components())
            if (!f.restricted_degree(D - 1).is_zero()) ok = false;
        if (!ok) {
            rep.exact_zero = false;
            rep.failures.push_back("x = " + wedge_name(I));
        }
    }
    return rep;
}

mc_certificate mc_certificate_check(const structure& A, const brane_chart& c) {
    check_chart(c);
    structure B = at_center(A, c).converted();
    const int n = B.dim();
    const int D = c.degree;
    require_arity(B, D - 1);
    auto ctx = c.chart_context(B.mon(), B.energy_cutoff(), n);
    auto tt = build_tau_theta(c, ctx);
    curved_dga<form_series> C;
    C.d = [n](const form_series& f) {
        form_series out(f.ctx());
        for (int j = 0; j < n; ++j)
            out += form_series::dx(f.ctx(), j) * (f.partial(j) + f.partial(n + j) * I_unit + f.gm(j));
        return out;
    };
    // W(s, r) = sum_beta c_beta T^beta e^{-i <v, r>}; the s dependence lives in the symbols
    const ext<novikov> m0 = kmirror::apply(B, std::vector<ext<novikov>>{});
    form_series W(ctx);
    if (const novikov* l = m0.find(0))
        for (const auto& [beta, coef] : l->terms()) {
            auto v = B.mon()->boundary(beta);
            std::vector<cq> a(2 * n, cq(0));
            for (int j = 0; j < n; ++j) a[n + j] = -I_unit * cq(v[j]);
            W += exp_linear(ctx, a).times_T(beta) * coef;
        }
    C.curvature = -W;
    ext_series omega(n);
    for (int j = 0; j < n; ++j) omega.add(wedge_index(1) << j, form_series::dx(ctx, j));
    auto M = tensor_with_cdga<form_series>(B, C, ctx, -omega);
    mc_certificate cert;
    cert.residual = ext_series(n);
    std::vector<ext_series> in;
    const int K = std::min(B.arity_cutoff(), D);
    for (int k = 0; k <= K; ++k) {
        ext_series v = M.m(in);
        cert.residual += ((k * (k - 1) / 2) % 2) ? -v : v;
        in.push_back(tt.tau);
    }
    cert.exact_zero = true;
    auto wts = c.weights();
    for (const auto& [J, f] : cert.residual.components()) {
        form_series g = f.restricted_degree(D);
        if (!g.is_zero()) cert.exact_zero = false;
        for (const auto& [e, v] : g.evaluate_symbols(wts)) cert.max_abs = std::max(cert.max_abs, std::abs(v));
    }
    return cert;
}

namespace {

int exact_rank(std::vector<std::vector<rational>> m) {
    int rank = 0;
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (sgn(m[r][c]) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int r = rank + 1; r < rows; ++r) {
            if (sgn(m[r][c]) == 0) continue;
            rational f = m[r][c] / m[rank][c];
            for (int q = c; q < cols; ++q) m[r][q] -= f * m[rank][q];
        }
        ++rank;
    }
    return rank;
}

void monomials(int n, int deg, std::vector<int>& cur, int i, std::vector<std::vector<int>>& out) {
    if (i == n - 1) {
        cur[i] = deg;
        out.push_back(cur);
        return;
    }
    for (int d = deg; d >= 0; --d) {
        cur[i] = d;
        monomials(n, deg - d, cur, i + 1, out);
    }
}

std::vector<std::vector<int>> monomials_of_degree(int n, int deg) {
    std::vector<std::vector<int>> out;
    if (deg < 0) return out;
    std::vector<int> cur(n, 0);
    monomials(n, deg, cur, 0, out);
    return out;
}

} // namespace

bool koszul_report::concentrated() const {
    if (degenerate) return false;
    for (const auto& s : strands) {
        if (!s.resolved) continue;
        for (int j = 0; j <= n; ++j) {
            int expect = (s.strand == -n && j == n) ? 1 : 0;
            if (s.ranks[j] != expect) return false;
        }
    }
    return true;
}

nlohmann::json koszul_report::to_json() const {
    nlohmann::json st = nlohmann::json::array();
    for (const auto& s : strands)
        st.push_back({{"strand", s.strand}, {"resolved", s.resolved}, {"dims", s.dims}, {"ranks", s.ranks}});
    return {{"n", n}, {"degree", degree}, {"degenerate", degenerate}, {"concentrated", concentrated()}, {"strands", st}};
}

koszul_report koszul_cohomology(int n, int degree, const std::vector<std::vector<rational>>& L0) {
    if (n < 1 || n > 8) throw input_error("dimension out of range");
    if (degree < 2) throw input_error("series degree must be at least 2");
    std::vector<std::vector<rational>> L = L0;
    if (L.empty()) {
        L.assign(n, std::vector<rational>(n, 0));
        for (int j = 0; j < n; ++j) L[j][j] = 1;
    }
    if (static_cast<int>(L.size()) != n) throw input_error("linear substitution has wrong shape");
    for (const auto& row : L)
        if (static_cast<int>(row.size()) != n) throw input_error("linear substitution has wrong shape");
    koszul_report rep;
    rep.n = n;
    rep.degree = degree;
    rep.degenerate = exact_rank(L) < n;
    const int nb = 1 << n;
    for (int s = -n; s <= degree - 1; ++s) {
        strand_rank sr;
        sr.strand = s;
        sr.resolved = s + n <= degree - 1;
        // component j: polynomials of degree s + j times wedge degree j
        std::vector<std::vector<std::vector<int>>> mons(n + 1);
        std::vector<std::vector<wedge_index>> wedges(n + 1);
        for (wedge_index I = 0; I < static_cast<wedge_index>(nb); ++I) wedges[wdeg(I)].push_back(I);
        for (int j = 0; j <= n; ++j) {
            int d = s + j;
            if (d >= 0 && d <= degree - 1) mons[j] = monomials_of_degree(n, d);
            sr.dims.push_back(static_cast<int>(mons[j].size() * wedges[j].size()));
        }
        std::vector<int> dr(n + 1, 0);
        for (int j = 0; j < n; ++j) {
            if (!sr.dims[j] || !sr.dims[j + 1]) continue;
            std::map<std::pair<std::vector<int>, wedge_index>, int> row_of;
            for (const auto& m : mons[j + 1])
                for (auto J : wedges[j + 1]) row_of[{m, J}] = static_cast<int>(row_of.size());
            std::vector<std::vector<rational>> mat(sr.dims[j + 1], std::vector<rational>(sr.dims[j], 0));
            int col = 0;
            for (const auto& m : mons[j])
                for (auto J : wedges[j]) {
                    for (int k = 0; k < n; ++k) {
                        wedge_index ek = wedge_index(1) << k;
                        int sg = wedge_sign(ek, J);
                        if (!sg) continue;
                        for (int q = 0; q < n; ++q) {
                            if (sgn(L[k][q]) == 0) continue;
                            auto mm = m;
                            ++mm[q];
                            mat[row_of.at({mm, ek | J})][col] += sg > 0 ? L[k][q] : rational(-L[k][q]);
                        }
                    }
                    ++col;
                }
            dr[j] = exact_rank(mat);
        }
        for (int j = 0; j <= n; ++j) sr.ranks.push_back(sr.dims[j] - dr[j] - (j > 0 ? dr[j - 1] : 0));
        rep.strands.push_back(sr);
    }
    return rep;
}

} // namespace kmirror
