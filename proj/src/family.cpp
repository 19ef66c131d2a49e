#include "kmirror/family.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace kmirror {

namespace {

const cq I_unit(0, 1);

int total_parity(const family_element& x) {
    int p = -1;
    for (const auto& [I, c] : x.components())
        for (const auto& [k, v] : c.terms()) {
            int q = (wdeg(I) + std::popcount(k.dx)) & 1;
            if (p >= 0 && p != q) throw error("family element is not homogeneous");
            p = q;
        }
    return p < 0 ? 0 : p;
}

family_element basis_family(int n, wedge_index I, const form_series& coef) {
    family_element x(n);
    x.add(I, coef);
    return x;
}

std::string tuple_name(const std::vector<family_element>& in) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < in.size(); ++i) {
        os << (i ? "," : "");
        bool first = true;
        for (const auto& [I, c] : in[i].components()) {
            os << (first ? "" : "+") << wedge_name(I);
            first = false;
        }
    }
    os << ")";
    return os.str();
}

template <class F>
void for_each_word(int n, int N, F&& f) {
    std::vector<wedge_index> tup(N);
    const wedge_index nb = wedge_index(1) << n;
    std::function<void(int)> rec = [&](int i) {
        if (i == N) {
            f(tup);
            return;
        }
        for (wedge_index I = 0; I < nb; ++I) {
            tup[i] = I;
            rec(i + 1);
        }
    };
    rec(0);
}

} // namespace

form_series::context family_context(const structure& A, int degree) {
    if (degree < 1) throw input_error("base degree must be positive");
    return {A.mon(), A.energy_cutoff(), A.dim(), degree, A.dim()};
}

family_element gm(const family_element& f) {
    family_element r(f.dim());
    for (const auto& [I, c] : f.components()) r.add(I, c.nabla());
    return r;
}

family_element omega(const form_series::context& ctx) {
    const int n = ctx.ndx;
    family_element w(n);
    for (int j = 0; j < n; ++j) w.add(wedge_index(1) << j, form_series::dx(ctx, j));
    return w;
}

diffeo_report diffeo_check(const structure& A, int max_arity, int degree, int random_cases, unsigned seed) {
    const structure B = A.in_convention(convention::epsilon);
    if (max_arity + 1 > B.arity_cutoff())
        throw cutoff_error("diffeo identity at arity " + std::to_string(max_arity) + " needs arity cutoff " +
                           std::to_string(max_arity + 1));
    const auto ctx = family_context(B, degree);
    const int n = B.dim();
    const family_element w = omega(ctx);
    diffeo_report rep;
    auto m = [&](const std::vector<family_element>& in) { return apply_tensor<form_series>(B, in, ctx); };
    auto residual = [&](const std::vector<family_element>& a) {
        const int k = static_cast<int>(a.size());
        family_element lhs = gm(m(a));
        int pass = 0;
        for (int j = 0; j < k; ++j) {
            std::vector<family_element> b = a;
            b[j] = gm(a[j]);
            family_element v = m(b);
            // nabla past a_1..a_{j-1}, then past the degree 2-k operator
            int s = (pass + k) & 1;
            lhs += s ? v : -v;
            pass += total_parity(a[j]);
        }
        family_element rhs(n);
        for (int i = 0; i <= k; ++i) {
            std::vector<family_element> b(a.begin(), a.begin() + i);
            b.push_back(w);
            b.insert(b.end(), a.begin() + i, a.end());
            family_element v = m(b);
            rhs += (i & 1) ? -v : v;
        }
        return lhs - rhs;
    };
    auto record = [&](const std::vector<family_element>& a) {
        ++rep.checked;
        family_element r = residual(a);
        bool bad = false;
        for (const auto& [I, c] : r.components())
            if (!c.restricted_degree(degree - 1).is_zero()) bad = true;
        if (bad) {
            ++rep.failures;
            if (rep.examples.size() < 5) rep.examples.push_back(tuple_name(a));
        }
    };
    const form_series one = form_series::constant(ctx, cq(1));
    for (int k = 0; k <= max_arity; ++k)
        for_each_word(n, k, [&](const std::vector<wedge_index>& tup) {
            std::vector<family_element> a;
            for (auto I : tup) a.push_back(basis_family(n, I, one));
            record(a);
        });
    std::mt19937 rng(seed);
    for (int c = 0; c < random_cases; ++c) {
        const int k = 1 + static_cast<int>(rng() % std::max(1, max_arity));
        std::vector<family_element> a;
        for (int i = 0; i < k; ++i) {
            wedge_index I = rng() % (1u << n);
            std::vector<int> e(n, 0);
            e[rng() % n] = static_cast<int>(rng() % 2);
            std::uint32_t dxm = (rng() % 2) ? (1u << (rng() % n)) : 0u;
            cq coef(rational(1 + static_cast<int>(rng() % 3)));
            form_series f = form_series::term(ctx, ctx.m->zero(), e, dxm, coef);
            if (rng() % 2) f = f.times_T(ctx.m->generator(rng() % ctx.m->size()));
            a.push_back(basis_family(n, I, f));
        }
        record(a);
    }
    return rep;
}

ainf_ops<form_series> derham_structure(const structure& A_eps, const form_series::context& ctx, bool drop_omega) {
    curved_dga<form_series> C;
    C.d = [](const form_series& f) { return f.nabla(); };
    C.curvature = form_series(ctx);
    family_element extra = drop_omega ? family_element(A_eps.dim()) : -omega(ctx);
    return tensor_with_cdga<form_series>(A_eps, C, ctx, extra);
}

relation_report derham_relations(const structure& A, int max_arity, int degree, bool drop_omega) {
    const structure B = A.in_convention(convention::epsilon);
    const auto ctx = family_context(B, degree);
    auto M = derham_structure(B, ctx, drop_omega);
    const int n = B.dim();
    relation_report rep;
    const form_series one = form_series::constant(ctx, cq(1));
    for (int N = 0; N <= max_arity; ++N)
        for_each_word(n, N, [&](const std::vector<wedge_index>& tup) {
            std::vector<family_element> in;
            for (auto I : tup) in.push_back(basis_family(n, I, one));
            auto r = relation_residual(M, in);
            ++rep.tuples;
            bool bad = false;
            for (const auto& [I, c] : r.components())
                if (!c.restricted_degree(degree - 1).is_zero()) bad = true;
            if (bad) {
                ++rep.failures;
                if (rep.examples.size() < 5) rep.examples.push_back(tuple_name(in));
            }
        });
    return rep;
}

propagation propagate(const toric_data& T, const structure& A, const std::vector<rational>& p,
                      const std::vector<rational>& alpha, int degree, int max_arity) {
    if (static_cast<int>(p.size()) != T.n || static_cast<int>(alpha.size()) != T.n)
        throw input_error("basepoint has wrong length");
    if (!T.interior(p)) throw input_error("basepoint is not interior");
    const structure B = A.rebased(T.monoid_at(p)).in_convention(convention::epsilon);
    if (max_arity < 0) max_arity = degree - 1;
    if (max_arity > B.arity_cutoff()) throw cutoff_error("propagation arity exceeds cutoff");
    const auto ctx = family_context(B, degree);
    const int n = T.n;
    propagation out;
    out.max_arity = max_arity;
    out.theta = family_element(n);
    for (int j = 0; j < n; ++j) out.theta.add(wedge_index(1) << j, form_series::variable(ctx, j));
    for (std::size_t i = 0; i < T.facets.size(); ++i) {
        double ph = 0;
        for (int j = 0; j < n; ++j) ph += static_cast<double>(T.facets[i].normal[j]) * alpha[j].get_d();
        out.weights.push_back(std::exp(-T.ell(i, p).get_d()) * std::polar(1.0, -ph));
    }
    out.nabla_theta_is_omega = gm(out.theta) == omega(ctx);
    family_element sum(n);
    std::vector<family_element> in;
    for (int k = 0; k <= max_arity; ++k) {
        family_element v = apply_tensor<form_series>(B, in, ctx);
        sum += ((k * (k - 1) / 2) % 2) ? -v : v;
        in.push_back(out.theta);
    }
    out.scalar = true;
    out.W = form_series(ctx);
    for (const auto& [I, c] : sum.components()) {
        if (I == 0)
            out.W = c;
        else
            out.scalar = false;
    }
    out.flat = out.W.nabla().restricted_degree(degree - 1).is_zero();
    return out;
}

cplx propagation::value_at(const std::vector<rational>& offset) const {
    cplx v = 0;
    for (const auto& [key, c] : W.substitute(offset)) {
        if (key.second) continue;
        cplx w = c.to_complex();
        for (std::size_t p = 0; p < key.first.size(); ++p)
            if (key.first[p]) w *= std::pow(weights[p], key.first[p]);
        v += w;
    }
    return v;
}

route_report two_route_check(const toric_data& T, const structure& A, const std::vector<rational>& p,
                             const std::vector<rational>& alpha, const std::vector<rational>& x_prime, int degree) {
    if (!T.interior(x_prime)) throw input_error("second basepoint is not interior");
    propagation pr = propagate(T, A, p, alpha, degree);
    route_report r;
    std::vector<rational> offs(T.n);
    for (int j = 0; j < T.n; ++j) offs[j] = x_prime[j] - p[j];
    const structure Bp = A.rebased(T.monoid_at(p));
    r.via_family = novikov(Bp.mon(), Bp.energy_cutoff());
    for (const auto& [key, c] : pr.W.substitute(offs))
        if (key.second == 0) r.via_family.add_term(key.first, c);
    const structure Bx = A.rebased(T.monoid_at(x_prime)).in_convention(convention::epsilon);
    ext<novikov> b(T.n);
    for (int j = 0; j < T.n; ++j) b.add(wedge_index(1) << j, novikov::constant(Bx.ctx(), cq(offs[j])));
    ext<novikov> sum(T.n);
    std::vector<ext<novikov>> in;
    for (int k = 0; k <= pr.max_arity; ++k) {
        ext<novikov> v = kmirror::apply(Bx, in);
        sum += ((k * (k - 1) / 2) % 2) ? -v : v;
        in.push_back(b);
    }
    const novikov* l = sum.find(0);
    r.direct = l ? l->transported(Bp.mon()) : novikov(Bp.mon(), Bp.energy_cutoff());
    // compare on classes below the cutoff at both basepoints
    auto clip = [&](const novikov& x) {
        novikov y(Bp.mon(), Bp.energy_cutoff());
        for (const auto& [beta, c] : x.terms())
            if (Bx.mon()->energy(beta) < Bx.energy_cutoff() && Bp.mon()->energy(beta) < Bp.energy_cutoff())
                y.add_term(beta, c);
        return y;
    };
    r.via_family = clip(r.via_family);
    r.direct = clip(r.direct);
    r.agree = r.via_family == r.direct;
    return r;
}

std::vector<potential_term> potential_terms(const toric_data& T) {
    std::vector<potential_term> out;
    for (const auto& f : T.facets) {
        potential_term t;
        for (long v : f.normal) t.v.push_back(rational(v));
        t.offset = f.offset;
        out.push_back(t);
    }
    return out;
}

cplx evaluate_terms(const std::vector<potential_term>& terms, const std::vector<double>& x,
                    const std::vector<double>& y, double t) {
    const double L = -std::log(t);
    cplx W = 0;
    for (const auto& term : terms) {
        double vx = 0, vy = 0;
        for (std::size_t j = 0; j < term.v.size(); ++j) {
            vx += term.v[j].get_d() * x.at(j);
            vy += term.v[j].get_d() * y.at(j);
        }
        W += std::exp(-L * term.x_weight.get_d() * (vx - term.offset.get_d())) *
             std::polar(1.0, -term.y_weight.get_d() * vy);
    }
    return W;
}

holomorphic_report holomorphic_check(const std::vector<potential_term>& terms,
                                     const std::vector<std::vector<double>>& xs,
                                     const std::vector<std::vector<double>>& ys, double t, double step) {
    holomorphic_report rep;
    // (d/dX + i d/dy) of each term is (y_weight - x_weight) v_j times the term, X = L x
    rep.symbolic_zero = true;
    for (const auto& term : terms)
        for (const auto& v : term.v)
            if (sgn(v) != 0 && term.x_weight != term.y_weight) rep.symbolic_zero = false;
    const double L = -std::log(t);
    for (std::size_t s = 0; s < xs.size(); ++s) {
        const auto& x = xs[s];
        const auto& y = ys.at(s);
        for (std::size_t j = 0; j < x.size(); ++j) {
            auto xp = x, xm = x, yp = y, ym = y;
            xp[j] += step;
            xm[j] -= step;
            yp[j] += step;
            ym[j] -= step;
            cplx dx = (evaluate_terms(terms, xp, y, t) - evaluate_terms(terms, xm, y, t)) / (2 * step);
            cplx dy = (evaluate_terms(terms, x, yp, t) - evaluate_terms(terms, x, ym, t)) / (2 * step);
            rep.max_fd = std::max(rep.max_fd, std::abs(dx / L + cplx(0, 1) * dy));
        }
    }
    return rep;
}

bool descent_check(const std::vector<potential_term>& terms) {
    for (const auto& term : terms)
        for (const auto& v : term.v) {
            rational phase = term.y_weight * v;
            if (phase.get_den() != 1) return false;
        }
    return true;
}

} // namespace kmirror
