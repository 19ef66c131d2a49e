#include "kmirror/mc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

namespace kmirror {

namespace {

int limit(const structure& A, int max_arity) {
    if (max_arity < 0) return A.arity_cutoff();
    if (max_arity > A.arity_cutoff())
        throw cutoff_error("arity " + std::to_string(max_arity) + " exceeds cutoff " +
                           std::to_string(A.arity_cutoff()));
    return max_arity;
}

std::array<ext_nov, 2> by_parity(const ext_nov& x) {
    std::array<ext_nov, 2> r{ext_nov(x.dim()), ext_nov(x.dim())};
    for (const auto& [I, c] : x.components()) r[wdeg(I) & 1].add(I, c);
    return r;
}

bool matrix_zero(const ext_matrix& M) {
    for (const auto& row : M)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

ext_matrix matrix_add(ext_matrix a, const ext_matrix& b, int sign = 1) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            if (sign > 0)
                a[i][j] += b[i][j];
            else
                a[i][j] -= b[i][j];
        }
    return a;
}

ext_matrix matrix_scaled(const ext_matrix& a, const novikov& s) {
    ext_matrix r = a;
    for (auto& row : r)
        for (auto& x : row) x = x.map_coefficients([&](const novikov& c) { return c * s; });
    return r;
}

} // namespace

weak_mc_result weak_mc_check(const structure& A, const ext_nov& b, int max_arity) {
    const int K = limit(A, max_arity);
    for (const auto& [I, c] : b.components())
        if (wdeg(I) % 2 == 0) throw input_error("Maurer-Cartan element must be odd");
    weak_mc_result r;
    r.max_arity = K;
    ext_nov sum(A.dim());
    std::vector<ext_nov> in;
    for (int k = 0; k <= K; ++k) {
        ext_nov v = kmirror::apply(A, in);
        if (A.conv() == convention::epsilon && (k * (k - 1) / 2) % 2) v = -v;
        sum += v;
        if (k == K && !v.is_zero() && k > 0) r.truncated = true;
        in.push_back(b);
    }
    const novikov* u = sum.find(0);
    r.lambda = u ? *u : novikov(A.mon(), A.energy_cutoff());
    r.residual = sum;
    if (u) r.residual.add(0, -*u);
    r.is_weak = r.residual.is_zero();
    return r;
}

ext_matrix zero_matrix(const structure& A, int rows, int cols) {
    return ext_matrix(rows, std::vector<ext_nov>(cols, ext_nov(A.dim())));
}

ext_matrix scalar_matrix(const structure& A, int rank, const ext_nov& x) {
    ext_matrix M = zero_matrix(A, rank, rank);
    for (int i = 0; i < rank; ++i) M[i][i] = x;
    return M;
}

ext_matrix matrix_apply(const structure& A, const std::vector<ext_matrix>& in) {
    if (in.empty()) throw error("matrix_apply needs at least one input");
    const std::size_t rows = in.front().size();
    const std::size_t cols = in.back().empty() ? 0 : in.back().front().size();
    for (std::size_t s = 0; s + 1 < in.size(); ++s) {
        std::size_t c = in[s].empty() ? 0 : in[s].front().size();
        if (c != in[s + 1].size()) throw error("matrix shapes do not compose");
    }
    ext_matrix out = zero_matrix(A, static_cast<int>(rows), static_cast<int>(cols));
    const std::size_t k = in.size();
    std::vector<ext_nov> slot(k);
    // depth-first over index paths p_0 -> p_1 -> ... -> p_k
    std::vector<std::size_t> path(k + 1, 0);
    std::function<void(std::size_t)> walk = [&](std::size_t s) {
        if (s == k) {
            out[path[0]][path[k]] += kmirror::apply(A, slot);
            return;
        }
        const auto& row = in[s][path[s]];
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j].is_zero()) continue;
            slot[s] = row[j];
            path[s + 1] = j;
            walk(s + 1);
        }
    };
    for (std::size_t i = 0; i < rows; ++i) {
        path[0] = i;
        walk(0);
    }
    return out;
}

twisted_complex make_twisted(const structure& A, ext_matrix b, int max_arity) {
    const int K = limit(A, max_arity);
    const int r = static_cast<int>(b.size());
    if (r == 0) throw input_error("twisted complex needs positive rank");
    for (const auto& row : b) {
        if (static_cast<int>(row.size()) != r) throw input_error("twisted complex matrix must be square");
        for (const auto& x : row)
            for (const auto& [I, c] : x.components())
                if (wdeg(I) % 2 == 0) throw input_error("twisted complex entries must be odd");
    }
    twisted_complex tc;
    tc.b = std::move(b);
    ext_matrix total = zero_matrix(A, r, r);
    ext_nov m0 = kmirror::apply(A, std::vector<ext_nov>{});
    for (int i = 0; i < r; ++i) total[i][i] += m0;
    std::vector<ext_matrix> in;
    for (int k = 1; k <= K; ++k) {
        in.push_back(tc.b);
        ext_matrix v = matrix_apply(A, in);
        if (A.conv() == convention::epsilon && (k * (k - 1) / 2) % 2) v = matrix_scaled(v, novikov::constant(A.ctx(), cq(-1)));
        if (k == K && !matrix_zero(v)) tc.truncated = true;
        total = matrix_add(total, v);
    }
    const novikov* l = total[0][0].find(0);
    tc.lambda = l ? *l : novikov(A.mon(), A.energy_cutoff());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            ext_nov e = total[i][j];
            if (i == j) e.add(0, -tc.lambda);
            if (!e.is_zero()) throw input_error("matrix is not a weak Maurer-Cartan element");
        }
    return tc;
}

twisted_complex rank_one(const structure& A, const ext_nov& b, int max_arity) {
    return make_twisted(A, ext_matrix{{b}}, max_arity);
}

ext_matrix hom_differential(const structure& A, const twisted_complex& src, const twisted_complex& dst,
                            const ext_matrix& a, int max_arity) {
    const int K = limit(A, max_arity);
    if (static_cast<int>(a.size()) != src.rank()) throw input_error("morphism row count must match source rank");
    ext_matrix out = zero_matrix(A, src.rank(), dst.rank());
    for (int k = 0; k + 1 <= K; ++k)
        for (int l = 0; k + l + 1 <= K; ++l) {
            std::vector<ext_matrix> in(k, src.b);
            in.push_back(a);
            in.insert(in.end(), l, dst.b);
            out = matrix_add(out, matrix_apply(A, in));
        }
    return out;
}

square_report hom_square(const structure& A, const twisted_complex& src, const twisted_complex& dst,
                         const ext_matrix& a, int max_arity) {
    if (A.conv() != convention::shifted) throw error("hom_square uses the shifted convention");
    square_report r;
    r.d2 = hom_differential(A, src, dst, hom_differential(A, src, dst, a, max_arity), max_arity);
    r.residual = matrix_add(r.d2, matrix_scaled(a, dst.lambda - src.lambda), -1);
    r.holds = matrix_zero(r.residual);
    return r;
}

mc_module::mc_module(const structure& A, ext_nov b, novikov lambda, int max_arity)
    : A_(A), b_(std::move(b)), lambda_(std::move(lambda)), max_arity_(limit(A, max_arity)) {
    if (A.conv() != convention::shifted) throw error("mc_module uses the shifted convention");
}

ext_nov mc_module::rho(const std::vector<ext_nov>& a, const ext_nov& x) const {
    ext_nov out(A_.dim());
    std::vector<ext_nov> in = a;
    in.push_back(x);
    while (static_cast<int>(in.size()) <= max_arity_) {
        out += kmirror::apply(A_, in);
        in.push_back(b_);
    }
    return out;
}

ext_nov mc_module::axiom_residual(const std::vector<ext_nov>& a, const ext_nov& x) const {
    const int N = static_cast<int>(a.size());
    ext_nov out(A_.dim());
    std::vector<std::array<ext_nov, 2>> par;
    for (const auto& y : a) par.push_back(by_parity(y));
    for (long mask = 0; mask < (1L << N); ++mask) {
        std::vector<ext_nov> w(N);
        std::vector<int> P(N);
        bool empty = false;
        for (int i = 0; i < N; ++i) {
            P[i] = (mask >> i) & 1;
            w[i] = par[i][P[i]];
            if (w[i].is_zero()) empty = true;
        }
        if (empty) continue;
        auto sign_before = [&](int r) {
            int s = 0;
            for (int i = 0; i < r; ++i) s += P[i] - 1;
            return (s & 1) ? -1 : 1;
        };
        for (int j = 0; j <= N; ++j) {
            std::vector<ext_nov> head(w.begin(), w.begin() + j), tail(w.begin() + j, w.end());
            ext_nov v = rho(head, rho(tail, x));
            out += sign_before(j) > 0 ? v : -v;
        }
        for (int p = 0; p <= N; ++p)
            for (int q = 0; p + q <= N; ++q) {
                std::vector<ext_nov> inner(w.begin() + p, w.begin() + p + q);
                if (static_cast<int>(inner.size()) > max_arity_) continue;
                ext_nov m = kmirror::apply(A_, inner);
                if (m.is_zero()) continue;
                std::vector<ext_nov> outer(w.begin(), w.begin() + p);
                outer.push_back(m);
                outer.insert(outer.end(), w.begin() + p + q, w.end());
                if (static_cast<int>(outer.size()) + 1 > max_arity_) continue;
                ext_nov v = rho(outer, x);
                out += sign_before(p) > 0 ? v : -v;
            }
    }
    if (N == 0) out -= x.map_coefficients([&](const novikov& c) { return c * lambda_; });
    return out;
}

mc_module module_from_mc(const structure& A, const ext_nov& b, int max_arity) {
    weak_mc_result w = weak_mc_check(A, b, max_arity);
    if (!w.is_weak) throw input_error("element is not weak Maurer-Cartan");
    return mc_module(A, b, w.lambda, max_arity);
}

hf_result hf_rank(const structure& A, const twisted_complex& src, const twisted_complex& dst, double t,
                  int max_arity, double tol) {
    hf_result r;
    cplx gap = (src.lambda - dst.lambda).evaluate(t);
    r.curvature_match = std::abs(gap) <= tol;
    if (!r.curvature_match) return r;
    const int n = A.dim();
    const int nb = 1 << n;
    const int rs = src.rank(), rd = dst.rank();
    const int N = rs * rd * nb;
    auto idx = [&](int i, int j, int I) { return (i * rd + j) * nb + I; };
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < rs; ++i)
        for (int j = 0; j < rd; ++j)
            for (int I = 0; I < nb; ++I) {
                ext_matrix a = zero_matrix(A, rs, rd);
                a[i][j] = basis_element(A, static_cast<wedge_index>(I));
                ext_matrix d = hom_differential(A, src, dst, a, max_arity);
                for (int p = 0; p < rs; ++p)
                    for (int q = 0; q < rd; ++q)
                        for (const auto& [J, c] : d[p][q].components()) D(idx(p, q, J), idx(i, j, I)) += c.evaluate(t);
            }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(D);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < s.size(); ++i) {
        r.singular_values.push_back(s(i));
        if (s(i) > tol) ++rank;
    }
    r.rank = N - 2 * rank;
    return r;
}

} // namespace kmirror
