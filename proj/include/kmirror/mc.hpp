#pragma once

#include <vector>

#include "kmirror/ainfty.hpp"

namespace kmirror {

using ext_nov = ext<novikov>;
// rows x cols, entries in A
using ext_matrix = std::vector<std::vector<ext_nov>>;

struct weak_mc_result {
    bool is_weak = false;
    novikov lambda;
    ext_nov residual;
    // terms at the arity limit were still nonzero
    bool truncated = false;
    int max_arity = 0;
};

// sum_k (-1)^{k(k-1)/2} m^eps_k(b^k), equivalently sum_k m_k(b^k) in the shifted convention.
weak_mc_result weak_mc_check(const structure& A, const ext_nov& b, int max_arity = -1);

struct twisted_complex {
    ext_matrix b;
    novikov lambda;
    bool truncated = false;
    int rank() const { return static_cast<int>(b.size()); }
};

ext_matrix zero_matrix(const structure& A, int rows, int cols);
ext_matrix scalar_matrix(const structure& A, int rank, const ext_nov& x);

// Matrix-extended m_k: entries composed along index paths.
ext_matrix matrix_apply(const structure& A, const std::vector<ext_matrix>& in);

twisted_complex make_twisted(const structure& A, ext_matrix b, int max_arity = -1);
twisted_complex rank_one(const structure& A, const ext_nov& b, int max_arity = -1);

// a in Hom(src, dst) is src.rank x dst.rank; d(a) = sum_{k,l} m_{k+l+1}(b^k, a, delta^l).
ext_matrix hom_differential(const structure& A, const twisted_complex& src, const twisted_complex& dst,
                            const ext_matrix& a, int max_arity = -1);

struct square_report {
    ext_matrix d2;
    // d^2 - (F(dst) - F(src)) a
    ext_matrix residual;
    bool holds = false;
};

square_report hom_square(const structure& A, const twisted_complex& src, const twisted_complex& dst,
                         const ext_matrix& a, int max_arity = -1);

// rho_k(a_1..a_k; x) = sum_i m_{i+k+1}(a_1..a_k, x, b^i), shifted convention.
class mc_module {
public:
    mc_module(const structure& A, ext_nov b, novikov lambda, int max_arity = -1);

    ext_nov rho(const std::vector<ext_nov>& a, const ext_nov& x) const;
    // Left side of the module axiom minus lambda x at N = 0.
    ext_nov axiom_residual(const std::vector<ext_nov>& a, const ext_nov& x) const;

    const novikov& lambda() const { return lambda_; }

private:
    const structure& A_;
    ext_nov b_;
    novikov lambda_;
    int max_arity_;
};

mc_module module_from_mc(const structure& A, const ext_nov& b, int max_arity = -1);

struct hf_result {
    int rank = 0;
    bool curvature_match = false;
    std::vector<double> singular_values;
};

// Cohomology rank of the twisted differential evaluated at T = t (symbols weighted per class).
hf_result hf_rank(const structure& A, const twisted_complex& src, const twisted_complex& dst, double t,
                  int max_arity = -1, double tol = 1e-9);

} // namespace kmirror
