#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "kmirror/ainfty.hpp"
#include "kmirror/series.hpp"
#include "kmirror/toric.hpp"

namespace kmirror {

using ext_series = ext<form_series>;

// Formal chart around z0 = p + i alpha with s = x - p, r = y - alpha; variables s_1..s_n, r_1..r_n.
// The holomorphic coordinate is z = x + i y, i.e. T = e^{-1}.
struct brane_chart {
    const toric_data* T = nullptr;
    std::vector<rational> p;
    std::vector<rational> alpha;
    int degree = 10;

    form_series::context chart_context(const monoid_ptr& m, const rational& cutoff, int ndx = 0) const;
    form_series::context w_context(const monoid_ptr& m, const rational& cutoff) const;
    // t^{l_beta(p)} e^{-i <alpha, v_beta>} per class at t = e^{-1}.
    std::vector<cplx> weights() const;
};

struct tau_theta {
    ext_series tau;    // sum -i r_j e_j
    ext_series theta;  // sum s_j e_j
    ext_series zeta;   // theta - tau = sum (s_j + i r_j) e_j
};

tau_theta build_tau_theta(const brane_chart& c, const form_series::context& ctx);

struct mf_operator {
    int n = 0;
    int degree = 0;
    form_series::context ctx;  // variables w_1..w_n
    // q[J][I] is the e_J coefficient of Q(e_I)
    std::vector<std::vector<form_series>> q;
    novikov lambda;
    form_series potential;  // W(z0 + w) in symbols
    std::vector<cplx> weights;
    // (d/ds + i d/dr) of the chart operator vanished below the truncation edge
    bool holomorphic = false;

    nlohmann::json to_json() const;
};

// Operator on ext_series from the structure's multilinear maps, linear over even series.
ext_series apply_series(const structure& A, const std::vector<ext_series>& in, const form_series::context& ctx);

// A in the shifted convention, over the monoid at p; arity cutoff must reach degree.
mf_operator mf_from_brane(const structure& A, const brane_chart& c);

struct mf_residual {
    bool exact_zero = false;
    double max_abs = 0;  // after symbol evaluation
    std::vector<std::vector<form_series>> residual;
};

// Q^2 - (lambda - W) id below degree D - 1.
mf_residual mf_verify(const mf_operator& Q);

// Complex coefficients of an entry after symbol evaluation, keyed by exponent.
std::map<std::vector<int>, cplx> evaluate_entry(const mf_operator& Q, int row, int col);

// Phi(a_1..a_k)(x) = sum m(tau^l, x, theta^{i0}, a_1, theta^{i1}, ..., a_k, theta^{ik}), renormalized to w.
// Returns the matrix [J][I] of x = e_I -> e_J component.
std::vector<std::vector<form_series>> phi_tau(const structure& A, const brane_chart& c,
                                             const std::vector<ext<cq>>& a);

struct chain_map_report {
    bool exact_zero = false;
    std::size_t checked = 0;
    std::vector<std::string> failures;
};

// Q Phi(a) + Phi(a) Q + (-1)^{|x|-1} Phi(d a) on each basis x, before renormalization.
chain_map_report phi_chain_map_check(const structure& A, const brane_chart& c, const ext<cq>& a);

struct mc_certificate {
    bool exact_zero = false;
    double max_abs = 0;
    ext_series residual;
};

// sum_k (-1)^{k(k-1)/2} M^eps_k(tau^k) on B (x) A with B the chart forms, curvature -W and -omega.
mc_certificate mc_certificate_check(const structure& A, const brane_chart& c);

struct strand_rank {
    int strand = 0;  // polynomial degree minus wedge degree
    bool resolved = true;
    std::vector<int> dims;
    std::vector<int> ranks;  // cohomology per wedge degree
};

struct koszul_report {
    int n = 0;
    int degree = 0;
    bool degenerate = false;
    std::vector<strand_rank> strands;
    // rank 1 at top wedge degree in the lowest strand and zero in every other resolved strand
    bool concentrated() const;
    nlohmann::json to_json() const;
};

// Koszul differential zeta ^ . with zeta_j = sum_k L[j][k] w_k on polynomials of degree < D.
koszul_report koszul_cohomology(int n, int degree, const std::vector<std::vector<rational>>& L = {});

} // namespace kmirror
