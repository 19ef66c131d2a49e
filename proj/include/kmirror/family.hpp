#pragma once

#include <string>
#include <vector>

#include "kmirror/ainfty.hpp"
#include "kmirror/series.hpp"
#include "kmirror/toric.hpp"

namespace kmirror {

// Polynomial in base offsets x - u0 with coefficients in A (x) Lambda(dx); coefficients sit left of e_I.
using family_element = ext<form_series>;

form_series::context family_context(const structure& A, int degree);

// Gauss-Manin connection applied to the coefficient of every e_I.
family_element gm(const family_element& f);

// omega = sum -e_i (x) dx_i, stored as dx_i (x) e_i.
family_element omega(const form_series::context& ctx);

struct diffeo_report {
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::vector<std::string> examples;
    bool ok() const { return failures == 0; }
};

// [nabla, m^eps_k] = sum_i (-1)^{i-1} m^eps_{k+1}(id^{i-1}, omega, id^{k-i+1}) on basis tuples of arity <= max_arity
// plus random_cases tuples with polynomial and dx coefficients.
diffeo_report diffeo_check(const structure& A, int max_arity, int degree, int random_cases = 16,
                           unsigned seed = 7);

// Curved structure with m0 - omega and m1 + nabla, epsilon convention.
ainf_ops<form_series> derham_structure(const structure& A_eps, const form_series::context& ctx,
                                       bool drop_omega = false);

// Relation residuals of derham_structure on basis tuples of arity <= max_arity.
relation_report derham_relations(const structure& A, int max_arity, int degree, bool drop_omega = false);

struct propagation {
    family_element theta;
    // sum (-1)^{k(k-1)/2} m^eps_k(theta^k), k <= max_arity
    form_series W;
    bool nabla_theta_is_omega = false;
    bool flat = false;
    bool scalar = false;  // no non-unit components
    int max_arity = 0;
    // t^{l(p)} e^{-i <alpha, v>} per class at t = e^{-1}; alpha enters only here
    std::vector<cplx> weights;

    // W at x = p + offset after symbol evaluation.
    cplx value_at(const std::vector<rational>& offset) const;
};

// theta = sum (x_i - p_i) e_i around p; the holonomy alpha is carried by the symbol weights.
// Arity defaults to degree - 1.
propagation propagate(const toric_data& T, const structure& A, const std::vector<rational>& p,
                      const std::vector<rational>& alpha, int degree, int max_arity = -1);

struct route_report {
    bool agree = false;
    novikov via_family;
    novikov direct;
};

// W from propagate substituted at x' against the weak MC value of theta(x') over the monoid at x'.
route_report two_route_check(const toric_data& T, const structure& A, const std::vector<rational>& p,
                             const std::vector<rational>& alpha, const std::vector<rational>& x_prime, int degree);

// One term exp(-L x_weight (<v,x> - c) - i y_weight <v,y>) of the potential, L = -ln t.
struct potential_term {
    std::vector<rational> v;
    rational offset;
    rational x_weight = 1;
    rational y_weight = 1;
};

std::vector<potential_term> potential_terms(const toric_data& T);
cplx evaluate_terms(const std::vector<potential_term>& terms, const std::vector<double>& x,
                    const std::vector<double>& y, double t);

struct holomorphic_report {
    bool symbolic_zero = false;
    double max_fd = 0;  // |(1/L) d/dx W + i d/dy W| by central differences
};

holomorphic_report holomorphic_check(const std::vector<potential_term>& terms,
                                     const std::vector<std::vector<double>>& xs,
                                     const std::vector<std::vector<double>>& ys, double t, double step = 1e-5);

// W(x, y + 2 pi gamma) = W(x, y) for every lattice generator gamma.
bool descent_check(const std::vector<potential_term>& terms);

} // namespace kmirror
