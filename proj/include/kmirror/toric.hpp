#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kmirror/ainfty.hpp"

namespace kmirror {

struct facet {
    std::vector<long> normal;
    rational offset;
};

// Facets l_i(x) = <v_i, x> - c_i >= 0 and an interior basepoint.
struct toric_data {
    int n = 0;
    std::vector<facet> facets;
    std::vector<rational> basepoint;

    rational ell(std::size_t i, const std::vector<rational>& x) const;
    bool interior(const std::vector<rational>& x) const;
    // One Maslov-2 class per facet with energy l_i(x).
    monoid_ptr monoid_at(const std::vector<rational>& x) const;
    monoid_ptr base_monoid() const { return monoid_at(basepoint); }
    nlohmann::json to_json() const;
};

toric_data parse_polytope(const nlohmann::json& doc);
toric_data parse_polytope_text(const std::string& text);
toric_data load_polytope(const std::string& path);

toric_data cp1();
toric_data cp2();

structure divisor_core(const toric_data& T, rational energy_cutoff, int arity_cutoff,
                       convention conv = convention::shifted);

struct completion_level {
    monoid_index beta;
    int k = 0;
    std::size_t unknowns = 0;
    std::size_t rows = 0;
    std::size_t nonzero = 0;
    std::size_t free_dims = 0;
};

struct completion_report {
    std::vector<completion_level> levels;
    std::vector<std::string> inconsistent;
    std::size_t underdetermined = 0;
    bool ok() const { return inconsistent.empty(); }
    nlohmann::json to_json() const;
};

// Relation arity that must hold at each class for relations below arity_cutoff to close.
std::vector<int> required_relation_arity(const structure& A, const std::vector<monoid_index>& betas);

// Solves for higher-wedge operators level by level; A must be in the shifted convention.
// Single-class levels are additionally solved up to operator arity min_single_arity.
structure complete(const structure& A, int arity_cutoff, completion_report* report = nullptr,
                   int min_single_arity = 0);

// Coefficient of 1 in sum_k m_k(b^k), b = sum -i y_j e_j, energies re-based to x, T = t.
cplx potential(const toric_data& T, const structure& A, const std::vector<rational>& x,
               const std::vector<rational>& y, double t, int max_arity = 0);
cplx potential_closed(const toric_data& T, const std::vector<double>& x, const std::vector<double>& y, double t);
// In z = -ln(t) x + i y.
cplx potential_z(const toric_data& T, const std::vector<cplx>& z, double t);
std::vector<cplx> potential_z_gradient(const toric_data& T, const std::vector<cplx>& z, double t);
std::string potential_text(const toric_data& T, double t);

struct critical_point {
    std::vector<cplx> z;
    std::vector<double> x;
    std::vector<double> y;
    cplx value;
    double residual = 0;
};

struct critical_report {
    std::vector<critical_point> points;
    std::size_t starts = 0;
    std::size_t failed_starts = 0;
};

critical_report critical_points(const toric_data& T, double t);

} // namespace kmirror
