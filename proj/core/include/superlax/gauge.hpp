#ifndef SUPERLAX_GAUGE_HPP
#define SUPERLAX_GAUGE_HPP

#include <string>
#include <vector>

#include <superlax/matrixlax.hpp>
#include <superlax/pva.hpp>

namespace superlax
{

// Generators ebar_ij of V(gl(m|n)bar) with m + n = N, m - n in {0, 1}.
family_ptr affine_family(int N);

// {ebar_ij chi ebar_kl} = (-1)^{i+j} ([e_ij, e_kl]bar + chi (e_ij | e_kl)), indices 1-based.
chi_op affine_bracket(const family_ptr &fam, int i, int j, int k, int l);
bracket_table affine_table(int N);
// N odd: {ebar_1i chi ebar_iN} = (-1)^{i+1}, the mirrored brackets by skew-symmetry, all others 0.
bracket_table affine_even_table(int N);

// L^u = D + sum_{k<=l} e_kl (x) (-1)^{k+1} ebar_lk - f (x) 1 with f = sum_i e_{i+1,i}.
matrix_op universal_lax(int N);

// exp(ad n) applied to lax; n must be even and strictly upper triangular.
matrix_op gauge_transform(const matrix_op &lax, const matrix_op &n);

struct canonical_result {
    matrix_op n_c;              // exp(ad n_c) lax = lax_c
    matrix_op lax_c;            // D - f + (last column)
    std::vector<super_poly> w;  // w[k - 1] = entry (N + 1 - k, N) of lax_c - D + f
};

// Gauges D - f + Q, Q upper triangular, into the form with Q supported on the last column.
canonical_result canonical_form(const matrix_op &lax);

// D^m ebar_g -> D^m ebar_g for g lower triangular, ebar_{k,k+1} -> (-1)^{k+1}, other ebar_g -> 0.
super_poly rho(const super_poly &a);
chi_op rho(const chi_op &value);
// rho({ebar_v chi w}) == 0 for every strictly upper triangular e_v.
bool rho_check_invariance(const super_poly &w, const family_ptr &fam);

// phi(u_i) = (-1)^i w_i, as substitution images indexed by u-generator id.
std::vector<super_poly> phi_images(const canonical_result &c);
super_poly phi(const super_poly &a, const std::vector<super_poly> &images);
chi_op phi(const chi_op &value, const std::vector<super_poly> &images);

// delta a / delta q = sum_{l >= k} e_lk (x) delta a / delta ebar_lk.
matrix_op var_deriv_q(const super_poly &a, const family_ptr &fam);
// int (delta a/delta q | [L^u, delta b/delta q]).
functional universal_bracket(const super_poly &a, const super_poly &b, const family_ptr &fam);

struct gauge_report {
    int N = 0;
    std::vector<super_poly> w;
    bool canonical_ok = true;     // exp(ad n_c) L^u reproduces lax_c
    bool invariance_ok = true;    // every w_i passes the rho test
    bool bracket_ok = true;       // rho{phi u_i chi phi u_j} = -phi{u_i chi u_j}^q
    bool realization_ok = true;   // int rho{phi a chi phi b}|_{chi=0} = -universal_bracket
    bool functional_ok = true;    // universal_bracket vs. the quadratic GD functional bracket
    std::vector<std::string> details;

    bool ok() const noexcept { return canonical_ok && invariance_ok && bracket_ok && functional_ok && realization_ok; }
};

// Runs the reduction checks at rank N; extra_densities are W_N elements added to the generators
// for the functional comparison.
gauge_report verify_gauge_reduction(int N, const std::vector<super_poly> &extra_densities = {});

} // namespace superlax

#endif
