#ifndef SUPERLAX_GD_HPP
#define SUPERLAX_GD_HPP

#include <vector>

#include <superlax/pva.hpp>

namespace superlax
{

// quadratic: odd bracket on W_N; odd_linear: its L -> L + eps deformation (N even);
// even_linear: the even bracket on W_N for N odd.
enum class gd_kind { quadratic, odd_linear, even_linear };

std::string to_string(gd_kind k);
gd_kind parse_gd_kind(const std::string &s);
bracket_kind bracket_kind_of(gd_kind k);
// Throws kind_mismatch when the kind is undefined at rank N.
void check_gd_kind(gd_kind k, int N);

// L = D^N + u_1 D^{N-1} + ... + u_N over the family fam (W_N, possibly with extra generators).
spdo lax_operator(const family_ptr &fam);
spdo lax_operator(int N);

// delta a / delta L = (-1)^{p(a)} sum_k (-1)^k D^{k-N-1} (delta a / delta u_k), of parity p(a) + N + 1.
spdo var_deriv_L(const super_poly &a, int N, truncation t = default_truncation());

// The functional bracket of int a and int b, from the residue formulas.
functional bracket_functionals(gd_kind kind, const super_poly &a, const super_poly &b, int N);

// {u_i chi u_j} (1-based i, j) read off the (chi + D)-substituted operator expressions.
chi_op generator_bracket(gd_kind kind, int N, int i, int j);
bracket_table generator_table(gd_kind kind, int N);

// Components (X_a(u_1), ..., X_a(u_N)) of the Hamiltonian derivation {int a chi L}|_{chi=0}.
std::vector<super_poly> hamiltonian_vector(gd_kind kind, const super_poly &a, int N);

} // namespace superlax

#endif
