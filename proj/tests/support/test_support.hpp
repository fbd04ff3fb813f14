#ifndef SUPERLAX_TESTS_TEST_SUPPORT_HPP
#define SUPERLAX_TESTS_TEST_SUPPORT_HPP

#include <random>
#include <vector>

#include <superlax/pva.hpp>
#include <superlax/spdo.hpp>

namespace superlax
{
namespace testing
{

using rng = std::mt19937_64;

super_poly u(const family_ptr &fam, int i, int ord = 0);

// Nonzero monomial c * x_1 ... x_d over the first n_gens generators of fam, d in [0, max_deg].
super_poly random_monomial(rng &g, const family_ptr &fam, int n_gens, int max_deg, int max_ord);
super_poly random_monomial(rng &g, const family_ptr &fam, int n_gens, int max_deg, int max_ord, int parity);
super_poly random_poly(rng &g, const family_ptr &fam, int n_gens, int terms, int max_deg, int max_ord);

// Homogeneous operator sum_{k=lo}^{hi} c_k D^k with monomial (or zero) coefficients in the
// first n_gens generators.
spdo random_spdo(rng &g, const family_ptr &fam, int n_gens, int lo, int hi, int parity);

// sum_k a_k D^k (f) for a differential operator, using only apply_D.
super_poly apply_operator(const spdo &A, const super_poly &f);

// W_N with test generators h_1..h_N appended, p(h_i) = p(u_i).
family_ptr with_test_generators(int N);
// The same element with its u-generators renamed into fam.
super_poly embed(const super_poly &a, const family_ptr &fam, int N);
// Part of a(u + h) linear in h, where h_i is generator N + i - 1 of the embedded family.
super_poly first_variation(const super_poly &a, const family_ptr &fam, int N);

// {a chi b} from the table entries using only the right Leibniz rule, right sesquilinearity
// and skew-symmetry, recursively.
chi_op leibniz_bracket(const bracket_table &table, const super_poly &a, const super_poly &b);

} // namespace testing
} // namespace superlax

#endif
