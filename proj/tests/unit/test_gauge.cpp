#include <doctest.h>

#include <superlax/gauge.hpp>
#include <superlax/gd.hpp>

#include "test_support.hpp"

using namespace superlax;
using namespace superlax::testing;

namespace
{

super_poly ebar(const family_ptr &fam, int i, int j)
{
    return super_poly::generator(fam, fam->affine_id(i, j));
}

} // namespace

TEST_CASE("affine brackets on gl(1|1)")
{
    const family_ptr fam = affine_family(2);
    CHECK(affine_bracket(fam, 1, 1, 1, 1) == chi_op::chi());
    CHECK(affine_bracket(fam, 1, 1, 2, 2).is_zero());
    // (-1)^{1+2} ([e12, e21] + chi (e12 | e21)) with [e12, e21] = e11 + e22.
    CHECK(affine_bracket(fam, 1, 2, 2, 1) == -(chi_op(ebar(fam, 1, 1) + ebar(fam, 2, 2)) + chi_op::chi()));
    CHECK(affine_bracket(fam, 2, 2, 2, 2) == -chi_op::chi());
}

TEST_CASE("affine tables satisfy the axioms")
{
    for (int N : {2, 3}) {
        CHECK(check_axioms(affine_table(N)).ok());
    }
    CHECK(check_axioms(affine_even_table(3)).ok());
}

TEST_CASE("gauge transformations")
{
    const int N = 3;
    const matrix_op Lu = universal_lax(N);
    const family_ptr fam = affine_family(N);
    const gl_shape s = Lu.shape();
    CHECK(gauge_transform(Lu, matrix_op(s)) == Lu);

    matrix_op n = matrix_op::unit(s, 1, 3, spdo(ebar(fam, 2, 1)));
    n += matrix_op::unit(s, 1, 2, spdo(ebar(fam, 1, 1)));
    n += matrix_op::unit(s, 2, 3, spdo(ebar(fam, 3, 3) * ebar(fam, 2, 1)));
    CHECK(n.parity() == 0);
    const matrix_op moved = gauge_transform(Lu, n);
    CHECK_FALSE(moved == Lu);
    CHECK(gauge_transform(moved, -n) == Lu);

    CHECK_THROWS(gauge_transform(Lu, matrix_op::unit(s, 2, 1, spdo(ebar(fam, 2, 1)))));
}

TEST_CASE("gauge by a single odd-odd term on gl(1|1)")
{
    // exp(ad n) L = L + [n, L] + [n, [n, L]] / 2; here [n, [n, L]] = 0 since n^2 = 0.
    const matrix_op Lu = universal_lax(2);
    const family_ptr fam = affine_family(2);
    const matrix_op n = matrix_op::unit(Lu.shape(), 1, 2, spdo(ebar(fam, 1, 1)));
    CHECK(gauge_transform(Lu, n) == Lu + mat_bracket(n, Lu));
}

TEST_CASE("canonical form")
{
    for (int N : {2, 3}) {
        const matrix_op Lu = universal_lax(N);
        const canonical_result c = canonical_form(Lu);
        CHECK(c.w.size() == static_cast<std::size_t>(N));
        CHECK(gauge_transform(Lu, c.n_c) == c.lax_c);
        for (const super_poly &w : c.w) {
            CHECK(rho_check_invariance(w, affine_family(N)));
        }

        const canonical_result again = canonical_form(c.lax_c);
        CHECK(again.n_c.is_zero());
        CHECK(again.w == c.w);
    }
}

TEST_CASE("canonical form is gauge invariant")
{
    const int N = 3;
    const matrix_op Lu = universal_lax(N);
    const family_ptr fam = affine_family(N);
    matrix_op n = matrix_op::unit(Lu.shape(), 1, 3, spdo(ebar(fam, 3, 2) * rational(2)));
    n += matrix_op::unit(Lu.shape(), 2, 3, spdo(ebar(fam, 1, 1)));
    CHECK(canonical_form(gauge_transform(Lu, n)).w == canonical_form(Lu).w);
}

TEST_CASE("rho-invariance")
{
    const family_ptr fam = affine_family(2);
    CHECK(rho_check_invariance(super_poly(3), fam));
    CHECK_FALSE(rho_check_invariance(ebar(fam, 1, 1), fam));
    CHECK(rho(ebar(fam, 1, 2)) == super_poly(1));
    CHECK(rho(ebar(fam, 2, 1)) == ebar(fam, 2, 1));
}

TEST_CASE("reduction to the Gelfand-Dickey bracket")
{
    const family_ptr W2 = generator_family::wn(2);
    const gauge_report r2 = verify_gauge_reduction(2, {u(W2, 1) * u(W2, 2), u(W2, 2) * u(W2, 2, 1)});
    CHECK(r2.canonical_ok);
    CHECK(r2.invariance_ok);
    CHECK(r2.bracket_ok);
    CHECK(r2.realization_ok);
    CHECK(r2.functional_ok);
    CHECK(verify_gauge_reduction(3).ok());
}
