#include <doctest.h>

#include <algorithm>

#include <superlax/error.hpp>
#include <superlax/functional.hpp>
#include <superlax/gd.hpp>

#include "test_support.hpp"

using namespace superlax;
using namespace superlax::testing;

namespace
{

const family_ptr W3 = generator_family::wn(3);
const truncation T6{6};

spdo op(const super_poly &a, int k)
{
    return spdo::term(a, k);
}

bool same_above(const spdo &a, const spdo &b)
{
    return agree_above(a, b, std::max(a.floor(), b.floor()));
}

int sgn(int e)
{
    return (e & 1) ? -1 : 1;
}

} // namespace

TEST_CASE("composition rules on single terms")
{
    const super_poly u1 = u(W3, 1), u2 = u(W3, 2);
    CHECK(compose(spdo::D(), u1) == spdo(u(W3, 1, 1)) - op(u1, 1));
    CHECK(compose(spdo::D(2), u2) == op(u2, 2) + spdo(u(W3, 2, 2)));

    const spdo inv = compose(spdo::D(-1), u1, T6);
    CHECK(inv.coeff(-1) == -u1);
    CHECK(inv.coeff(-2) == u(W3, 1, 1));
    CHECK(inv.coeff(-3) == u(W3, 1, 2));
    CHECK(inv.coeff(-4) == -u(W3, 1, 3));
    CHECK(inv.coeff(-5) == -u(W3, 1, 4));
    CHECK(inv.coeff(-6) == u(W3, 1, 5));
    // D o (D^{-1} o u1) = u1 down to the floor.
    CHECK(agree_above(compose(spdo::D(), inv, T6), spdo(u1), -5));
}

TEST_CASE("adjoint examples")
{
    CHECK(adjoint(spdo::D()) == -spdo::D());
    CHECK(adjoint(spdo::D(-1)) == spdo::D(-1));
    CHECK(adjoint(op(u(W3, 1), 1)) == spdo(u(W3, 1, 1)) - op(u(W3, 1), 1));
}

TEST_CASE("projections and residues")
{
    const spdo A = spdo::D() + spdo(u(W3, 2)) + op(u(W3, 1), -1);
    CHECK(project(A, part_kind::plus) == spdo::D() + spdo(u(W3, 2)));
    CHECK(project(A, part_kind::minus) == op(u(W3, 1), -1));
    CHECK(project(project(A, part_kind::plus), part_kind::minus).is_zero());
    CHECK(project(A, part_kind::plus) + project(A, part_kind::minus) == A);

    CHECK(residue(spdo::D(-1)) == super_poly(1));
    CHECK(residue(compose(spdo::D(-1), u(W3, 1))) == -u(W3, 1));
    CHECK(residue(spdo::D(2)).is_zero());
    CHECK_THROWS_AS(residue(compose(spdo::D(-1), u(W3, 1)).truncated(0)), truncation_error);
}

TEST_CASE("fractional powers")
{
    CHECK(fractional_power(spdo::D(4), 1, 2) == spdo::D(2).truncated(-12));

    const spdo L3 = lax_operator(3);
    const spdo R = fractional_power(L3, 1, 3, T6);
    CHECK(R.order() == 1);
    CHECK(R.coeff(1) == super_poly(1));
    const spdo cube = compose(compose(R, R, T6), R, T6);
    CHECK(agree_above(cube, L3, -4));

    const spdo L4 = lax_operator(4);
    CHECK(agree_above(fractional_power(L4, 2, 2, T6), L4, -6));
    CHECK(fractional_power(L4, 2, 2, T6).coeff(-1).is_zero());
    CHECK_THROWS_AS(fractional_power(L4, 1, 4, T6), no_root_error);

    const spdo L2 = lax_operator(2);
    const spdo Linv = fractional_power(L2, -1, 1, T6);
    CHECK(agree_above(compose(L2, Linv, T6), spdo(1), -4));
}

TEST_CASE("root solves are deterministic")
{
    const spdo L5 = lax_operator(5);
    CHECK(fractional_power(L5, 1, 5, T6) == fractional_power(L5, 1, 5, T6));
    CHECK(monic_root(lax_operator(4), 2, -6) == monic_root(lax_operator(4), 2, -6));
}

TEST_CASE("operator ring laws on random operators")
{
    rng g(21);
    for (int r = 0; r < 40; ++r) {
        const spdo A = random_spdo(g, W3, 3, -2, 3, r % 2);
        const spdo B = random_spdo(g, W3, 3, -2, 3, (r / 2) % 2);
        const spdo C = random_spdo(g, W3, 3, -2, 2, (r / 4) % 2);
        CHECK(same_above(compose(compose(A, B, T6), C, T6), compose(A, compose(B, C, T6), T6)));

        const int s = sgn(A.parity() * B.parity());
        CHECK(same_above(adjoint(compose(A, B, T6), T6), compose(adjoint(B, T6), adjoint(A, T6), T6) * rational(s)));
        CHECK(residue(A) == residue(adjoint(A, T6)));
        CHECK(same_above(adjoint(adjoint(A, T6), T6), A));
        CHECK(functional_is_zero(residue(compose(A, B, T6)) - residue(compose(B, A, T6)) * rational(s)));
    }
}

TEST_CASE("differential operators act as expected")
{
    // (A o B)(f) = A(B(f)) for differential A, B; checks compose against apply_D alone.
    rng g(22);
    for (int r = 0; r < 30; ++r) {
        const spdo A = random_spdo(g, W3, 2, 0, 2, r % 2);
        const spdo B = random_spdo(g, W3, 2, 0, 2, (r / 2) % 2);
        const super_poly f = random_monomial(g, W3, 3, 2, 1);
        CHECK(apply_operator(compose(A, B), f) == apply_operator(A, apply_operator(B, f)));
    }
}
