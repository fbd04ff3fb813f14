#include <doctest.h>

#include <superlax/error.hpp>
#include <superlax/gd.hpp>
#include <superlax/hierarchy.hpp>

#include "test_support.hpp"

using namespace superlax;
using namespace superlax::testing;

namespace
{

int sgn(int e)
{
    return (e & 1) ? -1 : 1;
}

bool is_zero_vector(const std::vector<super_poly> &v)
{
    for (const auto &x : v) {
        if (!x.is_zero()) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("delta / delta L on small inputs")
{
    for (int N = 2; N <= 5; ++N) {
        const family_ptr fam = generator_family::wn(N);
        CHECK(agree_above(var_deriv_L(u(fam, N), N), spdo::D(-1), -12));
        CHECK(var_deriv_L(super_poly(1), N).is_zero());
    }
    // u_1 at N = 2: (-1)^{1} (-1)^{1} D^{-2}.
    CHECK(agree_above(var_deriv_L(u(generator_family::wn(2), 1), 2), spdo::D(-2), -12));
}

TEST_CASE("delta / delta L is purely integral with the expected parity")
{
    rng g(51);
    for (int N = 2; N <= 4; ++N) {
        const family_ptr fam = generator_family::wn(N);
        for (int r = 0; r < 20; ++r) {
            const super_poly a = random_monomial(g, fam, N, 3, 2);
            const spdo d = var_deriv_L(a, N);
            CHECK(project(d, part_kind::plus).is_zero());
            if (!d.is_zero()) {
                CHECK(d.parity() == (a.parity() + N + 1) % 2);
            }
        }
    }
}

TEST_CASE("universal property of delta / delta L")
{
    // int Res(dL delta a/delta L) is the first variation of int a along dL = sum_i h_i D^{N-i}.
    rng g(52);
    for (int N : {2, 3}) {
        const family_ptr ext = with_test_generators(N);
        spdo dL;
        for (int i = 1; i <= N; ++i) {
            dL.add_term(N - i, super_poly::generator(ext, N + i - 1));
        }
        for (int r = 0; r < 20; ++r) {
            const super_poly a = embed(random_poly(g, generator_family::wn(N), N, 2, 3, 2), ext, N);
            const super_poly lhs = residue(compose(dL, var_deriv_L(a, N)));
            CHECK(functional_is_zero(lhs - first_variation(a, ext, N)));
        }
    }
}

TEST_CASE("functional brackets: residue route against the table route")
{
    const std::pair<gd_kind, int> cases[] = {{gd_kind::quadratic, 2},  {gd_kind::quadratic, 3},
                                             {gd_kind::odd_linear, 2}, {gd_kind::odd_linear, 4},
                                             {gd_kind::even_linear, 3}};
    for (const auto &[kind, N] : cases) {
        const bracket_table t = generator_table(kind, N);
        for (int i = 1; i <= N; ++i) {
            for (int j = 1; j <= N; ++j) {
                const super_poly a = u(t.family(), i), b = u(t.family(), j);
                CHECK(bracket_functionals(kind, a, b, N) == reduced_functional_bracket(t, a, b));
            }
        }
    }
    const family_ptr W2 = generator_family::wn(2);
    CHECK(bracket_functionals(gd_kind::quadratic, super_poly(1), u(W2, 2), 2).is_zero());
    CHECK(bracket_functionals(gd_kind::quadratic, u(W2, 2), super_poly(1), 2).is_zero());
}

TEST_CASE("functional brackets of composite densities")
{
    rng g(53);
    const std::pair<gd_kind, int> cases[] = {{gd_kind::quadratic, 2}, {gd_kind::even_linear, 3}};
    for (const auto &[kind, N] : cases) {
        const bracket_table t = generator_table(kind, N);
        for (int r = 0; r < 10; ++r) {
            const super_poly a = random_monomial(g, t.family(), N, 2, 1);
            const super_poly b = random_monomial(g, t.family(), N, 2, 1);
            CHECK(bracket_functionals(kind, a, b, N) == reduced_functional_bracket(t, a, b));
        }
    }
}

TEST_CASE("even linear bracket at N = 3 from its residue formula")
{
    const int N = 3;
    const family_ptr fam = generator_family::wn(N);
    const spdo L = lax_operator(N);
    const super_poly a = u(fam, 2);
    const spdo da = var_deriv_L(a, N);
    const spdo direct = compose(compose(L, da), da) + compose(compose(da, L), da) * rational(sgn(a.parity() + 1));
    const functional res(residue(direct));
    CHECK(bracket_functionals(gd_kind::even_linear, a, a, N) == res);
    CHECK(res == reduced_functional_bracket(generator_table(gd_kind::even_linear, N), a, a));
}

TEST_CASE("quadratic skew-symmetry on functionals")
{
    for (int N : {2, 3}) {
        const bracket_table t = generator_table(gd_kind::quadratic, N);
        for (int i = 1; i <= N; ++i) {
            for (int j = 1; j <= N; ++j) {
                const super_poly a = u(t.family(), i), b = u(t.family(), j);
                const functional ba = bracket_functionals(gd_kind::quadratic, b, a, N);
                CHECK(bracket_functionals(gd_kind::quadratic, a, b, N)
                      == functional(ba.representative() * rational(sgn(a.parity() * b.parity()))));
            }
        }
    }
}

TEST_CASE("generator table parities")
{
    for (gd_kind kind : {gd_kind::quadratic, gd_kind::even_linear}) {
        const int N = 3;
        const int shift = kind == gd_kind::quadratic ? 1 : 0;
        for (int i = 1; i <= N; ++i) {
            for (int j = 1; j <= N; ++j) {
                const chi_op value = generator_bracket(kind, N, i, j);
                for (const auto &[k, c] : value.terms()) {
                    CHECK(k.dpow == 0);
                    CHECK(k.gamma == 0);
                    CHECK((k.chi + c.parity()) % 2 == (i + j + shift) % 2);
                    CHECK((c.is_constant() || c.family()->kind() == family_kind::wn));
                }
            }
        }
    }
    CHECK_THROWS_AS(generator_bracket(gd_kind::even_linear, 2, 1, 1), kind_mismatch);
    CHECK_THROWS_AS(generator_bracket(gd_kind::odd_linear, 3, 1, 1), kind_mismatch);
    CHECK(parse_gd_kind("even_linear") == gd_kind::even_linear);
}

TEST_CASE("Hamiltonian vectors")
{
    CHECK(is_zero_vector(hamiltonian_vector(gd_kind::quadratic, super_poly(1), 3)));

    const truncation shallow{2};
    const super_poly h1 = conserved_density(4, 1, shallow).h.representative();
    CHECK(hamiltonian_vector(gd_kind::quadratic, h1, 4) == flow_rhs(flow_spec::make(4, 1), shallow));
    const super_poly h3 = conserved_density(4, 3, shallow).h.representative();
    CHECK(hamiltonian_vector(gd_kind::odd_linear, h3, 4) == flow_rhs(flow_spec::make(4, 1), shallow));

    const super_poly h5 = conserved_density(3, 5, shallow).h.representative();
    CHECK(hamiltonian_vector(gd_kind::even_linear, h5, 3) == flow_rhs(flow_spec::make(3, 1), shallow));
}

TEST_CASE("Hamiltonian vectors against the generator table")
{
    // X_a(u_i) = {a chi u_i}|_{chi=0}.
    rng g(54);
    const std::pair<gd_kind, int> cases[] = {{gd_kind::quadratic, 2},  {gd_kind::quadratic, 3},
                                             {gd_kind::odd_linear, 2}, {gd_kind::odd_linear, 4},
                                             {gd_kind::even_linear, 3}};
    for (const auto &[kind, N] : cases) {
        const bracket_table t = generator_table(kind, N);
        for (int r = 0; r < 8; ++r) {
            const super_poly a = random_poly(g, t.family(), N, 2, 2, 1);
            const std::vector<super_poly> x = hamiltonian_vector(kind, a, N);
            for (int i = 1; i <= N; ++i) {
                CHECK(x[i - 1] == at_chi_zero(master_eval(t, a, u(t.family(), i))));
            }
        }
    }
}
