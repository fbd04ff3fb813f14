#include <doctest.h>

#include <superlax/error.hpp>
#include <superlax/gd.hpp>
#include <superlax/matrixlax.hpp>

#include "test_support.hpp"

using namespace superlax;
using namespace superlax::testing;

namespace
{

const gl_shape G11{1, 1};
const gl_shape G21{2, 1};

matrix_op random_matrix(rng &g, gl_shape s, const family_ptr &fam, int parity, int hi)
{
    matrix_op x(s);
    std::bernoulli_distribution keep(0.4);
    for (int i = 1; i <= s.size(); ++i) {
        for (int j = 1; j <= s.size(); ++j) {
            if (keep(g)) {
                x.at(i, j) = random_spdo(g, fam, fam->rank(), 0, hi, (parity + i + j) % 2);
            }
        }
    }
    return x;
}

} // namespace

TEST_CASE("matrix products follow the sign rule")
{
    const family_ptr W2 = generator_family::wn(2);
    const matrix_op e12 = matrix_op::unit(G11, 1, 2, spdo(1));
    const matrix_op e21 = matrix_op::unit(G11, 2, 1, spdo(1));
    CHECK(mat_compose(e12, e21) == matrix_op::unit(G11, 1, 1, spdo(1)));
    const matrix_op e12u = matrix_op::unit(G11, 1, 2, spdo(u(W2, 1)));
    CHECK(mat_compose(e12u, e21) == -matrix_op::unit(G11, 1, 1, spdo(u(W2, 1))));
    CHECK(mat_compose(e21, e21).is_zero());
    CHECK_THROWS_AS(mat_compose(e12, matrix_op::unit(G21, 1, 1, spdo(1))), shape_mismatch);
}

TEST_CASE("bilinear form values")
{
    const family_ptr W2 = generator_family::wn(2);
    CHECK(mat_bilinear(matrix_op::unit(G11, 1, 2, spdo(u(W2, 1))), matrix_op::unit(G11, 2, 1, spdo(u(W2, 2))))
          == -(u(W2, 1) * u(W2, 2)));
    CHECK(mat_bilinear(matrix_op::unit(G11, 1, 1, spdo(1)), matrix_op::unit(G11, 2, 2, spdo(1))).is_zero());
    CHECK(mat_bilinear(matrix_op::unit(G11, 1, 1, spdo(1)), matrix_op::unit(G11, 1, 1, spdo(1))) == super_poly(1));
    CHECK(mat_bilinear(matrix_op::unit(G11, 2, 2, spdo(1)), matrix_op::unit(G11, 2, 2, spdo(1))) == super_poly(-1));
    CHECK_THROWS(mat_bilinear(matrix_op::unit(G11, 1, 1, spdo::D()), matrix_op::unit(G11, 1, 1, spdo(1))));
}

TEST_CASE("super bracket laws on random matrices")
{
    rng g(61);
    const family_ptr W3 = generator_family::wn(3);
    for (int r = 0; r < 25; ++r) {
        const int px = r % 2, py = (r / 2) % 2, pz = (r / 4) % 2;
        const matrix_op x = random_matrix(g, G21, W3, px, 1);
        const matrix_op y = random_matrix(g, G21, W3, py, 1);
        const matrix_op z = random_matrix(g, G21, W3, pz, 1);
        CHECK(mat_compose(mat_compose(x, y), z) == mat_compose(x, mat_compose(y, z)));
        const rational s((px * py) % 2 ? -1 : 1);
        CHECK(mat_bracket(x, y) == -(mat_bracket(y, x) * s));
        // [x, [y, z]] = [[x, y], z] + (-1)^{p(x)p(y)} [y, [x, z]]
        CHECK(mat_bracket(x, mat_bracket(y, z))
              == mat_bracket(mat_bracket(x, y), z) + mat_bracket(y, mat_bracket(x, z)) * s);
        if (px == 0) {
            CHECK(mat_bracket(x, x).is_zero());
        }
    }
}

TEST_CASE("canonical matrix operator")
{
    const family_ptr W2 = generator_family::wn(2);
    const matrix_op L2 = build_Lcan(W2);
    CHECK(L2.at(1, 1) == spdo::D());
    CHECK(L2.at(1, 2) == spdo(u(W2, 2)));
    CHECK(L2.at(2, 1) == spdo(-1));
    CHECK(L2.at(2, 2) == spdo::D() - spdo(u(W2, 1)));

    const std::vector<spdo> b2 = b_operators(lax_operator(2), 2);
    CHECK(b2[1] == -spdo::D() + spdo(u(W2, 1)));
    for (int N = 2; N <= 5; ++N) {
        const spdo L = lax_operator(N);
        CHECK(b_operators(L, N)[N] == adjoint(L));
        CHECK(b_operators(L, N)[0] == spdo((N * (N + 1) / 2) % 2 ? -1 : 1));
        CHECK(build_Lcan(generator_family::wn(N)) == build_Lcan_from_b(generator_family::wn(N)));
    }
}

TEST_CASE("companion matrix corner entries")
{
    const int N = 3;
    const family_ptr W3 = generator_family::wn(N);
    const truncation t{8};
    const std::vector<spdo> b = b_operators(lax_operator(N), N);
    for (const super_poly &a : {u(W3, 1), u(W3, 2), u(W3, 1) * u(W3, 2)}) {
        const spdo da_star = adjoint(var_deriv_L(a, N, t), t);
        const matrix_op nabla = build_nabla(a, W3, t);
        CHECK(agree_above(nabla.at(1, 1), compose(b[N - 1], da_star, t), -6));
        CHECK(agree_above(nabla.at(2, 1), -compose(b[N - 2], da_star, t), -6));
    }
    CHECK(build_nabla(super_poly(1), W3, t).is_zero());
}

TEST_CASE("matrix identity for generator pairs")
{
    for (int N : {2, 3}) {
        const family_ptr fam = generator_family::wn(N);
        for (int i = 1; i <= N; ++i) {
            for (int j = 1; j <= N; ++j) {
                const matrix_identity_report rep = verify_matrix_identity(N, u(fam, i), u(fam, j));
                CHECK(rep.ok());
                CHECK(rep.left_support);
                CHECK(rep.right_support);
            }
        }
        CHECK(verify_matrix_identity(N, super_poly(1), u(fam, 1)).ok());
    }
}

TEST_CASE("matrix identity on random densities")
{
    rng g(62);
    const family_ptr W2 = generator_family::wn(2);
    for (int r = 0; r < 6; ++r) {
        const super_poly a = random_monomial(g, W2, 2, 2, 1);
        const super_poly b = random_monomial(g, W2, 2, 2, 1);
        CHECK(verify_matrix_identity(2, a, b).ok());
    }
}

TEST_CASE("even matrix identity at odd rank")
{
    const family_ptr W3 = generator_family::wn(3);
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            CHECK(verify_even_matrix_identity(3, u(W3, i), u(W3, j)));
        }
    }
}
