#include <superlax/error.hpp>
#include <superlax/gauge.hpp>
#include <superlax/gd.hpp>

namespace superlax
{

namespace
{

rational sgn(int e)
{
    return rational((e & 1) ? -1 : 1);
}

int delta(int a, int b)
{
    return a == b ? 1 : 0;
}

super_poly ebar(const family_ptr &fam, int i, int j, int ord = 0)
{
    return super_poly::generator(fam, fam->affine_id(i, j), ord);
}

void require_affine(const family_ptr &fam)
{
    if (!fam || fam->kind() != family_kind::affine_gl) {
        throw family_mismatch("expected an affine gl(m|n) family");
    }
}

matrix_op identity(gl_shape shape)
{
    matrix_op r(shape);
    for (int i = 1; i <= shape.size(); ++i) {
        r.at(i, i) = spdo(1);
    }
    return r;
}

matrix_op odd_f(gl_shape shape)
{
    matrix_op r(shape);
    for (int i = 1; i < shape.size(); ++i) {
        r.at(i + 1, i) = spdo(1);
    }
    return r;
}

// exp of a nilpotent even matrix in the associative algebra.
matrix_op mat_exp(const matrix_op &m)
{
    matrix_op r = identity(m.shape());
    matrix_op term = r;
    for (int k = 1; k <= 2 * m.size(); ++k) {
        term = mat_compose(term, m) * make_rational(1, k);
        if (term.is_zero()) {
            break;
        }
        r += term;
    }
    return r;
}

matrix_op mat_log_unipotent(const matrix_op &g)
{
    const matrix_op x = g - identity(g.shape());
    matrix_op r(g.shape());
    matrix_op term = x;
    for (int k = 1; k <= 2 * g.size() && !term.is_zero(); ++k) {
        r += term * (sgn(k + 1) * make_rational(1, k));
        term = mat_compose(term, x);
    }
    return r;
}

bool strictly_upper(const matrix_op &n)
{
    for (int i = 1; i <= n.size(); ++i) {
        for (int j = 1; j <= i; ++j) {
            if (!n.at(i, j).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

std::vector<super_poly> rho_images(const family_ptr &fam)
{
    const int N = fam->rank();
    std::vector<super_poly> img(static_cast<std::size_t>(fam->size()));
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            auto &x = img[static_cast<std::size_t>(fam->affine_id(i, j))];
            if (i >= j) {
                x = ebar(fam, i, j);
            } else if (j == i + 1) {
                x = super_poly(sgn(i + 1));
            } else {
                x = super_poly(0);
            }
        }
    }
    return img;
}

chi_op map_coefficients(const chi_op &value, const std::vector<super_poly> &images)
{
    chi_op r;
    for (const auto &[key, c] : value.terms()) {
        r.add_term(key, substitute(c, images));
    }
    return r;
}

} // namespace

family_ptr affine_family(int N)
{
    const gl_shape s = gl_shape::for_rank(N);
    return generator_family::affine_gl(s.m, s.n);
}

chi_op affine_bracket(const family_ptr &fam, int i, int j, int k, int l)
{
    require_affine(fam);
    super_poly lie;
    if (j == k) {
        lie += ebar(fam, i, l);
    }
    if (l == i) {
        lie -= ebar(fam, k, j) * sgn((i + j) * (k + l));
    }
    chi_op r(lie * sgn(i + j));
    if (delta(i, l) && delta(j, k)) {
        r.add_term(chi_key{1, 0, 0}, super_poly(sgn(i + j + i + 1)));
    }
    return r;
}

bracket_table affine_table(int N)
{
    const family_ptr fam = affine_family(N);
    const int n = fam->size();
    std::vector<chi_op> values(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a) {
        const auto [i, j] = fam->affine_pair(a);
        for (int b = 0; b < n; ++b) {
            const auto [k, l] = fam->affine_pair(b);
            values[static_cast<std::size_t>(a * n + b)] = affine_bracket(fam, i, j, k, l);
        }
    }
    return bracket_table(bracket_kind::odd, fam, std::move(values));
}

bracket_table affine_even_table(int N)
{
    if (N % 2 == 0) {
        throw kind_mismatch("the linear affine even bracket needs gl(n+1|n)");
    }
    const family_ptr fam = affine_family(N);
    const int n = fam->size();
    std::vector<chi_op> values(static_cast<std::size_t>(n * n));
    for (int i = 1; i <= N; ++i) {
        const int a = fam->affine_id(1, i), b = fam->affine_id(i, N);
        const rational c = sgn(i + 1);
        values[static_cast<std::size_t>(a * n + b)] = chi_op(super_poly(c));
        // Even skew-symmetry for a constant value: {b chi a} = (-1)^{p(a)p(b)+1} c.
        const int e = fam->parity(a) * fam->parity(b) + 1;
        values[static_cast<std::size_t>(b * n + a)] = chi_op(super_poly(c * sgn(e)));
    }
    return bracket_table(bracket_kind::even, fam, std::move(values));
}

matrix_op universal_lax(int N)
{
    const family_ptr fam = affine_family(N);
    matrix_op L(gl_shape::for_rank(N));
    for (int k = 1; k <= N; ++k) {
        L.at(k, k) = spdo::D(1);
        for (int l = k; l <= N; ++l) {
            L.at(k, l) += spdo(ebar(fam, l, k) * sgn(k + 1));
        }
    }
    return L - odd_f(L.shape());
}

matrix_op gauge_transform(const matrix_op &lax, const matrix_op &n)
{
    if (!strictly_upper(n)) {
        throw shape_mismatch("gauge element must be strictly upper triangular");
    }
    if (!n.part(1).is_zero()) {
        throw parity_error("gauge element must be even");
    }
    matrix_op r = lax;
    matrix_op term = lax;
    // ad n raises the grading by at least 1/2, so the series stops after 2N steps.
    for (int k = 1; k <= 2 * lax.size() + 1; ++k) {
        term = mat_bracket(n, term) * make_rational(1, k);
        if (term.is_zero()) {
            return r;
        }
        r += term;
    }
    throw shape_mismatch("gauge series did not terminate");
}

canonical_result canonical_form(const matrix_op &lax)
{
    const int N = lax.size();
    const gl_shape shape = lax.shape();
    matrix_op cur = lax;
    matrix_op group = identity(shape);
    // Step g kills the grade (g - 1)/2 entries (r, r + g - 1), r <= N - g, with a grade g/2 element.
    for (int g = 1; g < N; ++g) {
        matrix_op m(shape);
        super_poly prev;
        for (int r = 1; r <= N - g; ++r) {
            super_poly q = cur.at(r, r + g - 1).coeff(0);
            const super_poly x = (q + prev) * sgn(g);
            if (!x.is_zero()) {
                m.at(r, r + g) = spdo(x);
            }
            prev = x;
        }
        if (m.is_zero()) {
            continue;
        }
        cur = gauge_transform(cur, m);
        group = mat_compose(mat_exp(m), group);
        for (int r = 1; r <= N - g; ++r) {
            if (!cur.at(r, r + g - 1).coeff(0).is_zero()) {
                throw error("canonical form: grade step " + std::to_string(g) + " left entry ("
                            + std::to_string(r) + "," + std::to_string(r + g - 1) + ")");
            }
        }
    }
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j < N; ++j) {
            const spdo expected = i == j ? spdo::D(1) : (i == j + 1 ? spdo(-1) : spdo());
            if (!(cur.at(i, j) == expected)) {
                throw error("canonical form: entry (" + std::to_string(i) + "," + std::to_string(j)
                            + ") outside the last column survived");
            }
        }
    }
    canonical_result res;
    res.n_c = mat_log_unipotent(group);
    res.lax_c = cur;
    for (int k = 1; k <= N; ++k) {
        res.w.push_back(cur.at(N + 1 - k, N).coeff(0));
    }
    return res;
}

super_poly rho(const super_poly &a)
{
    const family_ptr &fam = a.family();
    if (!fam) {
        return a;
    }
    require_affine(fam);
    return substitute(a, rho_images(fam));
}

chi_op rho(const chi_op &value)
{
    const family_ptr fam = value.family();
    if (!fam) {
        return value;
    }
    require_affine(fam);
    return map_coefficients(value, rho_images(fam));
}

bool rho_check_invariance(const super_poly &w, const family_ptr &fam)
{
    require_affine(fam);
    const bracket_table table = affine_table(fam->rank());
    const super_poly ww = w.with_family(fam);
    for (int i = 1; i <= fam->rank(); ++i) {
        for (int j = i + 1; j <= fam->rank(); ++j) {
            if (!rho(master_eval(table, ebar(fam, i, j), ww)).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

std::vector<super_poly> phi_images(const canonical_result &c)
{
    std::vector<super_poly> img;
    for (std::size_t k = 0; k < c.w.size(); ++k) {
        img.push_back(c.w[k] * sgn(static_cast<int>(k) + 1));
    }
    return img;
}

super_poly phi(const super_poly &a, const std::vector<super_poly> &images)
{
    return substitute(a, images);
}

chi_op phi(const chi_op &value, const std::vector<super_poly> &images)
{
    return map_coefficients(value, images);
}

matrix_op var_deriv_q(const super_poly &a, const family_ptr &fam)
{
    require_affine(fam);
    const int N = fam->rank();
    const super_poly aa = a.with_family(fam);
    matrix_op r(gl_shape::for_rank(N));
    for (int l = 1; l <= N; ++l) {
        for (int k = 1; k <= l; ++k) {
            r.at(l, k) = spdo(var_deriv(aa, fam->affine_id(l, k)));
        }
    }
    return r;
}

functional universal_bracket(const super_poly &a, const super_poly &b, const family_ptr &fam)
{
    const matrix_op Lu = universal_lax(fam->rank());
    const matrix_op comm = mat_bracket(Lu, var_deriv_q(b, fam));
    if (!comm.is_d_free()) {
        throw error("[L^u, delta b/delta q] is not D-free");
    }
    return functional(mat_bilinear(var_deriv_q(a, fam), comm));
}

gauge_report verify_gauge_reduction(int N, const std::vector<super_poly> &extra_densities)
{
    gauge_report rep;
    rep.N = N;
    const family_ptr fam = affine_family(N);
    const family_ptr wfam = generator_family::wn(N);
    const matrix_op Lu = universal_lax(N);
    const canonical_result c = canonical_form(Lu);
    rep.w = c.w;

    if (!(gauge_transform(Lu, c.n_c) == c.lax_c)) {
        rep.canonical_ok = false;
        rep.details.push_back("exp(ad N_c) L^u differs from the canonical operator");
    }
    for (int k = 1; k <= N; ++k) {
        if (!rho_check_invariance(c.w[static_cast<std::size_t>(k - 1)], fam)) {
            rep.invariance_ok = false;
            rep.details.push_back("w_" + std::to_string(k) + " is not rho-invariant");
        }
    }

    const std::vector<super_poly> img = phi_images(c);
    const bracket_table aff = affine_table(N);
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            const chi_op lhs = rho(master_eval(aff, img[static_cast<std::size_t>(i - 1)],
                                               img[static_cast<std::size_t>(j - 1)]));
            const chi_op rhs = phi(generator_bracket(gd_kind::quadratic, N, i, j), img);
            if (!(lhs + rhs).is_zero()) {
                rep.bracket_ok = false;
                rep.details.push_back("W-algebra bracket of (" + std::to_string(i) + "," + std::to_string(j)
                                      + ") differs from the quadratic table");
            }
        }
    }

    std::vector<super_poly> dens;
    for (int i = 0; i < N; ++i) {
        dens.push_back(super_poly::generator(wfam, i));
    }
    for (const auto &d : extra_densities) {
        dens.push_back(d.with_family(wfam));
    }
    for (const auto &a : dens) {
        for (const auto &b : dens) {
            const functional lhs = universal_bracket(phi(a, img), phi(b, img), fam);
            const functional rhs(phi(bracket_functionals(gd_kind::quadratic, a, b, N).representative(), img));
            if (!(lhs == rhs)) {
                rep.functional_ok = false;
                rep.details.push_back("universal bracket differs for a = " + to_string(a) + ", b = " + to_string(b));
            }
            const functional w_side(rho(at_chi_zero(master_eval(aff, phi(a, img), phi(b, img)))));
            if (!(w_side + lhs).is_zero()) {
                rep.realization_ok = false;
                rep.details.push_back("W-algebra functional bracket differs from -universal bracket for a = "
                                      + to_string(a) + ", b = " + to_string(b));
            }
        }
    }
    return rep;
}

} // namespace superlax
