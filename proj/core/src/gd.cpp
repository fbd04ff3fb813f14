#include <superlax/error.hpp>
#include <superlax/gd.hpp>

namespace superlax
{

namespace
{

// Depth that keeps every residue and differential part exact for operators of order <= 2N.
truncation gd_depth(int N)
{
    return truncation{2 * N + 3};
}

spdo differential(const spdo &a)
{
    return project(a, part_kind::plus);
}

} // namespace

std::string to_string(gd_kind k)
{
    switch (k) {
    case gd_kind::quadratic:
        return "quadratic";
    case gd_kind::odd_linear:
        return "odd_linear";
    default:
        return "even_linear";
    }
}

gd_kind parse_gd_kind(const std::string &s)
{
    if (s == "quadratic") {
        return gd_kind::quadratic;
    }
    if (s == "odd_linear" || s == "odd-linear") {
        return gd_kind::odd_linear;
    }
    if (s == "even_linear" || s == "even-linear") {
        return gd_kind::even_linear;
    }
    throw kind_mismatch("unknown bracket kind '" + s + "'");
}

bracket_kind bracket_kind_of(gd_kind k)
{
    return k == gd_kind::even_linear ? bracket_kind::even : bracket_kind::odd;
}

void check_gd_kind(gd_kind k, int N)
{
    if (N < 1) {
        throw kind_mismatch("rank must be positive");
    }
    if (k == gd_kind::odd_linear && N % 2 != 0) {
        throw kind_mismatch("the odd linear bracket needs an even rank");
    }
    if (k == gd_kind::even_linear && N % 2 == 0) {
        throw kind_mismatch("the even linear bracket needs an odd rank");
    }
}

spdo lax_operator(const family_ptr &fam)
{
    const int N = fam->rank();
    spdo L = spdo::D(N);
    for (int i = 1; i <= N; ++i) {
        L.add_term(N - i, super_poly::generator(fam, i - 1));
    }
    return L;
}

spdo lax_operator(int N)
{
    return lax_operator(generator_family::wn(N));
}

spdo var_deriv_L(const super_poly &a, int N, truncation t)
{
    spdo X;
    for (int pa = 0; pa < 2; ++pa) {
        const super_poly A = a.part(pa);
        if (A.is_zero()) {
            continue;
        }
        for (int k = 1; k <= N; ++k) {
            const super_poly d = var_deriv(A, k - 1);
            if (d.is_zero()) {
                continue;
            }
            spdo term = compose(spdo::D(k - N - 1), spdo(d), t);
            X += ((pa + k) & 1) ? -term : term;
        }
    }
    if (X.is_exact()) {
        X.set_floor(t.floor());
    }
    return X;
}

functional bracket_functionals(gd_kind kind, const super_poly &a, const super_poly &b, int N)
{
    check_gd_kind(kind, N);
    const family_ptr fam = merge_family(a.family(), b.family());
    const spdo L = lax_operator(fam ? fam : generator_family::wn(N));
    const truncation t = gd_depth(N);
    super_poly total;
    for (int pa = 0; pa < 2; ++pa) {
        const super_poly A = a.part(pa);
        if (A.is_zero()) {
            continue;
        }
        const spdo Xa = var_deriv_L(A, N, t);
        const spdo Xb = var_deriv_L(b, N, t);
        super_poly r;
        switch (kind) {
        case gd_kind::quadratic: {
            const spdo M = compose(differential(compose(L, Xa, t)), L, t)
                           - compose(L, differential(compose(Xa, L, t)), t);
            r = residue(compose(M, Xb, t));
            if ((pa + N) & 1) {
                r = -r;
            }
            break;
        }
        case gd_kind::odd_linear: {
            const spdo M = compose(L, Xa, t) - compose(Xa, L, t);
            r = residue(compose(M, Xb, t));
            if (pa & 1) {
                r = -r;
            }
            break;
        }
        case gd_kind::even_linear: {
            const spdo LXa = compose(L, Xa, t);
            const spdo XaL = compose(Xa, L, t);
            const spdo M = ((pa + 1) & 1) ? LXa - XaL : LXa + XaL;
            r = residue(compose(M, Xb, t));
            break;
        }
        }
        total += r;
    }
    return functional(total);
}

namespace
{

// B(L1, L2) = [L1(chi+D) (chi+D)^{i-N-1}]_+ L2(D) - L1(chi+D) [(chi+D)^{i-N-1} L2(D)]_+
chi_op quadratic_form(const spdo &L1, const spdo &L2, int N, int i)
{
    const truncation t{N + 2};
    const chi_op l1 = substitute_shift(L1, indeterminate::chi, t);
    const chi_op pw = shift_power(i - N - 1, indeterminate::chi, t);
    const chi_op first = mul(project(mul(l1, pw, t), part_kind::plus), chi_op(L2), t);
    const chi_op second = mul(l1, project(mul(pw, chi_op(L2), t), part_kind::plus), t);
    return first - second;
}

} // namespace

chi_op generator_bracket(gd_kind kind, int N, int i, int j)
{
    check_gd_kind(kind, N);
    if (i < 1 || j < 1 || i > N || j > N) {
        throw unknown_generator("generator index out of range");
    }
    const family_ptr fam = generator_family::wn(N);
    const spdo L = lax_operator(fam);
    chi_op value;
    switch (kind) {
    case gd_kind::quadratic:
        value = dcoeff(quadratic_form(L, L, N, i), N - j);
        if ((i + N) & 1) {
            value = -value;
        }
        break;
    case gd_kind::odd_linear: {
        // Coefficient of eps in the quadratic form at L + eps, eps even with eps^2 = 0.
        const spdo one(1);
        value = dcoeff(quadratic_form(one, L, N, i) + quadratic_form(L, one, N, i), N - j);
        if ((i + N) & 1) {
            value = -value;
        }
        break;
    }
    case gd_kind::even_linear: {
        const truncation t{N + 2};
        const chi_op pw = shift_power(i - N - 1, indeterminate::chi, t);
        const chi_op lc = substitute_shift(L, indeterminate::chi, t);
        chi_op expr = mul(lc, pw, t);
        const chi_op right = mul(pw, chi_op(L), t);
        expr += ((i + 1) & 1) ? -right : right;
        value = dcoeff(expr, N - j);
        break;
    }
    }
    // Keep values in the W_N family even when they are constants.
    chi_op out;
    for (const auto &[k, c] : value.terms()) {
        out.add_term(k, c.with_family(fam));
    }
    return out;
}

bracket_table generator_table(gd_kind kind, int N)
{
    check_gd_kind(kind, N);
    const family_ptr fam = generator_family::wn(N);
    std::vector<chi_op> values;
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            values.push_back(generator_bracket(kind, N, i, j));
        }
    }
    return bracket_table(bracket_kind_of(kind), fam, std::move(values));
}

std::vector<super_poly> hamiltonian_vector(gd_kind kind, const super_poly &a, int N)
{
    check_gd_kind(kind, N);
    const family_ptr fam = a.family() ? a.family() : generator_family::wn(N);
    const spdo L = lax_operator(fam);
    const truncation t = gd_depth(N);
    spdo M;
    for (int pa = 0; pa < 2; ++pa) {
        const super_poly A = a.part(pa);
        if (A.is_zero()) {
            continue;
        }
        const spdo Xa = var_deriv_L(A, N, t);
        spdo part;
        switch (kind) {
        case gd_kind::quadratic:
            part = compose(differential(compose(L, Xa, t)), L, t) - compose(L, differential(compose(Xa, L, t)), t);
            if ((pa + N) & 1) {
                part = -part;
            }
            break;
        case gd_kind::odd_linear:
            part = differential(compose(L, Xa, t) - compose(Xa, L, t));
            if (pa & 1) {
                part = -part;
            }
            break;
        case gd_kind::even_linear: {
            const spdo LXa = compose(L, Xa, t);
            const spdo XaL = compose(Xa, L, t);
            part = differential(((pa + 1) & 1) ? LXa - XaL : LXa + XaL);
            break;
        }
        }
        M += part;
    }
    std::vector<super_poly> out;
    for (int j = 1; j <= N; ++j) {
        out.push_back(M.coeff(N - j).with_family(fam));
    }
    return out;
}

} // namespace superlax
