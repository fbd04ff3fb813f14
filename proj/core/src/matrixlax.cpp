#include <algorithm>
#include <sstream>

#include <superlax/error.hpp>
#include <superlax/gd.hpp>
#include <superlax/matrixlax.hpp>

namespace superlax
{

namespace
{

rational sgn(int e)
{
    return rational((e & 1) ? -1 : 1);
}

int tri(int i)
{
    return i * (i - 1) / 2;
}

// Depth at which every entry of nabla_a and its products with L^can is known down to D^{-2}.
truncation matrix_depth(int N)
{
    return truncation{2 * N + 6};
}

bool zero_above(const spdo &a, int f)
{
    return std::all_of(a.coeffs().begin(), a.coeffs().end(),
                       [f](const auto &kv) { return kv.first < f || kv.second.is_zero(); });
}

bool entries_agree(const spdo &a, const spdo &b)
{
    return agree_above(a, b, std::max(a.floor(), b.floor()));
}

} // namespace

gl_shape gl_shape::for_rank(int N)
{
    if (N < 2) {
        throw shape_mismatch("gl(m|n) needs N = m + n >= 2");
    }
    return gl_shape{(N + 1) / 2, N / 2};
}

matrix_op::matrix_op(gl_shape shape) : shape_(shape), e_(static_cast<std::size_t>(shape.size() * shape.size())) {}

matrix_op matrix_op::unit(gl_shape shape, int i, int j, const spdo &a)
{
    matrix_op r(shape);
    r.at(i, j) = a;
    return r;
}

spdo &matrix_op::at(int i, int j)
{
    const int N = size();
    if (i < 1 || j < 1 || i > N || j > N) {
        throw shape_mismatch("matrix index out of range");
    }
    return e_[static_cast<std::size_t>((i - 1) * N + (j - 1))];
}

const spdo &matrix_op::at(int i, int j) const
{
    return const_cast<matrix_op *>(this)->at(i, j);
}

bool matrix_op::is_zero() const
{
    return std::all_of(e_.begin(), e_.end(), [](const spdo &a) { return a.is_zero(); });
}

matrix_op matrix_op::part(int parity) const
{
    matrix_op r(shape_);
    for (int i = 1; i <= size(); ++i) {
        for (int j = 1; j <= size(); ++j) {
            r.at(i, j) = at(i, j).part((parity + i + j) & 1);
        }
    }
    return r;
}

int matrix_op::parity() const
{
    if (part(0).is_zero()) {
        return 1;
    }
    if (part(1).is_zero()) {
        return 0;
    }
    throw parity_error("matrix operator is not parity-homogeneous");
}

matrix_op matrix_op::coefficient(int k) const
{
    matrix_op r(shape_);
    for (std::size_t i = 0; i < e_.size(); ++i) {
        r.e_[i] = spdo(e_[i].coeff(k));
    }
    return r;
}

bool matrix_op::is_d_free() const
{
    return std::all_of(e_.begin(), e_.end(), [](const spdo &a) {
        return std::all_of(a.coeffs().begin(), a.coeffs().end(), [](const auto &kv) { return kv.first == 0; });
    });
}

void matrix_op::check_shape(const matrix_op &o) const
{
    if (!(shape_ == o.shape_)) {
        throw shape_mismatch("matrix operators of different shapes");
    }
}

matrix_op &matrix_op::operator+=(const matrix_op &o)
{
    check_shape(o);
    for (std::size_t i = 0; i < e_.size(); ++i) {
        e_[i] += o.e_[i];
    }
    return *this;
}

matrix_op &matrix_op::operator-=(const matrix_op &o)
{
    check_shape(o);
    for (std::size_t i = 0; i < e_.size(); ++i) {
        e_[i] -= o.e_[i];
    }
    return *this;
}

matrix_op matrix_op::operator-() const
{
    matrix_op r(*this);
    for (auto &a : r.e_) {
        a = -a;
    }
    return r;
}

matrix_op operator*(matrix_op a, const rational &c)
{
    for (auto &x : a.e_) {
        x = x * c;
    }
    return a;
}

bool operator==(const matrix_op &a, const matrix_op &b)
{
    if (!(a.shape_ == b.shape_)) {
        return false;
    }
    for (std::size_t i = 0; i < a.e_.size(); ++i) {
        if (!entries_agree(a.e_[i], b.e_[i])) {
            return false;
        }
    }
    return true;
}

matrix_op mat_compose(const matrix_op &x, const matrix_op &y, truncation t)
{
    if (!(x.shape() == y.shape())) {
        throw shape_mismatch("matrix operators of different shapes");
    }
    const int N = x.size();
    matrix_op r(x.shape());
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            const spdo &a = x.at(i, j);
            if (a.is_zero()) {
                continue;
            }
            for (int pa = 0; pa < 2; ++pa) {
                const spdo ap = a.part(pa);
                if (ap.is_zero()) {
                    continue;
                }
                for (int l = 1; l <= N; ++l) {
                    const spdo &b = y.at(j, l);
                    if (b.is_zero()) {
                        continue;
                    }
                    r.at(i, l) += compose(ap, b, t) * sgn((j + l) * pa);
                }
            }
        }
    }
    return r;
}

matrix_op mat_bracket(const matrix_op &x, const matrix_op &y, truncation t)
{
    matrix_op r(x.shape());
    for (int p = 0; p < 2; ++p) {
        const matrix_op xp = x.part(p);
        if (xp.is_zero()) {
            continue;
        }
        for (int q = 0; q < 2; ++q) {
            const matrix_op yq = y.part(q);
            if (yq.is_zero()) {
                continue;
            }
            r += mat_compose(xp, yq, t) - mat_compose(yq, xp, t) * sgn(p * q);
        }
    }
    return r;
}

super_poly mat_bilinear(const matrix_op &x, const matrix_op &y)
{
    if (!(x.shape() == y.shape())) {
        throw shape_mismatch("matrix operators of different shapes");
    }
    if (!x.is_d_free() || !y.is_d_free()) {
        throw kind_mismatch("the bilinear form needs D-free entries; take a residue first");
    }
    const int N = x.size();
    super_poly r;
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            const super_poly a = x.at(i, j).coeff(0);
            const super_poly b = y.at(j, i).coeff(0);
            if (a.is_zero() || b.is_zero()) {
                continue;
            }
            for (int pa = 0; pa < 2; ++pa) {
                const super_poly ap = a.part(pa);
                if (!ap.is_zero()) {
                    r += ap * b * sgn(pa * (i + j) + i + 1);
                }
            }
        }
    }
    return r;
}

std::vector<spdo> b_operators(const spdo &L, int N)
{
    // (D^{i-N} L^*)_+ only involves the exponents >= 0 of the expansion.
    const truncation t{1};
    const spdo Ls = adjoint(L, t);
    std::vector<spdo> b;
    b.reserve(static_cast<std::size_t>(N + 1));
    for (int i = 0; i <= N; ++i) {
        b.push_back(project(compose(spdo::D(i - N), Ls, t), part_kind::plus));
    }
    return b;
}

matrix_op build_Lcan(const family_ptr &fam)
{
    const int N = fam->rank();
    matrix_op r(gl_shape::for_rank(N));
    for (int i = 1; i <= N; ++i) {
        r.at(i, i) += spdo::D(1);
        if (i < N) {
            r.at(i + 1, i) = spdo(-1);
        }
        const int k = N + 1 - i;
        r.at(i, N) += spdo(super_poly::generator(fam, k - 1) * sgn(k));
    }
    return r;
}

matrix_op build_Lcan_from_b(const family_ptr &fam)
{
    const int N = fam->rank();
    const std::vector<spdo> b = b_operators(lax_operator(fam), N);
    const auto s = [N](int i) { return sgn(tri(i) + N * (N + 1) / 2); };
    matrix_op r(gl_shape::for_rank(N));
    for (int i = 1; i < N; ++i) {
        r.at(i, i) = spdo::D(1);
        r.at(i + 1, i) = spdo(-1);
        const int k = N + 1 - i;
        r.at(i, N) = (b[static_cast<std::size_t>(k)] - compose(spdo::D(1), b[static_cast<std::size_t>(k - 1)])) * s(k);
    }
    r.at(N, N) = b[1] * s(1);
    return r;
}

matrix_op build_nabla(const super_poly &a, const family_ptr &fam, truncation t)
{
    const int N = fam->rank();
    const std::vector<spdo> b = b_operators(lax_operator(fam), N);
    matrix_op r(gl_shape::for_rank(N));
    for (int pa = 0; pa < 2; ++pa) {
        const super_poly A = a.part(pa);
        if (A.is_zero()) {
            continue;
        }
        const spdo Xs = adjoint(var_deriv_L(A, N, t), t);
        for (int i = 1; i <= N; ++i) {
            const spdo bx = compose(b[static_cast<std::size_t>(N - i)], Xs, t);
            for (int j = 1; j <= N; ++j) {
                const int e = (j + 1) * pa + (j + 1) * (i + 1) + tri(j) + tri(i);
                r.at(i, j) += compose(bx, spdo::D(j - 1), t) * sgn(e);
            }
        }
    }
    return r;
}

namespace
{

void verify_homogeneous(int N, const family_ptr &fam, const super_poly &a, const super_poly &b,
                        const matrix_op &Lc, matrix_identity_report &rep)
{
    const truncation t = matrix_depth(N);
    const int pa = a.parity(), pb = b.parity();
    const spdo L = lax_operator(fam);
    const spdo Ls = adjoint(L, t);
    const std::vector<spdo> bs = b_operators(L, N);
    const spdo Xas = adjoint(var_deriv_L(a, N, t), t);
    const matrix_op na = build_nabla(a, fam, t);
    const matrix_op nb = build_nabla(b, fam, t);
    auto note = [&rep, &a, &b](const std::string &what) {
        rep.details.push_back(what + " for a = " + to_string(a) + ", b = " + to_string(b));
    };

    const matrix_op Lna = mat_compose(Lc, na, t);
    const matrix_op naL = mat_compose(na, Lc, t);
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            const spdo &x = Lna.at(i, j);
            if (i > 1 && !zero_above(x, x.floor())) {
                rep.left_support = false;
                note("L nabla_a has a nonzero entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
            const spdo &y = naL.at(i, j);
            if (j < N && !zero_above(y, y.floor())) {
                rep.right_support = false;
                note("nabla_a L has a nonzero entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
    for (int i = 1; i <= N; ++i) {
        const spdo expected = compose(compose(Ls, Xas, t), spdo::D(i - 1), t) * sgn(tri(i) + (pa + 1) * (i + 1));
        if (!entries_agree(Lna.at(1, i), expected)) {
            rep.left_values = false;
            note("first row of L nabla_a differs at column " + std::to_string(i));
        }
        const int e = (N % 2 == 0) ? pa + 1 + i * (i + 1) / 2 : tri(i) + 1;
        const spdo expected_r = compose(compose(bs[static_cast<std::size_t>(N - i)], Xas, t), Ls, t) * sgn(e);
        if (!entries_agree(naL.at(i, N), expected_r)) {
            rep.right_values = false;
            note("last column of nabla_a L differs at row " + std::to_string(i));
        }
    }

    // Res(nabla_b L) = -Res(nabla_b) L + Res(nabla_b) D + (nabla_b)_{-2} and
    // Res(L nabla_b) = L Res(nabla_b) + (-1)^{p(b)} (Res(nabla_b) D + (nabla_b)_{-2}).
    const matrix_op Rb = nb.residue();
    const matrix_op Cb = nb.coefficient(-2);
    matrix_op Dm(Lc.shape());
    for (int i = 1; i <= N; ++i) {
        Dm.at(i, i) = spdo::D(1);
    }
    const matrix_op RbD = mat_compose(Rb, Dm, t);
    const matrix_op aux1 = mat_compose(nb, Lc, t).residue() + mat_compose(Rb, Lc, t) - RbD - Cb;
    const matrix_op aux2 = mat_compose(Lc, nb, t).residue() - mat_compose(Lc, Rb, t) - (RbD + Cb) * sgn(pb);
    if (!aux1.is_zero()) {
        rep.aux_identities = false;
        note("Res(nabla_b L) identity fails");
    }
    if (!aux2.is_zero()) {
        rep.aux_identities = false;
        note("Res(L nabla_b) identity fails");
    }

    const matrix_op comm = mat_bracket(Lc, Rb, t);
    if (!comm.is_d_free()) {
        rep.bracket_identity = false;
        note("[L, Res nabla_b] is not D-free");
        return;
    }
    const functional lhs(mat_bilinear(na.residue(), comm));
    const functional rhs = bracket_functionals(gd_kind::quadratic, a, b, N);
    if (!(lhs == rhs)) {
        rep.bracket_identity = false;
        note("matrix and scalar brackets differ");
    }
}

} // namespace

matrix_identity_report verify_matrix_identity(int N, const super_poly &a, const super_poly &b)
{
    const family_ptr fam = merge_family(merge_family(a.family(), b.family()), generator_family::wn(N));
    if (fam->rank() != N) {
        throw family_mismatch("arguments do not live in W_" + std::to_string(N));
    }
    matrix_identity_report rep;
    const matrix_op Lc = build_Lcan(fam);
    if (!(Lc == build_Lcan_from_b(fam))) {
        rep.lcan_forms_agree = false;
        rep.details.push_back("the two forms of L^can differ at N = " + std::to_string(N));
    }
    const super_poly A = a.with_family(fam), B = b.with_family(fam);
    for (int pa = 0; pa < 2; ++pa) {
        for (int pb = 0; pb < 2; ++pb) {
            const super_poly ap = A.part(pa), bp = B.part(pb);
            if (!ap.is_zero() && !bp.is_zero()) {
                verify_homogeneous(N, fam, ap, bp, Lc, rep);
            }
        }
    }
    return rep;
}

bool verify_even_matrix_identity(int N, const super_poly &a, const super_poly &b)
{
    check_gd_kind(gd_kind::even_linear, N);
    const family_ptr fam = merge_family(merge_family(a.family(), b.family()), generator_family::wn(N));
    const truncation t = matrix_depth(N);
    const matrix_op e1N = matrix_op::unit(gl_shape::for_rank(N), 1, N, spdo(1));
    const matrix_op Rb = build_nabla(b.with_family(fam), fam, t).residue();
    const matrix_op right = mat_compose(e1N, Rb, t) + mat_compose(Rb, e1N, t);
    super_poly lhs;
    for (int pa = 0; pa < 2; ++pa) {
        const super_poly A = a.with_family(fam).part(pa);
        if (!A.is_zero()) {
            lhs += mat_bilinear(build_nabla(A, fam, t).residue(), right) * sgn(pa + 1);
        }
    }
    return functional(lhs) == bracket_functionals(gd_kind::even_linear, a, b, N);
}

std::string to_string(const matrix_op &x)
{
    std::ostringstream os;
    os << "[";
    for (int i = 1; i <= x.size(); ++i) {
        os << (i > 1 ? "; " : "");
        for (int j = 1; j <= x.size(); ++j) {
            os << (j > 1 ? ", " : "") << to_string(x.at(i, j));
        }
    }
    os << "]";
    return os.str();
}

} // namespace superlax
