#ifndef SUPERLAX_MATRIXLAX_HPP
#define SUPERLAX_MATRIXLAX_HPP

#include <string>
#include <vector>

#include <superlax/spdo.hpp>

namespace superlax
{

// gl(m|n) with m in {n, n + 1}; e_ij has parity i + j.
struct gl_shape {
    int m = 1;
    int n = 1;

    int size() const noexcept { return m + n; }
    static gl_shape for_rank(int N);
    friend bool operator==(const gl_shape &a, const gl_shape &b) { return a.m == b.m && a.n == b.n; }
};

// sum_ij e_ij (x) A_ij with A_ij super pseudo-differential operators. Indices are 1-based.
class matrix_op
{
public:
    matrix_op() = default;
    explicit matrix_op(gl_shape shape);

    static matrix_op unit(gl_shape shape, int i, int j, const spdo &a);

    const gl_shape &shape() const noexcept { return shape_; }
    int size() const noexcept { return shape_.size(); }
    spdo &at(int i, int j);
    const spdo &at(int i, int j) const;

    bool is_zero() const;
    // Entry parity is i + j + p(A_ij).
    matrix_op part(int parity) const;
    int parity() const;
    // Entrywise D^k coefficient (Res is k = -1).
    matrix_op coefficient(int k) const;
    matrix_op residue() const { return coefficient(-1); }
    bool is_d_free() const;

    matrix_op &operator+=(const matrix_op &o);
    matrix_op &operator-=(const matrix_op &o);
    matrix_op operator-() const;
    friend matrix_op operator+(matrix_op a, const matrix_op &b) { return a += b; }
    friend matrix_op operator-(matrix_op a, const matrix_op &b) { return a -= b; }
    friend matrix_op operator*(matrix_op a, const rational &c);
    friend bool operator==(const matrix_op &a, const matrix_op &b);

private:
    void check_shape(const matrix_op &o) const;

    gl_shape shape_;
    std::vector<spdo> e_;
};

// (e_ij (x) a)(e_kl (x) b) = (-1)^{(k+l) p(a)} delta_jk e_il (x) ab.
matrix_op mat_compose(const matrix_op &x, const matrix_op &y, truncation t = default_truncation());
// XY - (-1)^{p(X)p(Y)} YX, extended bilinearly over parity parts.
matrix_op mat_bracket(const matrix_op &x, const matrix_op &y, truncation t = default_truncation());
// (e_ij (x) a | e_kl (x) b) = (-1)^{p(a)(k+l) + i + 1} delta_il delta_jk ab. Entries must be D-free.
super_poly mat_bilinear(const matrix_op &x, const matrix_op &y);

// b_i = (D^{i-N} L^*)_+ for i = 0..N.
std::vector<spdo> b_operators(const spdo &L, int N);
// D on the diagonal, -1 below it, (-1)^k u_k in row N + 1 - k of the last column.
matrix_op build_Lcan(const family_ptr &fam);
// The same operator assembled from s_k (b_k - D b_{k-1}) and s_1 b_1.
matrix_op build_Lcan_from_b(const family_ptr &fam);

// (nabla_a)_ij = (-1)^{(j+1)p(a) + (j+1)(i+1) + j(j-1)/2 + i(i-1)/2} b_{N-i} (delta a/delta L)^* D^{j-1}.
matrix_op build_nabla(const super_poly &a, const family_ptr &fam, truncation t);

struct matrix_identity_report {
    bool lcan_forms_agree = true;
    bool left_support = true;   // L nabla_a: only the first row is nonzero
    bool right_support = true;  // nabla_a L: only the last column is nonzero
    bool left_values = true;
    bool right_values = true;
    bool aux_identities = true;
    bool bracket_identity = true;
    std::vector<std::string> details;

    bool ok() const noexcept
    {
        return lcan_forms_agree && left_support && right_support && left_values && right_values
               && aux_identities && bracket_identity;
    }
};

// Checks the matrix realization of the quadratic bracket for int a, int b on W_N.
matrix_identity_report verify_matrix_identity(int N, const super_poly &a, const super_poly &b);

// N odd: int {a chi b}^e|_{chi=0} = (-1)^{p(a)+1} int (Res nabla_a | e_1N Res nabla_b + Res nabla_b e_1N).
bool verify_even_matrix_identity(int N, const super_poly &a, const super_poly &b);

std::string to_string(const matrix_op &x);

} // namespace superlax

#endif
