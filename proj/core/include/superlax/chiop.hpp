#ifndef SUPERLAX_CHIOP_HPP
#define SUPERLAX_CHIOP_HPP

#include <compare>
#include <iosfwd>
#include <map>
#include <string>

#include <superlax/spdo.hpp>

namespace superlax
{

// Index of a normal-ordered term chi^chi gamma^gamma c D^dpow.
struct chi_key {
    int chi = 0;
    int gamma = 0;
    int dpow = 0;

    friend bool operator==(const chi_key &, const chi_key &) = default;
};

// Terms are kept with higher D powers first, then by chi and gamma powers.
struct chi_key_less {
    bool operator()(const chi_key &x, const chi_key &y) const noexcept
    {
        if (x.dpow != y.dpow) {
            return x.dpow > y.dpow;
        }
        if (x.chi != y.chi) {
            return x.chi < y.chi;
        }
        return x.gamma < y.gamma;
    }
};

// Operators in the odd indeterminates chi, gamma and D, normal ordered as
// chi^a gamma^b c D^k. The indeterminates satisfy
//   D chi + chi D = -2 chi^2,  D gamma + gamma D = -2 gamma^2,  chi gamma = -gamma chi,
// and supercommute with coefficients. A chi_op with only dpow == 0 terms is a
// bracket value sum chi^n c_n.
class chi_op
{
public:
    using term_map = std::map<chi_key, super_poly, chi_key_less>;

    chi_op() = default;
    chi_op(const super_poly &c);
    chi_op(const spdo &a);

    static chi_op chi(int n = 1);
    static chi_op gamma(int n = 1);
    static chi_op D(int k = 1);
    static chi_op term(chi_key k, const super_poly &c);

    const term_map &terms() const noexcept { return t_; }
    int floor() const noexcept { return floor_; }
    bool is_exact() const noexcept { return floor_ == exact_floor; }
    bool is_zero() const noexcept { return t_.empty(); }
    int top_dpow() const noexcept { return t_.empty() ? exact_floor : t_.begin()->first.dpow; }
    super_poly coeff(chi_key k) const;
    void add_term(chi_key k, const super_poly &c);
    void set_floor(int f);
    family_ptr family() const;

    chi_op &operator+=(const chi_op &o);
    chi_op &operator-=(const chi_op &o);
    chi_op operator-() const;
    friend chi_op operator+(chi_op a, const chi_op &b) { return a += b; }
    friend chi_op operator-(chi_op a, const chi_op &b) { return a -= b; }
    friend chi_op operator*(chi_op a, const rational &c);
    friend bool operator==(const chi_op &a, const chi_op &b) { return a.floor_ == b.floor_ && a.t_ == b.t_; }

private:
    term_map t_;
    int floor_ = exact_floor;
};

chi_op mul(const chi_op &a, const chi_op &b, truncation t = default_truncation());
chi_op mul(const chi_op &a, const chi_op &b, const chi_op &c, truncation t = default_truncation());

enum class indeterminate { chi, gamma, chi_plus_gamma };

// (D + lambda)^k; negative powers use (D + lambda)^{-1} = (D + lambda) sum_j lambda^{2j} D^{-2j-2}.
chi_op shift_power(int k, indeterminate which, truncation t = default_truncation());
// sum_k a_k D^k -> sum_k a_k (D + lambda)^k.
chi_op substitute_shift(const spdo &a, indeterminate which, truncation t = default_truncation());
// Applies the operator to 1. Throws when negative D powers are present.
chi_op collapse(const chi_op &a);
chi_op project(const chi_op &a, part_kind which);
// Terms with D^k, moved to D^0.
chi_op dcoeff(const chi_op &a, int k);
// Replaces chi in a bracket value sum chi^n c_n by lambda.
chi_op rename_chi(const chi_op &value, indeterminate lambda);
// Sets chi = 0 in a bracket value.
super_poly at_chi_zero(const chi_op &value);
// Bracket value sum chi^n c_n read off as coefficients c_n.
std::map<int, super_poly> chi_coefficients(const chi_op &value);

std::string to_string(const chi_op &a);
std::ostream &operator<<(std::ostream &os, const chi_op &a);

} // namespace superlax

#endif
