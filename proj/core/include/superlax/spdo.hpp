#ifndef SUPERLAX_SPDO_HPP
#define SUPERLAX_SPDO_HPP

#include <climits>
#include <iosfwd>
#include <map>
#include <string>

#include <superlax/superpoly.hpp>

namespace superlax
{

// Exponents below -depth are dropped from infinite expansions.
struct truncation {
    int depth = 12;
    int floor() const noexcept { return -depth; }
    static truncation to_floor(int f) noexcept { return truncation{-f}; }
};

// Default depth, overridable through the SUPERLAX_DEPTH environment variable.
truncation default_truncation();

inline constexpr int exact_floor = INT_MIN / 4;

// Super pseudo-differential operator sum_k a_k D^k. Coefficients of exponents
// below floor() are unknown; an exact operator has floor() == exact_floor.
class spdo
{
public:
    using coeff_map = std::map<int, super_poly, std::greater<int>>;

    spdo() = default;
    spdo(const super_poly &a);
    spdo(int c) : spdo(super_poly(c)) {}

    static spdo D(int k = 1);
    static spdo term(const super_poly &a, int k);

    const coeff_map &coeffs() const noexcept { return c_; }
    int floor() const noexcept { return floor_; }
    bool is_exact() const noexcept { return floor_ == exact_floor; }
    // Highest exponent with a nonzero coefficient (exact_floor for zero).
    int order() const noexcept { return c_.empty() ? exact_floor : c_.begin()->first; }
    super_poly coeff(int k) const;
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_homogeneous() const;
    int parity() const;
    spdo part(int parity) const;
    family_ptr family() const;

    // Forgets every coefficient below f.
    spdo truncated(int f) const;
    void set_floor(int f);
    void add_term(int k, const super_poly &a);

    spdo &operator+=(const spdo &o);
    spdo &operator-=(const spdo &o);
    spdo operator-() const;
    friend spdo operator+(spdo a, const spdo &b) { return a += b; }
    friend spdo operator-(spdo a, const spdo &b) { return a -= b; }
    friend spdo operator*(spdo a, const rational &c);
    friend spdo operator*(const rational &c, spdo a) { return std::move(a) * c; }
    friend bool operator==(const spdo &a, const spdo &b) { return a.floor_ == b.floor_ && a.c_ == b.c_; }

private:
    coeff_map c_;
    int floor_ = exact_floor;
};

spdo compose(const spdo &a, const spdo &b, truncation t = default_truncation());
spdo power(const spdo &a, int k, truncation t = default_truncation());
// Inverse of an operator whose leading coefficient is 1.
spdo inverse(const spdo &a, truncation t = default_truncation());

// (a D^m)* = (-1)^{m p(a) + m(m+1)/2} D^m a.
spdo adjoint(const spdo &a, truncation t = default_truncation());

enum class part_kind { plus, minus };
spdo project(const spdo &a, part_kind which);
super_poly residue(const spdo &a);

// L^{p/q} for monic homogeneous L of order N: the q-th root has leading term
// D^{N/q} and exists when N/q is even or q is odd.
spdo fractional_power(const spdo &L, int p, int q, truncation t = default_truncation());
// The monic q-th root, computed down to floor f.
spdo monic_root(const spdo &L, int q, int f);

// Coefficient-wise agreement at exponents >= f.
bool agree_above(const spdo &a, const spdo &b, int f);

std::string to_string(const spdo &a);
std::ostream &operator<<(std::ostream &os, const spdo &a);

} // namespace superlax

#endif
