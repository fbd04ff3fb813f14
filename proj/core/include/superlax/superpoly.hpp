#ifndef SUPERLAX_SUPERPOLY_HPP
#define SUPERLAX_SUPERPOLY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include <superlax/family.hpp>

namespace superlax
{

using rational = mpq_class;

// p/q in lowest terms with a positive denominator.
inline rational make_rational(long p, long q)
{
    rational r(p, q);
    r.canonicalize();
    return r;
}

// A derived generator u_g^(m) packed as gen:15 | ord:16 | parity:1. Ordering
// of keys is by generator id, then derivative order.
using var_key = std::uint32_t;

constexpr var_key make_var(int gen, int ord, int gen_parity) noexcept
{
    return (static_cast<var_key>(gen) << 17) | (static_cast<var_key>(ord) << 1)
           | static_cast<var_key>((gen_parity + ord) & 1);
}
constexpr int var_gen(var_key k) noexcept { return static_cast<int>(k >> 17); }
constexpr int var_ord(var_key k) noexcept { return static_cast<int>((k >> 1) & 0xFFFFu); }
constexpr int var_parity(var_key k) noexcept { return static_cast<int>(k & 1u); }
// u^(m) -> u^(m+by)
constexpr var_key var_shift(var_key k, int by) noexcept
{
    return make_var(var_gen(k), var_ord(k) + by, var_parity(k) + var_ord(k));
}

// Supercommutative monomial: a sorted product of derived generators in which
// odd factors appear at most once.
class monomial
{
public:
    using container = boost::container::small_vector<var_key, 6>;

    monomial() = default;

    const container &factors() const noexcept { return f_; }
    int degree() const noexcept { return static_cast<int>(f_.size()); }
    int parity() const noexcept;
    // Sum of derivative orders.
    int weight() const noexcept;
    bool is_one() const noexcept { return f_.empty(); }

    // Sorts an ordered product in place; returns the Koszul sign, or 0 when
    // an odd factor repeats.
    static int canonicalize(container &seq);
    // out = a*b up to the returned sign (0 when the product vanishes).
    static int multiply(const monomial &a, const monomial &b, monomial &out);
    static monomial from_sorted(container f)
    {
        monomial m;
        m.f_ = std::move(f);
        return m;
    }

    friend bool operator==(const monomial &a, const monomial &b) { return a.f_ == b.f_; }
    friend bool operator!=(const monomial &a, const monomial &b) { return !(a == b); }
    // Degree first, then lexicographic on keys.
    friend bool operator<(const monomial &a, const monomial &b);

private:
    container f_;
};

class super_poly
{
public:
    using term = std::pair<monomial, rational>;

    super_poly() = default;
    super_poly(const rational &c);
    super_poly(long c) : super_poly(rational(c)) {}
    super_poly(int c) : super_poly(rational(c)) {}

    static super_poly generator(const family_ptr &fam, int id, int ord = 0);
    static super_poly from_terms(family_ptr fam, std::vector<term> terms);

    const family_ptr &family() const noexcept { return fam_; }
    const std::vector<term> &terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    rational constant_term() const;
    bool is_homogeneous() const noexcept;
    // Parity of a homogeneous element (0 for zero); throws parity_error otherwise.
    int parity() const;
    super_poly part(int parity) const;
    // Highest derivative order appearing (-1 for constants).
    int max_order() const noexcept;
    super_poly with_family(const family_ptr &fam) const;

    super_poly &operator+=(const super_poly &o);
    super_poly &operator-=(const super_poly &o);
    super_poly &operator*=(const rational &c);
    super_poly operator-() const;

    friend super_poly operator+(super_poly a, const super_poly &b) { return a += b; }
    friend super_poly operator-(super_poly a, const super_poly &b) { return a -= b; }
    friend super_poly operator*(const super_poly &a, const super_poly &b);
    friend super_poly operator*(super_poly a, const rational &c) { return a *= c; }
    friend super_poly operator*(const rational &c, super_poly a) { return a *= c; }
    friend bool operator==(const super_poly &a, const super_poly &b);
    friend bool operator!=(const super_poly &a, const super_poly &b) { return !(a == b); }

private:
    static void normalize(std::vector<term> &terms);

    family_ptr fam_;
    std::vector<term> terms_;
};

super_poly pow(const super_poly &a, int k);

// D as an odd derivation: D(u^(m)) = u^(m+1), D(ab) = D(a)b + (-1)^{p(a)} a D(b).
super_poly apply_D(const super_poly &a);
super_poly apply_D(const super_poly &a, int k);

// Left partial derivative: the factor is moved to the front with its Koszul
// sign and then removed.
super_poly partial(const super_poly &a, var_key x);

// All distinct derived generators occurring in a.
std::vector<var_key> variables(const super_poly &a);

std::string to_string(const super_poly &a);
std::ostream &operator<<(std::ostream &os, const super_poly &a);

} // namespace superlax

#endif
