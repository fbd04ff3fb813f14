#ifndef SUPERLAX_FUNCTIONAL_HPP
#define SUPERLAX_FUNCTIONAL_HPP

#include <vector>

#include <superlax/superpoly.hpp>

namespace superlax
{

// Variational derivative with respect to the generator with id gen:
//   delta a / delta u = sum_m (-1)^{m p(u) + m(m+1)/2} D^m (d a / d u^(m)),
// where d/du^(m) is the left partial derivative.
super_poly var_deriv(const super_poly &a, int gen);

// Decides whether a lies in D(P) by exact linear algebra on each
// (generator multiset, total derivative order) component.
bool functional_is_zero(const super_poly &a);

// The class of a density modulo total derivatives.
class functional
{
public:
    functional() = default;
    explicit functional(super_poly rep) : rep_(std::move(rep)) {}

    const super_poly &representative() const noexcept { return rep_; }
    bool is_zero() const { return functional_is_zero(rep_); }

    friend functional operator+(const functional &a, const functional &b) { return functional(a.rep_ + b.rep_); }
    friend functional operator-(const functional &a, const functional &b) { return functional(a.rep_ - b.rep_); }
    friend bool operator==(const functional &a, const functional &b) { return functional_is_zero(a.rep_ - b.rep_); }

private:
    super_poly rep_;
};

// Differential-algebra homomorphism u_g^(m) -> D^m images[g]. Each image must
// have the parity of its generator; the result lives in the images' family.
super_poly substitute(const super_poly &a, const std::vector<super_poly> &images);

// The even evolutionary derivation X with X(u_g) = images[g], X D = D X.
super_poly apply_evolutionary(const super_poly &a, const std::vector<super_poly> &images);

} // namespace superlax

#endif
