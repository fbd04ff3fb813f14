#include <cstdlib>
#include <ostream>
#include <sstream>
#include <vector>

#include <superlax/error.hpp>
#include <superlax/spdo.hpp>

namespace superlax
{

truncation default_truncation()
{
    static const truncation t = [] {
        truncation r;
        if (const char *env = std::getenv("SUPERLAX_DEPTH")) {
            const int d = std::atoi(env);
            if (d > 0) {
                r.depth = d;
            }
        }
        return r;
    }();
    return t;
}

spdo::spdo(const super_poly &a)
{
    if (!a.is_zero()) {
        c_.emplace(0, a);
    }
}

spdo spdo::D(int k)
{
    spdo r;
    r.c_.emplace(k, super_poly(1));
    return r;
}

spdo spdo::term(const super_poly &a, int k)
{
    spdo r;
    if (!a.is_zero()) {
        r.c_.emplace(k, a);
    }
    return r;
}

super_poly spdo::coeff(int k) const
{
    if (k < floor_) {
        throw truncation_error("coefficient of D^" + std::to_string(k) + " lies below the truncation floor "
                               + std::to_string(floor_));
    }
    auto it = c_.find(k);
    return it == c_.end() ? super_poly() : it->second;
}

bool spdo::is_homogeneous() const
{
    int p = -1;
    for (const auto &[k, a] : c_) {
        if (!a.is_homogeneous()) {
            return false;
        }
        const int q = (a.parity() + k) & 1;
        if (p >= 0 && q != p) {
            return false;
        }
        p = q;
    }
    return true;
}

int spdo::parity() const
{
    if (!is_homogeneous()) {
        throw parity_error("operator is not parity-homogeneous: " + to_string(*this));
    }
    return c_.empty() ? 0 : (c_.begin()->second.parity() + c_.begin()->first) & 1;
}

spdo spdo::part(int p) const
{
    spdo r;
    r.floor_ = floor_;
    for (const auto &[k, a] : c_) {
        super_poly b = a.part((p + k) & 1);
        if (!b.is_zero()) {
            r.c_.emplace(k, std::move(b));
        }
    }
    return r;
}

family_ptr spdo::family() const
{
    family_ptr f;
    for (const auto &kv : c_) {
        f = merge_family(f, kv.second.family());
    }
    return f;
}

spdo spdo::truncated(int f) const
{
    spdo r = *this;
    r.set_floor(f);
    return r;
}

void spdo::set_floor(int f)
{
    if (f <= floor_) {
        return;
    }
    floor_ = f;
    c_.erase(c_.upper_bound(f), c_.end());
}

void spdo::add_term(int k, const super_poly &a)
{
    if (k < floor_ || a.is_zero()) {
        return;
    }
    auto it = c_.find(k);
    if (it == c_.end()) {
        c_.emplace(k, a);
        return;
    }
    it->second += a;
    if (it->second.is_zero()) {
        c_.erase(it);
    }
}

spdo &spdo::operator+=(const spdo &o)
{
    set_floor(o.floor_);
    for (const auto &[k, a] : o.c_) {
        add_term(k, a);
    }
    return *this;
}

spdo &spdo::operator-=(const spdo &o)
{
    return *this += -o;
}

spdo spdo::operator-() const
{
    spdo r = *this;
    for (auto &kv : r.c_) {
        kv.second = -kv.second;
    }
    return r;
}

spdo operator*(spdo a, const rational &c)
{
    if (sgn(c) == 0) {
        a.c_.clear();
        return a;
    }
    for (auto &kv : a.c_) {
        kv.second *= c;
    }
    return a;
}

namespace
{

int floor_half(int i)
{
    return i >= 0 ? i / 2 : -((-i + 1) / 2);
}

class deriv_cache
{
public:
    explicit deriv_cache(super_poly b) { d_.push_back(std::move(b)); }
    const super_poly &get(int k)
    {
        while (static_cast<int>(d_.size()) <= k) {
            d_.push_back(apply_D(d_.back()));
        }
        return d_[static_cast<std::size_t>(k)];
    }

private:
    std::vector<super_poly> d_;
};

// Expands D^i b (b homogeneous of parity pb) as sum coeff * D^e for e >= min_exp:
//   D^{2n} b   = sum_j C(n,j) b^(2j) D^{2n-2j}
//   D^{2n+1} b = sum_j C(n,j) ((-1)^{pb} b^(2j) D^{2n+1-2j} + b^(2j+1) D^{2n-2j})
// Returns true when a nonzero term was cut off.
bool expand_D_power(int i, deriv_cache &b, int pb, int min_exp, std::vector<std::pair<int, super_poly>> &out)
{
    const int n = floor_half(i);
    const bool odd = (i & 1) != 0;
    rational binom(1);
    for (int j = 0;; ++j) {
        if (n >= 0 && j > n) {
            return false;
        }
        const int e_hi = i - 2 * j;
        // Candidate terms in decreasing exponent order.
        for (int s = 0; s < (odd ? 2 : 1); ++s) {
            const int e = e_hi - s;
            const super_poly &d = b.get(2 * j + s);
            if (d.is_zero()) {
                return false;
            }
            if (e < min_exp) {
                return true;
            }
            rational c = binom;
            if (odd && s == 0 && pb) {
                c = -c;
            }
            out.emplace_back(e, d * c);
        }
        binom = binom * (n - j) / (j + 1);
    }
}

} // namespace

spdo compose(const spdo &a, const spdo &b, truncation t)
{
    spdo r;
    if ((a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact())) {
        return r;
    }
    int inherent = exact_floor;
    if (!a.is_exact()) {
        inherent = std::max(inherent, a.floor() + (b.is_zero() ? b.floor() : b.order()));
    }
    if (!b.is_exact()) {
        inherent = std::max(inherent, (a.is_zero() ? a.floor() : a.order()) + b.floor());
    }
    const int work = std::max(inherent, t.floor());
    bool cut = false;
    std::map<int, super_poly, std::greater<int>> acc;
    std::vector<std::pair<int, super_poly>> ex;
    for (const auto &[j, bj] : b.coeffs()) {
        for (int pb = 0; pb < 2; ++pb) {
            super_poly part = bj.part(pb);
            if (part.is_zero()) {
                continue;
            }
            deriv_cache cache(std::move(part));
            for (const auto &[i, ai] : a.coeffs()) {
                if (i + j < work && i >= 0) {
                    // Every term of D^i b has exponent <= i.
                    cut = true;
                    continue;
                }
                ex.clear();
                cut = expand_D_power(i, cache, pb, work - j, ex) || cut;
                for (auto &[e, c] : ex) {
                    auto &slot = acc[e + j];
                    slot += ai * c;
                }
            }
        }
    }
    r.set_floor(cut ? work : inherent);
    for (auto &[k, c] : acc) {
        r.add_term(k, c);
    }
    return r;
}

spdo power(const spdo &a, int k, truncation t)
{
    if (k < 0) {
        return power(inverse(a, t), -k, t);
    }
    if (k == 0) {
        return spdo(1);
    }
    // Partial products keep what the remaining factors can still lift above the floor.
    const int top = a.order();
    spdo r = a;
    for (int i = 1; i < k; ++i) {
        r = compose(r, a, truncation::to_floor(t.floor() - top * (k - 1 - i)));
    }
    if (!r.is_exact()) {
        r.set_floor(t.floor());
    }
    return r;
}

spdo inverse(const spdo &a, truncation t)
{
    if (a.is_zero() || a.coeff(a.order()) != super_poly(1)) {
        throw error("inverse requires a leading coefficient equal to 1");
    }
    const int r = a.order();
    spdo s = spdo::D(-r);
    const int g = t.floor();
    for (int step = 1; -r - step >= g; ++step) {
        if (!a.is_exact() && a.floor() - r > -step) {
            throw truncation_error("operator known only down to D^" + std::to_string(a.floor())
                                   + ", too shallow for the requested inverse");
        }
        const spdo p = compose(a, s, truncation::to_floor(-step));
        super_poly x = p.coeff(-step);
        if ((r * step) % 2 == 0) {
            x = -x;
        }
        s.add_term(-r - step, x);
    }
    s.set_floor(g);
    return s;
}

spdo adjoint(const spdo &a, truncation t)
{
    spdo r;
    for (const auto &[m, am] : a.coeffs()) {
        for (int p = 0; p < 2; ++p) {
            super_poly part = am.part(p);
            if (part.is_zero()) {
                continue;
            }
            spdo term = compose(spdo::D(m), spdo(part), t);
            const int e = m * p + m * (m + 1) / 2;
            r += (e & 1) ? -term : term;
        }
    }
    if (!a.is_exact()) {
        r.set_floor(a.floor());
    }
    return r;
}

spdo project(const spdo &a, part_kind which)
{
    spdo r;
    if (which == part_kind::plus) {
        if (a.floor() > 0) {
            throw truncation_error("differential part needs the operator known down to D^0");
        }
        for (const auto &[k, c] : a.coeffs()) {
            if (k >= 0) {
                r.add_term(k, c);
            }
        }
        return r;
    }
    r.set_floor(a.floor());
    for (const auto &[k, c] : a.coeffs()) {
        if (k < 0) {
            r.add_term(k, c);
        }
    }
    return r;
}

super_poly residue(const spdo &a)
{
    return a.coeff(-1);
}

spdo monic_root(const spdo &L, int q, int f)
{
    const int N = L.order();
    if (q < 1 || L.is_zero() || L.coeff(N) != super_poly(1)) {
        throw no_root_error("root requires a monic operator and q >= 1");
    }
    if (N % q != 0) {
        throw no_root_error("q = " + std::to_string(q) + " does not divide the order " + std::to_string(N));
    }
    if (!L.is_homogeneous()) {
        throw no_root_error("root requires a parity-homogeneous operator");
    }
    const int r = N / q;
    if (r % 2 != 0 && q % 2 == 0) {
        throw no_root_error("no monic " + std::to_string(q) + "-th root with odd leading power D^" + std::to_string(r));
    }
    spdo R = spdo::D(r);
    for (int step = 1; r - step >= f; ++step) {
        const int e = N - step;
        const spdo P = power(R, q, truncation::to_floor(e));
        super_poly disc = L.coeff(e) - P.coeff(e);
        // The unknown x D^{r-step} enters the D^e coefficient of R^q as c*x.
        int c = 0;
        for (int j = 0; j < q; ++j) {
            c += ((r * j * step) % 2 == 0) ? 1 : -1;
        }
        if (c == 0) {
            if (!disc.is_zero()) {
                throw no_root_error("root equation is obstructed at D^" + std::to_string(e));
            }
            continue;
        }
        R.add_term(r - step, disc * make_rational(1, c));
    }
    R.set_floor(f);
    return R;
}

spdo fractional_power(const spdo &L, int p, int q, truncation t)
{
    const int N = L.order();
    if (q < 1 || N % q != 0) {
        throw no_root_error("q must divide the order of L");
    }
    const int r = N / q;
    if (p == 0) {
        return spdo(1);
    }
    if (p > 0) {
        const spdo R = monic_root(L, q, t.floor() - r * (p - 1));
        return power(R, p, t);
    }
    const int m = -p;
    const int g = t.floor() + r * (m - 1);
    const spdo R = monic_root(L, q, g + 2 * r);
    const spdo S = inverse(R, truncation::to_floor(g));
    return power(S, m, t);
}

bool agree_above(const spdo &a, const spdo &b, int f)
{
    if (a.floor() > f || b.floor() > f) {
        throw truncation_error("comparison floor below operand floor");
    }
    return a.truncated(f).coeffs() == b.truncated(f).coeffs();
}

std::string to_string(const spdo &a)
{
    std::ostringstream os;
    bool first = true;
    for (const auto &[k, c] : a.coeffs()) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << to_string(c) << ")";
        if (k != 0) {
            os << "*D^" << k;
        }
    }
    if (first) {
        os << "0";
    }
    if (!a.is_exact()) {
        os << " + O(D^" << a.floor() - 1 << ")";
    }
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const spdo &a)
{
    return os << to_string(a);
}

} // namespace superlax
