#include <ostream>
#include <sstream>
#include <vector>

#include <superlax/chiop.hpp>
#include <superlax/error.hpp>

namespace superlax
{

chi_op::chi_op(const super_poly &c)
{
    add_term({}, c);
}

chi_op::chi_op(const spdo &a)
{
    floor_ = a.floor();
    for (const auto &[k, c] : a.coeffs()) {
        add_term({0, 0, k}, c);
    }
}

chi_op chi_op::chi(int n)
{
    return term({n, 0, 0}, super_poly(1));
}

chi_op chi_op::gamma(int n)
{
    return term({0, n, 0}, super_poly(1));
}

chi_op chi_op::D(int k)
{
    return term({0, 0, k}, super_poly(1));
}

chi_op chi_op::term(chi_key k, const super_poly &c)
{
    chi_op r;
    r.add_term(k, c);
    return r;
}

super_poly chi_op::coeff(chi_key k) const
{
    if (k.dpow < floor_) {
        throw truncation_error("coefficient below the truncation floor");
    }
    auto it = t_.find(k);
    return it == t_.end() ? super_poly() : it->second;
}

void chi_op::add_term(chi_key k, const super_poly &c)
{
    if (k.dpow < floor_ || c.is_zero()) {
        return;
    }
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) {
        t_.erase(it);
    }
}

void chi_op::set_floor(int f)
{
    if (f <= floor_) {
        return;
    }
    floor_ = f;
    for (auto it = t_.begin(); it != t_.end();) {
        it = it->first.dpow < f ? t_.erase(it) : std::next(it);
    }
}

family_ptr chi_op::family() const
{
    family_ptr f;
    for (const auto &kv : t_) {
        f = merge_family(f, kv.second.family());
    }
    return f;
}

chi_op &chi_op::operator+=(const chi_op &o)
{
    set_floor(o.floor_);
    for (const auto &[k, c] : o.t_) {
        add_term(k, c);
    }
    return *this;
}

chi_op &chi_op::operator-=(const chi_op &o)
{
    return *this += -o;
}

chi_op chi_op::operator-() const
{
    chi_op r = *this;
    for (auto &kv : r.t_) {
        kv.second = -kv.second;
    }
    return r;
}

chi_op operator*(chi_op a, const rational &c)
{
    if (sgn(c) == 0) {
        a.t_.clear();
        return a;
    }
    for (auto &kv : a.t_) {
        kv.second *= c;
    }
    return a;
}

namespace
{

struct move_term {
    int alpha;
    int beta;
    int shift;
    int coeff;
};

// D^k chi^a gamma^b = sum coeff chi^alpha gamma^beta D^{k - shift}, using
// D^k chi = -chi D^k - 2 chi^2 D^{k-1} for odd k (even powers of D and chi are central).
void move_past_D(int k, int a, int b, std::vector<move_term> &out)
{
    out.clear();
    move_term xs[2];
    int nx = 0;
    if ((k & 1) && (a & 1)) {
        xs[nx++] = {a, 0, 0, -1};
        xs[nx++] = {a + 1, 0, 1, -2};
    } else {
        xs[nx++] = {a, 0, 0, 1};
    }
    for (int i = 0; i < nx; ++i) {
        const auto &x = xs[i];
        const int kk = k - x.shift;
        if ((kk & 1) && (b & 1)) {
            out.push_back({x.alpha, b, x.shift, -x.coeff});
            out.push_back({x.alpha, b + 1, x.shift + 1, -2 * x.coeff});
        } else {
            out.push_back({x.alpha, b, x.shift, x.coeff});
        }
    }
}

chi_op lambda_op(indeterminate which)
{
    switch (which) {
    case indeterminate::chi:
        return chi_op::chi();
    case indeterminate::gamma:
        return chi_op::gamma();
    default:
        return chi_op::chi() + chi_op::gamma();
    }
}

} // namespace

chi_op mul(const chi_op &a, const chi_op &b, truncation t)
{
    chi_op r;
    if ((a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact())) {
        return r;
    }
    int inherent = exact_floor;
    if (!a.is_exact()) {
        inherent = std::max(inherent, a.floor() + (b.is_zero() ? b.floor() : b.top_dpow()));
    }
    if (!b.is_exact()) {
        inherent = std::max(inherent, (a.is_zero() ? a.floor() : a.top_dpow()) + b.floor());
    }
    const int work = std::max(inherent, t.floor());
    bool cut = false;
    std::vector<move_term> moves;
    chi_op acc;
    for (const auto &[ka, ca] : a.terms()) {
        for (int pc = 0; pc < 2; ++pc) {
            const super_poly cpart = ca.part(pc);
            if (cpart.is_zero()) {
                continue;
            }
            for (const auto &[kb, cb] : b.terms()) {
                move_past_D(ka.dpow, kb.chi, kb.gamma, moves);
                for (const auto &mv : moves) {
                    int sign = mv.coeff;
                    if (((mv.alpha + mv.beta) * pc) & 1) {
                        sign = -sign;
                    }
                    if ((ka.gamma * mv.alpha) & 1) {
                        sign = -sign;
                    }
                    const spdo prod = compose(spdo::term(cpart, ka.dpow - mv.shift), spdo::term(cb, kb.dpow),
                                              truncation::to_floor(work));
                    if (!prod.is_exact()) {
                        cut = true;
                    }
                    const chi_key base{ka.chi + mv.alpha, ka.gamma + mv.beta, 0};
                    for (const auto &[e, c] : prod.coeffs()) {
                        acc.add_term({base.chi, base.gamma, e}, c * rational(sign));
                    }
                }
            }
        }
    }
    acc.set_floor(cut ? work : inherent);
    return acc;
}

chi_op mul(const chi_op &a, const chi_op &b, const chi_op &c, truncation t)
{
    const int top_c = c.is_zero() ? 0 : c.top_dpow();
    return mul(mul(a, b, truncation::to_floor(t.floor() - top_c)), c, t);
}

chi_op shift_power(int k, indeterminate which, truncation t)
{
    const chi_op lam = lambda_op(which);
    const chi_op base = chi_op::D() + lam;
    if (k == 0) {
        return chi_op(super_poly(1));
    }
    if (k > 0) {
        chi_op r = base;
        for (int i = 1; i < k; ++i) {
            r = mul(r, base, truncation::to_floor(t.floor() - (k - 1 - i)));
        }
        return r;
    }
    const int m = -k;
    const int g = t.floor() + (m - 1);
    // (D + lambda)^{-1} = (D + lambda) sum_j lambda^{2j} D^{-2j-2}
    const chi_op lam2 = mul(lam, lam, truncation{0});
    chi_op series;
    chi_op lam_pow(super_poly(1));
    for (int j = 0; -2 * j - 2 >= g - 1; ++j) {
        series += mul(lam_pow, chi_op::D(-2 * j - 2), truncation::to_floor(g - 1));
        lam_pow = mul(lam_pow, lam2, truncation{0});
    }
    series.set_floor(g - 1);
    const chi_op inv = mul(base, series, truncation::to_floor(g));
    chi_op r = inv;
    for (int i = 1; i < m; ++i) {
        r = mul(r, inv, truncation::to_floor(t.floor() + (m - 1 - i)));
    }
    return r;
}

chi_op substitute_shift(const spdo &a, indeterminate which, truncation t)
{
    chi_op r;
    for (const auto &[k, c] : a.coeffs()) {
        if (k < t.floor()) {
            r.set_floor(t.floor());
            continue;
        }
        r += mul(chi_op(c), shift_power(k, which, t), t);
    }
    if (!a.is_exact()) {
        r.set_floor(a.floor());
    }
    return r;
}

chi_op collapse(const chi_op &a)
{
    if (!a.is_exact()) {
        throw truncation_error("cannot apply a truncated operator to 1");
    }
    chi_op r;
    for (const auto &[k, c] : a.terms()) {
        if (k.dpow < 0) {
            throw error("cannot apply an operator with negative powers of D to 1");
        }
        if (k.dpow == 0) {
            r.add_term(k, c);
        }
    }
    return r;
}

chi_op project(const chi_op &a, part_kind which)
{
    chi_op r;
    if (which == part_kind::plus) {
        if (a.floor() > 0) {
            throw truncation_error("differential part needs the operator known down to D^0");
        }
        for (const auto &[k, c] : a.terms()) {
            if (k.dpow >= 0) {
                r.add_term(k, c);
            }
        }
        return r;
    }
    r.set_floor(a.floor());
    for (const auto &[k, c] : a.terms()) {
        if (k.dpow < 0) {
            r.add_term(k, c);
        }
    }
    return r;
}

chi_op dcoeff(const chi_op &a, int k)
{
    if (k < a.floor()) {
        throw truncation_error("coefficient of D^" + std::to_string(k) + " lies below the truncation floor");
    }
    chi_op r;
    for (const auto &[key, c] : a.terms()) {
        if (key.dpow == k) {
            r.add_term({key.chi, key.gamma, 0}, c);
        }
    }
    return r;
}

chi_op rename_chi(const chi_op &value, indeterminate lambda)
{
    if (lambda == indeterminate::chi) {
        return value;
    }
    chi_op r;
    const chi_op lam = lambda_op(lambda);
    for (const auto &[k, c] : value.terms()) {
        if (k.gamma != 0 || k.dpow != 0) {
            throw error("rename_chi expects a value in chi alone");
        }
        chi_op p(super_poly(1));
        for (int i = 0; i < k.chi; ++i) {
            p = mul(p, lam, truncation{0});
        }
        r += mul(p, chi_op(c), truncation{0});
    }
    return r;
}

super_poly at_chi_zero(const chi_op &value)
{
    super_poly r;
    for (const auto &[k, c] : value.terms()) {
        if (k.chi == 0 && k.gamma == 0 && k.dpow == 0) {
            r += c;
        }
    }
    return r;
}

std::map<int, super_poly> chi_coefficients(const chi_op &value)
{
    std::map<int, super_poly> r;
    for (const auto &[k, c] : value.terms()) {
        if (k.gamma != 0 || k.dpow != 0) {
            throw error("not a bracket value in chi alone");
        }
        r[k.chi] += c;
    }
    return r;
}

std::string to_string(const chi_op &a)
{
    std::ostringstream os;
    bool first = true;
    for (const auto &[k, c] : a.terms()) {
        if (!first) {
            os << " + ";
        }
        first = false;
        if (k.chi) {
            os << "chi^" << k.chi << "*";
        }
        if (k.gamma) {
            os << "gamma^" << k.gamma << "*";
        }
        os << "(" << to_string(c) << ")";
        if (k.dpow) {
            os << "*D^" << k.dpow;
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

std::ostream &operator<<(std::ostream &os, const chi_op &a)
{
    return os << to_string(a);
}

} // namespace superlax
