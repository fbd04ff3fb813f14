#include <algorithm>
#include <ostream>
#include <sstream>

#include <superlax/error.hpp>
#include <superlax/superpoly.hpp>

namespace superlax
{

int monomial::parity() const noexcept
{
    int p = 0;
    for (auto k : f_) {
        p ^= var_parity(k);
    }
    return p;
}

int monomial::weight() const noexcept
{
    int w = 0;
    for (auto k : f_) {
        w += var_ord(k);
    }
    return w;
}

int monomial::canonicalize(container &seq)
{
    int sign = 1;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const var_key x = seq[i];
        std::size_t j = i;
        while (j > 0 && seq[j - 1] > x) {
            if (var_parity(x) && var_parity(seq[j - 1])) {
                sign = -sign;
            }
            seq[j] = seq[j - 1];
            --j;
        }
        seq[j] = x;
        if (j > 0 && seq[j - 1] == x && var_parity(x)) {
            return 0;
        }
    }
    return sign;
}

int monomial::multiply(const monomial &a, const monomial &b, monomial &out)
{
    out.f_.clear();
    out.f_.reserve(a.f_.size() + b.f_.size());
    int odd_left = 0;
    for (auto k : a.f_) {
        odd_left += var_parity(k);
    }
    int sign = 1;
    std::size_t i = 0, j = 0;
    const std::size_t na = a.f_.size(), nb = b.f_.size();
    while (i < na && j < nb) {
        const var_key x = a.f_[i], y = b.f_[j];
        if (x < y) {
            odd_left -= var_parity(x);
            out.f_.push_back(x);
            ++i;
        } else if (y < x) {
            if (var_parity(y) && (odd_left & 1)) {
                sign = -sign;
            }
            out.f_.push_back(y);
            ++j;
        } else {
            if (var_parity(x)) {
                return 0;
            }
            out.f_.push_back(x);
            ++i;
        }
    }
    out.f_.insert(out.f_.end(), a.f_.begin() + static_cast<std::ptrdiff_t>(i), a.f_.end());
    out.f_.insert(out.f_.end(), b.f_.begin() + static_cast<std::ptrdiff_t>(j), b.f_.end());
    return sign;
}

bool operator<(const monomial &a, const monomial &b)
{
    if (a.f_.size() != b.f_.size()) {
        return a.f_.size() < b.f_.size();
    }
    return std::lexicographical_compare(a.f_.begin(), a.f_.end(), b.f_.begin(), b.f_.end());
}

super_poly::super_poly(const rational &c)
{
    if (sgn(c) != 0) {
        terms_.emplace_back(monomial(), c);
    }
}

super_poly super_poly::generator(const family_ptr &fam, int id, int ord)
{
    if (!fam) {
        throw unknown_generator("generator requested without a family");
    }
    const int p = fam->parity(id);
    super_poly r;
    r.fam_ = fam;
    monomial::container f{make_var(id, ord, p)};
    r.terms_.emplace_back(monomial::from_sorted(std::move(f)), rational(1));
    return r;
}

super_poly super_poly::from_terms(family_ptr fam, std::vector<term> terms)
{
    super_poly r;
    r.fam_ = std::move(fam);
    normalize(terms);
    r.terms_ = std::move(terms);
    return r;
}

void super_poly::normalize(std::vector<term> &terms)
{
    std::sort(terms.begin(), terms.end(), [](const term &x, const term &y) { return x.first < y.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < terms.size();) {
        std::size_t s = r + 1;
        rational c = terms[r].second;
        while (s < terms.size() && terms[s].first == terms[r].first) {
            c += terms[s].second;
            ++s;
        }
        if (sgn(c) != 0) {
            terms[w].first = std::move(terms[r].first);
            terms[w].second = std::move(c);
            ++w;
        }
        r = s;
    }
    terms.resize(w);
}

bool super_poly::is_constant() const noexcept
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

rational super_poly::constant_term() const
{
    if (!terms_.empty() && terms_[0].first.is_one()) {
        return terms_[0].second;
    }
    return rational(0);
}

bool super_poly::is_homogeneous() const noexcept
{
    for (const auto &t : terms_) {
        if (t.first.parity() != terms_[0].first.parity()) {
            return false;
        }
    }
    return true;
}

int super_poly::parity() const
{
    if (!is_homogeneous()) {
        throw parity_error("element is not parity-homogeneous: " + to_string(*this));
    }
    return terms_.empty() ? 0 : terms_[0].first.parity();
}

super_poly super_poly::part(int p) const
{
    super_poly r;
    r.fam_ = fam_;
    for (const auto &t : terms_) {
        if (t.first.parity() == (p & 1)) {
            r.terms_.push_back(t);
        }
    }
    return r;
}

int super_poly::max_order() const noexcept
{
    int m = -1;
    for (const auto &t : terms_) {
        for (auto k : t.first.factors()) {
            m = std::max(m, var_ord(k));
        }
    }
    return m;
}

super_poly super_poly::with_family(const family_ptr &fam) const
{
    super_poly r = *this;
    r.fam_ = merge_family(fam_, fam);
    return r;
}

super_poly &super_poly::operator+=(const super_poly &o)
{
    fam_ = merge_family(fam_, o.fam_);
    if (o.terms_.empty()) {
        return *this;
    }
    std::vector<term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].first < o.terms_[j].first) {
            merged.push_back(std::move(terms_[i++]));
        } else if (o.terms_[j].first < terms_[i].first) {
            merged.push_back(o.terms_[j++]);
        } else {
            rational c = terms_[i].second + o.terms_[j].second;
            if (sgn(c) != 0) {
                merged.emplace_back(std::move(terms_[i].first), std::move(c));
            }
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) {
        merged.push_back(std::move(terms_[i]));
    }
    for (; j < o.terms_.size(); ++j) {
        merged.push_back(o.terms_[j]);
    }
    terms_ = std::move(merged);
    return *this;
}

super_poly &super_poly::operator-=(const super_poly &o)
{
    return *this += -o;
}

super_poly &super_poly::operator*=(const rational &c)
{
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &t : terms_) {
        t.second *= c;
    }
    return *this;
}

super_poly super_poly::operator-() const
{
    super_poly r = *this;
    for (auto &t : r.terms_) {
        t.second = -t.second;
    }
    return r;
}

super_poly operator*(const super_poly &a, const super_poly &b)
{
    super_poly r;
    r.fam_ = merge_family(a.fam_, b.fam_);
    if (a.terms_.empty() || b.terms_.empty()) {
        return r;
    }
    if (a.is_constant()) {
        r.terms_ = b.terms_;
        return r *= a.terms_[0].second;
    }
    if (b.is_constant()) {
        r.terms_ = a.terms_;
        return r *= b.terms_[0].second;
    }
    std::vector<super_poly::term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    monomial m;
    for (const auto &ta : a.terms_) {
        for (const auto &tb : b.terms_) {
            const int s = monomial::multiply(ta.first, tb.first, m);
            if (s == 0) {
                continue;
            }
            rational c = ta.second * tb.second;
            if (s < 0) {
                c = -c;
            }
            out.emplace_back(m, std::move(c));
        }
    }
    super_poly::normalize(out);
    r.terms_ = std::move(out);
    return r;
}

bool operator==(const super_poly &a, const super_poly &b)
{
    if (!compatible(a.fam_, b.fam_) && !(a.is_zero() && b.is_zero())) {
        return false;
    }
    return a.terms_ == b.terms_;
}

super_poly pow(const super_poly &a, int k)
{
    if (k < 0) {
        throw error("negative power of a polynomial");
    }
    super_poly r(1);
    for (int i = 0; i < k; ++i) {
        r = r * a;
    }
    return r.with_family(a.family());
}

super_poly apply_D(const super_poly &a)
{
    std::vector<super_poly::term> out;
    for (const auto &[m, c] : a.terms()) {
        const auto &f = m.factors();
        int prefix_parity = 0;
        for (std::size_t r = 0; r < f.size(); ++r) {
            monomial::container seq = f;
            seq[r] = var_shift(seq[r], 1);
            int s = monomial::canonicalize(seq);
            if (s != 0) {
                if (prefix_parity) {
                    s = -s;
                }
                out.emplace_back(monomial::from_sorted(std::move(seq)), s > 0 ? c : rational(-c));
            }
            prefix_parity ^= var_parity(f[r]);
        }
    }
    return super_poly::from_terms(a.family(), std::move(out));
}

super_poly apply_D(const super_poly &a, int k)
{
    if (k < 0) {
        throw error("negative power of D applied to a polynomial");
    }
    super_poly r = a;
    for (int i = 0; i < k; ++i) {
        r = apply_D(r);
    }
    return r;
}

super_poly partial(const super_poly &a, var_key x)
{
    std::vector<super_poly::term> out;
    for (const auto &[m, c] : a.terms()) {
        const auto &f = m.factors();
        auto it = std::find(f.begin(), f.end(), x);
        if (it == f.end()) {
            continue;
        }
        monomial::container seq(f.begin(), it);
        seq.insert(seq.end(), it + 1, f.end());
        rational coeff = c;
        if (var_parity(x)) {
            int before = 0;
            for (auto jt = f.begin(); jt != it; ++jt) {
                before ^= var_parity(*jt);
            }
            if (before) {
                coeff = -coeff;
            }
        } else {
            coeff *= static_cast<long>(std::count(f.begin(), f.end(), x));
        }
        out.emplace_back(monomial::from_sorted(std::move(seq)), std::move(coeff));
    }
    return super_poly::from_terms(a.family(), std::move(out));
}

std::vector<var_key> variables(const super_poly &a)
{
    std::vector<var_key> vs;
    for (const auto &t : a.terms()) {
        vs.insert(vs.end(), t.first.factors().begin(), t.first.factors().end());
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

std::string to_string(const super_poly &a)
{
    if (a.is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : a.terms()) {
        if (!first) {
            os << (sgn(c) < 0 ? " - " : " + ");
        } else if (sgn(c) < 0) {
            os << "-";
        }
        first = false;
        const rational ac = abs(c);
        if (ac != 1 || m.is_one()) {
            os << ac.get_str();
            if (!m.is_one()) {
                os << "*";
            }
        }
        bool first_f = true;
        for (auto k : m.factors()) {
            if (!first_f) {
                os << "*";
            }
            first_f = false;
            if (a.family()) {
                os << a.family()->name(var_gen(k));
            } else {
                os << "x" << var_gen(k);
            }
            os << std::string(static_cast<std::size_t>(var_ord(k)), '\'');
        }
    }
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const super_poly &a)
{
    return os << to_string(a);
}

} // namespace superlax
