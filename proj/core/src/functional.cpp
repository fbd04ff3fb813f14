#include <algorithm>
#include <map>

#include <superlax/error.hpp>
#include <superlax/functional.hpp>

namespace superlax
{

namespace
{

int sign_pow(int e)
{
    return (e & 1) ? -1 : 1;
}

using signature = std::vector<int>;

signature signature_of(const monomial &m)
{
    signature s;
    for (auto k : m.factors()) {
        s.push_back(var_gen(k));
    }
    std::sort(s.begin(), s.end());
    return s;
}

// Enumerates the canonical monomials on the generator groups (id, multiplicity)
// with total derivative order w.
void enumerate_monomials(const family_ptr &fam, const std::vector<std::pair<int, int>> &groups, std::size_t gi,
                         int w, monomial::container &acc, std::vector<monomial> &out)
{
    if (gi == groups.size()) {
        if (w == 0) {
            monomial::container seq = acc;
            if (monomial::canonicalize(seq) != 0) {
                out.push_back(monomial::from_sorted(std::move(seq)));
            }
        }
        return;
    }
    const auto [gen, mult] = groups[gi];
    const int gp = fam->parity(gen);
    // Nondecreasing order sequences of length mult summing to at most w.
    std::vector<int> ords(static_cast<std::size_t>(mult), 0);
    auto rec = [&](auto &&self, int pos, int lo, int left) -> void {
        if (pos == mult) {
            for (int o : ords) {
                acc.push_back(make_var(gen, o, gp));
            }
            enumerate_monomials(fam, groups, gi + 1, left, acc, out);
            acc.resize(acc.size() - static_cast<std::size_t>(mult));
            return;
        }
        for (int o = lo; o <= left; ++o) {
            // An odd derived generator may occur once only.
            const bool odd = ((gp + o) & 1) != 0;
            if (odd && pos > 0 && ords[static_cast<std::size_t>(pos - 1)] == o) {
                continue;
            }
            ords[static_cast<std::size_t>(pos)] = o;
            self(self, pos + 1, o, left - o);
        }
    };
    rec(rec, 0, 0, w);
}

// Echelon basis keyed by leading monomial.
class echelon
{
public:
    void insert(super_poly v)
    {
        reduce(v);
        if (v.is_zero()) {
            return;
        }
        const rational lead = v.terms().back().second;
        v *= rational(1) / lead;
        const monomial key = v.terms().back().first;
        rows_.emplace(key, std::move(v));
    }
    bool contains(super_poly v) const
    {
        reduce(v);
        return v.is_zero();
    }

private:
    void reduce(super_poly &v) const
    {
        while (!v.is_zero()) {
            const auto &[m, c] = v.terms().back();
            auto it = rows_.find(m);
            if (it == rows_.end()) {
                return;
            }
            v -= it->second * c;
        }
    }

    std::map<monomial, super_poly> rows_;
};

} // namespace

super_poly var_deriv(const super_poly &a, int gen)
{
    super_poly r;
    r = r.with_family(a.family());
    if (a.is_zero() || !a.family()) {
        return r;
    }
    const int gp = a.family()->parity(gen);
    const int top = a.max_order();
    for (int m = 0; m <= top; ++m) {
        const var_key x = make_var(gen, m, gp);
        super_poly d = partial(a, x);
        if (d.is_zero()) {
            continue;
        }
        d = apply_D(d, m);
        if (sign_pow(m * gp + m * (m + 1) / 2) < 0) {
            d = -d;
        }
        r += d;
    }
    return r;
}

bool functional_is_zero(const super_poly &a)
{
    if (a.is_zero()) {
        return true;
    }
    std::map<std::pair<signature, int>, std::vector<super_poly::term>> comps;
    for (const auto &t : a.terms()) {
        comps[{signature_of(t.first), t.first.weight()}].push_back(t);
    }
    for (auto &[key, terms] : comps) {
        const auto &[sig, w] = key;
        if (sig.empty() || w == 0) {
            return false;
        }
        std::vector<std::pair<int, int>> groups;
        for (int g : sig) {
            if (!groups.empty() && groups.back().first == g) {
                ++groups.back().second;
            } else {
                groups.emplace_back(g, 1);
            }
        }
        std::vector<monomial> basis;
        monomial::container acc;
        enumerate_monomials(a.family(), groups, 0, w - 1, acc, basis);
        echelon ech;
        for (auto &m : basis) {
            ech.insert(apply_D(super_poly::from_terms(a.family(), {{m, rational(1)}})));
        }
        if (!ech.contains(super_poly::from_terms(a.family(), std::move(terms)))) {
            return false;
        }
    }
    return true;
}

namespace
{

class image_cache
{
public:
    explicit image_cache(const std::vector<super_poly> &images) : images_(images) {}

    const super_poly &get(var_key x)
    {
        auto it = cache_.find(x);
        if (it != cache_.end()) {
            return it->second;
        }
        const int g = var_gen(x);
        if (g >= static_cast<int>(images_.size())) {
            throw unknown_generator("no image for generator id " + std::to_string(g));
        }
        const super_poly &img = images_[static_cast<std::size_t>(g)];
        if (!img.is_zero() && img.parity() != ((var_parity(x) + var_ord(x)) & 1)) {
            throw parity_error("image parity differs from generator parity");
        }
        return cache_.emplace(x, apply_D(img, var_ord(x))).first->second;
    }

private:
    const std::vector<super_poly> &images_;
    std::map<var_key, super_poly> cache_;
};

family_ptr images_family(const std::vector<super_poly> &images)
{
    family_ptr f;
    for (const auto &i : images) {
        f = merge_family(f, i.family());
    }
    return f;
}

} // namespace

super_poly substitute(const super_poly &a, const std::vector<super_poly> &images)
{
    image_cache cache(images);
    super_poly r;
    r = r.with_family(images_family(images));
    for (const auto &[m, c] : a.terms()) {
        super_poly t(c);
        for (auto x : m.factors()) {
            t = t * cache.get(x);
        }
        r += t;
    }
    return r;
}

super_poly apply_evolutionary(const super_poly &a, const std::vector<super_poly> &images)
{
    image_cache cache(images);
    super_poly r;
    r = r.with_family(merge_family(a.family(), images_family(images)));
    for (const auto &[m, c] : a.terms()) {
        const auto &f = m.factors();
        for (std::size_t pos = 0; pos < f.size(); ++pos) {
            monomial::container pre(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(pos));
            monomial::container post(f.begin() + static_cast<std::ptrdiff_t>(pos) + 1, f.end());
            super_poly left = super_poly::from_terms(a.family(), {{monomial::from_sorted(std::move(pre)), c}});
            super_poly right = super_poly::from_terms(a.family(), {{monomial::from_sorted(std::move(post)), rational(1)}});
            r += left * cache.get(f[pos]) * right;
        }
    }
    return r;
}

} // namespace superlax
