#include <numeric>

#include <superlax/error.hpp>
#include <superlax/hierarchy.hpp>

#include "parallel.hpp"

namespace superlax
{

namespace
{

// L^{p/q} with the fraction reduced; integer exponents stay exact.
spdo lax_power(const spdo &L, int p, int q, truncation t)
{
    const int g = std::gcd(p, q);
    p /= g == 0 ? 1 : g;
    q /= g == 0 ? 1 : g;
    if (q < 0) {
        p = -p;
        q = -q;
    }
    if (p == 0) {
        return spdo(1);
    }
    if (q == 1) {
        return power(L, p, t);
    }
    return fractional_power(L, p, q, t);
}

// The root order q used for densities: n for N = 2n, N for odd N.
int density_root(int N)
{
    return N % 2 == 0 ? N / 2 : N;
}

std::vector<super_poly> coefficient_tuple(const spdo &M, int N, const family_ptr &fam)
{
    if (M.order() > N - 1) {
        throw error("Lax flow has order " + std::to_string(M.order()) + " >= N");
    }
    std::vector<super_poly> out;
    for (int i = 1; i <= N; ++i) {
        out.push_back(M.coeff(N - i).with_family(fam));
    }
    return out;
}

spdo commutator_with_L(const spdo &A, const spdo &L, truncation t)
{
    return compose(A, L, t) - compose(L, A, t);
}

std::vector<super_poly> bracket_flow(const bracket_table &table, const super_poly &h, int N)
{
    const family_ptr &fam = table.family();
    std::vector<super_poly> out;
    for (int i = 0; i < N; ++i) {
        out.push_back(at_chi_zero(master_eval(table, h.with_family(fam), super_poly::generator(fam, i))).with_family(fam));
    }
    return out;
}

super_poly residue_density(int N, int l, truncation t)
{
    const family_ptr fam = generator_family::wn(N);
    return residue(lax_power(lax_operator(fam), l, density_root(N), t)).with_family(fam);
}

} // namespace

flow_spec flow_spec::make(int N, int k)
{
    if (N < 1 || k < 1) {
        throw kind_mismatch("flows need N >= 1 and k >= 1");
    }
    flow_spec f;
    f.N = N;
    f.k = k;
    f.num = N % 2 == 0 ? k : 2 * k;
    f.den = N % 2 == 0 ? N / 2 : N;
    const int g = std::gcd(f.num, f.den);
    f.num /= g;
    f.den /= g;
    return f;
}

std::vector<super_poly> flow_rhs(const flow_spec &f, truncation t)
{
    const family_ptr fam = generator_family::wn(f.N);
    const spdo L = lax_operator(fam);
    const spdo A = project(lax_power(L, f.num, f.den, t), part_kind::plus);
    return coefficient_tuple(commutator_with_L(A, L, t), f.N, fam);
}

density conserved_density(int N, int l, truncation t)
{
    if (l < 1) {
        throw kind_mismatch("density index must be positive");
    }
    density d;
    d.N = N;
    d.l = l;
    const super_poly res = residue_density(N, l, t);
    if (N % 2 == 0) {
        d.h = functional(res * make_rational(-(N / 2), l));
        return d;
    }
    if (l % 2 == 0) {
        if (!functional_is_zero(res)) {
            throw error("Res L^{" + std::to_string(l) + "/" + std::to_string(N) + "} is not a total derivative");
        }
        d.trivial = true;
        d.h = functional(super_poly(0).with_family(generator_family::wn(N)));
        return d;
    }
    d.h = functional(res * make_rational(N, l));
    return d;
}

bool check_density_variation(const density &d, truncation t)
{
    if (d.trivial) {
        return var_deriv_L(d.h.representative(), d.N, t).is_zero();
    }
    const int q = density_root(d.N);
    const spdo L = lax_operator(generator_family::wn(d.N));
    spdo expected = project(lax_power(L, d.l - q, q, t), part_kind::minus);
    if (d.N % 2 == 0) {
        expected = -expected;
    }
    const spdo got = var_deriv_L(d.h.representative(), d.N, t);
    // Only the D^{-1} .. D^{-N} coefficients pair with a variation of L.
    return agree_above(got, expected, -d.N);
}

int hamiltonian_index(int N, int q)
{
    if (N % 2 == 0) {
        throw kind_mismatch("the even linear Hamiltonian index needs odd N");
    }
    const flow_spec f = flow_spec::make(N, q);
    // m/N - 1 = num/den.
    const rational m = (make_rational(f.num, f.den) + 1) * N;
    if (m.get_den() != 1 || m.get_num().get_si() % 2 == 0) {
        throw error("no odd density index matches flow " + std::to_string(q));
    }
    return static_cast<int>(m.get_num().get_si());
}

bool hierarchy_report::ok() const
{
    for (const auto &c : checks) {
        if (!c.ok) {
            return false;
        }
    }
    return true;
}

hierarchy_report verify_hierarchy(int N, const std::vector<int> &flows, const std::vector<int> &densities,
                                  truncation t)
{
    hierarchy_report rep;
    rep.N = N;
    std::vector<std::vector<super_poly>> F(flows.size());
    detail::parallel_for(static_cast<int>(flows.size()), [&](int a) {
        F[static_cast<std::size_t>(a)] = flow_rhs(flow_spec::make(N, flows[static_cast<std::size_t>(a)]), t);
    });

    for (std::size_t a = 0; a < flows.size(); ++a) {
        for (std::size_t b = a + 1; b < flows.size(); ++b) {
            rep.checks.push_back({"commute", flows[a], flows[b], true});
        }
        for (int l : densities) {
            rep.checks.push_back({"conserved", flows[a], l, true});
        }
        if (N % 2 == 0) {
            rep.checks.push_back({"hamiltonian:quadratic", flows[a], flows[a], true});
            rep.checks.push_back({"hamiltonian:odd_linear", flows[a], flows[a] + N / 2, true});
        } else {
            rep.checks.push_back({"hamiltonian:even_linear", flows[a], hamiltonian_index(N, flows[a]), true});
        }
    }

    const auto flow_of = [&](int k) -> const std::vector<super_poly> & {
        for (std::size_t a = 0; a < flows.size(); ++a) {
            if (flows[a] == k) {
                return F[a];
            }
        }
        throw error("unknown flow");
    };

    // Residues and Hamiltonian densities are shared across checks.
    std::vector<int> res_index(densities);
    std::vector<int> ham_index;
    for (const auto &c : rep.checks) {
        if (c.kind.rfind("hamiltonian", 0) == 0) {
            ham_index.push_back(c.l);
        }
    }
    std::vector<super_poly> res(res_index.size());
    std::vector<super_poly> ham(ham_index.size());
    detail::parallel_for(static_cast<int>(res.size() + ham.size()), [&](int idx) {
        const auto i = static_cast<std::size_t>(idx);
        if (i < res.size()) {
            res[i] = residue_density(N, res_index[i], t);
        } else {
            ham[i - res.size()] = conserved_density(N, ham_index[i - res.size()], t).h.representative();
        }
    });
    const auto lookup = [](const std::vector<int> &keys, const std::vector<super_poly> &vals, int key) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (keys[i] == key) {
                return vals[i];
            }
        }
        throw error("unknown density");
    };

    detail::parallel_for(static_cast<int>(rep.checks.size()), [&](int idx) {
        hierarchy_check &c = rep.checks[static_cast<std::size_t>(idx)];
        const std::vector<super_poly> &Fk = flow_of(c.k);
        if (c.kind == "commute") {
            const std::vector<super_poly> &Fl = flow_of(c.l);
            for (int i = 0; i < N && c.ok; ++i) {
                const auto ii = static_cast<std::size_t>(i);
                c.ok = (apply_evolutionary(Fl[ii], Fk) - apply_evolutionary(Fk[ii], Fl)).is_zero();
            }
        } else if (c.kind == "conserved") {
            c.ok = functional_is_zero(apply_evolutionary(lookup(res_index, res, c.l), Fk));
        } else {
            const gd_kind kind = parse_gd_kind(c.kind.substr(c.kind.find(':') + 1));
            const super_poly h = lookup(ham_index, ham, c.l);
            const std::vector<super_poly> X = bracket_flow(generator_table(kind, N), h, N);
            for (int i = 0; i < N && c.ok; ++i) {
                c.ok = X[static_cast<std::size_t>(i)] == Fk[static_cast<std::size_t>(i)];
            }
        }
    });
    return rep;
}

hierarchy_report verify_hierarchy(int N, int kmax, truncation t)
{
    std::vector<int> ks(static_cast<std::size_t>(kmax));
    std::iota(ks.begin(), ks.end(), 1);
    return verify_hierarchy(N, ks, ks, t);
}

bool root_flow_compatible(int N, int k, truncation t)
{
    const flow_spec f = flow_spec::make(N, k);
    const family_ptr fam = generator_family::wn(N);
    const spdo L = lax_operator(fam);
    const int q = density_root(N);
    const spdo R = lax_power(L, 1, q, t);
    const spdo A = project(lax_power(L, f.num, f.den, t), part_kind::plus);
    const std::vector<super_poly> F = flow_rhs(f, t);
    spdo lhs;
    for (const auto &[e, c] : R.coeffs()) {
        lhs.add_term(e, apply_evolutionary(c, F));
    }
    lhs.set_floor(R.floor());
    const spdo rhs = compose(A, R, t) - compose(R, A, t);
    return agree_above(lhs, rhs, std::max({lhs.floor(), rhs.floor(), t.floor()}));
}

bool depth_stable(int N, int k, truncation t, int extra)
{
    const flow_spec f = flow_spec::make(N, k);
    return flow_rhs(f, t) == flow_rhs(f, truncation{t.depth + extra});
}

} // namespace superlax
