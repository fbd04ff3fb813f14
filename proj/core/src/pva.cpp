#include <algorithm>
#include <map>
#include <tuple>

#include <superlax/error.hpp>
#include <superlax/pva.hpp>

#include "parallel.hpp"

namespace superlax
{

namespace
{

int sgn_of(int e)
{
    return (e & 1) ? -1 : 1;
}

int gen_parity(const family_ptr &fam, var_key x)
{
    return fam->parity(var_gen(x));
}

} // namespace

std::string to_string(bracket_kind k)
{
    return k == bracket_kind::odd ? "odd" : "even";
}

bracket_table::bracket_table(bracket_kind kind, family_ptr fam, std::vector<chi_op> values)
    : kind_(kind), fam_(std::move(fam)), n_(fam_ ? fam_->size() : 0), values_(std::move(values))
{
    if (static_cast<int>(values_.size()) != n_ * n_) {
        throw shape_mismatch("bracket table needs one value per ordered generator pair");
    }
    shifted_.resize(values_.size());
    d_ops_.resize(values_.size());
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            const auto idx = static_cast<std::size_t>(i * n_ + j);
            const int pi = fam_->parity(i), pj = fam_->parity(j);
            const int want = (pi + pj + (kind_ == bracket_kind::odd ? 1 : 0)) & 1;
            chi_op shifted;
            spdo dop;
            for (const auto &[k, c] : values_[idx].terms()) {
                if (k.gamma != 0 || k.dpow != 0) {
                    throw error("bracket values must be polynomials in chi");
                }
                if (!c.is_homogeneous() || ((c.parity() + k.chi) & 1) != want) {
                    throw parity_error("bracket value {" + fam_->name(i) + " chi " + fam_->name(j)
                                       + "} has the wrong parity");
                }
                const int n = k.chi;
                const int e = n * (pi + pj) + (kind_ == bracket_kind::odd ? n * (n - 1) / 2 : n * (n + 1) / 2);
                const super_poly sc = (e & 1) ? -c : c;
                shifted += mul(chi_op(sc), shift_power(n, indeterminate::chi));
                dop += spdo::term(sc, n);
            }
            shifted_[idx] = std::move(shifted);
            d_ops_[idx] = std::move(dop);
        }
    }
}

const chi_op &bracket_table::get(int i, int j) const
{
    if (i < 0 || j < 0 || i >= n_ || j >= n_) {
        throw unknown_generator("bracket table index out of range");
    }
    return values_[static_cast<std::size_t>(i * n_ + j)];
}

const chi_op &bracket_table::shifted_operator(int i, int j) const
{
    get(i, j);
    return shifted_[static_cast<std::size_t>(i * n_ + j)];
}

const spdo &bracket_table::d_operator(int i, int j) const
{
    get(i, j);
    return d_ops_[static_cast<std::size_t>(i * n_ + j)];
}

chi_op master_eval(const bracket_table &table, const super_poly &a, const super_poly &b)
{
    const family_ptr fam = merge_family(table.family(), merge_family(a.family(), b.family()));
    // (D+chi)^n {u_i_{D+chi} u_j} (D+chi)^m, keyed by (i, j, n, m).
    std::map<std::tuple<int, int, int, int>, chi_op> middle;
    auto middle_op = [&](int i, int j, int n, int m) -> const chi_op & {
        auto key = std::make_tuple(i, j, n, m);
        auto it = middle.find(key);
        if (it != middle.end()) {
            return it->second;
        }
        chi_op op = mul(shift_power(n, indeterminate::chi), table.shifted_operator(i, j),
                        shift_power(m, indeterminate::chi));
        return middle.emplace(key, std::move(op)).first->second;
    };

    chi_op result;
    for (int pa = 0; pa < 2; ++pa) {
        const super_poly A = a.part(pa);
        if (A.is_zero()) {
            continue;
        }
        const auto xs = variables(A);
        for (int pb = 0; pb < 2; ++pb) {
            const super_poly B = b.part(pb);
            if (B.is_zero()) {
                continue;
            }
            const auto ys = variables(B);
            for (auto x : xs) {
                const int i = var_gen(x), m = var_ord(x);
                const int pi = gen_parity(fam, x);
                const super_poly da = partial(A, x);
                for (auto y : ys) {
                    const int j = var_gen(y), n = var_ord(y);
                    const int pj = gen_parity(fam, y);
                    if (table.get(i, j).is_zero()) {
                        continue;
                    }
                    const super_poly db = partial(B, y);
                    int e;
                    if (table.kind() == bracket_kind::odd) {
                        e = pb * (pa + pj + n + 1) + (pj + n) * (pi + m) + n * (pi + m + 1) + m * (pi + pj + 1)
                            + m * (m - 1) / 2;
                    } else {
                        e = pa * pb + (m + n) * pi + (pb + pi + 1) * (pj + n) + m * (m + 1) / 2;
                    }
                    const chi_op &mid = middle_op(i, j, n, m);
                    chi_op term = collapse(mul(chi_op(db), mid, chi_op(da)));
                    result += term * rational(sgn_of(e));
                }
            }
        }
    }
    return result;
}

namespace
{

int gp(const bracket_table &t, int i)
{
    return t.family()->parity(i);
}

chi_op times(const chi_op &a, const chi_op &b)
{
    return mul(a, b, truncation{0});
}

} // namespace

chi_op skew_discrepancy(const bracket_table &table, int i, int j)
{
    const int pi = gp(table, i), pj = gp(table, j);
    chi_op rhs;
    for (const auto &[k, c] : table.get(j, i).terms()) {
        const int n = k.chi;
        chi_op op = shift_power(n, indeterminate::chi);
        if (n & 1) {
            op = -op;
        }
        rhs += collapse(mul(op, chi_op(c)));
    }
    const int e = pi * pj + (table.kind() == bracket_kind::odd ? 0 : 1);
    return table.get(i, j) - rhs * rational(sgn_of(e));
}

chi_op jacobi_discrepancy(const bracket_table &table, int i, int j, int k)
{
    const family_ptr &fam = table.family();
    // Indeterminates leave a bracket with the Koszul sign of the bracket parity beta
    // (first slot) or of beta plus the parity of the first argument (second slot).
    const int beta = table.kind() == bracket_kind::odd ? 1 : 0;
    const int pi = gp(table, i), pj = gp(table, j);
    const super_poly ui = super_poly::generator(fam, i), uj = super_poly::generator(fam, j),
                     uk = super_poly::generator(fam, k);

    // {u_i chi {u_j gamma u_k}}
    chi_op lhs;
    for (const auto &[key, c] : table.get(j, k).terms()) {
        const int n = key.chi;
        lhs += times(chi_op::gamma(n), master_eval(table, ui, c)) * rational(sgn_of(n * (beta + pi)));
    }
    // {{u_i chi u_j}_{chi+gamma} u_k}
    chi_op t2;
    for (const auto &[key, d] : table.get(i, j).terms()) {
        const int n = key.chi;
        t2 += times(chi_op::chi(n), rename_chi(master_eval(table, d, uk), indeterminate::chi_plus_gamma))
              * rational(sgn_of(n * beta));
    }
    // {u_j gamma {u_i chi u_k}}
    chi_op t3;
    for (const auto &[key, c] : table.get(i, k).terms()) {
        const int n = key.chi;
        t3 += times(chi_op::chi(n), rename_chi(master_eval(table, uj, c), indeterminate::gamma))
              * rational(sgn_of(n * (beta + pj)));
    }
    if (beta) {
        return lhs - t2 * rational(sgn_of(pi + 1)) - t3 * rational(sgn_of((pi + 1) * (pj + 1)));
    }
    return lhs - t3 * rational(sgn_of(pi * pj)) - t2;
}

axiom_report check_axioms(const bracket_table &table, bool jacobi)
{
    axiom_report rep;
    const int n = table.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            chi_op d = skew_discrepancy(table, i, j);
            ++rep.skew_checked;
            if (!d.is_zero()) {
                rep.failures.push_back({"skew-symmetry", {i, j}, std::move(d)});
            }
        }
    }
    if (!jacobi) {
        return rep;
    }
    const int count = n * n * n;
    std::vector<chi_op> disc(static_cast<std::size_t>(count));
    detail::parallel_for(count, [&](int t) {
        disc[static_cast<std::size_t>(t)] = jacobi_discrepancy(table, t / (n * n), (t / n) % n, t % n);
    });
    rep.jacobi_checked = count;
    for (int t = 0; t < count; ++t) {
        if (!disc[static_cast<std::size_t>(t)].is_zero()) {
            rep.failures.push_back({"jacobi", {t / (n * n), (t / n) % n, t % n}, disc[static_cast<std::size_t>(t)]});
        }
    }
    return rep;
}

functional reduced_functional_bracket(const bracket_table &table, const super_poly &a, const super_poly &b)
{
    return functional(at_chi_zero(master_eval(table, a, b)).with_family(table.family()));
}

functional reduced_functional_bracket_variational(const bracket_table &table, const super_poly &a,
                                                  const super_poly &b)
{
    const family_ptr &fam = table.family();
    const int n = table.size();
    super_poly total;
    total = total.with_family(fam);
    for (int pa = 0; pa < 2; ++pa) {
        const super_poly A = a.part(pa);
        for (int pb = 0; pb < 2; ++pb) {
            const super_poly B = b.part(pb);
            if (A.is_zero() || B.is_zero()) {
                continue;
            }
            std::vector<super_poly> da(static_cast<std::size_t>(n)), db(static_cast<std::size_t>(n));
            for (int g = 0; g < n; ++g) {
                da[static_cast<std::size_t>(g)] = var_deriv(A, g);
                db[static_cast<std::size_t>(g)] = var_deriv(B, g);
            }
            for (int i = 0; i < n; ++i) {
                const super_poly &fa = da[static_cast<std::size_t>(i)];
                if (fa.is_zero()) {
                    continue;
                }
                for (int j = 0; j < n; ++j) {
                    const super_poly &fb = db[static_cast<std::size_t>(j)];
                    if (fb.is_zero()) {
                        continue;
                    }
                    const int pi = fam->parity(i), pj = fam->parity(j);
                    super_poly applied;
                    for (const auto &[k, c] : table.d_operator(i, j).coeffs()) {
                        applied += c * apply_D(fa, k);
                    }
                    const int e = table.kind() == bracket_kind::odd ? pa * pb + pb * pj + pb + pi * pj
                                                                    : pa * pb + pj * (pb + 1) + pi * pj;
                    super_poly t = fb * applied;
                    total += (e & 1) ? -t : t;
                }
            }
        }
    }
    return functional(total);
}

} // namespace superlax
