#ifndef SUPERLAX_PVA_HPP
#define SUPERLAX_PVA_HPP

#include <string>
#include <vector>

#include <superlax/chiop.hpp>
#include <superlax/functional.hpp>

namespace superlax
{

// Odd brackets have parity p(a) + p(b) + 1, even ones p(a) + p(b).
enum class bracket_kind { odd, even };

std::string to_string(bracket_kind k);

// Generator brackets {u_i chi u_j} of a SUSY PVA, fixed at construction.
class bracket_table
{
public:
    // values[i * n + j] = {u_i chi u_j} for generator ids i, j.
    bracket_table(bracket_kind kind, family_ptr fam, std::vector<chi_op> values);

    bracket_kind kind() const noexcept { return kind_; }
    const family_ptr &family() const noexcept { return fam_; }
    int size() const noexcept { return n_; }
    const chi_op &get(int i, int j) const;
    // {u_i_{D+chi} u_j} = sum_n s_n c_n (D+chi)^n for {u_i chi u_j} = sum_n chi^n c_n, with
    // s_n = (-1)^{n(p_i + p_j) + n(n-1)/2} (odd) or (-1)^{n(p_i + p_j) + n(n+1)/2} (even).
    const chi_op &shifted_operator(int i, int j) const;
    // The same operator with D in place of D + chi.
    const spdo &d_operator(int i, int j) const;

private:
    bracket_kind kind_;
    family_ptr fam_;
    int n_;
    std::vector<chi_op> values_;
    std::vector<chi_op> shifted_;
    std::vector<spdo> d_ops_;
};

// {a chi b} from the generator table via the master formula.
chi_op master_eval(const bracket_table &table, const super_poly &a, const super_poly &b);

struct axiom_failure {
    std::string axiom;
    std::vector<int> generators;
    chi_op discrepancy;
};

struct axiom_report {
    int skew_checked = 0;
    int jacobi_checked = 0;
    std::vector<axiom_failure> failures;
    bool ok() const noexcept { return failures.empty(); }
};

// Skew-symmetry on all generator pairs and the Jacobi identity on all triples.
axiom_report check_axioms(const bracket_table &table, bool jacobi = true);
// Jacobi discrepancy for a single generator triple (zero when the identity holds).
chi_op jacobi_discrepancy(const bracket_table &table, int i, int j, int k);
chi_op skew_discrepancy(const bracket_table &table, int i, int j);

// int {a chi b}|_{chi=0}, read off the master formula.
functional reduced_functional_bracket(const bracket_table &table, const super_poly &a, const super_poly &b);
// The same bracket through variational derivatives and the operators {u_i D u_j}.
functional reduced_functional_bracket_variational(const bracket_table &table, const super_poly &a,
                                                  const super_poly &b);

} // namespace superlax

#endif
