#ifndef SUPERLAX_HIERARCHY_HPP
#define SUPERLAX_HIERARCHY_HPP

#include <string>
#include <vector>

#include <superlax/gd.hpp>

namespace superlax
{

// d/dt_k L = [(L^{p/q})_+, L] with p/q = k/n for N = 2n and 2k/N for odd N, reduced.
struct flow_spec {
    int N = 0;
    int k = 0;
    int num = 0;
    int den = 1;

    static flow_spec make(int N, int k);
};

// (du_1/dt_k, ..., du_N/dt_k).
std::vector<super_poly> flow_rhs(const flow_spec &f, truncation t = default_truncation());

// Even N: h_l = -(n/l) Res L^{l/n}. Odd N, odd l: h_l = (N/l) Res L^{l/N}.
// Odd N, even l: Res L^{l/N} is a total derivative and h is returned as zero with trivial set.
struct density {
    int N = 0;
    int l = 0;
    functional h;
    bool trivial = false;
};

density conserved_density(int N, int l, truncation t = default_truncation());
// delta h_l / delta L modulo D^{-N-1} against -(L^{l/n - 1})_- (even N) or (L^{l/N - 1})_- (odd N).
bool check_density_variation(const density &d, truncation t = default_truncation());
// Index m with {int h_m chi L}^e|_{chi=0} = d/dt_q L for odd N, read off the exponent 2q/N = m/N - 1.
int hamiltonian_index(int N, int q);

struct hierarchy_check {
    std::string kind;  // "commute", "conserved" or "hamiltonian:<bracket>"
    int k = 0;         // flow index
    int l = 0;         // second flow, density index, or Hamiltonian density index
    bool ok = true;
};

struct hierarchy_report {
    int N = 0;
    std::vector<hierarchy_check> checks;

    bool ok() const;
};

// Commutation of the flows, conservation of Res L^{l/.} for l in densities, and the Hamiltonian
// form of every flow: quadratic with h_k and odd linear with h_{k+n} (N = 2n), even linear with
// h_{2q+N} (N odd).
hierarchy_report verify_hierarchy(int N, const std::vector<int> &flows, const std::vector<int> &densities,
                                  truncation t = default_truncation());
hierarchy_report verify_hierarchy(int N, int kmax, truncation t = default_truncation());

// d/dt_k (L^{1/q}) = [(L^{p/q})_+, L^{1/q}] for the root underlying the flow, down to depth t.
bool root_flow_compatible(int N, int k, truncation t = default_truncation());
// Flows agree when recomputed at depth + extra.
bool depth_stable(int N, int k, truncation t = default_truncation(), int extra = 4);

} // namespace superlax

#endif
