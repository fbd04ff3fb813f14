// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <superlax/error.hpp>
#include <superlax/gauge.hpp>
#include <superlax/gd.hpp>
#include <superlax/hierarchy.hpp>
#include <superlax/io.hpp>
#include <superlax/matrixlax.hpp>

#include "test_support.hpp"

using namespace superlax;
using namespace superlax::testing;

namespace
{

int sgn(int e)
{
    return (e & 1) ? -1 : 1;
}

struct outcome {
    bool ok = true;
    std::string note;
};

void fail(outcome &o, const std::string &what)
{
    if (o.ok) {
        o.note = what;
    }
    o.ok = false;
}

bool same_above(const spdo &a, const spdo &b)
{
    return agree_above(a, b, std::max(a.floor(), b.floor()));
}

// Operator-ring laws at N = 3, 200 random cases each, default depth.
outcome ring_laws()
{
    outcome o;
    rng g(1001);
    const family_ptr W3 = generator_family::wn(3);
    std::uniform_int_distribution<int> top(0, 3), parity(0, 1);
    int counts[4] = {0, 0, 0, 0};
    for (int r = 0; r < 200; ++r) {
        const spdo A = random_spdo(g, W3, 3, -2, top(g), parity(g));
        const spdo B = random_spdo(g, W3, 3, -2, top(g), parity(g));
        const spdo C = random_spdo(g, W3, 3, -2, top(g), parity(g));
        const int s = sgn(A.parity() * B.parity());

        if (same_above(compose(compose(A, B), C), compose(A, compose(B, C)))) {
            ++counts[0];
        }
        if (same_above(adjoint(compose(A, B)), compose(adjoint(B), adjoint(A)) * rational(s))) {
            ++counts[1];
        }
        if (residue(A) == residue(adjoint(A))) {
            ++counts[2];
        }
        if (functional_is_zero(residue(compose(A, B)) - residue(compose(B, A)) * rational(s))) {
            ++counts[3];
        }
    }
    const char *names[] = {"associativity", "adjoint", "Res A = Res A*", "trace"};
    std::ostringstream note;
    for (int i = 0; i < 4; ++i) {
        note << (i ? ", " : "") << names[i] << " " << counts[i] << "/200";
        if (counts[i] != 200) {
            o.ok = false;
        }
    }
    o.note = note.str();
    return o;
}

// q-th roots re-power to L through depth 12.
outcome roots()
{
    outcome o;
    std::ostringstream note;
    for (const auto &[N, q] : std::vector<std::pair<int, int>>{{3, 3}, {4, 2}, {5, 5}}) {
        const auto start = std::chrono::steady_clock::now();
        const spdo L = lax_operator(N);
        // R^q loses N - N/q exponents of depth against R.
        const truncation t{12 + N - N / q};
        const spdo R = fractional_power(L, 1, q, t);
        const spdo P = power(R, q, t);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        note << "N=" << N << " q=" << q << " " << secs << "s; ";
        if (P.floor() > -12 || !agree_above(P, L, -12)) {
            fail(o, "re-power mismatch at N=" + std::to_string(N));
        }
        if (secs > 60) {
            fail(o, "root at N=" + std::to_string(N) + " took over a minute");
        }
    }
    if (o.ok) {
        o.note = note.str();
    }
    return o;
}

outcome axioms(gd_kind kind, int N)
{
    outcome o;
    const axiom_report r = check_axioms(generator_table(kind, N));
    if (r.skew_checked != N * N || r.jacobi_checked != N * N * N) {
        fail(o, "incomplete suite");
    }
    if (!r.ok()) {
        fail(o, std::to_string(r.failures.size()) + " failures, first: " + r.failures.front().axiom);
    }
    if (o.ok) {
        o.note = to_string(kind) + " N=" + std::to_string(N) + ": " + std::to_string(r.skew_checked) + " skew, "
                 + std::to_string(r.jacobi_checked) + " Jacobi";
    }
    return o;
}

outcome quadratic_pva()
{
    outcome o;
    std::string note;
    for (int N : {2, 3}) {
        const outcome a = axioms(gd_kind::quadratic, N);
        if (!a.ok) {
            fail(o, a.note);
        }
        note += a.note + "; ";
    }
    if (o.ok) {
        o.note = note;
    }
    return o;
}

outcome even_linear()
{
    outcome o = axioms(gd_kind::even_linear, 3);
    const bracket_table t = generator_table(gd_kind::even_linear, 3);
    int pairs = 0;
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            const super_poly a = u(t.family(), i), b = u(t.family(), j);
            if (bracket_functionals(gd_kind::even_linear, a, b, 3) == reduced_functional_bracket(t, a, b)) {
                ++pairs;
            } else {
                fail(o, "residue formula differs from table at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
    if (o.ok) {
        o.note += "; residue formula = table on " + std::to_string(pairs) + "/9 pairs";
    }
    return o;
}

outcome matrix_realization()
{
    outcome o;
    int pairs = 0;
    for (int N : {2, 3}) {
        const family_ptr fam = generator_family::wn(N);
        for (int i = 1; i <= N; ++i) {
            for (int j = 1; j <= N; ++j) {
                const matrix_identity_report r = verify_matrix_identity(N, u(fam, i), u(fam, j));
                if (!r.ok() || !r.left_support || !r.right_support) {
                    fail(o, "N=" + std::to_string(N) + " pair (" + std::to_string(i) + "," + std::to_string(j)
                                + ")" + (r.details.empty() ? "" : ": " + r.details.front()));
                } else {
                    ++pairs;
                }
            }
        }
    }
    if (o.ok) {
        o.note = std::to_string(pairs) + "/13 generator pairs at N=2,3";
    }
    return o;
}

outcome gauge_reduction()
{
    outcome o;
    const family_ptr W2 = generator_family::wn(2);
    const std::vector<std::vector<super_poly>> extras = {{u(W2, 1) * u(W2, 2), u(W2, 2) * u(W2, 1, 1)}, {}};
    std::string note;
    for (int N : {2, 3}) {
        const gauge_report r = verify_gauge_reduction(N, extras[N - 2]);
        if (!r.ok() || !r.invariance_ok) {
            fail(o, "N=" + std::to_string(N) + (r.details.empty() ? "" : ": " + r.details.front()));
        }
        note += "N=" + std::to_string(N) + " with " + std::to_string(r.w.size()) + " invariant generators; ";
    }
    if (o.ok) {
        o.note = note;
    }
    return o;
}

bool has_check(const hierarchy_report &r, const std::string &kind, int k, int l)
{
    for (const auto &c : r.checks) {
        if (c.kind == kind && c.k == k && c.l == l) {
            return c.ok;
        }
    }
    return false;
}

// Depth 2 suffices: every check reads coefficients at D^{-1} and above, and the
// library raises truncation_error when a floor is too high.
outcome hierarchies()
{
    outcome o;
    const truncation t{2};
    const hierarchy_report r4 = verify_hierarchy(4, {1, 3}, {1, 3, 5}, t);
    if (!r4.ok()) {
        fail(o, "N=4 report has failures");
    }
    if (!has_check(r4, "commute", 1, 3)) {
        fail(o, "N=4 flows 1, 3 do not commute");
    }
    for (int k : {1, 3}) {
        for (int l : {1, 3, 5}) {
            if (!has_check(r4, "conserved", k, l)) {
                fail(o, "N=4 h" + std::to_string(l) + " not conserved by t" + std::to_string(k));
            }
        }
        if (!has_check(r4, "hamiltonian:quadratic", k, k) || !has_check(r4, "hamiltonian:odd_linear", k, k + 2)) {
            fail(o, "N=4 Hamiltonian match fails for flow " + std::to_string(k));
        }
    }
    const hierarchy_report r3 = verify_hierarchy(3, {1}, {1, 5}, t);
    if (!r3.ok() || !has_check(r3, "hamiltonian:even_linear", 1, 5)) {
        fail(o, "N=3 flow 1 is not even-linear Hamiltonian with h5");
    }
    for (const auto &[N, k] : std::vector<std::pair<int, int>>{{4, 1}, {4, 3}, {3, 1}}) {
        if (!depth_stable(N, k, t, 4)) {
            fail(o, "flow " + std::to_string(k) + " at N=" + std::to_string(N) + " changes with depth");
        }
    }
    const spdo L3 = lax_operator(3);
    for (int p : {2, 4}) {
        if (!functional_is_zero(residue(fractional_power(L3, p, 3, t))) || !conserved_density(3, p, t).trivial) {
            fail(o, "Res L^{" + std::to_string(p) + "/3} is not trivial");
        }
    }
    if (o.ok) {
        o.note = "depth 2; N=4: " + std::to_string(r4.checks.size()) + " checks, N=3: "
                 + std::to_string(r3.checks.size()) + " checks + 2 trivial residues; flows equal at depth 6";
    }
    return o;
}

std::string shell_quote(const std::string &s)
{
    std::string r = "'";
    for (char c : s) {
        r += c == '\'' ? std::string("'\\''") : std::string(1, c);
    }
    return r + "'";
}

// stdout of the command and its exit status.
std::pair<std::string, int> run(const std::string &cmd)
{
    std::string out;
    FILE *p = popen(cmd.c_str(), "r");
    if (!p) {
        return {"", -1};
    }
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) {
        out.append(buf.data(), n);
    }
    const int status = pclose(p);
    return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

outcome cli_corpus(const std::string &cli, const std::string &corpus_path)
{
    outcome o;
    const auto start = std::chrono::steady_clock::now();
    std::ifstream in(corpus_path);
    std::vector<std::string> items;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) {
            items.push_back(line);
        }
    }
    if (items.size() != 50) {
        fail(o, "corpus has " + std::to_string(items.size()) + " items");
    }

    int round_trips = 0;
    std::vector<std::string> commands;
    for (const std::string &item : items) {
        try {
            const chi_op x = io::parse(item);
            const std::string j = io::emit(x, io::format::json);
            const chi_op back = io::parse_json(j, x.family());
            if (back == x && io::emit(back, io::format::json) == j) {
                ++round_trips;
            } else {
                fail(o, "round trip differs for " + item);
            }
        } catch (const std::exception &e) {
            fail(o, "cannot parse " + item + ": " + e.what());
        }
        if (item.find("chi") == std::string::npos && item.find("gamma") == std::string::npos) {
            commands.push_back(shell_quote(cli) + " --format json --depth 6 adjoint -- " + shell_quote(item));
        }
    }
    commands.push_back(shell_quote(cli) + " --format json table --N 3 --kind quadratic");
    commands.push_back(shell_quote(cli) + " --format json root --N 3 --p 1 --q 3 --depth 8");
    commands.push_back(shell_quote(cli) + " --format plain check-pva --N 2 --kind quadratic");

    std::vector<std::string> first;
    for (const std::string &c : commands) {
        const auto [out, rc] = run(c);
        if (rc != 0) {
            fail(o, "exit " + std::to_string(rc) + " from " + c);
        }
        first.push_back(out);
    }
    for (std::size_t i = 0; i < commands.size(); ++i) {
        if (run(commands[i]).first != first[i]) {
            fail(o, "output differs between runs: " + commands[i]);
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 5) {
        fail(o, "took " + std::to_string(secs) + "s");
    }
    if (o.ok) {
        std::ostringstream note;
        note << round_trips << "/50 JSON round trips, " << commands.size() << " CLI commands run twice, " << secs
             << "s";
        o.note = note.str();
    }
    return o;
}

} // namespace

int main(int argc, char **argv)
{
    const std::string cli = argc > 1 ? argv[1] : SUPERLAX_CLI_PATH;
    const std::string corpus = argc > 2 ? argv[2] : SUPERLAX_CORPUS_PATH;

    const std::vector<std::pair<std::string, std::function<outcome()>>> criteria = {
        {"operator ring laws at N=3", ring_laws},
        {"roots re-power through depth 12 at N=3,4,5", roots},
        {"quadratic bracket is a SUSY PVA at N=2,3", quadratic_pva},
        {"even linear bracket at N=3", even_linear},
        {"matrix realization at N=2,3", matrix_realization},
        {"gauge reduction at N=2,3", gauge_reduction},
        {"hierarchies at N=4 and N=3", hierarchies},
        {"CLI round trip and determinism", [&] { return cli_corpus(cli, corpus); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %zu: %s  %s (%.2fs) %s\n", i + 1, o.ok ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    secs, o.note.c_str());
        std::fflush(stdout);
        failed += o.ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
