#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <superlax/error.hpp>
#include <superlax/gauge.hpp>
#include <superlax/gd.hpp>
#include <superlax/hierarchy.hpp>
#include <superlax/io.hpp>
#include <superlax/matrixlax.hpp>

namespace
{

using namespace superlax;
using ordered_json = nlohmann::ordered_json;

enum exit_code { exit_pass = 0, exit_fail = 1, exit_usage = 2 };

struct options {
    std::string format = "plain";
    std::string out;
    int depth = 0;
    int N = 0;
    std::string kind = "quadratic";
    std::string a;
    std::string b;
    int p = 1;
    int q = 1;
    int kmax = 2;
    bool verify = false;
};

// A command result in both renderings; ok == false maps to exit code 1.
struct result {
    ordered_json json = ordered_json::object();
    std::vector<std::string> lines;
    bool ok = true;
};

truncation depth_of(const options &o)
{
    return o.depth > 0 ? truncation{o.depth} : default_truncation();
}

family_ptr family_of(const options &o)
{
    return o.N > 0 ? generator_family::wn(o.N) : nullptr;
}

ordered_json value_json(const chi_op &x)
{
    return ordered_json::parse(io::emit(x, io::format::json));
}

std::string value_text(const chi_op &x, const options &o)
{
    return io::emit(x, io::parse_format(o.format));
}

result single(const chi_op &x, const options &o)
{
    result r;
    r.json = value_json(x);
    r.lines.push_back(value_text(x, o));
    return r;
}

std::string bracket_label(int i, int j, bool latex)
{
    if (latex) {
        return "\\{u_{" + std::to_string(i) + "}{}_\\chi u_{" + std::to_string(j) + "}\\}";
    }
    return "{u" + std::to_string(i) + " chi u" + std::to_string(j) + "}";
}

result run_compose(const options &o)
{
    const truncation t = depth_of(o);
    const family_ptr fam = family_of(o);
    return single(chi_op(compose(io::parse_spdo(o.a, fam, t), io::parse_spdo(o.b, fam, t), t)), o);
}

result run_adjoint(const options &o)
{
    const truncation t = depth_of(o);
    return single(chi_op(adjoint(io::parse_spdo(o.a, family_of(o), t), t)), o);
}

result run_residue(const options &o)
{
    const truncation t = depth_of(o);
    return single(chi_op(residue(io::parse_spdo(o.a, family_of(o), t))), o);
}

result run_root(const options &o)
{
    return single(chi_op(fractional_power(lax_operator(o.N), o.p, o.q, depth_of(o))), o);
}

result run_bracket(const options &o)
{
    const gd_kind kind = parse_gd_kind(o.kind);
    const family_ptr fam = generator_family::wn(o.N);
    const bracket_table table = generator_table(kind, o.N);
    return single(master_eval(table, io::parse_poly(o.a, fam), io::parse_poly(o.b, fam)), o);
}

result run_table(const options &o)
{
    const gd_kind kind = parse_gd_kind(o.kind);
    const bool latex = o.format == "latex";
    result r;
    r.json["N"] = o.N;
    r.json["kind"] = to_string(kind);
    ordered_json entries = ordered_json::array();
    for (int i = 1; i <= o.N; ++i) {
        for (int j = 1; j <= o.N; ++j) {
            const chi_op v = generator_bracket(kind, o.N, i, j);
            entries.push_back({{"i", i}, {"j", j}, {"value", value_json(v)}});
            r.lines.push_back(bracket_label(i, j, latex) + " = " + value_text(v, o) + (latex ? " \\\\" : ""));
        }
    }
    r.json["entries"] = std::move(entries);
    return r;
}

result run_check_pva(const options &o)
{
    const gd_kind kind = parse_gd_kind(o.kind);
    const axiom_report rep = check_axioms(generator_table(kind, o.N));
    result r;
    r.ok = rep.ok();
    r.json["N"] = o.N;
    r.json["kind"] = to_string(kind);
    r.json["skew_checked"] = rep.skew_checked;
    r.json["jacobi_checked"] = rep.jacobi_checked;
    ordered_json failures = ordered_json::array();
    for (const auto &f : rep.failures) {
        failures.push_back({{"axiom", f.axiom}, {"generators", f.generators}, {"discrepancy", value_json(f.discrepancy)}});
        std::string gens;
        for (int g : f.generators) {
            gens += " u" + std::to_string(g);
        }
        r.lines.push_back("FAIL " + f.axiom + gens + ": " + value_text(f.discrepancy, o));
    }
    r.json["failures"] = std::move(failures);
    r.json["ok"] = r.ok;
    r.lines.push_back(to_string(kind) + " N=" + std::to_string(o.N) + ": " + std::to_string(rep.skew_checked)
                      + " skew, " + std::to_string(rep.jacobi_checked) + " Jacobi checks, "
                      + (r.ok ? "pass" : "fail"));
    return r;
}

result run_canonical_form(const options &o)
{
    const canonical_result c = canonical_form(universal_lax(o.N));
    result r;
    r.json["N"] = o.N;
    ordered_json w = ordered_json::array();
    for (std::size_t k = 0; k < c.w.size(); ++k) {
        w.push_back(value_json(chi_op(c.w[k])));
        r.lines.push_back("w" + std::to_string(k + 1) + " = " + value_text(chi_op(c.w[k]), o));
    }
    r.json["w"] = std::move(w);
    if (o.verify) {
        const gauge_report rep = verify_gauge_reduction(o.N);
        r.ok = rep.ok();
        r.json["checks"] = {{"canonical", rep.canonical_ok},
                            {"invariance", rep.invariance_ok},
                            {"bracket", rep.bracket_ok},
                            {"realization", rep.realization_ok},
                            {"functional", rep.functional_ok}};
        r.json["ok"] = r.ok;
        for (const auto &d : rep.details) {
            r.lines.push_back(d);
        }
        r.lines.push_back(std::string("gauge reduction: ") + (r.ok ? "pass" : "fail"));
    }
    return r;
}

result run_verify_matrix(const options &o)
{
    const family_ptr fam = generator_family::wn(o.N);
    result r;
    r.json["N"] = o.N;
    ordered_json pairs = ordered_json::array();
    for (int i = 1; i <= o.N; ++i) {
        for (int j = 1; j <= o.N; ++j) {
            const super_poly a = super_poly::generator(fam, i - 1);
            const super_poly b = super_poly::generator(fam, j - 1);
            const matrix_identity_report rep = verify_matrix_identity(o.N, a, b);
            ordered_json e = {{"i", i},
                              {"j", j},
                              {"lcan_forms_agree", rep.lcan_forms_agree},
                              {"left_support", rep.left_support},
                              {"right_support", rep.right_support},
                              {"left_values", rep.left_values},
                              {"right_values", rep.right_values},
                              {"aux_identities", rep.aux_identities},
                              {"bracket_identity", rep.bracket_identity}};
            bool ok = rep.ok();
            if (o.N % 2 == 1) {
                const bool even_ok = verify_even_matrix_identity(o.N, a, b);
                e["even_bracket_identity"] = even_ok;
                ok = ok && even_ok;
            }
            e["ok"] = ok;
            r.ok = r.ok && ok;
            pairs.push_back(std::move(e));
            r.lines.push_back("u" + std::to_string(i) + " u" + std::to_string(j) + ": " + (ok ? "pass" : "fail"));
        }
    }
    r.json["pairs"] = std::move(pairs);
    r.json["ok"] = r.ok;
    return r;
}

result run_verify_hierarchy(const options &o)
{
    const hierarchy_report rep = verify_hierarchy(o.N, o.kmax, depth_of(o));
    result r;
    r.ok = rep.ok();
    r.json["N"] = o.N;
    r.json["kmax"] = o.kmax;
    r.json["depth"] = depth_of(o).depth;
    ordered_json checks = ordered_json::array();
    for (const auto &c : rep.checks) {
        checks.push_back({{"kind", c.kind}, {"k", c.k}, {"l", c.l}, {"ok", c.ok}});
        r.lines.push_back(c.kind + " k=" + std::to_string(c.k) + " l=" + std::to_string(c.l) + ": "
                          + (c.ok ? "pass" : "fail"));
    }
    r.json["checks"] = std::move(checks);
    r.json["ok"] = r.ok;
    return r;
}

void write(const result &r, const options &o)
{
    std::ostringstream os;
    if (o.format == "json") {
        os << r.json.dump() << "\n";
    } else {
        for (const auto &l : r.lines) {
            os << l << "\n";
        }
    }
    if (o.out.empty()) {
        std::cout << os.str();
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + o.out);
    }
    f << os.str();
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Super pseudo-differential operators and Gelfand-Dickey brackets"};
    app.require_subcommand(1);
    options o;
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "latex", "plain"}))
        ->capture_default_str();
    app.add_option("--out", o.out, "Write output to this file");
    app.add_option("--depth", o.depth, "Truncation depth (default: SUPERLAX_DEPTH or 12)")->check(CLI::PositiveNumber);

    using runner = result (*)(const options &);
    std::vector<std::pair<CLI::App *, runner>> commands;
    const auto add = [&](const std::string &name, const std::string &help, runner f) {
        CLI::App *sub = app.add_subcommand(name, help);
        // Global options are accepted after the subcommand name too.
        sub->fallthrough();
        commands.emplace_back(sub, f);
        return sub;
    };
    const auto rank = [&](CLI::App *sub, bool required) {
        CLI::Option *opt = sub->add_option("--N", o.N, "Rank of the Lax operator")->check(CLI::Range(1, 12));
        if (required) {
            opt->required();
        }
    };
    const auto kind = [&](CLI::App *sub) {
        sub->add_option("--kind", o.kind, "Bracket: quadratic, odd_linear or even_linear")
            ->check(CLI::IsMember({"quadratic", "odd_linear", "even_linear"}))
            ->capture_default_str();
    };

    CLI::App *c = add("compose", "Compose two operators", run_compose);
    c->add_option("a", o.a, "Left operator")->required();
    c->add_option("b", o.b, "Right operator")->required();
    rank(c, false);
    c = add("adjoint", "Formal adjoint of an operator", run_adjoint);
    c->add_option("a", o.a, "Operator")->required();
    rank(c, false);
    c = add("residue", "Coefficient of D^-1", run_residue);
    c->add_option("a", o.a, "Operator")->required();
    rank(c, false);
    c = add("root", "L^(p/q) for the generic Lax operator of rank N", run_root);
    rank(c, true);
    c->add_option("--p", o.p, "Numerator")->capture_default_str();
    c->add_option("--q", o.q, "Denominator")->check(CLI::PositiveNumber)->capture_default_str();
    c = add("bracket", "{a chi b} for a Gelfand-Dickey bracket", run_bracket);
    c->add_option("a", o.a, "First polynomial")->required();
    c->add_option("b", o.b, "Second polynomial")->required();
    rank(c, true);
    kind(c);
    c = add("table", "All generator brackets {u_i chi u_j}", run_table);
    rank(c, true);
    kind(c);
    c = add("check-pva", "Skew-symmetry and Jacobi on all generators", run_check_pva);
    rank(c, true);
    kind(c);
    c = add("canonical-form", "Gauge the universal Lax operator to canonical form", run_canonical_form);
    rank(c, true);
    c->add_flag("--verify", o.verify, "Also run the reduction checks");
    c = add("verify-matrix", "Matrix realization of the bracket on all generator pairs", run_verify_matrix);
    rank(c, true);
    c = add("verify-hierarchy", "Commutation, conservation and Hamiltonian form of the flows", run_verify_hierarchy);
    rank(c, true);
    c->add_option("--kmax", o.kmax, "Largest flow index")->check(CLI::Range(1, 5))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? exit_pass : exit_usage;
    }

    try {
        for (const auto &[sub, f] : commands) {
            if (sub->parsed()) {
                const result r = f(o);
                write(r, o);
                return r.ok ? exit_pass : exit_fail;
            }
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
