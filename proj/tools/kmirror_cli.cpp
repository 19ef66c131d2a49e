#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "kmirror/cli.hpp"

using namespace kmirror;

namespace {

struct options {
    std::string polytope;
    std::string cutoff_energy = "3";
    int arity = 6;
    int degree = 10;
    int base_degree = 4;
    double eval_t = 0;
    std::string mode = "exact";
    std::string out;
    std::string format = "json";
    bool inject = false;
    std::string point;
    std::string alpha;
    std::vector<std::string> points;
};

void common(CLI::App* sub, options& o) {
    sub->add_option("polytope", o.polytope, "polytope JSON file")->required();
    sub->add_option("--cutoff-energy", o.cutoff_energy, "energy cutoff E (decimal or p/q)");
    sub->add_option("--arity", o.arity, "arity cutoff K");
    sub->add_option("--degree", o.degree, "series degree D");
    sub->add_option("--base-degree", o.base_degree, "base degree D_x");
    sub->add_option("--eval-t", o.eval_t, "evaluation point t in (0,1), default e^-1");
    sub->add_option("--mode", o.mode, "arithmetic mode")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--out", o.out, "write the report here instead of stdout");
    sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "text"}));
}

cli::run_config config_of(const options& o) {
    cli::run_config c;
    c.energy_cutoff = parse_rational(o.cutoff_energy);
    c.arity = o.arity;
    c.degree = o.degree;
    c.base_degree = o.base_degree;
    if (o.eval_t != 0) c.eval_t = o.eval_t;
    c.arithmetic = o.mode == "float" ? cli::mode::floating : cli::mode::exact;
    c.inject_sign_error = o.inject;
    return c;
}

void emit(const cli::report& r, const options& o) {
    std::string body = o.format == "text" ? r.to_text() : r.to_json().dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw input_error("cannot write " + o.out);
    f << body;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toric mirror symmetry verification suite"};
    app.require_subcommand(1);
    options o;
    auto* potential = app.add_subcommand("potential", "closed-form potential, samples, holomorphicity, descent");
    auto* check = app.add_subcommand("check", "run every identity suite");
    auto* mf = app.add_subcommand("mf", "matrix factorization of a brane");
    auto* hf = app.add_subcommand("hf", "Floer ranks and critical points");
    auto* complete = app.add_subcommand("complete", "solve for higher-wedge operators");
    for (auto* s : {potential, check, mf, hf, complete}) common(s, o);
    check->add_flag("--inject-sign-error", o.inject, "drop epsilon_k (negative control)");
    mf->add_option("--point", o.point, "basepoint p, comma separated")->required();
    mf->add_option("--alpha", o.alpha, "holonomy alpha, comma separated");
    hf->add_option("--points", o.points, "base points, each comma separated");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        toric_data T = load_polytope(o.polytope);
        cli::run_config cfg = config_of(o);
        cli::report r;
        if (*potential) {
            r = cli::cmd_potential(T, cfg);
        } else if (*check) {
            r = cli::cmd_check(T, cfg);
        } else if (*mf) {
            auto p = cli::parse_point(o.point, T.n);
            auto a = o.alpha.empty() ? std::vector<rational>(T.n, rational(0)) : cli::parse_point(o.alpha, T.n);
            r = cli::cmd_mf(T, p, a, cfg);
        } else if (*hf) {
            std::vector<std::vector<rational>> pts;
            for (const auto& s : o.points) pts.push_back(cli::parse_point(s, T.n));
            r = cli::cmd_hf(T, pts, cfg);
        } else {
            r = cli::cmd_complete(T, cfg);
        }
        emit(r, o);
        return r.exit_code();
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const cutoff_error& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
