#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kmirror/toric.hpp"

namespace kmirror::cli {

enum class mode { exact, floating };

struct run_config {
    rational energy_cutoff = 3;
    int arity = 6;
    int degree = 10;
    int base_degree = 4;
    std::optional<double> eval_t;
    mode arithmetic = mode::exact;
    bool inject_sign_error = false;

    double t() const;
    void validate() const;
    nlohmann::json to_json() const;
};

enum class verdict { pass, fail, inconclusive };

using kmirror::to_string;
std::string to_string(verdict v);

struct check_result {
    std::string name;
    verdict outcome = verdict::fail;
    std::string detail;
    nlohmann::json data = nlohmann::json::object();
    double seconds = 0;
};

struct report {
    std::string command;
    nlohmann::json polytope;
    nlohmann::json config;
    std::vector<check_result> checks;
    nlohmann::json data = nlohmann::json::object();

    verdict overall() const;
    // 0 pass, 1 fail, 2 inconclusive
    int exit_code() const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

// Runs the named checks concurrently and returns them in the given order.
// cutoff_error becomes inconclusive; any other exception is a failure.
std::vector<check_result> run_checks(std::vector<std::pair<std::string, std::function<check_result()>>> jobs);

report cmd_potential(const toric_data& T, const run_config& cfg);
report cmd_check(const toric_data& T, const run_config& cfg);
report cmd_mf(const toric_data& T, const std::vector<rational>& p, const std::vector<rational>& alpha,
              const run_config& cfg);
report cmd_hf(const toric_data& T, const std::vector<std::vector<rational>>& points, const run_config& cfg);
report cmd_complete(const toric_data& T, const run_config& cfg);

// Structure with every facet class solved up to operator arity `arity`; other classes cut by energy.
structure mf_model(const toric_data& T, const std::vector<rational>& p, int arity,
                   completion_report* report = nullptr);

// "1/2,0" -> {1/2, 0}
std::vector<rational> parse_point(const std::string& text, int n);

} // namespace kmirror::cli
