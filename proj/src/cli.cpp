#include "kmirror/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <iomanip>
#include <random>
#include <sstream>

#include "kmirror/family.hpp"
#include "kmirror/koszul.hpp"
#include "kmirror/mc.hpp"

namespace kmirror::cli {

using kmirror::to_string;

namespace {

using clock_type = std::chrono::steady_clock;

check_result make(std::string name, bool ok, std::string detail, nlohmann::json data = nlohmann::json::object()) {
    return {std::move(name), ok ? verdict::pass : verdict::fail, std::move(detail), std::move(data), 0};
}

nlohmann::json cjson(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(3) << x;
    return os.str();
}

std::vector<rational> zeros(int n) { return std::vector<rational>(n, rational(0)); }

toric_data based_at(const toric_data& T, const std::vector<rational>& p) {
    if (static_cast<int>(p.size()) != T.n) throw input_error("point has wrong length");
    if (!T.interior(p)) throw input_error("point is on or outside the polytope");
    toric_data U = T;
    U.basepoint = p;
    return U;
}

structure completed(const toric_data& T, const run_config& cfg, completion_report* rep) {
    return complete(divisor_core(T, cfg.energy_cutoff, cfg.arity), cfg.arity, rep);
}

// Deterministic interior sample points near the basepoint.
std::vector<std::vector<rational>> sample_points(const toric_data& T, int count) {
    std::vector<std::vector<rational>> out;
    for (int i = 0; i < count; ++i) {
        std::vector<rational> x(T.n);
        rational scale(1, 60);
        for (int attempt = 0; attempt < 20; ++attempt) {
            for (int j = 0; j < T.n; ++j) x[j] = T.basepoint[j] + scale * rational((i * 7 + j * 3) % 11 - 5);
            if (T.interior(x)) break;
            scale /= 2;
        }
        if (!T.interior(x)) x = T.basepoint;
        out.push_back(x);
    }
    return out;
}

ext_nov random_degree_one(const structure& A, std::mt19937& rng, bool with_symbols) {
    ext_nov b(A.dim());
    const auto ctx = A.ctx();
    for (int j = 0; j < A.dim(); ++j) {
        cq c(frac(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1));
        if (with_symbols) {
            novikov x(A.mon(), A.energy_cutoff());
            for (std::size_t g = 0; g < A.mon()->size(); ++g)
                if (rng() % 2) x += novikov::monomial(ctx, A.mon()->generator(g), c);
            b.add(wedge_index(1) << j, x);
        } else {
            b.add(wedge_index(1) << j, novikov::constant(ctx, c));
        }
    }
    return b;
}

check_result divisor_identity(const toric_data& T, const structure& A) {
    std::mt19937 rng(11);
    const auto ctx = A.ctx();
    std::size_t checked = 0, failures = 0;
    for (int k = 0; k <= A.arity_cutoff(); ++k)
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<ext_nov> in;
            for (int j = 0; j < k; ++j) in.push_back(random_degree_one(A, rng, false));
            ext_nov v = kmirror::apply(A, in);
            novikov got(A.mon(), A.energy_cutoff());
            if (const novikov* u = v.find(0))
                for (const auto& [beta, c] : u->terms())
                    if (beta != A.mon()->zero()) got.add_term(beta, c);
            novikov want(A.mon(), A.energy_cutoff());
            for (std::size_t i = 0; i < T.facets.size(); ++i) {
                cq prod(factorial_inverse(k));
                for (const auto& b : in) {
                    cq pair(0);
                    for (int j = 0; j < T.n; ++j)
                        if (const novikov* c = b.find(wedge_index(1) << j))
                            pair += c->coefficient(A.mon()->zero()) * cq(rational(T.facets[i].normal[j]));
                    prod *= pair;
                }
                want += novikov::monomial(ctx, A.mon()->generator(i), prod);
            }
            ++checked;
            if (!(got == want)) ++failures;
        }
    return make("divisor_identity", failures == 0,
                std::to_string(checked - failures) + "/" + std::to_string(checked) + " tuples",
                {{"checked", checked}, {"failures", failures}});
}

check_result relations(const std::string& name, const structure& A, int arity) {
    auto r = check_relations(A, arity);
    return make(name, r.ok(),
                std::to_string(r.tuples - r.failures) + "/" + std::to_string(r.tuples) + " tuples, arity <= " +
                    std::to_string(arity),
                {{"tuples", r.tuples}, {"failures", r.failures}, {"examples", r.examples}, {"max_arity", arity}});
}

check_result d2_law(const structure& A, int cases) {
    std::mt19937 rng(5);
    const int K = A.arity_cutoff();
    std::size_t ok = 0, total = 0;
    nlohmann::json rows = nlohmann::json::array();
    for (int c = 0; c <= cases; ++c) {
        ext_nov b = random_degree_one(A, rng, true);
        ext_nov d = c == cases ? b : random_degree_one(A, rng, true);
        auto src = rank_one(A, b, K);
        auto dst = rank_one(A, d, K);
        ext_matrix a = zero_matrix(A, 1, 1);
        for (wedge_index I : wedge_basis(A.dim()))
            a[0][0].add(I, novikov::constant(A.ctx(), cq(rational(static_cast<int>(rng() % 5) - 2))));
        auto sq = hom_square(A, src, dst, a, K);
        const bool matched = src.lambda == dst.lambda;
        bool zero = true;
        for (const auto& row : sq.d2)
            for (const auto& x : row) zero = zero && x.is_zero();
        const bool pass = sq.holds && (!matched || zero);
        ok += pass;
        ++total;
        rows.push_back({{"case", c}, {"matched_curvature", matched}, {"holds", sq.holds}, {"d2_zero", zero}});
    }
    return make("d2_law", ok == total,
                std::to_string(ok) + "/" + std::to_string(total) +
                    " cases satisfy d^2 = (lambda_target - lambda_source) id",
                {{"law", "d^2 = (lambda(target) - lambda(source)) id"}, {"cases", rows}});
}

check_result weak_mc(const toric_data& T, const structure& A) {
    structure B = A.rebased(T.base_monoid());
    ext_nov b(T.n);
    for (int j = 0; j < T.n; ++j) b.add(wedge_index(1) << j, novikov::constant(B.ctx(), cq(0, frac(-1, j + 3))));
    auto w = weak_mc_check(B, b, B.arity_cutoff());
    return make("weak_mc", w.is_weak, w.is_weak ? "sum m_k(b^k) is a multiple of the unit" : "non-unit residual",
                {{"lambda", w.lambda.to_json()}, {"truncated", w.truncated}, {"max_arity", w.max_arity}});
}

bool numerically_ok(const run_config& cfg, bool exact, double max_abs, double tol) {
    return cfg.arithmetic == mode::exact ? exact : max_abs < tol;
}

std::string unit_entry_text(const brane_chart& c, int j) {
    std::string z = c.T->n == 1 ? "z" : "z" + std::to_string(j + 1);
    const rational& p = c.p[j];
    const rational& a = c.alpha[j];
    if (sgn(a) == 0) {
        if (sgn(p) == 0) return "(" + z + ")";
        return "(" + z + (sgn(p) > 0 ? "-" : "+") + to_string(abs(p)) + ")";
    }
    return "(" + z + "-(" + to_string(p) + (sgn(a) > 0 ? "+" : "-") + to_string(abs(a)) + "i))";
}

check_result unit_column(const mf_operator& Q, const brane_chart& c, nlohmann::json* texts) {
    bool ok = true;
    const int nb = 1 << Q.n;
    for (int J = 0; J < nb; ++J) {
        const form_series& q = Q.q[J][0];
        if (wdeg(static_cast<wedge_index>(J)) == 1) {
            int j = std::countr_zero(static_cast<unsigned>(J));
            bool linear = q == form_series::variable(Q.ctx, j);
            ok = ok && linear;
            if (texts) (*texts)[wedge_name(static_cast<wedge_index>(J))] = linear ? unit_entry_text(c, j) : "other";
        } else {
            ok = ok && q.is_zero();
        }
    }
    return make("unit_column", ok, ok ? "Q(1) = sum (z_j - z0_j) e_j exactly" : "Q(1) differs from sum (z_j - z0_j) e_j");
}

} // namespace

double run_config::t() const { return eval_t ? *eval_t : std::exp(-1.0); }

void run_config::validate() const {
    if (sgn(energy_cutoff) <= 0) throw input_error("energy cutoff must be positive");
    if (arity < 2) throw input_error("arity cutoff must be at least 2");
    if (degree < 2) throw input_error("series degree must be at least 2");
    if (base_degree < 1) throw input_error("base degree must be at least 1");
    if (eval_t && !(*eval_t > 0 && *eval_t < 1)) throw input_error("evaluation t must lie in (0, 1)");
}

nlohmann::json run_config::to_json() const {
    nlohmann::json j = {{"cutoff_energy", to_string(energy_cutoff)},
                        {"arity", arity},
                        {"degree", degree},
                        {"base_degree", base_degree},
                        {"eval_t", t()},
                        {"mode", arithmetic == mode::exact ? "exact" : "float"}};
    if (inject_sign_error) j["inject_sign_error"] = true;
    return j;
}

std::string to_string(verdict v) {
    switch (v) {
    case verdict::pass:
        return "pass";
    case verdict::fail:
        return "fail";
    case verdict::inconclusive:
        return "inconclusive";
    }
    return "fail";
}

verdict report::overall() const {
    verdict v = verdict::pass;
    for (const auto& c : checks) {
        if (c.outcome == verdict::fail) return verdict::fail;
        if (c.outcome == verdict::inconclusive) v = verdict::inconclusive;
    }
    return v;
}

int report::exit_code() const {
    switch (overall()) {
    case verdict::pass:
        return 0;
    case verdict::fail:
        return 1;
    case verdict::inconclusive:
        return 2;
    }
    return 1;
}

nlohmann::json report::to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks)
        cs.push_back({{"name", c.name}, {"verdict", to_string(c.outcome)}, {"detail", c.detail}, {"data", c.data}});
    return {{"command", command}, {"polytope", polytope}, {"config", config},
            {"verdict", to_string(overall())}, {"checks", cs}, {"data", data}};
}

std::string report::to_text() const {
    std::ostringstream os;
    os << command << ": " << to_string(overall()) << "\n";
    std::size_t w = 0;
    for (const auto& c : checks) w = std::max(w, c.name.size());
    for (const auto& c : checks) {
        std::string v = to_string(c.outcome);
        std::transform(v.begin(), v.end(), v.begin(), ::toupper);
        os << "  " << std::left << std::setw(static_cast<int>(w)) << c.name << "  " << std::setw(14) << v << c.detail
           << "  (" << fmt(c.seconds) << " s)\n";
    }
    if (data.contains("W")) os << "  W = " << data["W"].get<std::string>() << "\n";
    if (data.contains("unit_column"))
        for (const auto& [k, v] : data["unit_column"].items()) os << "  Q(1)[" << k << "] = " << v.get<std::string>() << "\n";
    if (data.contains("ranks"))
        for (const auto& r : data["ranks"]) os << "  HF rank at " << r["point"].dump() << ": " << r["rank"] << "\n";
    if (data.contains("critical_points"))
        for (const auto& p : data["critical_points"])
            os << "  critical value " << fmt(p["value"]["re"].get<double>()) << (p["value"]["im"].get<double>() < 0 ? " - " : " + ")
               << fmt(std::abs(p["value"]["im"].get<double>())) << "i\n";
    return os.str();
}

std::vector<check_result> run_checks(std::vector<std::pair<std::string, std::function<check_result()>>> jobs) {
    std::vector<std::future<check_result>> futures;
    for (auto& [name, job] : jobs)
        futures.push_back(std::async(std::launch::async, [name, job = std::move(job)]() {
            auto t0 = clock_type::now();
            check_result r;
            try {
                r = job();
            } catch (const cutoff_error& e) {
                r = {name, verdict::inconclusive, e.what(), nlohmann::json::object(), 0};
            } catch (const std::exception& e) {
                r = {name, verdict::fail, e.what(), nlohmann::json::object(), 0};
            }
            r.name = name;
            r.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
            return r;
        }));
    std::vector<check_result> out;
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

structure mf_model(const toric_data& T, const std::vector<rational>& p, int arity, completion_report* report) {
    toric_data U = based_at(T, p);
    rational lo = U.ell(0, p), hi = lo;
    for (std::size_t i = 1; i < U.facets.size(); ++i) {
        lo = std::min(lo, U.ell(i, p));
        hi = std::max(hi, U.ell(i, p));
    }
    // energy cutoff between the largest facet class and the smallest composite
    structure A = divisor_core(U, hi + lo / 2, arity);
    return complete(A, arity, report, arity);
}

std::vector<rational> parse_point(const std::string& text, int n) {
    std::vector<rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) throw input_error("empty coordinate in '" + text + "'");
        out.push_back(parse_rational(item));
    }
    if (static_cast<int>(out.size()) != n)
        throw input_error("expected " + std::to_string(n) + " coordinates in '" + text + "'");
    return out;
}

report cmd_potential(const toric_data& T, const run_config& cfg) {
    cfg.validate();
    report R{"potential", T.to_json(), cfg.to_json(), {}, {}};
    const double t = cfg.t();
    R.data["W"] = potential_text(T, t);
    const structure A = divisor_core(T, cfg.energy_cutoff, cfg.arity);
    R.checks = run_checks({
        {"samples",
         [&] {
             nlohmann::json rows = nlohmann::json::array();
             double worst = 0;
             int k = 0;
             for (const auto& x : sample_points(T, 10)) {
                 std::vector<rational> y(T.n);
                 std::vector<double> xd(T.n), yd(T.n);
                 for (int j = 0; j < T.n; ++j) {
                     y[j] = frac((k * 5 + j * 2) % 9 - 4, 8);
                     xd[j] = x[j].get_d();
                     yd[j] = y[j].get_d();
                 }
                 ++k;
                 for (std::size_t i = 0; i < T.facets.size(); ++i)
                     if (T.ell(i, x) >= cfg.energy_cutoff)
                         throw cutoff_error("energy cutoff excludes a facet class at a sample point");
                 cplx got = potential(T, A, x, y, t);
                 cplx want = potential_closed(T, xd, yd, t);
                 double diff = std::abs(got - want);
                 worst = std::max(worst, diff);
                 rows.push_back({{"x", xd}, {"y", yd}, {"computed", cjson(got)}, {"closed_form", cjson(want)},
                                 {"abs_diff", diff}});
             }
             return make("samples", worst < 1e-12, "max |W - closed form| = " + fmt(worst),
                         {{"points", rows}, {"max_abs_diff", worst}});
         }},
        {"holomorphic",
         [&] {
             auto terms = potential_terms(T);
             std::vector<std::vector<double>> xs, ys;
             for (const auto& x : sample_points(T, 5)) {
                 std::vector<double> xd, yd;
                 for (int j = 0; j < T.n; ++j) {
                     xd.push_back(x[j].get_d());
                     yd.push_back(0.3 * (j + 1) - 0.2);
                 }
                 xs.push_back(xd);
                 ys.push_back(yd);
             }
             auto h = holomorphic_check(terms, xs, ys, t);
             bool ok = cfg.arithmetic == mode::exact ? h.symbolic_zero : h.max_fd < 1e-6;
             return make("holomorphic", ok,
                         std::string(h.symbolic_zero ? "dbar W = 0 symbolically" : "dbar W nonzero") +
                             ", finite differences " + fmt(h.max_fd),
                         {{"symbolic_zero", h.symbolic_zero}, {"max_fd", h.max_fd}});
         }},
        {"descent",
         [&] {
             bool ok = descent_check(potential_terms(T));
             return make("descent", ok, ok ? "W(x, y + 2 pi gamma) = W(x, y)" : "not periodic");
         }},
    });
    return R;
}

report cmd_check(const toric_data& T, const run_config& cfg) {
    cfg.validate();
    report R{"check", T.to_json(), cfg.to_json(), {}, {}};
    const int K = cfg.arity, D = cfg.degree, Dx = cfg.base_degree;
    auto rep = std::make_shared<completion_report>();
    std::shared_future<structure> core = std::async(std::launch::async, [&, rep] { return completed(T, cfg, rep.get()); });
    std::shared_future<structure> model = std::async(std::launch::async, [&] { return mf_model(T, T.basepoint, D); });
    brane_chart chart{&T, T.basepoint, zeros(T.n), D};

    std::vector<std::pair<std::string, std::function<check_result()>>> jobs;
    jobs.push_back({"completion", [&, rep] {
                        const structure& C = core.get();
                        return make("completion", rep->ok(),
                                    std::to_string(C.term_count()) + " operator terms, " +
                                        std::to_string(rep->inconsistent.size()) + " inconsistent levels",
                                    rep->to_json());
                    }});
    jobs.push_back({"relations_shifted", [&] { return relations("relations_shifted", core.get(), K - 1); }});
    jobs.push_back({"relations_epsilon", [&] {
                        structure C = core.get();
                        C.set_sign_fault(cfg.inject_sign_error);
                        return relations("relations_epsilon", C.converted(), K - 1);
                    }});
    jobs.push_back({"strict_unit", [&] {
                        auto u = check_strict_unit(core.get());
                        return make("strict_unit", u.ok(), std::to_string(u.checked) + " insertions",
                                    {{"checked", u.checked}, {"violations", u.violations}});
                    }});
    jobs.push_back({"divisor_identity", [&] { return divisor_identity(T, core.get()); }});
    jobs.push_back({"diffeo", [&] {
                        auto d = diffeo_check(core.get(), std::min(4, K - 1), Dx);
                        return make("diffeo", d.ok(),
                                    std::to_string(d.checked - d.failures) + "/" + std::to_string(d.checked) +
                                        " tuples satisfy [nabla, m_k] = omega insertions",
                                    {{"checked", d.checked}, {"failures", d.failures}, {"examples", d.examples}});
                    }});
    jobs.push_back({"propagation", [&] {
                        const structure& C = core.get();
                        auto p = propagate(T, C, T.basepoint, zeros(T.n), Dx);
                        std::vector<rational> x2 = sample_points(T, 3)[2];
                        auto r = two_route_check(T, C, T.basepoint, zeros(T.n), x2, Dx);
                        bool ok = p.flat && p.nabla_theta_is_omega && p.scalar && r.agree;
                        return make("propagation", ok,
                                    std::string(p.flat ? "nabla W = 0" : "nabla W != 0") +
                                        (r.agree ? ", two routes agree" : ", two routes differ"),
                                    {{"flat", p.flat},
                                     {"nabla_theta_is_omega", p.nabla_theta_is_omega},
                                     {"scalar", p.scalar},
                                     {"two_route", r.agree}});
                    }});
    jobs.push_back({"weak_mc", [&] { return weak_mc(T, core.get()); }});
    jobs.push_back({"d2_law", [&] { return d2_law(core.get(), 3); }});
    jobs.push_back({"mc_certificate", [&] {
                        auto c = mc_certificate_check(model.get(), chart);
                        return make("mc_certificate", numerically_ok(cfg, c.exact_zero, c.max_abs, 1e-12),
                                    c.exact_zero ? "residual exactly 0" : "max residual " + fmt(c.max_abs),
                                    {{"exact_zero", c.exact_zero}, {"max_abs", c.max_abs}});
                    }});
    jobs.push_back({"matrix_factorization", [&] {
                        auto Q = mf_from_brane(model.get(), chart);
                        auto v = mf_verify(Q);
                        bool unit = unit_column(Q, chart, nullptr).outcome == verdict::pass;
                        bool ok = Q.holomorphic && unit && numerically_ok(cfg, v.exact_zero, v.max_abs, 1e-10);
                        return make("matrix_factorization", ok,
                                    std::string(v.exact_zero ? "Q^2 - (lambda - W) id exactly 0"
                                                             : "Q^2 - (lambda - W) id max " + fmt(v.max_abs)) +
                                        (Q.holomorphic ? "" : ", not holomorphic") + (unit ? "" : ", wrong Q(1)"),
                                    {{"exact_zero", v.exact_zero},
                                     {"max_abs", v.max_abs},
                                     {"holomorphic", Q.holomorphic},
                                     {"unit_column", unit}});
                    }});
    jobs.push_back({"koszul", [&] {
                        auto k = koszul_cohomology(T.n, D);
                        return make("koszul", !k.degenerate && k.concentrated(),
                                    k.concentrated() ? "rank 1 at top wedge degree only" : "not concentrated",
                                    k.to_json());
                    }});
    R.checks = run_checks(std::move(jobs));
    return R;
}

report cmd_mf(const toric_data& T, const std::vector<rational>& p, const std::vector<rational>& alpha,
              const run_config& cfg) {
    cfg.validate();
    based_at(T, p);
    if (static_cast<int>(alpha.size()) != T.n) throw input_error("alpha has wrong length");
    report R{"mf", T.to_json(), cfg.to_json(), {}, {}};
    nlohmann::json pj = nlohmann::json::array(), aj = nlohmann::json::array();
    for (int j = 0; j < T.n; ++j) {
        pj.push_back(to_string(p[j]));
        aj.push_back(to_string(alpha[j]));
    }
    R.data["point"] = pj;
    R.data["alpha"] = aj;
    brane_chart chart{&T, p, alpha, cfg.degree};
    auto t0 = clock_type::now();
    mf_operator Q;
    try {
        Q = mf_from_brane(mf_model(T, p, cfg.degree), chart);
    } catch (const cutoff_error& e) {
        R.checks.push_back({"matrix_factorization", verdict::inconclusive, e.what(), nlohmann::json::object(), 0});
        return R;
    }
    const double build = std::chrono::duration<double>(clock_type::now() - t0).count();
    R.data["operator"] = Q.to_json();
    nlohmann::json texts = nlohmann::json::object();
    R.checks = run_checks({
        {"holomorphic", [&] { return make("holomorphic", Q.holomorphic, "(d/ds + i d/dr) Q = 0 below the truncation edge"); }},
        {"unit_column", [&] { return unit_column(Q, chart, &texts); }},
        {"square",
         [&] {
             auto v = mf_verify(Q);
             return make("square", numerically_ok(cfg, v.exact_zero, v.max_abs, 1e-10),
                         v.exact_zero ? "Q^2 - (lambda - W) id exactly 0" : "max residual " + fmt(v.max_abs),
                         {{"exact_zero", v.exact_zero}, {"max_abs", v.max_abs}});
         }},
    });
    R.checks[0].seconds += build;
    R.data["unit_column"] = texts;
    return R;
}

report cmd_hf(const toric_data& T, const std::vector<std::vector<rational>>& points, const run_config& cfg) {
    cfg.validate();
    for (const auto& p : points) based_at(T, p);
    report R{"hf", T.to_json(), cfg.to_json(), {}, {}};
    const double t = cfg.t();
    nlohmann::json ranks = nlohmann::json::array();
    nlohmann::json crit = nlohmann::json::array();
    std::vector<std::pair<std::string, std::function<check_result()>>> jobs;
    jobs.push_back({"critical_points", [&] {
                        auto c = critical_points(T, t);
                        double worst = 0;
                        for (const auto& p : c.points) {
                            worst = std::max(worst, p.residual);
                            crit.push_back({{"x", p.x}, {"y", p.y}, {"value", cjson(p.value)}, {"residual", p.residual}});
                        }
                        bool ok = !c.points.empty() && worst < 1e-9;
                        return make("critical_points", ok,
                                    std::to_string(c.points.size()) + " points, max gradient " + fmt(worst),
                                    {{"count", c.points.size()}, {"starts", c.starts}, {"failed_starts", c.failed_starts}});
                    }});
    if (!points.empty())
        jobs.push_back({"floer_ranks", [&] {
                            structure C = completed(T, cfg, nullptr);
                            bool ok = true;
                            for (const auto& p : points) {
                                structure B = C.rebased(T.monoid_at(p));
                                auto s = rank_one(B, ext_nov(T.n), B.arity_cutoff());
                                auto h = hf_rank(B, s, s, t, B.arity_cutoff());
                                nlohmann::json pj = nlohmann::json::array();
                                for (const auto& x : p) pj.push_back(to_string(x));
                                ranks.push_back({{"point", pj}, {"rank", h.rank}, {"singular_values", h.singular_values}});
                                ok = ok && h.curvature_match;
                            }
                            return make("floer_ranks", ok, std::to_string(points.size()) + " points");
                        }});
    R.checks = run_checks(std::move(jobs));
    R.data["critical_points"] = crit;
    R.data["ranks"] = ranks;
    return R;
}

report cmd_complete(const toric_data& T, const run_config& cfg) {
    cfg.validate();
    report R{"complete", T.to_json(), cfg.to_json(), {}, {}};
    completion_report rep;
    structure C = structure(T.base_monoid(), cfg.energy_cutoff, cfg.arity);
    R.checks = run_checks({{"completion", [&] {
                                C = completed(T, cfg, &rep);
                                return make("completion", rep.ok(),
                                            std::to_string(C.term_count()) + " operator terms, " +
                                                std::to_string(rep.underdetermined) + " underdetermined levels",
                                            rep.to_json());
                            }}});
    if (R.checks[0].outcome == verdict::pass) {
        auto more = run_checks({{"relations", [&] { return relations("relations", C, cfg.arity - 1); }}});
        R.checks.push_back(more[0]);
    }
    return R;
}

} // namespace kmirror::cli
