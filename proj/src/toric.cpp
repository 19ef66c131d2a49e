#include "kmirror/toric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include <Eigen/Dense>

namespace kmirror {

rational toric_data::ell(std::size_t i, const std::vector<rational>& x) const {
    const auto& f = facets.at(i);
    rational s = -f.offset;
    for (int j = 0; j < n; ++j) s += rational(f.normal[j]) * x.at(j);
    return s;
}

bool toric_data::interior(const std::vector<rational>& x) const {
    if (static_cast<int>(x.size()) != n) return false;
    for (std::size_t i = 0; i < facets.size(); ++i)
        if (sgn(ell(i, x)) <= 0) return false;
    return true;
}

monoid_ptr toric_data::monoid_at(const std::vector<rational>& x) const {
    if (!interior(x)) throw input_error("point is not interior to the polytope");
    std::vector<disk_class> cls;
    for (std::size_t i = 0; i < facets.size(); ++i)
        cls.push_back(disk_class{static_cast<int>(i + 1), ell(i, x), 2, facets[i].normal});
    return monoid_new(std::move(cls), n);
}

nlohmann::json toric_data::to_json() const {
    nlohmann::json j;
    j["dimension"] = n;
    for (const auto& f : facets) j["facets"].push_back({{"normal", f.normal}, {"offset", to_string(f.offset)}});
    for (const auto& b : basepoint) j["basepoint"].push_back(to_string(b));
    return j;
}

namespace {

rational json_rational(const nlohmann::json& v, const std::string& what) {
    if (v.is_number_integer()) return rational(v.get<long>());
    if (v.is_number_float()) {
        double d = v.get<double>();
        if (!std::isfinite(d)) throw input_error(what + " is not finite");
        return rational_from_double(d);
    }
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw input_error(what + " must be a number");
}

long json_integer(const nlohmann::json& v, const std::string& what) {
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_number_float()) {
        double d = v.get<double>();
        if (std::floor(d) == d && std::abs(d) < 1e15) return static_cast<long>(d);
    }
    throw input_error(what + " must be an integer");
}

} // namespace

toric_data parse_polytope(const nlohmann::json& doc) {
    if (!doc.is_object()) throw input_error("polytope document must be an object");
    for (const char* key : {"dimension", "facets", "basepoint"})
        if (!doc.contains(key)) throw input_error(std::string("missing field '") + key + "'");
    toric_data T;
    T.n = static_cast<int>(json_integer(doc["dimension"], "dimension"));
    if (T.n <= 0 || T.n > 16) throw input_error("dimension must be between 1 and 16");
    if (!doc["facets"].is_array() || doc["facets"].empty()) throw input_error("facets must be a nonempty array");
    for (std::size_t i = 0; i < doc["facets"].size(); ++i) {
        const auto& f = doc["facets"][i];
        const std::string tag = "facet " + std::to_string(i);
        if (!f.is_object() || !f.contains("normal") || !f.contains("offset"))
            throw input_error(tag + " needs 'normal' and 'offset'");
        if (!f["normal"].is_array() || static_cast<int>(f["normal"].size()) != T.n)
            throw input_error(tag + " normal has wrong length");
        facet fc;
        for (const auto& c : f["normal"]) fc.normal.push_back(json_integer(c, tag + " normal entry"));
        if (std::all_of(fc.normal.begin(), fc.normal.end(), [](long c) { return c == 0; }))
            throw input_error(tag + " normal is zero");
        fc.offset = json_rational(f["offset"], tag + " offset");
        T.facets.push_back(std::move(fc));
    }
    if (!doc["basepoint"].is_array() || static_cast<int>(doc["basepoint"].size()) != T.n)
        throw input_error("basepoint has wrong length");
    for (const auto& c : doc["basepoint"]) T.basepoint.push_back(json_rational(c, "basepoint entry"));
    if (!T.interior(T.basepoint)) throw input_error("basepoint is on or outside the polytope");
    return T;
}

toric_data parse_polytope_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t p = 0; p + 1 < e.byte && p < text.size(); ++p) {
            if (text[p] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw input_error("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                          e.what());
    }
    return parse_polytope(doc);
}

toric_data load_polytope(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_polytope_text(ss.str());
}

toric_data cp1() {
    toric_data T;
    T.n = 1;
    T.facets = {{{1}, 0}, {{-1}, -1}};
    T.basepoint = {rational(1, 2)};
    return T;
}

toric_data cp2() {
    toric_data T;
    T.n = 2;
    T.facets = {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, -1}};
    T.basepoint = {rational(1, 3), rational(1, 3)};
    return T;
}

structure divisor_core(const toric_data& T, rational energy_cutoff, int arity_cutoff, convention conv) {
    structure A = exterior_algebra(T.base_monoid(), std::move(energy_cutoff), arity_cutoff, conv);
    for (std::size_t p = 0; p < T.facets.size(); ++p) A.set_core_class(p, true);
    return A;
}

nlohmann::json completion_report::to_json() const {
    nlohmann::json j;
    j["levels"] = nlohmann::json::array();
    for (const auto& l : levels)
        j["levels"].push_back({{"beta", l.beta},
                               {"arity", l.k},
                               {"unknowns", l.unknowns},
                               {"rows", l.rows},
                               {"nonzero", l.nonzero},
                               {"free", l.free_dims}});
    j["inconsistent"] = inconsistent;
    j["underdetermined"] = underdetermined;
    j["ok"] = ok();
    return j;
}

namespace {

using cext = ext<cq>;

cext unit_vec(int n, wedge_index I) {
    cext x(n);
    x.add(I, cq(1));
    return x;
}

// Coefficient of T^beta in m_{k,beta}, shifted convention.
cext op_value(const structure& A, int k, const monoid_index& beta, const std::vector<cext>& in) {
    if (k == 0) {
        cext out(A.dim());
        if (is_zero_index(beta)) return out;
        int total = 0, pos = -1;
        for (std::size_t p = 0; p < beta.size(); ++p) {
            total += beta[p];
            if (beta[p]) pos = static_cast<int>(p);
        }
        if (total == 1 && A.core_classes()[pos]) out.add(0, cq(1));
        if (const auto* terms = A.level(0, beta))
            for (const auto& t : *terms) {
                if (t.type == op_term::kind::ansatz) out.add(0, t.coef);
                if (t.type == op_term::kind::table)
                    for (const auto& [key, val] : t.table) out += val.scaled(t.coef);
            }
        return out;
    }
    return detail::eval_level<cq>(A, k, beta, detail::split_by_degree(in), nullptr);
}

std::vector<monoid_index> sub_indices(const monoid_index& beta) {
    std::vector<monoid_index> out;
    monoid_index cur(beta.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t p) {
        if (p == beta.size()) {
            out.push_back(cur);
            return;
        }
        for (int m = 0; m <= beta[p]; ++m) {
            cur[p] = m;
            rec(p + 1);
        }
    };
    rec(0);
    return out;
}

monoid_index minus(const monoid_index& a, const monoid_index& b) {
    monoid_index r = a;
    for (std::size_t p = 0; p < r.size(); ++p) r[p] -= b[p];
    return r;
}

// Operator values on basis tuples, cached per level.
class op_cache {
public:
    explicit op_cache(const structure& A) : A_(A) {}

    const cext& value(int k, const monoid_index& beta, const std::vector<wedge_index>& tup) {
        auto& lvl = cache_[op_key{k, beta}];
        auto it = lvl.find(tup);
        if (it != lvl.end()) return it->second;
        std::vector<cext> in;
        for (auto I : tup) in.push_back(unit_vec(A_.dim(), I));
        return lvl.emplace(tup, op_value(A_, k, beta, in)).first->second;
    }

    void invalidate(int k, const monoid_index& beta) { cache_.erase(op_key{k, beta}); }

private:
    const structure& A_;
    std::map<op_key, std::map<std::vector<wedge_index>, cext>> cache_;
};

// T^beta coefficient of the shifted relation on a basis tuple.
cext relation_at(op_cache& cache, int n, const std::vector<wedge_index>& tup, const monoid_index& beta,
                 const std::vector<monoid_index>& splits) {
    const int N = static_cast<int>(tup.size());
    cext out(n);
    int left = 0;
    std::vector<wedge_index> inner, outer;
    for (int r = 0; r <= N; ++r) {
        if (r > 0) left += wdeg(tup[r - 1]) - 1;
        const bool neg = left & 1;
        for (int s = 0; r + s <= N; ++s) {
            const int t = N - r - s;
            inner.assign(tup.begin() + r, tup.begin() + r + s);
            for (const auto& b2 : splits) {
                monoid_index b1 = minus(beta, b2);
                if (is_zero_index(b1) && r + 1 + t != 2) continue;
                if (is_zero_index(b2) && s != 2) continue;
                const cext& v = cache.value(s, b2, inner);
                if (v.is_zero()) continue;
                for (const auto& [J, c] : v.components()) {
                    outer.assign(tup.begin(), tup.begin() + r);
                    outer.push_back(J);
                    outer.insert(outer.end(), tup.begin() + r + s, tup.end());
                    const cext& w = cache.value(r + 1 + t, b1, outer);
                    if (w.is_zero()) continue;
                    out += w.scaled(neg ? -c : c);
                }
            }
        }
    }
    return out;
}

struct ansatz {
    std::vector<int> profile;
    std::vector<std::vector<int>> contr;
};

std::vector<ansatz> ansatz_space(const structure& A, int k, const monoid_index& beta) {
    const int n = A.dim();
    const auto& M = *A.mon();
    std::vector<int> avail;
    for (std::size_t p = 0; p < beta.size(); ++p)
        if (beta[p]) avail.push_back(static_cast<int>(p));
    const int need = k + M.maslov(beta) - 2;
    const bool single = M.total(beta) == 1 && A.core_classes()[avail[0]];
    std::vector<ansatz> out;
    if (k == 0) {
        if (need == 0 && !single) out.push_back({});
        return out;
    }
    // subsets of avail by size
    std::vector<std::vector<std::vector<int>>> subsets(avail.size() + 1);
    for (unsigned mask = 0; mask < (1u << avail.size()); ++mask) {
        std::vector<int> s;
        for (std::size_t q = 0; q < avail.size(); ++q)
            if (mask >> q & 1u) s.push_back(avail[q]);
        subsets[s.size()].push_back(s);
    }
    std::vector<int> prof(k, 1);
    std::vector<std::vector<int>> con(k);
    std::function<void(int, int)> rec_assign = [&](int i, int used) {
        if (used > need) return;
        if (i == k) {
            if (used == need) out.push_back({prof, con});
            return;
        }
        const int mx = std::min<int>(prof[i], static_cast<int>(avail.size()));
        for (int sz = 0; sz <= mx; ++sz)
            for (const auto& s : subsets[sz]) {
                con[i] = s;
                rec_assign(i + 1, used + sz);
            }
    };
    std::function<void(int)> rec_prof = [&](int i) {
        if (i == k) {
            if (single && std::all_of(prof.begin(), prof.end(), [](int d) { return d == 1; })) return;
            int cap = 0;
            for (int d : prof) cap += std::min<int>(d, static_cast<int>(avail.size()));
            if (cap < need) return;
            rec_assign(0, 0);
            return;
        }
        for (int d = 1; d <= n; ++d) {
            prof[i] = d;
            rec_prof(i + 1);
        }
    };
    rec_prof(0);
    return out;
}

template <class F>
void for_each_basis_tuple(int n, const std::vector<int>& degs, F&& f) {
    std::vector<std::vector<wedge_index>> by_deg(n + 1);
    for (wedge_index I = 0; I < (wedge_index(1) << n); ++I) by_deg[wdeg(I)].push_back(I);
    std::vector<wedge_index> tup(degs.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == degs.size()) {
            f(tup);
            return;
        }
        for (auto I : by_deg[degs[i]]) {
            tup[i] = I;
            rec(i + 1);
        }
    };
    rec(0);
}

cext eval_ansatz_basis(const structure& A, const ansatz& a, const std::vector<cext>& in) {
    return detail::eval_ansatz<cq>(A, a.profile, a.contr, cq(1), detail::split_by_degree(in), nullptr);
}

bool ansatz_nonzero(const structure& A, const ansatz& a) {
    if (a.profile.empty()) return true;
    bool found = false;
    for_each_basis_tuple(A.dim(), a.profile, [&](const std::vector<wedge_index>& tup) {
        if (found) return;
        std::vector<cext> in;
        for (auto I : tup) in.push_back(unit_vec(A.dim(), I));
        if (!eval_ansatz_basis(A, a, in).is_zero()) found = true;
    });
    return found;
}

// Non-unit basis tuples of length N with total wedge degree in [lo, hi].
std::vector<std::vector<wedge_index>> tuples_in_range(int n, int N, int lo, int hi) {
    std::vector<std::vector<wedge_index>> out;
    std::vector<wedge_index> tup(N);
    std::function<void(int, int)> rec = [&](int i, int sum) {
        if (sum + (N - i) > hi || sum + (N - i) * n < lo) return;
        if (i == N) {
            out.push_back(tup);
            return;
        }
        for (wedge_index I = 1; I < (wedge_index(1) << n); ++I) {
            tup[i] = I;
            rec(i + 1, sum + wdeg(I));
        }
    };
    rec(0, 0);
    return out;
}

// Incremental sparse row echelon form over Gaussian rationals.
class sparse_solver {
public:
    explicit sparse_solver(std::size_t nvars) : nvars_(nvars) {}

    // false when the row reduces to 0 = nonzero
    bool add_row(std::map<std::size_t, cq> row, cq rhs) {
        while (!row.empty()) {
            auto it = row.begin();
            auto pv = pivots_.find(it->first);
            if (pv == pivots_.end()) {
                cq inv = cq(1) / it->second;
                for (auto& [c, v] : row) v *= inv;
                rhs *= inv;
                std::size_t col = it->first;
                pivots_.emplace(col, std::make_pair(std::move(row), std::move(rhs)));
                return true;
            }
            cq f = it->second;
            const auto& [prow, prhs] = pv->second;
            for (const auto& [c, v] : prow) {
                auto& slot = row[c];
                slot -= f * v;
                if (slot.is_zero()) row.erase(c);
            }
            rhs -= f * prhs;
        }
        return rhs.is_zero();
    }

    std::size_t rank() const { return pivots_.size(); }
    std::size_t free_dims() const { return nvars_ - pivots_.size(); }

    std::vector<cq> solution() const {
        std::vector<cq> x(nvars_, cq(0));
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            const auto& [row, rhs] = it->second;
            cq v = rhs;
            for (const auto& [c, a] : row)
                if (c != it->first) v -= a * x[c];
            x[it->first] = v;
        }
        return x;
    }

private:
    std::size_t nvars_;
    std::map<std::size_t, std::pair<std::map<std::size_t, cq>, cq>> pivots_;
};

std::string describe_tuple(const std::vector<wedge_index>& tup) {
    std::string s = "(";
    for (std::size_t i = 0; i < tup.size(); ++i) s += (i ? "," : "") + wedge_name(tup[i]);
    return s + ")";
}

std::string describe_index(const monoid_index& b) {
    std::string s = "[";
    for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
    return s + "]";
}

} // namespace

std::vector<int> required_relation_arity(const structure& A, const std::vector<monoid_index>& betas) {
    const int n = A.dim();
    const int R = A.arity_cutoff() - 1;
    const auto& M = *A.mon();
    std::vector<int> need(betas.size(), -1);
    for (std::size_t i = betas.size(); i-- > 0;) {
        if (M.maslov(betas[i]) <= (n - 1) * R + 3) need[i] = R;
        for (std::size_t j = 0; j < betas.size(); ++j)
            if (j != i && need[j] >= 0 && divides(betas[i], betas[j]) && betas[i] != betas[j])
                need[i] = std::max(need[i], need[j] + 1);
    }
    return need;
}

structure complete(const structure& A0, int arity_cutoff, completion_report* report, int min_single_arity) {
    if (A0.conv() != convention::shifted) throw error("completion runs in the shifted convention");
    structure A = A0;
    A.set_arity_cutoff(std::max(arity_cutoff, min_single_arity));
    completion_report rep;
    const int n = A.dim();
    const auto& M = *A.mon();
    std::vector<monoid_index> betas;
    for (auto& b : M.enumerate(A.energy_cutoff()))
        if (!is_zero_index(b)) betas.push_back(b);
    // energy order; descending pass for the arity cascade needs supersets later in the list
    std::stable_sort(betas.begin(), betas.end(), [&](const auto& a, const auto& b) {
        auto ea = M.energy(a), eb = M.energy(b);
        if (ea != eb) return ea < eb;
        return M.total(a) < M.total(b);
    });
    A.set_arity_cutoff(arity_cutoff);
    auto need = required_relation_arity(A, betas);
    A.set_arity_cutoff(std::max(arity_cutoff, min_single_arity));
    for (std::size_t i = 0; i < betas.size(); ++i)
        if (M.total(betas[i]) == 1) need[i] = std::max(need[i], min_single_arity + 1);
    const monoid_index zero = M.zero();
    op_cache cache(A);
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
        const auto& beta = betas[bi];
        if (need[bi] < 1) continue;
        const auto splits = sub_indices(beta);
        const int mu = M.maslov(beta);
        for (int k = 0; k + 1 <= need[bi]; ++k) {
            const int N = k + 1;
            std::vector<ansatz> unknowns;
            for (auto& a : ansatz_space(A, k, beta))
                if (ansatz_nonzero(A, a)) unknowns.push_back(std::move(a));
            std::map<std::vector<int>, std::vector<std::size_t>> by_profile;
            for (std::size_t j = 0; j < unknowns.size(); ++j) by_profile[unknowns[j].profile].push_back(j);
            const int lo = mu + N - 3;
            auto tuples = tuples_in_range(n, N, lo, lo + n);
            std::map<std::vector<wedge_index>, std::vector<std::pair<std::size_t, cext>>> ucache;
            auto unknown_values = [&](const std::vector<wedge_index>& key,
                                      const std::vector<std::size_t>& idx) -> const std::vector<std::pair<std::size_t, cext>>& {
                auto it = ucache.find(key);
                if (it != ucache.end()) return it->second;
                std::vector<cext> in;
                for (auto I : key) in.push_back(unit_vec(n, I));
                std::vector<std::pair<std::size_t, cext>> vals;
                for (std::size_t j : idx) {
                    cext v = eval_ansatz_basis(A, unknowns[j], in);
                    if (!v.is_zero()) vals.emplace_back(j, std::move(v));
                }
                return ucache.emplace(key, std::move(vals)).first->second;
            };
            sparse_solver solver(unknowns.size());
            completion_level lvl{beta, k, unknowns.size(), 0, 0, 0};
            bool consistent = true;
            for (const auto& tup : tuples) {
                cext base = relation_at(cache, n, tup, beta, splits);
                std::map<wedge_index, std::map<std::size_t, cq>> cols;
                if (!unknowns.empty()) {
                    std::vector<cext> ins;
                    for (auto I : tup) ins.push_back(unit_vec(n, I));
                    auto add_col = [&](std::size_t j, const cext& v, bool neg) {
                        for (const auto& [J, c] : v.components()) {
                            auto& slot = cols[J][j];
                            if (neg)
                                slot -= c;
                            else
                                slot += c;
                        }
                    };
                    auto profile_of = [](const std::vector<cext>& xs) {
                        std::vector<int> p;
                        for (const auto& x : xs) p.push_back(wdeg(x.components().begin()->first));
                        return p;
                    };
                    // inner unknown, outer wedge
                    for (int r = 0; r <= 1; ++r) {
                        std::vector<cext> inner(ins.begin() + r, ins.begin() + r + k);
                        auto it = by_profile.find(profile_of(inner));
                        if (it == by_profile.end()) continue;
                        const bool neg = r == 1 && ((wdeg(tup[0]) - 1) & 1);
                        std::vector<wedge_index> key(tup.begin() + r, tup.begin() + r + k);
                        for (const auto& [j, v] : unknown_values(key, it->second)) {
                            cext w = r == 0 ? op_value(A, 2, zero, {v, ins[k]}) : op_value(A, 2, zero, {ins[0], v});
                            add_col(j, w, neg);
                        }
                    }
                    // outer unknown, inner wedge
                    int left = 0;
                    for (int r = 0; r + 2 <= N; ++r) {
                        if (r > 0) left += wdeg(tup[r - 1]) - 1;
                        cext w = op_value(A, 2, zero, {ins[r], ins[r + 1]});
                        if (w.is_zero()) continue;
                        std::vector<cext> outer(ins.begin(), ins.begin() + r);
                        outer.push_back(w);
                        outer.insert(outer.end(), ins.begin() + r + 2, ins.end());
                        auto it = by_profile.find(profile_of(outer));
                        if (it == by_profile.end()) continue;
                        std::vector<wedge_index> key(tup.begin(), tup.begin() + r);
                        const auto& [J, c] = *w.components().begin();
                        key.push_back(J);
                        key.insert(key.end(), tup.begin() + r + 2, tup.end());
                        const bool neg = (left & 1) != (c.re < 0);
                        for (const auto& [j, v] : unknown_values(key, it->second)) add_col(j, v, neg);
                    }
                }
                std::set<wedge_index> comps;
                for (const auto& [J, c] : base.components()) comps.insert(J);
                for (const auto& [J, c] : cols) comps.insert(J);
                for (auto J : comps) {
                    std::map<std::size_t, cq> row;
                    if (auto it = cols.find(J); it != cols.end())
                        for (const auto& [j, c] : it->second)
                            if (!c.is_zero()) row.emplace(j, c);
                    const cq* b = base.find(J);
                    cq rhs = b ? -*b : cq(0);
                    if (row.empty() && rhs.is_zero()) continue;
                    ++lvl.rows;
                    if (!solver.add_row(std::move(row), rhs)) {
                        consistent = false;
                        if (rep.inconsistent.size() < 20)
                            rep.inconsistent.push_back("beta " + describe_index(beta) + " arity " + std::to_string(N) +
                                                       " inputs " + describe_tuple(tup) + " component " +
                                                       wedge_name(J));
                    }
                }
            }
            // divisor equation for degree-one insertions
            if (k >= 1 && consistent) {
                const auto bd = M.boundary(beta);
                const int dlo = k + mu - 3;
                for (const auto& tup : tuples_in_range(n, k - 1, dlo, dlo + n))
                    for (int j = 0; j < n; ++j) {
                        const wedge_index ej = wedge_index(1) << j;
                        cext base = cache.value(k - 1, beta, tup).scaled(cq(rational(-bd[j])));
                        std::map<wedge_index, std::map<std::size_t, cq>> cols;
                        for (int i = 0; i < k; ++i) {
                            std::vector<wedge_index> key(tup.begin(), tup.begin() + i);
                            key.push_back(ej);
                            key.insert(key.end(), tup.begin() + i, tup.end());
                            base += cache.value(k, beta, key);
                            std::vector<int> prof;
                            for (auto I : key) prof.push_back(wdeg(I));
                            auto it = by_profile.find(prof);
                            if (it == by_profile.end()) continue;
                            for (const auto& [u, v] : unknown_values(key, it->second))
                                for (const auto& [J, c] : v.components()) cols[J][u] += c;
                        }
                        std::set<wedge_index> comps;
                        for (const auto& [J, c] : base.components()) comps.insert(J);
                        for (const auto& [J, c] : cols) comps.insert(J);
                        for (auto J : comps) {
                            std::map<std::size_t, cq> row;
                            if (auto it = cols.find(J); it != cols.end())
                                for (const auto& [u, c] : it->second)
                                    if (!c.is_zero()) row.emplace(u, c);
                            const cq* b = base.find(J);
                            cq rhs = b ? -*b : cq(0);
                            if (row.empty() && rhs.is_zero()) continue;
                            ++lvl.rows;
                            if (!solver.add_row(std::move(row), rhs)) {
                                consistent = false;
                                if (rep.inconsistent.size() < 20)
                                    rep.inconsistent.push_back("beta " + describe_index(beta) + " divisor arity " +
                                                               std::to_string(k) + " inputs " + describe_tuple(tup) +
                                                               " component " + wedge_name(J));
                            }
                        }
                    }
            }
            lvl.free_dims = solver.free_dims();
            if (lvl.free_dims && !unknowns.empty()) ++rep.underdetermined;
            if (consistent && !unknowns.empty()) {
                auto x = solver.solution();
                for (std::size_t j = 0; j < unknowns.size(); ++j) {
                    if (x[j].is_zero()) continue;
                    op_term t;
                    t.type = op_term::kind::ansatz;
                    t.profile = unknowns[j].profile;
                    t.contractions = unknowns[j].contr;
                    t.coef = x[j];
                    t.origin = "completion";
                    A.add_term(k, beta, std::move(t));
                    ++lvl.nonzero;
                }
            }
            cache.invalidate(k, beta);
            if (!unknowns.empty() || lvl.rows) rep.levels.push_back(lvl);
        }
    }
    if (report) *report = rep;
    return A;
}

cplx potential(const toric_data& T, const structure& A, const std::vector<rational>& x,
               const std::vector<rational>& y, double t, int max_arity) {
    if (static_cast<int>(y.size()) != T.n) throw input_error("y has wrong length");
    structure B = A.rebased(T.monoid_at(x));
    const auto ctx = B.ctx();
    ext<novikov> b(T.n);
    for (int j = 0; j < T.n; ++j)
        if (sgn(y[j]) != 0) b.add(wedge_index(1) << j, novikov::constant(ctx, cq(0, -y[j])));
    if (max_arity <= 0) {
        double mx = 0;
        for (const auto& f : T.facets) {
            double s = 0;
            for (int j = 0; j < T.n; ++j) s += f.normal[j] * y[j].get_d();
            mx = std::max(mx, std::abs(s));
        }
        double term = 1;
        int k = 0;
        while (k < 200 && (k < 2 || term > 1e-18)) {
            ++k;
            term *= mx / k;
        }
        max_arity = k;
    }
    cplx total = 0;
    for (int k = 0; k <= max_arity; ++k) {
        std::vector<ext<novikov>> in(k, b);
        auto v = detail::apply_parts<novikov>(B, k, detail::split_by_degree(in), ctx, nullptr);
        const novikov* c = v.find(0);
        if (!c) continue;
        cplx val = c->evaluate(t);
        if (B.conv() == convention::epsilon && ((k * (k - 1) / 2) & 1)) val = -val;
        total += val;
    }
    return total;
}

cplx potential_closed(const toric_data& T, const std::vector<double>& x, const std::vector<double>& y, double t) {
    cplx W = 0;
    for (const auto& f : T.facets) {
        double l = -f.offset.get_d(), vy = 0;
        for (int j = 0; j < T.n; ++j) {
            l += f.normal[j] * x.at(j);
            vy += f.normal[j] * y.at(j);
        }
        W += std::pow(t, l) * std::exp(cplx(0, -vy));
    }
    return W;
}

cplx potential_z(const toric_data& T, const std::vector<cplx>& z, double t) {
    const double L = -std::log(t);
    cplx W = 0;
    for (const auto& f : T.facets) {
        cplx e = f.offset.get_d() * L;
        for (int j = 0; j < T.n; ++j) e -= double(f.normal[j]) * z.at(j);
        W += std::exp(e);
    }
    return W;
}

std::vector<cplx> potential_z_gradient(const toric_data& T, const std::vector<cplx>& z, double t) {
    const double L = -std::log(t);
    std::vector<cplx> g(T.n, 0);
    for (const auto& f : T.facets) {
        cplx e = f.offset.get_d() * L;
        for (int j = 0; j < T.n; ++j) e -= double(f.normal[j]) * z.at(j);
        cplx w = std::exp(e);
        for (int j = 0; j < T.n; ++j) g[j] -= double(f.normal[j]) * w;
    }
    return g;
}

std::string potential_text(const toric_data& T, double t) {
    const double L = -std::log(t);
    const bool unit = std::abs(L - 1) < 1e-15;
    std::ostringstream os;
    for (std::size_t i = 0; i < T.facets.size(); ++i) {
        const auto& f = T.facets[i];
        std::string e;
        for (int j = 0; j < T.n; ++j) {
            long v = -f.normal[j];
            if (v == 0) continue;
            std::string var = T.n == 1 ? "z" : "z" + std::to_string(j + 1);
            if (v == 1)
                e += (e.empty() ? "" : "+") + var;
            else if (v == -1)
                e += "-" + var;
            else
                e += (v > 0 && !e.empty() ? "+" : "") + std::to_string(v) + var;
        }
        if (sgn(f.offset) != 0) {
            std::string c;
            if (unit) {
                c = to_string(abs(f.offset));
            } else {
                std::ostringstream cs;
                cs.precision(17);
                cs << std::abs(f.offset.get_d() * L);
                c = cs.str();
            }
            e += (sgn(f.offset) > 0 ? "+" : "-") + c;
        }
        if (e.empty()) e = "0";
        os << (i ? "+" : "") << "e^{" << e << "}";
    }
    return os.str();
}

critical_report critical_points(const toric_data& T, double t) {
    if (!(t > 0 && t < 1)) throw input_error("evaluation parameter must lie in (0,1)");
    const int n = T.n;
    const double L = -std::log(t);
    const double two_pi = 2 * std::numbers::pi;
    critical_report rep;
    // starting x: basepoint and points between it and the vertices-ish directions
    std::vector<std::vector<double>> xs;
    std::vector<double> u0;
    for (const auto& b : T.basepoint) u0.push_back(b.get_d());
    xs.push_back(u0);
    for (int j = 0; j < n; ++j)
        for (double d : {-0.25, 0.25}) {
            auto x = u0;
            x[j] += d * (1 + std::abs(u0[j]));
            xs.push_back(x);
        }
    const int ny = n == 1 ? 6 : 4;
    std::vector<std::vector<double>> ys(1, std::vector<double>());
    for (int j = 0; j < n; ++j) {
        std::vector<std::vector<double>> next;
        for (const auto& y : ys)
            for (int q = 0; q < ny; ++q) {
                auto yy = y;
                yy.push_back(two_pi * q / ny + 0.1);
                next.push_back(yy);
            }
        ys = next;
    }
    auto gnorm = [&](const std::vector<cplx>& z) {
        double s = 0;
        for (auto g : potential_z_gradient(T, z, t)) s += std::norm(g);
        return std::sqrt(s);
    };
    auto scale = [&](const std::vector<cplx>& z) {
        double s = 0;
        for (const auto& f : T.facets) {
            cplx e = f.offset.get_d() * L;
            for (int j = 0; j < n; ++j) e -= double(f.normal[j]) * z[j];
            s += std::abs(std::exp(e));
        }
        return s;
    };
    for (const auto& x0 : xs)
        for (const auto& y0 : ys) {
            ++rep.starts;
            std::vector<cplx> z(n);
            for (int j = 0; j < n; ++j) z[j] = cplx(L * x0[j], y0[j]);
            double g0 = gnorm(z);
            bool ok = false;
            for (int it = 0; it < 200 && std::isfinite(g0); ++it) {
                if (g0 < 1e-14) {
                    ok = true;
                    break;
                }
                Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
                Eigen::VectorXcd g = Eigen::VectorXcd::Zero(n);
                for (const auto& f : T.facets) {
                    cplx e = f.offset.get_d() * L;
                    for (int j = 0; j < n; ++j) e -= double(f.normal[j]) * z[j];
                    cplx w = std::exp(e);
                    for (int j = 0; j < n; ++j) {
                        g(j) -= double(f.normal[j]) * w;
                        for (int l = 0; l < n; ++l) H(j, l) += double(f.normal[j] * f.normal[l]) * w;
                    }
                }
                Eigen::VectorXcd step = H.fullPivLu().solve(-g);
                if (!step.allFinite()) break;
                double lam = 1;
                bool moved = false;
                for (int bt = 0; bt < 40; ++bt, lam *= 0.5) {
                    std::vector<cplx> zn(n);
                    for (int j = 0; j < n; ++j) zn[j] = z[j] + lam * step(j);
                    double gn = gnorm(zn);
                    if (std::isfinite(gn) && gn < g0) {
                        z = zn;
                        g0 = gn;
                        moved = true;
                        break;
                    }
                }
                if (!moved) {
                    ok = g0 < 1e-10;
                    break;
                }
            }
            if (!ok && g0 < 1e-10) ok = true;
            if (ok && g0 > 1e-9 * scale(z)) ok = false;
            if (!ok) {
                ++rep.failed_starts;
                continue;
            }
            for (auto& zj : z) {
                double im = std::fmod(zj.imag(), two_pi);
                if (im < 0) im += two_pi;
                if (two_pi - im < 1e-10) im = 0;
                zj = cplx(zj.real(), im);
            }
            bool dup = false;
            for (const auto& p : rep.points) {
                double d = 0;
                for (int j = 0; j < n; ++j) {
                    cplx dz = p.z[j] - z[j];
                    double dim = std::abs(dz.imag());
                    dim = std::min(dim, two_pi - dim);
                    d = std::max(d, std::max(std::abs(dz.real()), dim));
                }
                if (d < 1e-8) dup = true;
            }
            if (dup) continue;
            critical_point cp;
            cp.z = z;
            for (int j = 0; j < n; ++j) {
                cp.x.push_back(z[j].real() / L);
                cp.y.push_back(z[j].imag());
            }
            cp.value = potential_z(T, z, t);
            cp.residual = gnorm(z);
            rep.points.push_back(cp);
        }
    std::sort(rep.points.begin(), rep.points.end(), [](const auto& a, const auto& b) {
        for (std::size_t j = 0; j < a.z.size(); ++j) {
            if (std::abs(a.z[j].imag() - b.z[j].imag()) > 1e-9) return a.z[j].imag() < b.z[j].imag();
            if (std::abs(a.z[j].real() - b.z[j].real()) > 1e-9) return a.z[j].real() < b.z[j].real();
        }
        return false;
    });
    return rep;
}

} // namespace kmirror
