#include "kmirror/novikov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "kmirror/error.hpp"

namespace kmirror {

monoid::monoid(std::vector<disk_class> classes, int n) : n_(n), classes_(std::move(classes)) {
    if (n <= 0) throw error("monoid dimension must be positive");
    std::set<int> ids;
    for (const auto& c : classes_) {
        if (!ids.insert(c.id).second) throw error("duplicate disk class id " + std::to_string(c.id));
        if (static_cast<int>(c.boundary.size()) != n)
            throw error("boundary length mismatch for class " + std::to_string(c.id));
        if (sgn(c.energy0) < 0) throw error("negative energy for class " + std::to_string(c.id));
        if (c.maslov % 2 != 0) throw error("odd Maslov index for class " + std::to_string(c.id));
    }
}

std::size_t monoid::position(int id) const {
    for (std::size_t p = 0; p < classes_.size(); ++p)
        if (classes_[p].id == id) return p;
    throw error("unknown disk class id " + std::to_string(id));
}

monoid_index monoid::generator(std::size_t pos) const {
    monoid_index b = zero();
    b.at(pos) = 1;
    return b;
}

rational monoid::energy(const monoid_index& b) const {
    rational e = 0;
    for (std::size_t p = 0; p < b.size(); ++p)
        if (b[p]) e += classes_[p].energy0 * b[p];
    return e;
}

int monoid::maslov(const monoid_index& b) const {
    int mu = 0;
    for (std::size_t p = 0; p < b.size(); ++p) mu += classes_[p].maslov * b[p];
    return mu;
}

std::vector<long> monoid::boundary(const monoid_index& b) const {
    std::vector<long> v(n_, 0);
    for (std::size_t p = 0; p < b.size(); ++p)
        for (int i = 0; i < n_; ++i) v[i] += classes_[p].boundary[i] * b[p];
    return v;
}

int monoid::total(const monoid_index& b) const {
    int t = 0;
    for (int m : b) t += m;
    return t;
}

std::vector<monoid_index> monoid::enumerate(const rational& cutoff) const {
    for (const auto& c : classes_)
        if (sgn(c.energy0) <= 0)
            throw cutoff_error("class " + std::to_string(c.id) + " has zero energy; enumeration is unbounded");
    std::vector<monoid_index> out;
    monoid_index cur = zero();
    std::function<void(std::size_t, rational)> rec = [&](std::size_t pos, rational e) {
        if (pos == classes_.size()) {
            out.push_back(cur);
            return;
        }
        for (int m = 0;; ++m) {
            rational em = e + classes_[pos].energy0 * m;
            if (em >= cutoff) break;
            cur[pos] = m;
            rec(pos + 1, em);
        }
        cur[pos] = 0;
    };
    rec(0, 0);
    std::sort(out.begin(), out.end(), [&](const monoid_index& a, const monoid_index& b) {
        rational ea = energy(a), eb = energy(b);
        if (ea != eb) return ea < eb;
        return a < b;
    });
    return out;
}

monoid_ptr monoid::rebased(const std::vector<rational>& shift) const {
    if (static_cast<int>(shift.size()) != n_) throw error("shift length mismatch");
    auto cls = classes_;
    for (auto& c : cls) {
        for (int i = 0; i < n_; ++i) c.energy0 += c.boundary[i] * shift[i];
        if (sgn(c.energy0) < 0) throw input_error("re-based energy negative for class " + std::to_string(c.id));
    }
    return std::make_shared<monoid>(std::move(cls), n_);
}

bool monoid::same_as(const monoid& o) const {
    if (n_ != o.n_ || classes_.size() != o.classes_.size()) return false;
    for (std::size_t p = 0; p < classes_.size(); ++p) {
        const auto& a = classes_[p];
        const auto& b = o.classes_[p];
        if (a.id != b.id || a.energy0 != b.energy0 || a.maslov != b.maslov || a.boundary != b.boundary) return false;
    }
    return true;
}

monoid_ptr monoid_new(std::vector<disk_class> classes, int n) {
    return std::make_shared<monoid>(std::move(classes), n);
}

monoid_index operator+(const monoid_index& a, const monoid_index& b) {
    if (a.size() != b.size()) throw error("monoid index size mismatch");
    monoid_index c(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) c[p] = a[p] + b[p];
    return c;
}

bool is_zero_index(const monoid_index& b) {
    return std::all_of(b.begin(), b.end(), [](int m) { return m == 0; });
}

bool divides(const monoid_index& a, const monoid_index& b) {
    for (std::size_t p = 0; p < a.size(); ++p)
        if (a[p] > b[p]) return false;
    return true;
}

novikov::novikov(monoid_ptr m, rational cutoff) : m_(std::move(m)), cutoff_(std::move(cutoff)) {
    if (!m_) throw error("novikov element without monoid");
    if (sgn(cutoff_) <= 0) throw error("energy cutoff must be positive");
}

novikov novikov::monomial(const context& ctx, const monoid_index& b, const cq& c) {
    novikov x(ctx.m, ctx.cutoff);
    x.add_term(b, c);
    return x;
}

novikov novikov::constant(const context& ctx, const cq& c) {
    return monomial(ctx, ctx.m->zero(), c);
}

cq novikov::coefficient(const monoid_index& b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? cq(0) : it->second;
}

void novikov::add_term(const monoid_index& b, const cq& c) {
    if (c.is_zero()) return;
    if (b.size() != m_->size()) throw error("monoid index does not match registry");
    if (m_->energy(b) >= cutoff_) return;
    auto it = terms_.find(b);
    if (it == terms_.end()) {
        terms_.emplace(b, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void novikov::check_compatible(const novikov& o) const {
    if (!m_ || !o.m_) throw error("uninitialised novikov element");
    if (m_ != o.m_ && !m_->same_as(*o.m_)) throw error("monoid mismatch");
    if (cutoff_ != o.cutoff_) throw error("cutoff mismatch");
}

novikov& novikov::operator+=(const novikov& o) {
    check_compatible(o);
    for (const auto& [b, c] : o.terms_) add_term(b, c);
    return *this;
}

novikov& novikov::operator-=(const novikov& o) {
    check_compatible(o);
    for (const auto& [b, c] : o.terms_) add_term(b, -c);
    return *this;
}

novikov novikov::operator-() const {
    novikov r = *this;
    for (auto& [b, c] : r.terms_) c = -c;
    return r;
}

novikov operator*(const novikov& a, const novikov& b) {
    a.check_compatible(b);
    novikov r(a.m_, a.cutoff_);
    for (const auto& [ba, ca] : a.terms_)
        for (const auto& [bb, cb] : b.terms_) r.add_term(ba + bb, ca * cb);
    return r;
}

novikov operator*(const novikov& a, const cq& c) {
    novikov r(a.m_, a.cutoff_);
    if (c.is_zero()) return r;
    for (const auto& [b, x] : a.terms_) r.terms_.emplace(b, x * c);
    return r;
}

bool operator==(const novikov& a, const novikov& b) { return a.terms_ == b.terms_ && a.cutoff_ == b.cutoff_; }

novikov novikov::times_T(const monoid_index& b) const {
    novikov r(m_, cutoff_);
    for (const auto& [bb, c] : terms_) r.add_term(bb + b, c);
    return r;
}

std::optional<rational> novikov::valuation() const {
    std::optional<rational> v;
    for (const auto& [b, c] : terms_) {
        rational e = m_->energy(b);
        if (!v || e < *v) v = e;
    }
    return v;
}

cplx novikov::evaluate(double t) const {
    cplx s = 0;
    for (const auto& [b, c] : terms_) s += c.to_complex() * std::pow(t, m_->energy(b).get_d());
    return s;
}

cplx novikov::evaluate_weighted(const std::vector<cplx>& weights) const {
    if (weights.size() != m_->size()) throw error("weight count mismatch");
    cplx s = 0;
    for (const auto& [b, c] : terms_) {
        cplx w = c.to_complex();
        for (std::size_t p = 0; p < b.size(); ++p) w *= std::pow(weights[p], b[p]);
        s += w;
    }
    return s;
}

novikov novikov::gm_derivative(int i) const {
    if (i < 0 || i >= m_->dimension()) throw error("direction out of range");
    novikov r(m_, cutoff_);
    for (const auto& [b, c] : terms_) {
        long d = m_->boundary(b)[i];
        if (d) r.add_term(b, c * cq(-d));
    }
    return r;
}

novikov novikov::truncated(const rational& cutoff) const {
    novikov r(m_, cutoff);
    for (const auto& [b, c] : terms_) r.add_term(b, c);
    return r;
}

novikov novikov::transported(const monoid_ptr& m) const {
    if (m->size() != m_->size()) throw error("monoid layout mismatch");
    novikov r(m, cutoff_);
    for (const auto& [b, c] : terms_) r.add_term(b, c);
    return r;
}

double novikov::max_abs() const {
    double mx = 0;
    for (const auto& [b, c] : terms_) mx = std::max(mx, c.abs());
    return mx;
}

nlohmann::json novikov::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [b, c] : terms_)
        terms.push_back({{"index", b}, {"re", c.re.get_d()}, {"im", c.im.get_d()}});
    return {{"terms", terms}, {"cutoff", cutoff_.get_d()}};
}

} // namespace kmirror
