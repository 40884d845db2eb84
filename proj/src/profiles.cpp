#include "nevsamp/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "nevsamp/quadrature.hpp"

namespace nevsamp {

namespace {

void check_positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

double table_eval(const Table& t, double x) {
    const auto& b = t.breaks;
    const auto& v = t.values;
    auto it = std::upper_bound(b.begin(), b.end(), x);
    if (it == b.begin()) {
        // below the first breakpoint: ramp down to 0 at 0
        if (t.step) return 0.0;
        return v.front() * (x / b.front());
    }
    std::size_t hi = static_cast<std::size_t>(it - b.begin());
    if (hi == b.size()) return v.back();
    std::size_t lo = hi - 1;
    if (t.step) return v[lo];
    double w = (x - b[lo]) / (b[hi] - b[lo]);
    return v[lo] + w * (v[hi] - v[lo]);
}

}  // namespace

Profile::Profile(Family f) : family_(std::move(f)) {
    if (auto* p = std::get_if<PowerLaw>(&family_)) {
        check_positive(p->alpha, "PowerLaw alpha");
        check_positive(p->scale, "PowerLaw scale");
    } else if (auto* e = std::get_if<ExpInvPower>(&family_)) {
        check_positive(e->beta, "ExpInvPower beta");
    } else if (auto* l = std::get_if<LogPower>(&family_)) {
        check_positive(l->beta, "LogPower beta");
        check_positive(l->scale, "LogPower scale");
    } else {
        const auto& t = std::get<Table>(family_);
        if (t.breaks.empty() || t.breaks.size() != t.values.size())
            throw std::invalid_argument("Table: breaks/values size mismatch");
        for (std::size_t i = 0; i + 1 < t.breaks.size(); ++i)
            if (!(t.breaks[i] < t.breaks[i + 1]))
                throw std::invalid_argument("Table: breaks must increase");
        for (std::size_t i = 0; i + 1 < t.values.size(); ++i)
            if (t.values[i] > t.values[i + 1])
                throw std::invalid_argument("Table: values must be non-decreasing");
        if (t.values.front() < 0.0)
            throw std::invalid_argument("Table: values must be non-negative");
        if (!(t.breaks.front() > 0.0 && t.breaks.back() <= 2.0))
            throw std::invalid_argument("Table: breaks must lie in (0,2]");
    }
}

double Profile::eval(double t) const {
    if (!(t > 0.0 && t <= 2.0))
        throw std::domain_error("Profile::eval: argument outside (0,2]");
    if (auto* p = std::get_if<PowerLaw>(&family_))
        return p->scale * std::pow(t, p->alpha);
    if (auto* e = std::get_if<ExpInvPower>(&family_))
        return std::exp(-1.0 / std::pow(t, e->beta));
    if (auto* l = std::get_if<LogPower>(&family_))
        return l->scale * t / std::pow(1.0 - std::log(t), l->beta);
    return table_eval(std::get<Table>(family_), t);
}

double Profile::inverse(double s) const {
    if (auto* p = std::get_if<PowerLaw>(&family_)) {
        if (!(s > 0.0)) throw std::domain_error("inverse: s out of range");
        return std::pow(s / p->scale, 1.0 / p->alpha);
    }
    if (auto* e = std::get_if<ExpInvPower>(&family_)) {
        if (!(s > 0.0 && s < 1.0)) throw std::domain_error("inverse: s out of range");
        return std::pow(1.0 / std::log(1.0 / s), 1.0 / e->beta);
    }
    // LogPower and Table: monotone bisection on (0, 2]
    double lo = 1e-300, hi = 2.0;
    double f_hi = eval(hi);
    if (s > f_hi || s < 0.0) throw std::domain_error("inverse: s out of range");
    if (is_table()) {
        // breakpoint values return the breakpoint exactly
        const auto& t = std::get<Table>(family_);
        for (std::size_t i = 0; i < t.values.size(); ++i)
            if (t.values[i] == s) return t.breaks[i];
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (eval(mid) < s)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

ClassFResult Profile::class_f_test() const {
    using M = ClassFResult::Method;
    if (auto* p = std::get_if<PowerLaw>(&family_)) {
        bool member = p->alpha > 1.0;
        double val = member ? p->scale / (p->alpha - 1.0) : std::numeric_limits<double>::infinity();
        return {member ? ClassFVerdict::Member : ClassFVerdict::NotMember, val, M::ClosedForm};
    }
    if (std::get_if<ExpInvPower>(&family_)) {
        // exp(-1/t^b)/t^2 -> 0 faster than any power as t -> 0
        auto q = integrate_adaptive(
            [this](double t) { return eval(t) / (t * t); }, 1e-12, 1.0, 1e-10);
        return {ClassFVerdict::Member, q.value, M::ClosedForm};
    }
    if (auto* l = std::get_if<LogPower>(&family_)) {
        // integral of dx / (x log^b(e/x)) converges iff b > 1
        bool member = l->beta > 1.0;
        double val = member ? l->scale / (l->beta - 1.0) : std::numeric_limits<double>::infinity();
        return {member ? ClassFVerdict::Member : ClassFVerdict::NotMember, val, M::ClosedForm};
    }

    // Table: integrate psi/x^2 on (eps,1] for shrinking eps and extrapolate.
    const auto& t = std::get<Table>(family_);
    std::vector<double> partial;
    bool grew_unbounded = false;
    for (int j = 4; j <= 40; j += 4) {
        double eps = std::ldexp(1.0, -j);
        auto q = integrate_adaptive(
            [this](double x) { return eval(x) / (x * x); }, eps, 1.0, 1e-9, 1e-14,
            {t.breaks.begin(), t.breaks.end()});
        partial.push_back(q.value);
        if (j > 4 && q.value > 1e6) {
            grew_unbounded = true;
            break;
        }
    }
    if (grew_unbounded)
        return {ClassFVerdict::NotMember, partial.back(), M::Quadrature};
    // Richardson-style check: increments between successive eps halvings
    std::size_t m = partial.size();
    double d1 = partial[m - 1] - partial[m - 2];
    double d2 = partial[m - 2] - partial[m - 3];
    if (std::abs(d1) <= 1e-9 * std::max(1.0, std::abs(partial.back())))
        return {ClassFVerdict::Member, partial.back(), M::Quadrature};
    if (d2 > 0.0 && d1 / d2 < 0.75) {
        double extrapolated = partial.back() + d1 / (1.0 - d1 / d2);
        return {ClassFVerdict::Member, extrapolated, M::Quadrature};
    }
    if (d2 > 0.0 && d1 >= 0.95 * d2)
        return {ClassFVerdict::NotMember, partial.back(), M::Quadrature};
    return {ClassFVerdict::Inconclusive, partial.back(), M::Quadrature};
}

std::string Profile::describe() const {
    std::ostringstream os;
    if (auto* p = std::get_if<PowerLaw>(&family_)) {
        os << "pow:" << p->alpha;
        if (p->scale != 1.0) os << ":" << p->scale;
    } else if (auto* e = std::get_if<ExpInvPower>(&family_)) {
        os << "expinv:" << e->beta;
    } else if (auto* l = std::get_if<LogPower>(&family_)) {
        os << "logpow:" << l->beta;
        if (l->scale != 1.0) os << ":" << l->scale;
    } else {
        const auto& t = std::get<Table>(family_);
        os << "table[" << t.breaks.size() << (t.step ? ",step]" : "]");
    }
    return os.str();
}

Profile Profile::parse(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("profile spec: expected family:params");
    std::string fam = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ':')) out.push_back(tok);
        return out;
    };
    if (fam == "pow") {
        auto p = split(rest);
        double alpha = std::stod(p.at(0));
        double c = p.size() > 1 ? std::stod(p[1]) : 1.0;
        return Profile(PowerLaw{alpha, c});
    }
    if (fam == "expinv") return Profile(ExpInvPower{std::stod(rest)});
    if (fam == "logpow") {
        auto p = split(rest);
        double beta = std::stod(p.at(0));
        double c = p.size() > 1 ? std::stod(p[1]) : 1.0;
        return Profile(LogPower{beta, c});
    }
    if (fam == "table") {
        std::ifstream in(rest);
        if (!in) throw std::invalid_argument("profile table: cannot open " + rest);
        nlohmann::json j;
        in >> j;
        Table t;
        t.breaks = j.at("breaks").get<std::vector<double>>();
        t.values = j.at("values").get<std::vector<double>>();
        t.step = j.value("step", false);
        return Profile(std::move(t));
    }
    throw std::invalid_argument("profile spec: unknown family '" + fam + "'");
}

Profile psi_from_g(const Profile& g, int depth) {
    if (auto* p = std::get_if<PowerLaw>(&g.family())) {
        // psi^{-1}(t) = c t^{gamma+1/2}  =>  psi(s) = c' s^{1/(gamma+1/2)}
        double q = p->alpha + 0.5;
        return Profile(PowerLaw{1.0 / q, std::pow(p->scale, -1.0 / q)});
    }
    // tabulate (sqrt(t) g(t), t) on a dyadic grid
    Table t;
    for (int j = depth; j >= 0; --j) {
        double x = std::ldexp(1.0, -j);
        double s = std::sqrt(x) * g.eval(x);
        if (!t.breaks.empty() && s <= t.breaks.back())
            throw std::invalid_argument("psi_from_g: sqrt(t) g(t) not invertible");
        t.breaks.push_back(s);
        t.values.push_back(x);
    }
    return Profile(std::move(t));
}

Profile psi_eta_raise(const Profile& p, double eta, int depth) {
    if (!(eta >= 0.0 && eta < 1.0))
        throw std::invalid_argument("psi_eta_raise: eta must be in [0,1)");
    double lift = (1.0 + eta) / (1.0 - eta);
    Table t;
    t.step = true;
    // plateaus from the deepest level up; value p(2^{-n}) on [2^{-n-2}, 2^{-n-1})
    for (int n = depth - 1; n >= 0; --n) {
        t.breaks.push_back(std::ldexp(1.0, -n - 2));
        t.values.push_back(lift * p.eval(std::ldexp(1.0, -n)));
    }
    // extend the top plateau past 1/4 so the domain reaches 2
    t.breaks.push_back(0.5);
    t.values.push_back(t.values.back());
    return Profile(std::move(t));
}

}  // namespace nevsamp
