#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nevsamp {

// Monotone profile functions driving the sampling criteria. Four families:
//   PowerLaw(alpha, c)     c * t^alpha
//   ExpInvPower(beta)      exp(-1 / t^beta)
//   LogPower(beta, c)      c * t / (log(e/t))^beta
//   Table                  monotone breakpoints, linear or step interpolation
//
// Evaluation is accepted on (0, 2]: chord lengths |z - zeta| reach 2 and every
// closed-form family extends there monotonically.

struct PowerLaw {
    double alpha;
    double scale = 1.0;
};

struct ExpInvPower {
    double beta;
};

struct LogPower {
    double beta;
    double scale = 1.0;
};

struct Table {
    std::vector<double> breaks;   // strictly increasing, in (0, 2]
    std::vector<double> values;   // non-decreasing, non-negative
    bool step = false;            // step: value[i] on [breaks[i], breaks[i+1])
};

enum class ClassFVerdict { Member, NotMember, Inconclusive };

struct ClassFResult {
    ClassFVerdict verdict;
    double integral_value_or_partial;
    enum class Method { ClosedForm, Quadrature } method;

    bool member() const { return verdict == ClassFVerdict::Member; }
};

class Profile {
public:
    using Family = std::variant<PowerLaw, ExpInvPower, LogPower, Table>;

    explicit Profile(Family f);

    double operator()(double t) const { return eval(t); }
    double eval(double t) const;

    // p(inverse(s)) = s to 1e-10; closed form except for Table (bisection).
    double inverse(double s) const;

    // Membership of psi in {psi : integral of psi(x)/x^2 near 0 finite}.
    ClassFResult class_f_test() const;

    const Family& family() const { return family_; }
    bool is_table() const { return std::holds_alternative<Table>(family_); }

    std::string describe() const;

    // Parse "pow:a[:c]", "expinv:b", "logpow:b[:c]", "table:path.json".
    static Profile parse(const std::string& spec);

private:
    Family family_;
};

// Profile whose inverse is t -> sqrt(t) * g(t). PowerLaw stays closed form;
// other families are tabulated on a dyadic grid of `depth` levels.
Profile psi_from_g(const Profile& g, int depth = 24);

// Step profile with value ((1+eta)/(1-eta)) * p(2^{-n}) on
// [2^{-(n+2)}, 2^{-(n+1)}), n = 0..depth-1, extended flat beyond 1/4.
Profile psi_eta_raise(const Profile& p, double eta, int depth = 24);

}  // namespace nevsamp
