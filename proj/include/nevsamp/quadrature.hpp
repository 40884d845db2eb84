#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace nevsamp {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    bool converged = false;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

// Adaptive Gauss-Kronrod (G7,K15). Initial intervals are split at the given
// interior points (density kinks, singular endpoints).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol,
                                    double abs_tol = 1e-300,
                                    const std::vector<double>& split_points = {},
                                    int max_intervals = 20000);

// Same, but throws QuadratureError if the tolerance is not reached.
double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, double rel_tol,
                          const std::vector<double>& split_points = {},
                          int max_intervals = 20000);

}  // namespace nevsamp
