#pragma once

#include <vector>

#include "nevsamp/disk_geometry.hpp"
#include "nevsamp/generators.hpp"
#include "nevsamp/profiles.hpp"

namespace nevsamp {

// D(0, outer_radius) minus a family of closed euclidean disks.
struct ExcisedDomain {
    double outer_radius;
    std::vector<EuclideanDisk> excised;

    void validate() const;
};

// Disks D(lambda, phi(1-|lambda|)) whose euclidean closure fits in
// D(0, 1 - K^{-n}).
ExcisedDomain build_domain(const Configuration& c_with_radii, int n, double K);

struct HMEstimate {
    double escape_probability;
    double std_error;  // sqrt(p(1-p)/walks)
    long walks;
    long escaped, captured, stalled;
    unsigned long long seed;
    double eps_shell;
};

// Walk-on-spheres from `start` (default the origin): maximal jumps until
// within eps_shell of the outer circle (escape) or an excised disk (capture).
// Per-walk RNG streams keyed by walk index: deterministic given (seed, walks)
// and independent of thread count. Walks over 10^6 steps count as stalled.
HMEstimate estimate_escape(const ExcisedDomain& d, long walks,
                           unsigned long long seed, double eps_shell,
                           Complex start = Complex(0.0, 0.0));
HMEstimate estimate_escape_serial(const ExcisedDomain& d, long walks,
                                  unsigned long long seed, double eps_shell,
                                  Complex start = Complex(0.0, 0.0));

// prod_{j=1}^{n} (1 - C / log(1/phi(K^{-j}))); throws when a factor is <= 0.
double epsilon_product(const Profile& phi, double C, double K, int n);

struct EscapeRow {
    int n;
    double R_n;
    long excised_count;
    double escape;
    double std_error;
    long stalled;
    double eps_product_c01, eps_product_c05, eps_product_c1;  // NaN if invalid
};

// Per-level escape probabilities against the shrinking-product curve.
std::vector<EscapeRow> sampling_vs_escape_experiment(const Profile& phi,
                                                     int level_lo, int level_hi,
                                                     long walks,
                                                     unsigned long long seed,
                                                     double K = 2.0);

}  // namespace nevsamp
