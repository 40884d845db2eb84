#pragma once

#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "nevsamp/blaschke.hpp"
#include "nevsamp/generators.hpp"
#include "nevsamp/harmonic_kernels.hpp"
#include "nevsamp/profiles.hpp"

namespace nevsamp {

// Disk -> upper half-plane, 1 -> 0, 0 -> i.
HalfPlanePoint to_halfplane(Complex z);

// Half-plane correction for the tangential witnesses:
// C * Poisson integral of psi(t)/t^2 over [-1,1], evaluated at the image of z.
struct HalfPlanePart {
    Profile psi;
    double C;
};

// log|f| = (Blaschke log-modulus of zero_set)
//        + harmonic_scale * P[atoms]
//        - (half-plane correction, when present).
// Only the log-modulus is ever constructed; that is all the bound checks use.
struct NevanlinnaWitness {
    ZeroSet zero_set;
    BoundaryMeasure harmonic_atoms;  // atoms only
    double harmonic_scale = 0.0;
    std::optional<HalfPlanePart> halfplane;
    nlohmann::json meta = nlohmann::json::object();

    double log_modulus(Complex z) const;
    std::vector<double> log_modulus_batch(std::span<const Complex> pts) const;

    double atom_angle() const {
        return harmonic_atoms.atoms.empty() ? 0.0 : harmonic_atoms.atoms[0].angle;
    }
};

// Zeros at the Whitney centers inside {P_z(1) > c}, plus the kernel term
// P_z(1) itself: bounded by c on the remaining centers, radial indicator 2.
NevanlinnaWitness example1_witness(double c_horocycle, int depth);

// Separated-subsequence construction: zeros at the lambda with P_lambda(1) >= 1
// (multiplicity floor(P)), kernel scale (1/2)((1-delta)/(1+delta)) log(1/delta).
// Requires a convergent kernel test at zeta = 1; throws otherwise.
NevanlinnaWitness appendix_witness(const Configuration& c, double delta,
                                   int depth);

// Tangential-region witness: zeros at Lambda inside the approach region of
// psi at 1, harmonic part P_z(1)/pi minus the calibrated half-plane term.
NevanlinnaWitness tangential_net_witness(const Profile& psi,
                                         const Configuration& c, int depth);

// Inflated-disk witness for a non-sampling phi: zeros with multiplicity
// floor(P_lambda(1)/log(1/phi(1-|lambda|))), kernel scale calibrated on the
// zero-carrying disks.
NevanlinnaWitness udisks_witness(const Profile& phi, const Configuration& c,
                                 int depth);

struct WitnessReport {
    double sup_on_lambda;
    long zero_hits;  // lambda coinciding with zeros, excluded from the sup
    std::vector<std::pair<double, double>> radial_scan;  // (r, (1-r) log|f|)
    double unbounded_radially_indicator;                 // max of the scan
    bool bounded_on_lambda;
    double slack;
    int truncation_depth;
};

// Geometric tail estimate of the omitted Blaschke mass, from the witness's
// own per-level zero sums.
double witness_slack(const NevanlinnaWitness& w);

// Checks log|f| <= bound + slack on the configuration and scans
// (1-r) log|f(r zeta)| toward the witness's boundary atom.
WitnessReport verify_witness(const NevanlinnaWitness& w, const Configuration& c,
                             double bound, std::span<const double> r_grid);

// Log-spaced radii accumulating at 1: 1-r from (1-r_lo) down to (1-r_hi).
std::vector<double> radial_grid(int count, double r_lo, double r_hi);

}  // namespace nevsamp
