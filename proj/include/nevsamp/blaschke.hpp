#pragma once

#include <span>
#include <vector>

#include "nevsamp/disk_geometry.hpp"
#include "nevsamp/harmonic_kernels.hpp"

namespace nevsamp {

struct Zero {
    DiskPoint point;
    int multiplicity = 1;
};

// Finite truncation of a zero sequence with multiplicities. `depth` records
// the generation level the truncation corresponds to.
struct ZeroSet {
    std::vector<Zero> zeros;
    int depth = 0;

    void add(DiskPoint p, int mult = 1) {
        if (mult < 1) throw std::invalid_argument("ZeroSet: multiplicity >= 1");
        zeros.push_back({p, mult});
    }
    std::size_t distinct_count() const { return zeros.size(); }
    long total_count() const {
        long c = 0;
        for (const auto& z : zeros) c += z.multiplicity;
        return c;
    }
};

// sum of m_a * log rho(z, a); -inf exactly when z hits a zero. Never forms
// the product.
double blaschke_log_modulus(const ZeroSet& Z, const DiskPoint& z);
double blaschke_log_modulus(const ZeroSet& Z, Complex z);

// Batch evaluation: OpenMP over points, bit-identical to the serial path.
std::vector<double> blaschke_log_modulus_batch(const ZeroSet& Z,
                                               std::span<const Complex> pts);
std::vector<double> blaschke_log_modulus_batch_serial(
    const ZeroSet& Z, std::span<const Complex> pts);

// sum of m_a (1 - |a|)
double blaschke_sum(const ZeroSet& Z);

struct RadialSample {
    double r;
    double scaled_log_modulus;  // (1-r) log|B(r zeta)|
    bool at_zero;               // exact hit, value -inf
};

struct RadialScan {
    std::vector<RadialSample> samples;
    double max_value;  // over non-hit samples
};

// (1-r) log|B(r zeta)| along the given increasing radii.
RadialScan radial_growth_scan(const ZeroSet& Z, double zeta_angle,
                              std::span<const double> r_grid);

// Quasi-bounded majorant: Poisson integral of c0 * sum m_a chi_{I_a} with the
// dtheta/2pi normalization (value c0 * sum m_a |I_a| / 2pi at the origin).
double quasibounded_majorant_HB(const ZeroSet& Z, double c0, const DiskPoint& z);

// Step density sum m_a chi_{I_a} / 2pi reused across evaluation points.
BoundaryMeasure shadow_measure(const ZeroSet& Z, double c0);

// Smallest c0 (bisection to tol) such that
//   -log|B(z)| <= HB_{c0}(z) - sum_{a in Z, rho(z,a) < delta} m_a log rho(z,a)
// holds at every cloud point.
double calibrate_c0(const ZeroSet& Z, std::span<const Complex> cloud,
                    double delta = 0.5, double tol = 1e-3);

}  // namespace nevsamp
