#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nevsamp/disk_geometry.hpp"
#include "nevsamp/profiles.hpp"

namespace nevsamp {

// P_z(e^{i theta}) = (1-|z|^2) / |e^{i theta} - z|^2
double poisson_kernel(const DiskPoint& z, double theta);
double poisson_kernel(Complex z, double theta);

struct BoundaryAtom {
    double angle;  // in [0, 2pi)
    double mass;   // > 0
};

// Step density: value on the arc [a, b) of the circle, arcs may overlap (they
// add). Values are densities with respect to d(theta).
struct ArcSegment {
    double a, b;   // 0 <= a < b <= 2pi after splitting
    double value;  // >= 0
};

// Density psi(d)/d^2 with d = angular distance to `angle`, cut off at d > 1.
// Integrable on the circle exactly when psi is in class F.
struct ClassFDensity {
    Profile profile;
    double angle = 0.0;
    double scale = 1.0;
};

// Finite positive measure on the circle: point masses plus an optional
// piecewise density. Poisson integrals of atoms are exact; densities are
// integrated adaptively.
struct BoundaryMeasure {
    std::vector<BoundaryAtom> atoms;
    std::vector<ArcSegment> segments;
    std::optional<ClassFDensity> class_f;

    bool atoms_only() const { return segments.empty() && !class_f; }
    double total_atom_mass() const;

    // Adds the arc [center-half_width, center+half_width] with the given
    // density value, splitting across the 0/2pi seam as needed.
    void add_arc(double center, double half_width, double value);
};

// P[mu](z) = sum_atoms mass * P_z + integral of P_z(theta) density(theta) d theta.
// Density part to relative tolerance 1e-8; throws QuadratureError otherwise.
double poisson_integral(const DiskPoint& z, const BoundaryMeasure& mu);

// log|S(z)| = -P[mu](z) for the singular inner function of an atomic mu.
double singular_inner_log_modulus(const BoundaryMeasure& mu_atoms,
                                  const DiskPoint& z);

// (lo, hi) with lo = (1-rho)/(1+rho), hi = (1+rho)/(1-rho): the ratio range
// h(z)/h(w) for positive harmonic h and rho(z,w) <= rho.
struct HarnackBounds {
    double lo, hi;
};
HarnackBounds harnack_ratio_bounds(double rho);

struct HalfPlanePoint {
    double x;
    double y;  // > 0

    HalfPlanePoint(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0.0))
            throw std::invalid_argument("HalfPlanePoint: y must be > 0");
    }
};

// (1/pi) * integral over [-1,1] of y / ((x-t)^2 + y^2) * density(t) dt,
// adaptive to relative tolerance 1e-7; throws QuadratureError when the
// density is not integrable.
double halfplane_poisson_integral(const HalfPlanePoint& p,
                                  const std::function<double(double)>& density,
                                  const std::vector<double>& split_points = {0.0});

// Exact mass of an arc under the kernel: (1/2pi) * integral over [a,b] of
// P_z d theta. Used as the oracle for the adaptive path.
double arc_poisson_mass(Complex z, double a, double b);

}  // namespace nevsamp
