#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nevsamp {

using Complex = std::complex<double>;

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Angle normalized to [0, 2pi); values that round to 2pi wrap to 0.
double normalize_angle(double theta);

// A point of the open unit disk. Construction rejects modulus >= 1.
class DiskPoint {
public:
    DiskPoint() : z_(0.0, 0.0) {}
    DiskPoint(double re, double im) : z_(re, im) { validate(); }
    explicit DiskPoint(Complex z) : z_(z) { validate(); }

    // For results of disk-preserving maps; skips the modulus check but clamps
    // rounding overshoot onto the open disk.
    static DiskPoint unchecked(Complex z);

    Complex value() const { return z_; }
    double re() const { return z_.real(); }
    double im() const { return z_.imag(); }
    double abs() const { return std::abs(z_); }
    double norm() const { return std::norm(z_); }

    friend bool operator==(const DiskPoint& a, const DiskPoint& b) {
        return a.z_ == b.z_;
    }

private:
    void validate() const {
        if (!(std::norm(z_) < 1.0))
            throw std::invalid_argument("DiskPoint: modulus must be < 1");
    }
    Complex z_;
};

// rho(z,w) = |z-w| / |1 - z*conj(w)|
double pseudo_distance(const DiskPoint& z, const DiskPoint& w);
double pseudo_distance(Complex z, Complex w);

// phi_a(z) = e^{i theta} (z-a)/(1 - conj(a) z); default rotation 0.
DiskPoint mobius(const DiskPoint& a, const DiskPoint& z, double theta = 0.0);
Complex mobius(Complex a, Complex z, double theta = 0.0);

// Pseudohyperbolic disk D(center, radius), radius in (0,1).
struct HyperbolicDisk {
    DiskPoint center;
    double radius;

    HyperbolicDisk(DiskPoint c, double r) : center(c), radius(r) {
        if (!(r > 0.0 && r < 1.0))
            throw std::invalid_argument("HyperbolicDisk: radius must be in (0,1)");
    }
};

struct EuclideanDisk {
    Complex center;
    double radius;
};

// Euclidean disk with the same point set as d.
EuclideanDisk hyperbolic_to_euclidean(const HyperbolicDisk& d);

// Whitney index: level n, angular slot k. Level 0 is the reserved root region
// |z| < 1/2 with two angular halves k in {0,1}; for n >= 1, 0 <= k < 2^n.
struct DyadicIndex {
    int n = 0;
    std::int64_t k = 0;

    friend bool operator==(const DyadicIndex&, const DyadicIndex&) = default;
    friend auto operator<=>(const DyadicIndex&, const DyadicIndex&) = default;
};

std::int64_t slots_at_level(int n);  // 2 at level 0, 2^n otherwise

// Index of the square containing z; half-open in both radius and angle.
DyadicIndex dyadic_square_of(const DiskPoint& z);
DyadicIndex dyadic_square_of(Complex z);

// Radial/angular midpoint (1 - 3*2^{-n-2}) exp(2 pi i (k+1/2) 2^{-n}).
DiskPoint dyadic_center(const DyadicIndex& i);

// Closed radial/angular bounds of the square (angles as fractions of a turn
// times 2pi, upper angle may exceed 2pi only at level 0 wrap handling).
struct DyadicBox {
    double r_lo, r_hi;          // [r_lo, r_hi)
    double theta_lo, theta_hi;  // [theta_lo, theta_hi)
};
DyadicBox dyadic_box(const DyadicIndex& i);

// Indices at levels n-1..n+1 whose closed squares touch the closure of i
// (including i itself). max_level clips the children level.
std::vector<DyadicIndex> dyadic_neighbors(const DyadicIndex& i, int max_level);

// Boundary arc I_a = {zeta : |zeta - a/|a|| <= 1-|a|}.
struct BoundaryArc {
    double center_angle;
    double half_width;  // angular
};
BoundaryArc privalov_shadow(const DiskPoint& a);

// Euclidean disk whose interior is {z : P_z(1) > c}.
EuclideanDisk horocycle_disk(double c);

// Forward declaration; profiles.hpp defines Profile.
class Profile;

struct ApproachRegion {
    double vertex_angle;    // zeta = e^{i vertex_angle}
    const Profile* profile; // non-owning

    ApproachRegion(double angle, const Profile& p)
        : vertex_angle(normalize_angle(angle)), profile(&p) {}
};

// true iff psi(|z - zeta|) <= 1 - |z|
bool in_approach_region(const ApproachRegion& r, const DiskPoint& z);

}  // namespace nevsamp
