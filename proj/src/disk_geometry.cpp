#include "nevsamp/disk_geometry.hpp"

#include <algorithm>
#include <cmath>

#include "nevsamp/profiles.hpp"

namespace nevsamp {

double normalize_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

DiskPoint DiskPoint::unchecked(Complex z) {
    DiskPoint p;
    if (std::norm(z) >= 1.0) {
        // rounding overshoot from a disk automorphism; pull back onto the disk
        z *= (1.0 - 1e-15) / std::abs(z);
    }
    p.z_ = z;
    return p;
}

double pseudo_distance(Complex z, Complex w) {
    double num = std::abs(z - w);
    if (num == 0.0) return 0.0;
    double den = std::abs(1.0 - z * std::conj(w));
    return num / den;
}

double pseudo_distance(const DiskPoint& z, const DiskPoint& w) {
    return pseudo_distance(z.value(), w.value());
}

Complex mobius(Complex a, Complex z, double theta) {
    Complex m = (z - a) / (1.0 - std::conj(a) * z);
    if (theta != 0.0) m *= std::polar(1.0, theta);
    return m;
}

DiskPoint mobius(const DiskPoint& a, const DiskPoint& z, double theta) {
    return DiskPoint::unchecked(mobius(a.value(), z.value(), theta));
}

EuclideanDisk hyperbolic_to_euclidean(const HyperbolicDisk& d) {
    Complex a = d.center.value();
    double r = d.radius;
    double a2 = std::norm(a);
    double den = 1.0 - r * r * a2;
    return EuclideanDisk{a * (1.0 - r * r) / den, r * (1.0 - a2) / den};
}

std::int64_t slots_at_level(int n) {
    if (n == 0) return 2;
    return std::int64_t{1} << n;
}

DyadicIndex dyadic_square_of(Complex z) {
    double r = std::abs(z);
    double theta = normalize_angle(std::arg(z));
    if (r < 0.5) {
        return DyadicIndex{0, theta < kTwoPi / 2.0 ? 0 : 1};
    }
    // 1 - 2^{-n} <= r < 1 - 2^{-n-1}  <=>  n = floor(-log2(1-r))
    int n = static_cast<int>(std::floor(-std::log2(1.0 - r)));
    if (n < 1) n = 1;
    std::int64_t slots = std::int64_t{1} << n;
    auto k = static_cast<std::int64_t>(std::floor(theta / kTwoPi * static_cast<double>(slots)));
    k = std::clamp<std::int64_t>(k, 0, slots - 1);
    return DyadicIndex{n, k};
}

DyadicIndex dyadic_square_of(const DiskPoint& z) {
    return dyadic_square_of(z.value());
}

DiskPoint dyadic_center(const DyadicIndex& i) {
    double r = 1.0 - 3.0 * std::ldexp(1.0, -i.n - 2);
    double slots = static_cast<double>(slots_at_level(i.n));
    double theta = kTwoPi * (static_cast<double>(i.k) + 0.5) / slots;
    return DiskPoint::unchecked(std::polar(r, theta));
}

DyadicBox dyadic_box(const DyadicIndex& i) {
    if (i.n == 0) {
        return DyadicBox{0.0, 0.5, i.k == 0 ? 0.0 : kTwoPi / 2.0,
                         i.k == 0 ? kTwoPi / 2.0 : kTwoPi};
    }
    double r_lo = 1.0 - std::ldexp(1.0, -i.n);
    double r_hi = 1.0 - std::ldexp(1.0, -i.n - 1);
    double slots = static_cast<double>(slots_at_level(i.n));
    double t_lo = kTwoPi * static_cast<double>(i.k) / slots;
    double t_hi = kTwoPi * static_cast<double>(i.k + 1) / slots;
    return DyadicBox{r_lo, r_hi, t_lo, t_hi};
}

namespace {

// closed angular intervals (as turn fractions) intersect mod 1
bool turns_touch(double a_lo, double a_hi, double b_lo, double b_hi) {
    for (int shift = -1; shift <= 1; ++shift) {
        double lo = b_lo + shift;
        double hi = b_hi + shift;
        if (a_lo <= hi && lo <= a_hi) return true;
    }
    return false;
}

}  // namespace

std::vector<DyadicIndex> dyadic_neighbors(const DyadicIndex& i, int max_level) {
    std::vector<DyadicIndex> out;
    double slots_i = static_cast<double>(slots_at_level(i.n));
    double a_lo = static_cast<double>(i.k) / slots_i;
    double a_hi = static_cast<double>(i.k + 1) / slots_i;
    for (int m = std::max(0, i.n - 1); m <= std::min(max_level, i.n + 1); ++m) {
        std::int64_t slots = slots_at_level(m);
        for (std::int64_t j = 0; j < slots; ++j) {
            double b_lo = static_cast<double>(j) / static_cast<double>(slots);
            double b_hi = static_cast<double>(j + 1) / static_cast<double>(slots);
            if (turns_touch(a_lo, a_hi, b_lo, b_hi)) out.push_back({m, j});
        }
    }
    return out;
}

BoundaryArc privalov_shadow(const DiskPoint& a) {
    double r = a.abs();
    if (r == 0.0)
        throw std::invalid_argument("privalov_shadow: undefined at origin");
    double half = 2.0 * std::asin(std::min(1.0, (1.0 - r) / 2.0));
    return BoundaryArc{normalize_angle(std::arg(a.value())), half};
}

EuclideanDisk horocycle_disk(double c) {
    if (!(c > 0.0))
        throw std::invalid_argument("horocycle_disk: c must be > 0");
    return EuclideanDisk{Complex(c / (1.0 + c), 0.0), 1.0 / (1.0 + c)};
}

bool in_approach_region(const ApproachRegion& r, const DiskPoint& z) {
    Complex zeta = std::polar(1.0, r.vertex_angle);
    double chord = std::abs(z.value() - zeta);
    if (chord == 0.0) return true;
    return r.profile->eval(chord) <= 1.0 - z.abs();
}

}  // namespace nevsamp
