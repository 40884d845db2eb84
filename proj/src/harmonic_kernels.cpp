#include "nevsamp/harmonic_kernels.hpp"

#include <algorithm>
#include <cmath>

#include "nevsamp/quadrature.hpp"

namespace nevsamp {

double poisson_kernel(Complex z, double theta) {
    Complex zeta = std::polar(1.0, theta);
    return (1.0 - std::norm(z)) / std::norm(zeta - z);
}

double poisson_kernel(const DiskPoint& z, double theta) {
    return poisson_kernel(z.value(), theta);
}

double BoundaryMeasure::total_atom_mass() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.mass;
    return m;
}

void BoundaryMeasure::add_arc(double center, double half_width, double value) {
    double lo = normalize_angle(center - half_width);
    double hi = lo + 2.0 * half_width;
    if (hi <= kTwoPi) {
        segments.push_back({lo, hi, value});
    } else {
        segments.push_back({lo, kTwoPi, value});
        segments.push_back({0.0, hi - kTwoPi, value});
    }
}

double arc_poisson_mass(Complex z, double a, double b) {
    // antiderivative of P_z(theta)/2pi is (1/pi) atan((1+r)/(1-r) tan((theta-phi)/2));
    // continuity across each pole theta = phi + pi (mod 2pi) adds 1.
    if (b <= a) return 0.0;
    double r = std::abs(z);
    if (r == 0.0) return (b - a) / kTwoPi;
    const double pi = kTwoPi / 2.0;
    double phi = std::arg(z);
    double q = (1.0 + r) / (1.0 - r);
    auto F = [&](double theta) {
        return std::atan(q * std::tan(0.5 * (theta - phi))) / pi;
    };
    double first = phi + pi;
    first += kTwoPi * std::ceil((a - first) / kTwoPi);
    int poles = 0;
    for (double t = first; t < b; t += kTwoPi)
        if (t > a) ++poles;
    return F(b) - F(a) + poles;
}

namespace {

double density_integral(Complex z, const BoundaryMeasure& mu) {
    double total = 0.0;
    double peak = normalize_angle(std::arg(z));
    for (const auto& seg : mu.segments) {
        if (seg.value == 0.0 || seg.b <= seg.a) continue;
        std::vector<double> splits;
        if (peak > seg.a && peak < seg.b) splits.push_back(peak);
        total += seg.value *
                 integrate_or_throw(
                     [&](double t) { return poisson_kernel(z, t); }, seg.a,
                     seg.b, 1e-8, splits);
    }
    if (mu.class_f) {
        const auto& cf = *mu.class_f;
        auto density = [&](double theta) {
            double d = std::abs(normalize_angle(theta - cf.angle + kTwoPi / 2.0) -
                                kTwoPi / 2.0);
            if (d <= 0.0 || d > 1.0) return 0.0;
            return cf.scale * cf.profile.eval(d) / (d * d);
        };
        double c = cf.angle;
        std::vector<double> splits{normalize_angle(c - 1.0), normalize_angle(c),
                                   normalize_angle(c + 1.0), peak};
        total += integrate_or_throw(
            [&](double t) { return poisson_kernel(z, t) * density(t); }, 0.0,
            kTwoPi, 1e-7, splits);
    }
    return total;
}

}  // namespace

double poisson_integral(const DiskPoint& z, const BoundaryMeasure& mu) {
    double total = 0.0;
    for (const auto& a : mu.atoms) total += a.mass * poisson_kernel(z, a.angle);
    if (!mu.segments.empty() || mu.class_f) total += density_integral(z.value(), mu);
    return total;
}

double singular_inner_log_modulus(const BoundaryMeasure& mu_atoms,
                                  const DiskPoint& z) {
    if (!mu_atoms.atoms_only())
        throw std::invalid_argument(
            "singular_inner_log_modulus: measure must be atomic");
    double s = 0.0;
    for (const auto& a : mu_atoms.atoms) s += a.mass * poisson_kernel(z, a.angle);
    return -s;
}

HarnackBounds harnack_ratio_bounds(double rho) {
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::invalid_argument("harnack_ratio_bounds: rho must be in [0,1)");
    return HarnackBounds{(1.0 - rho) / (1.0 + rho), (1.0 + rho) / (1.0 - rho)};
}

double halfplane_poisson_integral(const HalfPlanePoint& p,
                                  const std::function<double(double)>& density,
                                  const std::vector<double>& split_points) {
    const double inv_pi = 1.0 / (kTwoPi / 2.0);
    std::vector<double> splits = split_points;
    // kernel peak and shoulders
    for (double s : {p.x - p.y, p.x, p.x + p.y})
        if (s > -1.0 && s < 1.0) splits.push_back(s);
    auto integrand = [&](double t) {
        double dx = p.x - t;
        return inv_pi * p.y / (dx * dx + p.y * p.y) * density(t);
    };
    double v = integrate_or_throw(integrand, -1.0, 1.0, 1e-7, splits, 60000);
    // non-integrable densities inflate the refined value without ever failing
    // the relative test
    if (!(v < 1e12))
        throw QuadratureError("halfplane_poisson_integral: density not integrable", v);
    return v;
}

}  // namespace nevsamp
