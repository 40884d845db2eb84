#include "nevsamp/blaschke.hpp"

#include <cmath>
#include <limits>

namespace nevsamp {

double blaschke_log_modulus(const ZeroSet& Z, Complex z) {
    double total = 0.0;
    for (const auto& a : Z.zeros) {
        double rho = pseudo_distance(z, a.point.value());
        if (rho == 0.0) return -std::numeric_limits<double>::infinity();
        total += a.multiplicity * std::log(rho);
    }
    return total;
}

double blaschke_log_modulus(const ZeroSet& Z, const DiskPoint& z) {
    return blaschke_log_modulus(Z, z.value());
}

std::vector<double> blaschke_log_modulus_batch_serial(
    const ZeroSet& Z, std::span<const Complex> pts) {
    std::vector<double> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        out[i] = blaschke_log_modulus(Z, pts[i]);
    return out;
}

std::vector<double> blaschke_log_modulus_batch(const ZeroSet& Z,
                                               std::span<const Complex> pts) {
    std::vector<double> out(pts.size());
    const std::int64_t n = static_cast<std::int64_t>(pts.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = blaschke_log_modulus(Z, pts[static_cast<std::size_t>(i)]);
    return out;
}

double blaschke_sum(const ZeroSet& Z) {
    double total = 0.0;
    for (const auto& a : Z.zeros) total += a.multiplicity * (1.0 - a.point.abs());
    return total;
}

RadialScan radial_growth_scan(const ZeroSet& Z, double zeta_angle,
                              std::span<const double> r_grid) {
    for (std::size_t i = 0; i + 1 < r_grid.size(); ++i)
        if (!(r_grid[i] < r_grid[i + 1]))
            throw std::invalid_argument("radial_growth_scan: radii must increase");
    Complex zeta = std::polar(1.0, zeta_angle);
    RadialScan scan;
    scan.samples.resize(r_grid.size());
    scan.max_value = -std::numeric_limits<double>::infinity();
    std::vector<Complex> pts(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i) pts[i] = r_grid[i] * zeta;
    auto values = blaschke_log_modulus_batch(Z, pts);
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        double v = (1.0 - r_grid[i]) * values[i];
        bool hit = std::isinf(values[i]);
        scan.samples[i] = {r_grid[i], v, hit};
        if (!hit && v > scan.max_value) scan.max_value = v;
    }
    return scan;
}

BoundaryMeasure shadow_measure(const ZeroSet& Z, double c0) {
    BoundaryMeasure mu;
    for (const auto& a : Z.zeros) {
        BoundaryArc arc = privalov_shadow(a.point);
        mu.add_arc(arc.center_angle, arc.half_width,
                   c0 * a.multiplicity / kTwoPi);
    }
    return mu;
}

double quasibounded_majorant_HB(const ZeroSet& Z, double c0,
                                const DiskPoint& z) {
    if (!(c0 > 0.0))
        throw std::invalid_argument("quasibounded_majorant_HB: c0 must be > 0");
    if (Z.zeros.empty()) return 0.0;
    // exact per-arc kernel masses; each shadow contributes
    // c0 * m_a * (mass of I_a at z)
    double total = 0.0;
    for (const auto& a : Z.zeros) {
        BoundaryArc arc = privalov_shadow(a.point);
        double lo = arc.center_angle - arc.half_width;
        double hi = arc.center_angle + arc.half_width;
        total += c0 * a.multiplicity * arc_poisson_mass(z.value(), lo, hi);
    }
    return total;
}

double calibrate_c0(const ZeroSet& Z, std::span<const Complex> cloud,
                    double delta, double tol) {
    // HB is linear in c0, so the predicate is monotone; bracket then bisect.
    auto required = [&](Complex z) -> double {
        double far_sum = 0.0;
        for (const auto& a : Z.zeros) {
            double rho = pseudo_distance(z, a.point.value());
            if (rho >= delta && rho > 0.0)
                far_sum += -a.multiplicity * std::log(rho);
        }
        if (far_sum == 0.0) return 0.0;
        double hb1 = quasibounded_majorant_HB(Z, 1.0, DiskPoint::unchecked(z));
        if (hb1 <= 0.0) return std::numeric_limits<double>::infinity();
        return far_sum / hb1;
    };
    auto holds = [&](double c0) {
        for (Complex z : cloud)
            if (required(z) > c0) return false;
        return true;
    };
    double hi = 1.0;
    while (!holds(hi)) {
        hi *= 2.0;
        if (hi > 1e12)
            throw std::runtime_error("calibrate_c0: no finite constant found");
    }
    double lo = 0.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (holds(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace nevsamp
