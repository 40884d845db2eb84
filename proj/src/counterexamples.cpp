#include "nevsamp/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nevsamp/criteria.hpp"

namespace nevsamp {

HalfPlanePoint to_halfplane(Complex z) {
    // w = i (1-z)/(1+z); Im w = Re((1-z)/(1+z)) = (1-|z|^2)/|1+z|^2 > 0 on the disk
    Complex u = (1.0 - z) / (1.0 + z);
    return HalfPlanePoint(-u.imag(), u.real());
}

namespace {

double halfplane_correction(const HalfPlanePart& hp, Complex z) {
    HalfPlanePoint w = to_halfplane(z);
    auto density = [&](double t) {
        double a = std::fabs(t);
        if (a <= 0.0) return 0.0;
        return hp.psi.eval(a) / (a * a);
    };
    return hp.C * halfplane_poisson_integral(w, density);
}

}  // namespace

double NevanlinnaWitness::log_modulus(Complex z) const {
    double v = blaschke_log_modulus(zero_set, z);
    if (std::isinf(v)) return v;
    if (harmonic_scale != 0.0)
        v += harmonic_scale * poisson_integral(DiskPoint::unchecked(z), harmonic_atoms);
    if (halfplane) v -= halfplane_correction(*halfplane, z);
    return v;
}

std::vector<double> NevanlinnaWitness::log_modulus_batch(
    std::span<const Complex> pts) const {
    std::vector<double> out(pts.size());
    const auto n = static_cast<std::int64_t>(pts.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (std::int64_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = log_modulus(pts[static_cast<std::size_t>(i)]);
    return out;
}

NevanlinnaWitness example1_witness(double c_horocycle, int depth) {
    if (!(c_horocycle > 0.0))
        throw std::invalid_argument("example1_witness: c must be > 0");
    NevanlinnaWitness w;
    std::map<int, long> level_counts;
    for (int n = 1; n <= depth; ++n) {
        std::int64_t slots = slots_at_level(n);
        for (std::int64_t k = 0; k < slots; ++k) {
            DiskPoint p = dyadic_center({n, k});
            if (poisson_kernel(p, 0.0) > c_horocycle) {
                w.zero_set.add(p, 1);
                level_counts[n]++;
            }
        }
    }
    w.zero_set.depth = depth;
    w.harmonic_atoms.atoms.push_back({0.0, 1.0});
    w.harmonic_scale = 1.0;
    w.meta["kind"] = "example1";
    w.meta["c"] = c_horocycle;
    w.meta["depth"] = depth;
    w.meta["blaschke_sum"] = blaschke_sum(w.zero_set);
    nlohmann::json counts = nlohmann::json::object();
    for (auto& [n, cnt] : level_counts) counts[std::to_string(n)] = cnt;
    w.meta["level_counts"] = counts;
    return w;
}

NevanlinnaWitness appendix_witness(const Configuration& c, double delta,
                                   int depth) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("appendix_witness: delta in (0,1)");
    SeriesVerdict hl = hayman_lyons_test(c, 0.0, delta, depth);
    if (hl.classification != SeriesClass::Convergent)
        throw std::invalid_argument(
            "appendix_witness: construction inapplicable, kernel series at "
            "zeta=1 is not convergent");
    Configuration sep = max_separated_subsequence(c, delta);
    NevanlinnaWitness w;
    for (const auto& p : sep.points) {
        double P = poisson_kernel(p, 0.0);
        if (P >= 1.0) w.zero_set.add(p, static_cast<int>(std::floor(P)));
    }
    w.zero_set.depth = depth;
    w.harmonic_atoms.atoms.push_back({0.0, 1.0});
    w.harmonic_scale = 0.5 * (1.0 - delta) / (1.0 + delta) * std::log(1.0 / delta);
    w.meta["kind"] = "appendix";
    w.meta["delta"] = delta;
    w.meta["depth"] = depth;
    w.meta["scale"] = w.harmonic_scale;
    w.meta["blaschke_sum"] = blaschke_sum(w.zero_set);
    w.meta["zero_count"] = w.zero_set.total_count();
    return w;
}

namespace {

// smallest C with P_w(0) - C h_psi(w) <= 0 on the cloud, by bisection
double calibrate_halfplane_constant(const Profile& psi,
                                    const std::vector<HalfPlanePoint>& cloud,
                                    double tol = 1e-3) {
    auto density = [&](double t) {
        double a = std::fabs(t);
        if (a <= 0.0) return 0.0;
        return psi.eval(a) / (a * a);
    };
    const double inv_pi = 2.0 / kTwoPi;
    std::vector<double> kernel_side(cloud.size()), majorant_side(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto& w = cloud[i];
        kernel_side[i] = inv_pi * w.y / (w.x * w.x + w.y * w.y);
        majorant_side[i] = halfplane_poisson_integral(w, density);
    }
    auto holds = [&](double C) {
        for (std::size_t i = 0; i < cloud.size(); ++i)
            if (kernel_side[i] - C * majorant_side[i] > 0.0) return false;
        return true;
    };
    double hi = 1.0;
    while (!holds(hi)) {
        hi *= 2.0;
        if (hi > 1e6)
            throw std::runtime_error(
                "tangential witness: calibration failed, C exceeded 1e6");
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

}  // namespace

NevanlinnaWitness tangential_net_witness(const Profile& psi,
                                         const Configuration& c, int depth) {
    auto cf = psi.class_f_test();
    if (cf.verdict != ClassFVerdict::Member)
        throw std::invalid_argument(
            "tangential_net_witness: psi fails the class-F integral test");

    ApproachRegion region(0.0, psi);
    NevanlinnaWitness w;
    for (const auto& p : c.points)
        if (in_approach_region(region, p)) w.zero_set.add(p, 1);
    w.zero_set.depth = depth;

    // calibration cloud: the graph of psi, the transported region boundary,
    // the ceiling y = 1 and the imaginary axis above it
    std::vector<HalfPlanePoint> cloud;
    double x_min = std::ldexp(1.0, -std::max(depth, 8));
    const int per_branch = 100;
    for (int i = 0; i < per_branch; ++i) {
        double x = x_min * std::pow(1.0 / x_min, i / (per_branch - 1.0));
        double y = std::min(1.0, psi.eval(x));
        if (y <= 0.0) continue;
        cloud.emplace_back(x, y);
        cloud.emplace_back(-x, y);
    }
    for (int i = 0; i < per_branch; ++i) {
        // boundary of the disk-side region: psi(|z-1|) = 1-|z| along chords
        double chord = x_min * std::pow(1.0 / x_min, i / (per_branch - 1.0));
        double v = psi.eval(chord);
        if (!(v > 0.0 && v < 1.0)) continue;
        double r = 1.0 - v;
        // place z at chord distance `chord` from 1 on the circle |z| = r
        double cos_t = (r * r + 1.0 - chord * chord) / (2.0 * r);
        if (std::fabs(cos_t) > 1.0) continue;
        double t = std::acos(cos_t);
        Complex z = std::polar(r, t);
        auto hw = to_halfplane(z);
        cloud.emplace_back(hw.x, hw.y);
        cloud.emplace_back(-hw.x, hw.y);
    }
    for (int i = 0; i <= 50; ++i) cloud.emplace_back(-2.0 + 4.0 * i / 50.0, 1.0);
    for (int i = 0; i <= 20; ++i) cloud.emplace_back(0.0, 1.0 + i * 2.0);

    double C = 2.0 * calibrate_halfplane_constant(psi, cloud);

    w.harmonic_atoms.atoms.push_back({0.0, 1.0});
    w.harmonic_scale = 2.0 / kTwoPi;  // P_w(0) at the image equals P_z(1)/pi
    w.halfplane = HalfPlanePart{psi, C};
    w.meta["kind"] = "net-necessity";
    w.meta["psi"] = psi.describe();
    w.meta["depth"] = depth;
    w.meta["C"] = C;
    w.meta["zero_count"] = w.zero_set.total_count();
    w.meta["blaschke_sum"] = blaschke_sum(w.zero_set);
    return w;
}

NevanlinnaWitness udisks_witness(const Profile& phi, const Configuration& c,
                                 int depth) {
    if (!c.has_radii())
        throw std::invalid_argument("udisks_witness: configuration has no disk radii");
    auto crit = udisks_sampling_criterion(phi, std::max(depth, 12));
    if (crit.verdict != Verdict::NonSampling)
        throw std::invalid_argument(
            "udisks_witness: phi passes the sampling test; construction needs a "
            "non-sampling profile");

    NevanlinnaWitness w;
    std::vector<std::size_t> zero_idx;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        double P = poisson_kernel(c.points[i], 0.0);
        double logphi = std::log(1.0 / phi.eval(1.0 - c.points[i].abs()));
        // multiplicity floor(P/log(1/phi)), raised to 1 on every disk with
        // P >= 1: zero-free disks with P just below log(1/phi) would
        // otherwise carry an unbounded kernel term. The extra points lie in
        // the unit horocycle, so the zero sum stays Blaschke.
        auto m = static_cast<int>(std::floor(P / logphi));
        if (m < 1 && P >= 1.0) m = 1;
        if (m >= 1) {
            w.zero_set.add(c.points[i], m);
            zero_idx.push_back(i);
        }
    }
    w.zero_set.depth = depth;
    if (zero_idx.empty())
        throw std::runtime_error(
            "udisks_witness: no zero-carrying disks at this depth");

    // scale: half the worst achieved -log|B| / P over the zero-carrying
    // disks. Disks below coordinate resolution hold no representable sample
    // point besides their center and are skipped.
    double min_ratio = std::numeric_limits<double>::infinity();
    std::size_t stride = std::max<std::size_t>(1, zero_idx.size() / 48);
    for (std::size_t j = 0; j < zero_idx.size(); j += stride) {
        std::size_t i = zero_idx[j];
        double P = poisson_kernel(c.points[i], 0.0);
        EuclideanDisk e = hyperbolic_to_euclidean(
            HyperbolicDisk(c.points[i], c.disk_radii[i]));
        if (e.radius < 1e-12) continue;
        for (int s = 0; s < 16; ++s) {
            Complex z = e.center +
                        0.95 * e.radius * std::polar(1.0, kTwoPi * (s + 0.5) / 16.0);
            double lb = blaschke_log_modulus(w.zero_set, z);
            if (std::isinf(lb)) continue;
            min_ratio = std::min(min_ratio, -lb / P);
        }
    }
    if (!std::isfinite(min_ratio) || min_ratio <= 0.0) min_ratio = 0.0;
    // any smaller scale keeps the witness bounded; the cap keeps the
    // zero-free disks (where log|f| ~ scale * P) under a small sup
    w.harmonic_scale = std::min(0.5 * min_ratio, 0.04);
    w.harmonic_atoms.atoms.push_back({0.0, 1.0});
    w.meta["kind"] = "udisks-necessity";
    w.meta["phi"] = phi.describe();
    w.meta["depth"] = depth;
    w.meta["scale"] = w.harmonic_scale;
    w.meta["zero_count"] = w.zero_set.total_count();
    w.meta["blaschke_sum"] = blaschke_sum(w.zero_set);
    return w;
}

double witness_slack(const NevanlinnaWitness& w) {
    std::map<int, double> level_sums;
    for (const auto& z : w.zero_set.zeros)
        level_sums[dyadic_square_of(z.point).n] +=
            z.multiplicity * (1.0 - z.point.abs());
    if (level_sums.size() < 2) return 1e-6;
    auto it = level_sums.rbegin();
    double sL = it->second;
    ++it;
    double sLm1 = it->second;
    if (sLm1 <= 0.0) return 1e-6;
    double q = sL / sLm1;
    if (q >= 0.95) return 1e9;  // no usable decay at this truncation
    double tail = sL * q / (1.0 - q);
    return std::max(1e-6, 8.0 * tail);
}

WitnessReport verify_witness(const NevanlinnaWitness& w, const Configuration& c,
                             double bound, std::span<const double> r_grid) {
    WitnessReport rep;
    rep.truncation_depth = w.zero_set.depth;
    rep.slack = witness_slack(w);

    std::vector<Complex> pts(c.points.size());
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = c.points[i].value();
    auto values = w.log_modulus_batch(pts);
    rep.sup_on_lambda = -std::numeric_limits<double>::infinity();
    rep.zero_hits = 0;
    for (double v : values) {
        if (std::isinf(v)) {
            rep.zero_hits++;
            continue;
        }
        rep.sup_on_lambda = std::max(rep.sup_on_lambda, v);
    }
    rep.bounded_on_lambda = rep.sup_on_lambda <= bound + rep.slack;

    double zeta = w.atom_angle();
    std::vector<Complex> ray(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i)
        ray[i] = std::polar(r_grid[i], zeta);
    auto ray_values = w.log_modulus_batch(ray);
    rep.unbounded_radially_indicator = -std::numeric_limits<double>::infinity();
    rep.radial_scan.resize(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        double v = (1.0 - r_grid[i]) * ray_values[i];
        rep.radial_scan[i] = {r_grid[i], v};
        if (!std::isinf(ray_values[i]))
            rep.unbounded_radially_indicator =
                std::max(rep.unbounded_radially_indicator, v);
    }
    return rep;
}

std::vector<double> radial_grid(int count, double r_lo, double r_hi) {
    std::vector<double> out(static_cast<std::size_t>(count));
    double a = 1.0 - r_lo, b = 1.0 - r_hi;
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] =
            1.0 - a * std::pow(b / a, i / (count - 1.0));
    return out;
}

}  // namespace nevsamp
