#include "nevsamp/harmonic_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nevsamp/rng.hpp"

namespace nevsamp {

void ExcisedDomain::validate() const {
    if (!(outer_radius > 0.0 && outer_radius < 1.0))
        throw std::invalid_argument("ExcisedDomain: outer radius in (0,1)");
    for (const auto& d : excised)
        if (std::abs(d.center) + d.radius >= outer_radius)
            throw std::invalid_argument("ExcisedDomain: disk not strictly inside");
}

ExcisedDomain build_domain(const Configuration& c, int n, double K) {
    if (!(K > 1.0)) throw std::invalid_argument("build_domain: K > 1");
    if (!c.has_radii())
        throw std::invalid_argument("build_domain: configuration has no disk radii");
    ExcisedDomain dom;
    dom.outer_radius = 1.0 - std::pow(K, -n);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        EuclideanDisk e = hyperbolic_to_euclidean(
            HyperbolicDisk(c.points[i], c.disk_radii[i]));
        if (std::abs(e.center) + e.radius < dom.outer_radius)
            dom.excised.push_back(e);
    }
    return dom;
}

namespace {

// Flat grid over [-1,1]^2 binning disk centers; nearest-surface queries walk
// outward in cell rings and prune with per-ring radius bounds.
class DiskIndex {
public:
    explicit DiskIndex(const std::vector<EuclideanDisk>& disks, int cells = 128)
        : disks_(disks), g_(cells), cell_(static_cast<std::size_t>(cells) * cells) {
        max_radius_ = 0.0;
        for (std::size_t i = 0; i < disks.size(); ++i) {
            cell_[cell_of(disks[i].center)].push_back(static_cast<int>(i));
            max_radius_ = std::max(max_radius_, disks[i].radius);
        }
    }

    bool empty() const { return disks_.empty(); }

    // distance from z to the nearest disk surface (negative if inside)
    double surface_distance(Complex z) const {
        if (disks_.empty()) return std::numeric_limits<double>::infinity();
        const double h = 2.0 / g_;
        int cx = coord(z.real());
        int cy = coord(z.imag());
        double best = std::numeric_limits<double>::infinity();
        for (int ring = 0; ring < g_; ++ring) {
            // any disk in a farther ring has center distance > (ring-1) h
            double lower = (ring - 1) * h - max_radius_;
            if (lower > best) break;
            scan_ring(z, cx, cy, ring, best);
        }
        return best;
    }

private:
    int coord(double v) const {
        int c = static_cast<int>((v + 1.0) * 0.5 * g_);
        return std::clamp(c, 0, g_ - 1);
    }
    std::size_t cell_of(Complex p) const {
        return static_cast<std::size_t>(coord(p.imag())) * static_cast<std::size_t>(g_) +
               static_cast<std::size_t>(coord(p.real()));
    }

    void scan_ring(Complex z, int cx, int cy, int ring, double& best) const {
        int x0 = cx - ring, x1 = cx + ring;
        int y0 = cy - ring, y1 = cy + ring;
        for (int y = y0; y <= y1; ++y) {
            if (y < 0 || y >= g_) continue;
            for (int x = x0; x <= x1; ++x) {
                if (x < 0 || x >= g_) continue;
                if (ring > 0 && x != x0 && x != x1 && y != y0 && y != y1) continue;
                const auto& bucket =
                    cell_[static_cast<std::size_t>(y) * static_cast<std::size_t>(g_) +
                          static_cast<std::size_t>(x)];
                for (int i : bucket) {
                    double d = std::abs(z - disks_[static_cast<std::size_t>(i)].center) -
                               disks_[static_cast<std::size_t>(i)].radius;
                    best = std::min(best, d);
                }
            }
        }
    }

    const std::vector<EuclideanDisk>& disks_;
    int g_;
    std::vector<std::vector<int>> cell_;
    double max_radius_;
};

enum class WalkOutcome { Escaped, Captured, Stalled };

WalkOutcome run_walk(const ExcisedDomain& dom, const DiskIndex& index,
                     Complex start, double eps_shell, Xoshiro256pp& rng) {
    constexpr long kStepCap = 1000000;
    Complex z = start;
    for (long step = 0; step < kStepCap; ++step) {
        double d_outer = dom.outer_radius - std::abs(z);
        if (d_outer <= eps_shell) return WalkOutcome::Escaped;
        double d_disk = index.surface_distance(z);
        if (d_disk <= eps_shell) return WalkOutcome::Captured;
        double jump = std::min(d_outer, d_disk);
        z += jump * std::polar(1.0, kTwoPi * rng.uniform01());
    }
    return WalkOutcome::Stalled;
}

HMEstimate estimate_impl(const ExcisedDomain& dom, long walks,
                         unsigned long long seed, double eps_shell,
                         Complex start, bool parallel) {
    if (walks < 1) throw std::invalid_argument("estimate_escape: walks >= 1");
    if (!(eps_shell > 0.0))
        throw std::invalid_argument("estimate_escape: eps_shell > 0");
    dom.validate();
    if (std::abs(start) >= dom.outer_radius)
        throw std::invalid_argument("estimate_escape: start outside the domain");
    for (const auto& d : dom.excised)
        if (std::abs(start - d.center) <= d.radius)
            throw std::invalid_argument("estimate_escape: start inside an excised disk");

    DiskIndex index(dom.excised);
    long escaped = 0, captured = 0, stalled = 0;

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : escaped, captured, stalled)
#endif
        for (long i = 0; i < walks; ++i) {
            auto rng = derive_stream(seed, static_cast<std::uint64_t>(i));
            switch (run_walk(dom, index, start, eps_shell, rng)) {
                case WalkOutcome::Escaped: ++escaped; break;
                case WalkOutcome::Captured: ++captured; break;
                case WalkOutcome::Stalled: ++stalled; break;
            }
        }
    } else {
        for (long i = 0; i < walks; ++i) {
            auto rng = derive_stream(seed, static_cast<std::uint64_t>(i));
            switch (run_walk(dom, index, start, eps_shell, rng)) {
                case WalkOutcome::Escaped: ++escaped; break;
                case WalkOutcome::Captured: ++captured; break;
                case WalkOutcome::Stalled: ++stalled; break;
            }
        }
    }

    HMEstimate est;
    est.walks = walks;
    est.escaped = escaped;
    est.captured = captured;
    est.stalled = stalled;
    est.escape_probability = static_cast<double>(escaped) / static_cast<double>(walks);
    est.std_error = std::sqrt(est.escape_probability *
                              (1.0 - est.escape_probability) /
                              static_cast<double>(walks));
    est.seed = seed;
    est.eps_shell = eps_shell;
    return est;
}

}  // namespace

HMEstimate estimate_escape(const ExcisedDomain& d, long walks,
                           unsigned long long seed, double eps_shell,
                           Complex start) {
    return estimate_impl(d, walks, seed, eps_shell, start, true);
}

HMEstimate estimate_escape_serial(const ExcisedDomain& d, long walks,
                                  unsigned long long seed, double eps_shell,
                                  Complex start) {
    return estimate_impl(d, walks, seed, eps_shell, start, false);
}

double epsilon_product(const Profile& phi, double C, double K, int n) {
    if (!(C > 0.0)) throw std::invalid_argument("epsilon_product: C > 0");
    if (!(K > 1.0)) throw std::invalid_argument("epsilon_product: K > 1");
    double prod = 1.0;
    for (int j = 1; j <= n; ++j) {
        double val = phi.eval(std::pow(K, -j));
        double denom = std::log(1.0 / val);
        if (!(denom > 0.0))
            throw std::invalid_argument("epsilon_product: phi(K^-j) >= 1");
        double factor = 1.0 - C / denom;
        if (factor <= 0.0)
            throw std::invalid_argument(
                "epsilon_product: factor <= 0 (C too large for this phi at level " +
                std::to_string(j) + ")");
        prod *= factor;
    }
    return prod;
}

std::vector<EscapeRow> sampling_vs_escape_experiment(const Profile& phi,
                                                     int level_lo, int level_hi,
                                                     long walks,
                                                     unsigned long long seed,
                                                     double K) {
    if (walks < 1)
        throw std::invalid_argument("sampling_vs_escape_experiment: walks >= 1");
    if (level_hi > 10)
        throw std::invalid_argument("sampling_vs_escape_experiment: levels <= 10");
    Configuration c = generate_udisks(level_hi + 2, phi);
    std::vector<EscapeRow> rows;
    for (int n = level_lo; n <= level_hi; ++n) {
        ExcisedDomain dom = build_domain(c, n, K);
        double eps_shell = 1e-4 * (1.0 - dom.outer_radius);
        HMEstimate est = estimate_escape(dom, walks, seed + static_cast<unsigned long long>(n), eps_shell);
        auto product_or_nan = [&](double C) {
            try {
                return epsilon_product(phi, C, K, n);
            } catch (const std::invalid_argument&) {
                return std::numeric_limits<double>::quiet_NaN();
            }
        };
        rows.push_back({n, dom.outer_radius,
                        static_cast<long>(dom.excised.size()),
                        est.escape_probability, est.std_error, est.stalled,
                        product_or_nan(0.1), product_or_nan(0.5),
                        product_or_nan(1.0)});
    }
    return rows;
}

}  // namespace nevsamp
