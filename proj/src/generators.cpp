#include "nevsamp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nevsamp/rng.hpp"

namespace nevsamp {

Configuration generate_dyadic_centers(int depth) {
    if (depth < 1) throw std::invalid_argument("generate_dyadic_centers: depth >= 1");
    Configuration c;
    for (int n = 1; n <= depth; ++n) {
        std::int64_t slots = slots_at_level(n);
        for (std::int64_t k = 0; k < slots; ++k)
            c.points.push_back(dyadic_center({n, k}));
    }
    c.meta.kind = "dyadic";
    c.meta.depth = depth;
    c.meta.parameters["depth"] = depth;
    return c;
}

namespace {

// point at pseudohyperbolic distance t outward from radius a on the same ray
double radial_step(double a, double t) { return (a + t) / (1.0 + a * t); }

// angular gap giving pseudohyperbolic separation rho between neighbors on |z|=r
double angular_gap(double r, double rho) {
    double s = rho * (1.0 - r * r) / (2.0 * r * std::sqrt(1.0 - rho * rho));
    if (s >= 1.0) return kTwoPi;
    return 2.0 * std::asin(s);
}

}  // namespace

Configuration generate_g_net(const Profile& g, int depth) {
    if (depth < 1) throw std::invalid_argument("generate_g_net: depth >= 1");
    Configuration c;
    int first_level = -1;
    for (int n = 1; n <= depth; ++n) {
        double gn = g.eval(std::ldexp(1.0, -n));
        // a level band has pseudohyperbolic height ~1/3; beyond that scale the
        // ring layout cannot hold pairwise separation g
        if (gn >= 0.32) continue;
        if (gn <= 0.0) throw std::invalid_argument("generate_g_net: g must be positive");
        if (first_level < 0) first_level = n;

        double r_in = 1.0 - std::ldexp(1.0, -n);
        double r_out = 1.0 - std::ldexp(1.0, -n - 1);
        double band = pseudo_distance(Complex(r_in, 0), Complex(r_out, 0));
        // radial gap 1.3 g keeps cross-level pairs clear of the packing radius
        int rings = std::max(1, static_cast<int>(std::floor(band / (1.3 * gn))));
        double step = band / rings;
        for (int j = 0; j < rings; ++j) {
            double r = radial_step(r_in, (j + 0.5) * step);
            double gap = angular_gap(r, std::min(0.999, 2.0 * gn));
            auto count = static_cast<std::int64_t>(std::floor(kTwoPi / gap));
            if (count < 1) count = 1;
            double actual = kTwoPi / static_cast<double>(count);
            double offset = (j % 2 == 1) ? 0.5 * actual : 0.0;
            for (std::int64_t i = 0; i < count; ++i)
                c.points.push_back(
                    DiskPoint::unchecked(std::polar(r, offset + actual * static_cast<double>(i))));
        }
    }
    if (first_level < 0)
        throw std::invalid_argument("generate_g_net: g too large to separate at every level");
    c.meta.kind = "net";
    c.meta.depth = depth;
    c.meta.parameters["g"] = g.describe();
    c.meta.parameters["depth"] = depth;
    c.meta.parameters["first_level"] = first_level;
    return c;
}

NetQuality verify_net(const Configuration& c, const Profile& g, int samples,
                      unsigned long long seed) {
    NetQuality q{std::numeric_limits<double>::infinity(), 0.0, {}};
    // pairwise separation per level (levels are radially ordered; checking a
    // window of following points is enough at these densities)
    std::map<int, long> occupied_points;
    std::map<int, std::map<std::int64_t, long>> square_counts;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        auto idx = dyadic_square_of(c.points[i]);
        square_counts[idx.n][idx.k]++;
        occupied_points[idx.n]++;
    }
    for (const auto& [n, per_k] : square_counts) {
        double total = 0.0;
        for (const auto& [k, cnt] : per_k) total += static_cast<double>(cnt);
        q.points_per_square[n] = total / static_cast<double>(per_k.size());
    }
    bool exhaustive = c.points.size() <= 20000;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        double gi = g.eval(std::max(1e-12, 1.0 - c.points[i].abs()));
        std::size_t window =
            exhaustive ? c.points.size() : std::min(c.points.size(), i + 4000);
        for (std::size_t j = i + 1; j < window; ++j) {
            double rho = pseudo_distance(c.points[i], c.points[j]);
            q.min_separation_ratio = std::min(q.min_separation_ratio, rho / gi);
        }
    }
    // covering: random samples in the generated annulus
    int first_level = 1;
    if (c.meta.parameters.contains("first_level"))
        first_level = c.meta.parameters["first_level"].get<int>();
    double r_min = 1.0 - std::ldexp(1.0, -first_level);
    double r_max = 1.0 - std::ldexp(1.0, -c.meta.depth - 1);
    Xoshiro256pp rng(seed);
    std::vector<Complex> probes(static_cast<std::size_t>(samples));
    for (auto& z : probes)
        z = std::polar(rng.uniform(r_min, r_max), rng.uniform(0.0, kTwoPi));
    double worst = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : worst) schedule(static)
#endif
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(probes.size()); ++s) {
        Complex z = probes[static_cast<std::size_t>(s)];
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : c.points)
            best = std::min(best, pseudo_distance(z, p.value()));
        double ratio = best / g.eval(1.0 - std::abs(z));
        worst = std::max(worst, ratio);
    }
    q.covering_constant = worst;
    return q;
}

double RingSpec::eps(int n) const {
    if (auto* geo = std::get_if<Geometric>(&spacing))
        return geo->eps0 * std::pow(geo->ratio, n);
    return std::pow(static_cast<double>(n), -std::get<Power>(spacing).exponent);
}

Configuration generate_rings(const RingSpec& spec) {
    if (!(spec.q > 0.0 && spec.q < 1.0))
        throw std::invalid_argument("generate_rings: q must be in (0,1)");
    if (spec.depth < 1) throw std::invalid_argument("generate_rings: depth >= 1");
    Configuration c;
    for (int n = 1; n <= spec.depth; ++n) {
        double r = spec.radius(n);
        double e = spec.eps(n);
        double denom = (1.0 - r) * e;
        auto count = static_cast<std::int64_t>(std::floor(1.0 / denom));
        if (count < 1)
            throw std::invalid_argument("generate_rings: empty ring at level " +
                                        std::to_string(n));
        for (std::int64_t j = 0; j < count; ++j)
            c.points.push_back(DiskPoint::unchecked(
                std::polar(r, kTwoPi * static_cast<double>(j) / static_cast<double>(count))));
    }
    c.meta.kind = "rings";
    c.meta.depth = spec.depth;
    c.meta.parameters["q"] = spec.q;
    if (auto* geo = std::get_if<RingSpec::Geometric>(&spec.spacing)) {
        c.meta.parameters["eps"] = {{"kind", "geometric"},
                                    {"eps0", geo->eps0},
                                    {"ratio", geo->ratio}};
    } else {
        c.meta.parameters["eps"] = {
            {"kind", "power"},
            {"exponent", std::get<RingSpec::Power>(spec.spacing).exponent}};
    }
    return c;
}

Configuration generate_udisks(int base_depth, const Profile& phi) {
    Profile base_g(Table{{1e-9, 2.0}, {0.3, 0.3}, false});
    Configuration c = generate_g_net(base_g, base_depth);
    c.disk_radii.resize(c.points.size());
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        double r = phi.eval(1.0 - c.points[i].abs());
        if (!(r < 1.0))
            throw std::invalid_argument("generate_udisks: phi must map below 1");
        // fast-vanishing profiles underflow; such disks degrade to points
        c.disk_radii[i] = std::max(r, 1e-300);
    }
    c.meta.kind = "disks";
    c.meta.depth = base_depth;
    c.meta.parameters["phi"] = phi.describe();
    c.meta.parameters["base_depth"] = base_depth;
    return c;
}

Configuration max_separated_subsequence(const Configuration& c, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("max_separated_subsequence: delta in (0,1)");
    std::vector<std::size_t> order(c.points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double ra = c.points[a].abs(), rb = c.points[b].abs();
        if (ra != rb) return ra < rb;
        return normalize_angle(std::arg(c.points[a].value())) <
               normalize_angle(std::arg(c.points[b].value()));
    });
    Configuration out;
    out.meta = c.meta;
    out.meta.parameters["separated_delta"] = delta;
    std::vector<std::size_t> kept;
    for (std::size_t idx : order) {
        double r = c.points[idx].abs();
        bool ok = true;
        // kept is in non-decreasing modulus; scanning backwards, the radial
        // lower bound (r-s)/(1-rs) only grows, so we can stop early
        for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
            double s = c.points[*it].abs();
            if ((r - s) / (1.0 - r * s) >= delta) break;
            if (pseudo_distance(c.points[idx], c.points[*it]) < delta) {
                ok = false;
                break;
            }
        }
        if (ok) kept.push_back(idx);
    }
    std::sort(kept.begin(), kept.end());
    for (std::size_t idx : kept) {
        out.points.push_back(c.points[idx]);
        if (!c.multiplicities.empty()) out.multiplicities.push_back(c.multiplicities[idx]);
        if (!c.disk_radii.empty()) out.disk_radii.push_back(c.disk_radii[idx]);
    }
    return out;
}

std::map<DyadicIndex, long> counts_per_square(const Configuration& c) {
    std::map<DyadicIndex, long> counts;
    for (std::size_t i = 0; i < c.points.size(); ++i)
        counts[dyadic_square_of(c.points[i])] += c.mult(i);
    return counts;
}

}  // namespace nevsamp
