#include "nevsamp/vulnerability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nevsamp/rng.hpp"

namespace nevsamp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// polar clamp of z onto the closed square
Complex clamp_to_square(const DyadicIndex& square, Complex z) {
    DyadicBox box = dyadic_box(square);
    double r = std::clamp(std::abs(z), box.r_lo, box.r_hi);
    double theta = normalize_angle(std::arg(z));
    if (theta < box.theta_lo || theta > box.theta_hi) {
        // wrap-aware distance to both edges
        auto angdist = [](double a, double b) {
            double d = std::fabs(a - b);
            return std::min(d, kTwoPi - d);
        };
        theta = angdist(theta, box.theta_lo) <= angdist(theta, box.theta_hi)
                    ? box.theta_lo
                    : box.theta_hi;
    }
    return std::polar(r, theta);
}

struct PolarRange {
    double r_lo, r_hi, t_lo, t_hi;
};

// polar bounding box of the dilated square
PolarRange dilated_range(const DyadicIndex& square, double d) {
    DyadicBox box = dyadic_box(square);
    double r_lo = std::max(0.0, (box.r_lo - d) / (1.0 - box.r_lo * d));
    double r_hi = (box.r_hi + d) / (1.0 + box.r_hi * d);
    double base = std::max(box.r_lo, 0.25);
    double s = d * (1.0 - base * base) / (2.0 * base * std::sqrt(1.0 - d * d));
    double margin = s < 1.0 ? 2.0 * std::asin(s) : kTwoPi / 2.0;
    return PolarRange{r_lo, r_hi, box.theta_lo - margin, box.theta_hi + margin};
}

// lambda x placement matrix of log(1/rho); +inf marks a covered lambda
struct Objective {
    const std::vector<DiskPoint>* lambda;
    std::vector<double> cost;  // M x N, row-major
    int N;

    void init(const VulnerabilityInstance& inst,
              const std::vector<DiskPoint>& placement) {
        lambda = &inst.lambda_points;
        N = static_cast<int>(placement.size());
        cost.assign(lambda->size() * placement.size(), 0.0);
        for (std::size_t i = 0; i < lambda->size(); ++i)
            for (int j = 0; j < N; ++j)
                cost[i * placement.size() + static_cast<std::size_t>(j)] =
                    term((*lambda)[i], placement[static_cast<std::size_t>(j)]);
    }

    static double term(const DiskPoint& l, const DiskPoint& a) {
        double rho = pseudo_distance(l, a);
        if (rho == 0.0) return kInf;
        return -std::log(rho);
    }

    double value() const {
        double best = kInf;
        for (std::size_t i = 0; i < lambda->size(); ++i) {
            double s = 0.0;
            for (int j = 0; j < N; ++j)
                s += cost[i * static_cast<std::size_t>(N) + static_cast<std::size_t>(j)];
            best = std::min(best, s);
        }
        return best;
    }

    // objective if column j were replaced by candidate point
    double value_with(int j, const DiskPoint& cand) const {
        double best = kInf;
        for (std::size_t i = 0; i < lambda->size(); ++i) {
            double s = 0.0;
            for (int jj = 0; jj < N; ++jj)
                s += jj == j ? term((*lambda)[i], cand)
                             : cost[i * static_cast<std::size_t>(N) + static_cast<std::size_t>(jj)];
            best = std::min(best, s);
        }
        return best;
    }

    void replace(int j, const DiskPoint& cand) {
        for (std::size_t i = 0; i < lambda->size(); ++i)
            cost[i * static_cast<std::size_t>(N) + static_cast<std::size_t>(j)] =
                term((*lambda)[i], cand);
    }
};

bool placement_less(const std::vector<DiskPoint>& a,
                    const std::vector<DiskPoint>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i].re() != b[i].re()) return a[i].re() < b[i].re();
        if (a[i].im() != b[i].im()) return a[i].im() < b[i].im();
    }
    return a.size() < b.size();
}

std::optional<DiskPoint> inf_certificate(const VulnerabilityInstance& inst,
                                         const std::vector<DiskPoint>& placement) {
    double best = kInf;
    std::optional<DiskPoint> arg;
    for (const auto& l : inst.lambda_points) {
        double s = 0.0;
        for (const auto& a : placement) s += Objective::term(l, a);
        if (s < best) {
            best = s;
            arg = l;
        }
    }
    return arg;
}

VulnerabilityResult covering_result(const VulnerabilityInstance& inst,
                                    VulnerabilityResult::Method m) {
    VulnerabilityResult res;
    res.value = kInf;
    res.method = m;
    for (int j = 0; j < inst.N; ++j)
        res.placement.push_back(
            inst.lambda_points[static_cast<std::size_t>(j) % inst.lambda_points.size()]);
    res.certificate = inst.lambda_points.front();
    return res;
}

}  // namespace

void VulnerabilityInstance::validate() const {
    if (lambda_points.empty())
        throw std::invalid_argument("VulnerabilityInstance: lambda_points empty");
    if (N < 0) throw std::invalid_argument("VulnerabilityInstance: N >= 0");
    if (!(dilation > 0.0 && dilation < 1.0))
        throw std::invalid_argument("VulnerabilityInstance: dilation in (0,1)");
}

bool in_dilated_square(const DyadicIndex& square, double dilation, Complex z) {
    Complex q = clamp_to_square(square, z);
    return pseudo_distance(z, q) <= dilation + 1e-12;
}

double region_diameter_bound(const VulnerabilityInstance& inst, int samples) {
    PolarRange pr = dilated_range(inst.square, inst.dilation);
    double d = 0.0;
    for (const auto& l : inst.lambda_points) {
        for (int i = 0; i < samples; ++i)
            for (int j = 0; j < samples; ++j) {
                double r = pr.r_lo + (pr.r_hi - pr.r_lo) * i / (samples - 1.0);
                double t = pr.t_lo + (pr.t_hi - pr.t_lo) * j / (samples - 1.0);
                Complex z = std::polar(r, t);
                if (!in_dilated_square(inst.square, inst.dilation, z)) continue;
                d = std::max(d, pseudo_distance(l.value(), z));
            }
    }
    return d;
}

double w_for_placement(const VulnerabilityInstance& inst,
                       std::span<const DiskPoint> placement) {
    inst.validate();
    for (const auto& a : placement)
        if (!in_dilated_square(inst.square, inst.dilation, a.value()))
            throw std::invalid_argument("w_for_placement: placement outside region");
    if (placement.empty()) return 0.0;
    double best = kInf;
    for (const auto& l : inst.lambda_points) {
        double s = 0.0;
        for (const auto& a : placement) s += Objective::term(l, a);
        best = std::min(best, s);
        if (best == 0.0) break;
    }
    return best;
}

VulnerabilityResult w_brute_force(const VulnerabilityInstance& inst,
                                  int grid_resolution) {
    inst.validate();
    if (inst.N > 2 || grid_resolution > 64)
        throw std::invalid_argument(
            "w_brute_force: guard N <= 2 and grid <= 64; use w_optimize");
    if (inst.N == 0) return VulnerabilityResult{};
    if (inst.N >= static_cast<int>(inst.lambda_points.size()))
        return covering_result(inst, VulnerabilityResult::Method::Brute);

    PolarRange pr = dilated_range(inst.square, inst.dilation);
    std::vector<DiskPoint> grid;
    for (int i = 0; i < grid_resolution; ++i)
        for (int j = 0; j < grid_resolution; ++j) {
            double r = pr.r_lo + (pr.r_hi - pr.r_lo) * (i + 0.5) / grid_resolution;
            double t = pr.t_lo + (pr.t_hi - pr.t_lo) * (j + 0.5) / grid_resolution;
            Complex z = std::polar(r, t);
            if (in_dilated_square(inst.square, inst.dilation, z))
                grid.push_back(DiskPoint::unchecked(z));
    }
    if (grid.empty()) throw std::runtime_error("w_brute_force: empty grid");

    const auto G = static_cast<std::int64_t>(grid.size());
    const auto M = inst.lambda_points.size();
    // log(1/rho) table, lambda-major
    std::vector<double> table(M * grid.size());
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t g = 0; g < grid.size(); ++g)
            table[i * grid.size() + g] = Objective::term(inst.lambda_points[i], grid[g]);

    std::vector<double> best_per_first(grid.size(), -kInf);
    std::vector<std::int64_t> mate(grid.size(), -1);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (std::int64_t g1 = 0; g1 < G; ++g1) {
        if (inst.N == 1) {
            double v = kInf;
            for (std::size_t i = 0; i < M; ++i)
                v = std::min(v, table[i * grid.size() + static_cast<std::size_t>(g1)]);
            best_per_first[static_cast<std::size_t>(g1)] = v;
            continue;
        }
        double local_best = -kInf;
        std::int64_t local_mate = -1;
        for (std::int64_t g2 = g1; g2 < G; ++g2) {
            double v = kInf;
            for (std::size_t i = 0; i < M; ++i) {
                double s = table[i * grid.size() + static_cast<std::size_t>(g1)] +
                           table[i * grid.size() + static_cast<std::size_t>(g2)];
                v = std::min(v, s);
            }
            if (v > local_best) {
                local_best = v;
                local_mate = g2;
            }
        }
        best_per_first[static_cast<std::size_t>(g1)] = local_best;
        mate[static_cast<std::size_t>(g1)] = local_mate;
    }

    std::int64_t arg = 0;
    for (std::int64_t g1 = 1; g1 < G; ++g1)
        if (best_per_first[static_cast<std::size_t>(g1)] >
            best_per_first[static_cast<std::size_t>(arg)])
            arg = g1;

    VulnerabilityResult res;
    res.method = VulnerabilityResult::Method::Brute;
    res.value = best_per_first[static_cast<std::size_t>(arg)];
    res.placement.push_back(grid[static_cast<std::size_t>(arg)]);
    if (inst.N == 2)
        res.placement.push_back(grid[static_cast<std::size_t>(mate[static_cast<std::size_t>(arg)])]);
    res.certificate = inf_certificate(inst, res.placement);
    return res;
}

namespace {

VulnerabilityResult optimize_one_start(const VulnerabilityInstance& inst,
                                       unsigned long long seed,
                                       std::uint64_t start_index) {
    PolarRange pr = dilated_range(inst.square, inst.dilation);
    auto rng = derive_stream(seed, start_index);
    std::vector<DiskPoint> placement;
    while (static_cast<int>(placement.size()) < inst.N) {
        Complex z = std::polar(rng.uniform(pr.r_lo, pr.r_hi),
                               rng.uniform(pr.t_lo, pr.t_hi));
        if (in_dilated_square(inst.square, inst.dilation, z))
            placement.push_back(DiskPoint::unchecked(z));
    }
    Objective obj;
    obj.init(inst, placement);
    double current = obj.value();

    double r_span = pr.r_hi - pr.r_lo;
    double t_span = pr.t_hi - pr.t_lo;
    double step = 0.25;
    const double min_step = 1e-4;
    while (step > min_step) {
        bool improved = false;
        for (int j = 0; j < inst.N; ++j) {
            const Complex base = placement[static_cast<std::size_t>(j)].value();
            double r0 = std::abs(base);
            double t0 = std::arg(base);
            for (int dir = 0; dir < 8; ++dir) {
                static const int dr[8] = {1, -1, 0, 0, 1, 1, -1, -1};
                static const int dt[8] = {0, 0, 1, -1, 1, -1, 1, -1};
                double r = r0 + dr[dir] * step * r_span;
                double t = t0 + dt[dir] * step * t_span;
                if (r <= 0.0 || r >= 1.0) continue;
                Complex cand = std::polar(r, t);
                if (!in_dilated_square(inst.square, inst.dilation, cand)) continue;
                DiskPoint cp = DiskPoint::unchecked(cand);
                double v = obj.value_with(j, cp);
                if (v > current) {
                    current = v;
                    placement[static_cast<std::size_t>(j)] = cp;
                    obj.replace(j, cp);
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }

    VulnerabilityResult res;
    res.method = VulnerabilityResult::Method::Multistart;
    res.value = current;
    res.placement = std::move(placement);
    res.certificate = inf_certificate(inst, res.placement);
    return res;
}

VulnerabilityResult optimize_impl(const VulnerabilityInstance& inst,
                                  int multistart_count, unsigned long long seed,
                                  bool parallel) {
    inst.validate();
    if (inst.N == 0) return VulnerabilityResult{{}, {}, VulnerabilityResult::Method::Multistart, {}};
    if (inst.N >= static_cast<int>(inst.lambda_points.size()))
        return covering_result(inst, VulnerabilityResult::Method::Multistart);
    if (multistart_count < 1)
        throw std::invalid_argument("w_optimize: multistart_count >= 1");

    std::vector<VulnerabilityResult> results(static_cast<std::size_t>(multistart_count));
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int s = 0; s < multistart_count; ++s)
            results[static_cast<std::size_t>(s)] =
                optimize_one_start(inst, seed, static_cast<std::uint64_t>(s));
    } else {
        for (int s = 0; s < multistart_count; ++s)
            results[static_cast<std::size_t>(s)] =
                optimize_one_start(inst, seed, static_cast<std::uint64_t>(s));
    }
    // deterministic selection: value, then lexicographic placement
    std::size_t best = 0;
    for (std::size_t s = 1; s < results.size(); ++s) {
        if (results[s].value > results[best].value ||
            (results[s].value == results[best].value &&
             placement_less(results[s].placement, results[best].placement)))
            best = s;
    }
    return results[best];
}

}  // namespace

VulnerabilityResult w_optimize(const VulnerabilityInstance& inst,
                               int multistart_count, unsigned long long seed) {
    return optimize_impl(inst, multistart_count, seed, true);
}

VulnerabilityResult w_optimize_serial(const VulnerabilityInstance& inst,
                                      int multistart_count,
                                      unsigned long long seed) {
    return optimize_impl(inst, multistart_count, seed, false);
}

BoundCheckReport w_gnet_bound_check(const Profile& g, int level, double eps,
                                    int trials, unsigned long long seed,
                                    int multistarts) {
    Configuration net = generate_g_net(g, level);
    std::map<std::int64_t, std::vector<DiskPoint>> squares;
    for (const auto& p : net.points) {
        DyadicIndex idx = dyadic_square_of(p);
        if (idx.n == level) squares[idx.k].push_back(p);
    }
    if (squares.empty()) throw std::runtime_error("w_gnet_bound_check: no occupied squares");

    BoundCheckReport rep;
    rep.level = level;
    auto rng = derive_stream(seed, static_cast<std::uint64_t>(level));
    std::vector<std::int64_t> keys;
    for (const auto& [k, pts] : squares) keys.push_back(k);
    for (int t = 0; t < trials; ++t) {
        std::int64_t k = keys[rng.below(keys.size())];
        const auto& pts = squares[k];
        long M = static_cast<long>(pts.size());
        int N = static_cast<int>(std::floor(eps * static_cast<double>(M)));
        if (N < 1) N = 1;
        VulnerabilityInstance inst{pts, DyadicIndex{level, k}, 0.2, N};
        auto res = w_optimize(inst, multistarts, seed + static_cast<unsigned long long>(k));
        double ratio = res.value / N;
        rep.rows.push_back({DyadicIndex{level, k}, M, N, res.value, ratio});
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    return rep;
}

BoundCheckReport w_udisks_bound_check(const Profile& phi, int level, int N,
                                      int trials, unsigned long long seed,
                                      int boundary_samples, int multistarts) {
    Configuration disks = generate_udisks(level, phi);
    std::map<std::int64_t, std::vector<DiskPoint>> squares;
    for (std::size_t i = 0; i < disks.points.size(); ++i) {
        DyadicIndex idx = dyadic_square_of(disks.points[i]);
        if (idx.n != level) continue;
        EuclideanDisk e = hyperbolic_to_euclidean(
            HyperbolicDisk(disks.points[i], disks.disk_radii[i]));
        for (int s = 0; s < boundary_samples; ++s) {
            double t = kTwoPi * (s + 0.5) / boundary_samples;
            squares[idx.k].push_back(
                DiskPoint::unchecked(e.center + e.radius * std::polar(1.0, t)));
        }
    }
    if (squares.empty()) throw std::runtime_error("w_udisks_bound_check: no occupied squares");

    BoundCheckReport rep;
    rep.level = level;
    double logphi = std::log(1.0 / phi.eval(std::ldexp(1.0, -level)));
    auto rng = derive_stream(seed, static_cast<std::uint64_t>(level) + 1000);
    std::vector<std::int64_t> keys;
    for (const auto& [k, pts] : squares) keys.push_back(k);
    for (int t = 0; t < trials; ++t) {
        std::int64_t k = keys[rng.below(keys.size())];
        const auto& pts = squares[k];
        VulnerabilityInstance inst{pts, DyadicIndex{level, k}, 0.2, N};
        auto res = w_optimize(inst, multistarts, seed + static_cast<unsigned long long>(k));
        double ratio = res.value / (N * logphi);
        rep.rows.push_back({DyadicIndex{level, k}, static_cast<long>(pts.size()), N,
                            res.value, ratio});
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    return rep;
}

}  // namespace nevsamp
