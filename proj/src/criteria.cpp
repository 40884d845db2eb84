#include "nevsamp/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nevsamp/harmonic_kernels.hpp"
#include "nevsamp/rng.hpp"

namespace nevsamp {

const char* to_string(SeriesClass c) {
    switch (c) {
        case SeriesClass::Divergent: return "Divergent";
        case SeriesClass::Convergent: return "Convergent";
        default: return "Inconclusive";
    }
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Sampling: return "Sampling";
        case Verdict::NonSampling: return "NonSampling";
        default: return "Inconclusive";
    }
}

SeriesClass classify_tail(const std::vector<double>& partial_sums, double c,
                          double q) {
    const int N = static_cast<int>(partial_sums.size()) - 1;
    if (N < 6) return SeriesClass::Inconclusive;
    const int n0 = N - std::max(2, N / 3);
    const int mid = (n0 + N) / 2;
    const double b1 = partial_sums[mid] - partial_sums[n0];
    const double b2 = partial_sums[N] - partial_sums[mid];
    if (b2 <= 0.0) return SeriesClass::Convergent;
    if (b1 > 0.0) {
        double per_level = std::pow(b2 / b1, 1.0 / static_cast<double>(N - mid));
        if (per_level <= q) return SeriesClass::Convergent;
    }
    const double mean_inc =
        (partial_sums[N] - partial_sums[n0]) / static_cast<double>(N - n0);
    if (mean_inc >= c / static_cast<double>(N)) return SeriesClass::Divergent;
    return SeriesClass::Inconclusive;
}

namespace {

Verdict verdict_of(SeriesClass s) {
    switch (s) {
        case SeriesClass::Divergent: return Verdict::Sampling;
        case SeriesClass::Convergent: return Verdict::NonSampling;
        default: return Verdict::Inconclusive;
    }
}

std::vector<double> accumulate_levels(const std::vector<double>& terms) {
    std::vector<double> sums(terms.size());
    double run = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        run += terms[i];
        sums[i] = run;
    }
    return sums;
}

}  // namespace

SeriesVerdict hayman_lyons_test(const Configuration& c, double zeta_angle,
                                double delta, int depth) {
    Configuration thinned = max_separated_subsequence(c, delta);
    Complex zeta = std::polar(1.0, zeta_angle);
    std::vector<double> terms(static_cast<std::size_t>(depth) + 1, 0.0);
    for (const auto& p : thinned.points) {
        int n = dyadic_square_of(p).n;
        if (n > depth) continue;
        // (1-|l|^2) P_l(zeta) = ((1-|l|^2)/|zeta-l|)^2
        double w = 1.0 - p.norm();
        terms[static_cast<std::size_t>(n)] += w * w / std::norm(zeta - p.value());
    }
    SeriesVerdict v;
    v.partial_sums = accumulate_levels(terms);
    v.method = SeriesVerdict::Method::TailModel;
    v.classification = classify_tail(v.partial_sums);
    return v;
}

CriterionReport net_sampling_criterion(const Profile& g, int depth) {
    CriterionReport rep;
    rep.criterion = "net";
    std::vector<double> terms(static_cast<std::size_t>(depth) + 1, 0.0);
    for (int n = 1; n <= depth; ++n) {
        double gn = g.eval(std::ldexp(1.0, -n));
        // saturate so that vanishing profiles keep the tally finite
        double Mn = std::min(std::round(1.0 / (gn * gn)), 1e30);
        double term = std::sqrt(Mn * std::ldexp(1.0, -n));
        terms[static_cast<std::size_t>(n)] = term;
        rep.per_level.push_back({n, Mn, term, 0.0});
    }
    rep.series.partial_sums = accumulate_levels(terms);
    for (std::size_t i = 0; i < rep.per_level.size(); ++i)
        rep.per_level[i].partial_sum =
            rep.series.partial_sums[static_cast<std::size_t>(rep.per_level[i].n)];

    if (auto* p = std::get_if<PowerLaw>(&g.family())) {
        // integral of t^{-1/2-alpha} near 0 diverges iff alpha >= 1/2
        rep.series.method = SeriesVerdict::Method::ClosedForm;
        rep.series.classification = p->alpha >= 0.5 ? SeriesClass::Divergent
                                                    : SeriesClass::Convergent;
    } else if (std::holds_alternative<ExpInvPower>(g.family()) ||
               std::holds_alternative<LogPower>(g.family())) {
        // both decay to 0 faster than sqrt(t) scales, so the integral diverges
        rep.series.method = SeriesVerdict::Method::ClosedForm;
        rep.series.classification = SeriesClass::Divergent;
    } else {
        rep.series.method = SeriesVerdict::Method::TailModel;
        rep.series.classification = classify_tail(rep.series.partial_sums);
    }
    rep.verdict = verdict_of(rep.series.classification);
    return rep;
}

CriterionReport rings_sampling_criterion(const RingSpec& spec, int depth) {
    CriterionReport rep;
    rep.criterion = "rings";
    std::vector<double> terms(static_cast<std::size_t>(depth) + 1, 0.0);
    for (int n = 1; n <= depth; ++n) {
        double one_minus_r = std::pow(spec.q, n);
        double e = spec.eps(n);
        double term = std::sqrt(one_minus_r / e);
        terms[static_cast<std::size_t>(n)] = term;
        double count = std::floor(1.0 / (one_minus_r * e));
        rep.per_level.push_back({n, count, term, 0.0});
    }
    rep.series.partial_sums = accumulate_levels(terms);
    for (auto& row : rep.per_level)
        row.partial_sum = rep.series.partial_sums[static_cast<std::size_t>(row.n)];

    rep.series.method = SeriesVerdict::Method::ClosedForm;
    if (auto* geo = std::get_if<RingSpec::Geometric>(&spec.spacing)) {
        // terms (q/p)^{n/2}: divergent iff q >= p
        rep.series.classification = spec.q >= geo->ratio
                                        ? SeriesClass::Divergent
                                        : SeriesClass::Convergent;
    } else {
        // terms q^{n/2} n^{s/2} decay geometrically
        rep.series.classification = SeriesClass::Convergent;
    }
    rep.verdict = verdict_of(rep.series.classification);
    return rep;
}

CriterionReport udisks_sampling_criterion(const Profile& phi, int depth,
                                          double K) {
    if (!(K > 1.0))
        throw std::invalid_argument("udisks_sampling_criterion: K > 1 required");
    CriterionReport rep;
    rep.criterion = "udisks";
    std::vector<double> terms(static_cast<std::size_t>(depth) + 1, 0.0);
    for (int n = 1; n <= depth; ++n) {
        double t = std::pow(K, -n);
        double val = phi.eval(t);
        double denom = std::log(1.0 / val);
        double term = denom > 0.0 ? 1.0 / denom : 0.0;
        terms[static_cast<std::size_t>(n)] = term;
        rep.per_level.push_back({n, val, term, 0.0});
    }
    rep.series.partial_sums = accumulate_levels(terms);
    for (auto& row : rep.per_level)
        row.partial_sum = rep.series.partial_sums[static_cast<std::size_t>(row.n)];

    if (std::holds_alternative<PowerLaw>(phi.family()) ||
        std::holds_alternative<LogPower>(phi.family())) {
        // log(1/phi(K^{-n})) grows linearly in n: harmonic tail
        rep.series.method = SeriesVerdict::Method::ClosedForm;
        rep.series.classification = SeriesClass::Divergent;
    } else if (std::holds_alternative<ExpInvPower>(phi.family())) {
        // log(1/phi(K^{-n})) = K^{beta n}: geometric tail
        rep.series.method = SeriesVerdict::Method::ClosedForm;
        rep.series.classification = SeriesClass::Convergent;
    } else {
        rep.series.method = SeriesVerdict::Method::TailModel;
        rep.series.classification = classify_tail(rep.series.partial_sums);
    }
    rep.verdict = verdict_of(rep.series.classification);
    return rep;
}

double BlaschkeDistribution::weighted_sum() const {
    double s = 0.0;
    for (const auto& [idx, n] : counts)
        s += std::ldexp(static_cast<double>(n), -idx.n);
    return s;
}

BlaschkeDistribution distribution_from_zeros(const ZeroSet& Z, int depth,
                                             bool include_neighbors) {
    BlaschkeDistribution d;
    d.depth = depth;
    for (const auto& z : Z.zeros) {
        DyadicIndex home = dyadic_square_of(z.point);
        if (home.n > depth) continue;
        if (include_neighbors) {
            for (const auto& j : dyadic_neighbors(home, depth))
                d.counts[j] += z.multiplicity;
        } else {
            d.counts[home] += z.multiplicity;
        }
    }
    return d;
}

BlaschkeDistribution random_blaschke_distribution(int depth,
                                                  unsigned long long seed) {
    BlaschkeDistribution d;
    d.depth = depth;
    Xoshiro256pp rng(seed);
    for (int n = 1; n <= depth; ++n) {
        auto total = static_cast<long>(
            std::max(1.0, std::round(std::ldexp(1.0, n) / (static_cast<double>(n) * n))));
        std::int64_t slots = slots_at_level(n);
        for (long i = 0; i < total; ++i)
            d.counts[{n, static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(slots)))}]++;
    }
    return d;
}

WitnessSelection witness_selector(const Configuration& c,
                                  const BlaschkeDistribution& dist,
                                  double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("witness_selector: eps in (0,1)");
    WitnessSelection sel;
    auto occupancy = counts_per_square(c);
    int depth = 0;
    for (const auto& [idx, cnt] : occupancy) depth = std::max(depth, idx.n);
    depth = std::max(depth, dist.depth);

    if (!c.has_radii()) {
        std::map<int, long> excluded;
        for (const auto& [idx, cnt] : occupancy) {
            if (idx.n < 1) continue;
            long N = dist.at(idx);
            if (static_cast<double>(N) <= eps * static_cast<double>(cnt)) {
                sel.Q.push_back(idx);
                sel.invul_partial += std::ldexp(static_cast<double>(N), -idx.n);
            } else {
                excluded[idx.n]++;
            }
        }
        sel.L_n = std::move(excluded);
    } else {
        // per-level structures
        std::map<int, std::vector<std::pair<long, DyadicIndex>>> by_level;
        for (const auto& [idx, cnt] : occupancy) {
            if (idx.n < 1) continue;
            by_level[idx.n].push_back({dist.at(idx), idx});
        }
        // representative phi per level from the stored radii (median)
        std::map<int, double> phi_n;
        {
            std::map<int, std::vector<double>> radii;
            for (std::size_t i = 0; i < c.points.size(); ++i)
                radii[dyadic_square_of(c.points[i]).n].push_back(c.disk_radii[i]);
            for (auto& [n, v] : radii) {
                std::sort(v.begin(), v.end());
                phi_n[n] = v[v.size() / 2];
            }
        }
        double running_min = std::numeric_limits<double>::infinity();
        for (auto& [n, squares] : by_level) {
            long N_total = 0;
            for (const auto& [N, idx] : squares) N_total += N;
            double logphi = phi_n.count(n) ? std::log(1.0 / phi_n[n]) : 1.0;
            if (!(logphi > 0.0)) logphi = 1.0;
            double s_n = logphi * std::ldexp(static_cast<double>(N_total), -n);
            double gamma;
            if (N_total >= 1 && s_n < running_min) {
                running_min = s_n;
                gamma = 1.0 - 1.0 / static_cast<double>(N_total);
            } else {
                gamma = std::clamp(1.0 / logphi, 0.0, 1.0);
            }
            sel.gamma_n[n] = gamma;
            long L = static_cast<long>(std::floor((1.0 - gamma) * static_cast<double>(N_total)));
            L = std::min<long>(L, static_cast<long>(squares.size()));
            sel.L_n[n] = L;
            // exclude the L squares with the largest counts
            std::sort(squares.begin(), squares.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
            for (std::size_t i = static_cast<std::size_t>(L); i < squares.size(); ++i) {
                sel.Q.push_back(squares[i].second);
                sel.invul_partial +=
                    std::ldexp(static_cast<double>(squares[i].first), -squares[i].second.n) *
                    logphi;
            }
        }
    }

    std::sort(sel.Q.begin(), sel.Q.end());
    std::vector<double> hl_terms(static_cast<std::size_t>(depth) + 1, 0.0);
    for (int n = 1; n <= depth; ++n) {
        auto it = sel.L_n.find(n);
        long L = it == sel.L_n.end() ? 0 : it->second;
        hl_terms[static_cast<std::size_t>(n)] = 1.0 / static_cast<double>(std::max<long>(L, 1));
    }
    sel.hl_series.partial_sums = accumulate_levels(hl_terms);
    sel.hl_series.method = SeriesVerdict::Method::TailModel;
    sel.hl_series.classification = classify_tail(sel.hl_series.partial_sums);
    sel.hl_partial = sel.hl_series.partial_sums.back();
    sel.empty_selection = sel.Q.empty();
    if (sel.empty_selection)
        sel.verdict = Verdict::Inconclusive;
    else
        sel.verdict = sel.hl_series.classification == SeriesClass::Divergent
                          ? Verdict::Sampling
                          : Verdict::Inconclusive;
    return sel;
}

double seip_lower_density(const Configuration& c, double r,
                          std::span<const Complex> anchor_grid) {
    if (!(r > 0.5 && r < 1.0))
        throw std::invalid_argument("seip_lower_density: r in (1/2,1)");
    // separated input: a finite set is separated unless it has duplicates
    {
        std::vector<Complex> pts;
        pts.reserve(c.points.size());
        for (const auto& p : c.points) pts.push_back(p.value());
        std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (pts[i] == pts[i + 1])
                throw std::invalid_argument("seip_lower_density: input not separated");
    }
    double denom = std::log(1.0 / (1.0 - r));
    double best = std::numeric_limits<double>::infinity();
    for (Complex z : anchor_grid) {
        double s = 0.0;
        for (const auto& p : c.points) {
            double rho = pseudo_distance(p.value(), z);
            if (rho > 0.5 && rho < r) s += std::log(1.0 / rho);
        }
        best = std::min(best, s / denom);
    }
    if (anchor_grid.empty() || c.points.empty()) return 0.0;
    return best;
}

}  // namespace nevsamp
