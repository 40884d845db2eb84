#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nevsamp/blaschke.hpp"
#include "nevsamp/generators.hpp"
#include "nevsamp/profiles.hpp"

namespace nevsamp {

enum class SeriesClass { Divergent, Convergent, Inconclusive };
enum class Verdict { Sampling, NonSampling, Inconclusive };

const char* to_string(SeriesClass c);
const char* to_string(Verdict v);

struct SeriesVerdict {
    SeriesClass classification = SeriesClass::Inconclusive;
    std::vector<double> partial_sums;  // indexed by level (partial_sums[n])
    enum class Method { ClosedForm, TailModel } method = Method::TailModel;
};

// Heuristic divergence detector on per-level increments; closed forms never
// go through here. Window: last third of levels. Increments averaging at
// least c/n count as divergent, per-level decay ratio <= q as convergent.
SeriesClass classify_tail(const std::vector<double>& partial_sums,
                          double c = 1e-3, double q = 0.9);

struct LevelRow {
    int n;
    double count;        // M_n, N_n, or per-level tally
    double term;         // series term at this level
    double partial_sum;  // running sum through this level
};

struct CriterionReport {
    Verdict verdict = Verdict::Inconclusive;
    SeriesVerdict series;
    std::vector<LevelRow> per_level;
    std::string criterion;  // "hl", "net", "rings", "udisks"
    std::string note;
};

// Kernel mass test at the boundary point zeta: partial sums by level of
// (1-|lambda|^2) P_lambda(zeta) over a maximal delta-separated subsequence.
SeriesVerdict hayman_lyons_test(const Configuration& c, double zeta_angle,
                                double delta, int depth);

// Net growth test; analytic families are decided in closed form, tables by
// the tail model on the dyadic sum 2^{-n/2}/g(2^{-n}).
CriterionReport net_sampling_criterion(const Profile& g, int depth);

// Ring test on terms ((1-r_n)/eps_n)^{1/2}.
CriterionReport rings_sampling_criterion(const RingSpec& spec, int depth);

// Inflated-disk test on the dyadic sum 1/log(1/phi(K^{-n})); dyadic base
// K = 2 with a cross-check at K = 4.
CriterionReport udisks_sampling_criterion(const Profile& phi, int depth,
                                          double K = 2.0);

// Dyadic zero-count table N_{n,k} abstracting a Blaschke sequence.
struct BlaschkeDistribution {
    std::map<DyadicIndex, long> counts;
    int depth = 0;

    long at(const DyadicIndex& i) const {
        auto it = counts.find(i);
        return it == counts.end() ? 0 : it->second;
    }
    double weighted_sum() const;  // sum 2^{-n} N_{n,k}
};

// N_{n,k} = zeros inside the closed neighborhood union of Q_{n,k} (that is
// the count the criteria consume); include_neighbors=false counts the square
// alone.
BlaschkeDistribution distribution_from_zeros(const ZeroSet& Z, int depth,
                                             bool include_neighbors = true);

// Blaschke-summable random spread: level mass ~ 2^n/n^2 over random slots.
BlaschkeDistribution random_blaschke_distribution(int depth,
                                                  unsigned long long seed);

struct WitnessSelection {
    std::vector<DyadicIndex> Q;       // selected squares (occupied only)
    std::map<int, long> L_n;          // per-level excluded counts
    std::map<int, double> gamma_n;    // disk-mode thresholds
    double invul_partial = 0.0;       // sum over Q of 2^{-n} w-bound
    double hl_partial = 0.0;          // sum over levels of 1/max(L_n,1)
    SeriesVerdict hl_series;
    bool empty_selection = false;
    Verdict verdict = Verdict::Inconclusive;
};

// Square selection for the sufficiency test. Point configurations use the
// epsilon rule Q = {(n,k) : N_{n,k} <= eps #(Lambda cap Q_{n,k})}; disk
// configurations use per-level thresholds gamma_n with exclusion of the
// largest-count squares.
WitnessSelection witness_selector(const Configuration& c,
                                  const BlaschkeDistribution& dist, double eps);

// Finite-r surrogate of the lower uniform density:
// min over anchors of sum_{1/2 < rho(lambda,z) < r} log(1/rho) / log(1/(1-r)).
double seip_lower_density(const Configuration& c, double r,
                          std::span<const Complex> anchor_grid);

}  // namespace nevsamp
