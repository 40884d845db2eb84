#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nevsamp/disk_geometry.hpp"
#include "nevsamp/generators.hpp"

namespace nevsamp {

// One square's placement problem: N adversarial zeros inside the dilated
// square against the lambda points trapped in its closure.
struct VulnerabilityInstance {
    std::vector<DiskPoint> lambda_points;  // non-empty
    DyadicIndex square;
    double dilation = 0.2;
    int N = 0;

    void validate() const;
};

// true iff z lies within pseudohyperbolic distance `dilation` of the closed
// square (polar clamp surrogate for the metric projection).
bool in_dilated_square(const DyadicIndex& square, double dilation, Complex z);

// Pseudohyperbolic diameter bound of the placement problem: max over lambda
// and sampled region points of rho.
double region_diameter_bound(const VulnerabilityInstance& inst, int samples = 24);

struct VulnerabilityResult {
    double value = 0.0;  // +inf when every lambda point is covered
    std::vector<DiskPoint> placement;
    enum class Method { Brute, Multistart } method = Method::Brute;
    std::optional<DiskPoint> certificate;  // achieved inf location
};

// min over lambda of sum_j log(1/rho(lambda, a_j)); empty placement gives 0.
// Throws if a placement point leaves the dilated square.
double w_for_placement(const VulnerabilityInstance& inst,
                       std::span<const DiskPoint> placement);

// Exhaustive grid search; guard N <= 2 and grid_resolution <= 64.
VulnerabilityResult w_brute_force(const VulnerabilityInstance& inst,
                                  int grid_resolution);

// Multistart coordinate ascent; the inner inf is exact, the outer sup is
// approximate. Deterministic given (multistart_count, seed), independent of
// thread count.
VulnerabilityResult w_optimize(const VulnerabilityInstance& inst,
                               int multistart_count, unsigned long long seed);
VulnerabilityResult w_optimize_serial(const VulnerabilityInstance& inst,
                                      int multistart_count,
                                      unsigned long long seed);

struct BoundCheckRow {
    DyadicIndex square;
    long M;        // lambda count in the square
    int N;
    double value;
    double ratio;  // value / N (or the phi-normalized ratio)
};

struct BoundCheckReport {
    int level;
    std::vector<BoundCheckRow> rows;
    double max_ratio = 0.0;
};

// Ratio w/N over sampled squares of a generated g-net at one level,
// N =  floor(eps * M_{n,k}).
BoundCheckReport w_gnet_bound_check(const Profile& g, int level, double eps,
                                    int trials, unsigned long long seed,
                                    int multistarts = 4);

// Inflated-disk analog: lambda points are boundary samples of the disks in
// the square; ratio is value / (N log(1/phi(2^{-n}))).
BoundCheckReport w_udisks_bound_check(const Profile& phi, int level, int N,
                                      int trials, unsigned long long seed,
                                      int boundary_samples = 32,
                                      int multistarts = 4);

}  // namespace nevsamp
