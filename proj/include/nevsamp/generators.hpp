#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nevsamp/disk_geometry.hpp"
#include "nevsamp/profiles.hpp"

namespace nevsamp {

// A structured point configuration: points, optional multiplicities, optional
// per-point pseudohyperbolic disk radii, plus generation metadata.
struct Configuration {
    std::vector<DiskPoint> points;
    std::vector<int> multiplicities;  // empty = all 1
    std::vector<double> disk_radii;   // empty = plain points
    struct Meta {
        std::string kind;
        nlohmann::json parameters = nlohmann::json::object();
        int depth = 0;
    } meta;

    std::size_t size() const { return points.size(); }
    int mult(std::size_t i) const {
        return multiplicities.empty() ? 1 : multiplicities[i];
    }
    bool has_radii() const { return !disk_radii.empty(); }
};

// Whitney-square centers for levels 1..depth.
Configuration generate_dyadic_centers(int depth);

// Net with packing scale g: per level, concentric rings with radial gap
// ~ g(2^{-n}) and in-ring gap ~ 2 g(2^{-n}) in the pseudohyperbolic metric.
// Levels where g(2^{-n}) >= 1/2 cannot be separated and are skipped (recorded
// in meta as "first_level"); if every level fails, throws.
Configuration generate_g_net(const Profile& g, int depth);

struct NetQuality {
    double min_separation_ratio;  // min pairwise rho / g(1-|.|), same level
    double covering_constant;     // max over samples of nearest rho / g(1-|.|)
    std::map<int, double> points_per_square;  // level -> mean occupied count
};

// Packing/covering report for a generated net.
NetQuality verify_net(const Configuration& c, const Profile& g, int samples = 2000,
                      unsigned long long seed = 12345);

// Discretized rings: radii r_n = 1 - q^n and per-ring hyperbolic gaps eps_n.
struct RingSpec {
    double q;  // in (0,1)
    struct Geometric {
        double eps0;
        double ratio;  // in (0,1)
    };
    struct Power {
        double exponent;  // eps_n = n^{-s}, s > 0
    };
    std::variant<Geometric, Power> spacing;
    int depth;

    double radius(int n) const { return 1.0 - std::pow(q, n); }
    double eps(int n) const;
};

Configuration generate_rings(const RingSpec& spec);

// Separated base (constant 0.3 net) dressed with disks of pseudohyperbolic
// radius phi(1 - |lambda|).
Configuration generate_udisks(int base_depth, const Profile& phi);

// Greedy maximal delta-separated subsequence; order: increasing modulus,
// ties by increasing angle.
Configuration max_separated_subsequence(const Configuration& c, double delta);

// Occupied-square tally (multiplicities counted); level 0 is the root region.
std::map<DyadicIndex, long> counts_per_square(const Configuration& c);

}  // namespace nevsamp
