#pragma once

#include <cmath>

#include "nevsamp/disk_geometry.hpp"
#include "nevsamp/rng.hpp"

namespace nevsamp::testutil {

inline DiskPoint random_point(Xoshiro256pp& rng, double rmax = 0.999) {
    double r = std::sqrt(rng.uniform01()) * rmax;
    return DiskPoint::unchecked(std::polar(r, rng.uniform(0.0, kTwoPi)));
}

}  // namespace nevsamp::testutil
