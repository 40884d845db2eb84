#include <doctest.h>

#include <cmath>

#include "nevsamp/harmonic_kernels.hpp"
#include "nevsamp/quadrature.hpp"
#include "test_util.hpp"

using namespace nevsamp;
using testutil::random_point;

TEST_CASE("poisson kernel point values") {
    Xoshiro256pp rng(1);
    for (int i = 0; i < 50; ++i)
        CHECK(poisson_kernel(DiskPoint(0, 0), rng.uniform(0, kTwoPi)) ==
              doctest::Approx(1.0));
    CHECK(poisson_kernel(DiskPoint(0.9, 0), 0.0) == doctest::Approx(19.0).epsilon(1e-13));
    double r = 0.999;
    CHECK((1.0 - r) * poisson_kernel(DiskPoint(r, 0), 0.0) ==
          doctest::Approx(1.999).epsilon(1e-12));
}

TEST_CASE("kernel normalization") {
    Xoshiro256pp rng(21);
    for (int i = 0; i < 100; ++i) {
        DiskPoint z = random_point(rng, 0.995);
        double peak = normalize_angle(std::arg(z.value()));
        double mass = integrate_or_throw(
                          [&](double t) { return poisson_kernel(z, t); }, 0.0,
                          kTwoPi, 1e-12, {peak}) /
                      kTwoPi;
        CHECK(std::fabs(mass - 1.0) <= 1e-10);
    }
}

TEST_CASE("arc mass closed form matches quadrature") {
    Xoshiro256pp rng(22);
    for (int i = 0; i < 50; ++i) {
        DiskPoint z = random_point(rng, 0.99);
        double a = rng.uniform(0.0, kTwoPi);
        double b = a + rng.uniform(0.0, kTwoPi - a);
        double peak = normalize_angle(std::arg(z.value()));
        double quad = integrate_or_throw(
                          [&](double t) { return poisson_kernel(z, t); }, a, b,
                          1e-11, {peak}) /
                      kTwoPi;
        CHECK(arc_poisson_mass(z.value(), a, b) == doctest::Approx(quad).epsilon(1e-8));
    }
}

TEST_CASE("poisson integral of measures") {
    // single atom reduces to the kernel
    BoundaryMeasure atom;
    atom.atoms.push_back({0.0, 1.0});
    for (double r : {0.1, 0.5, 0.9}) {
        CHECK(poisson_integral(DiskPoint(r, 0), atom) ==
              doctest::Approx((1.0 + r) / (1.0 - r)).epsilon(1e-13));
    }

    // normalized Lebesgue density integrates to 1 everywhere
    BoundaryMeasure leb;
    leb.segments.push_back({0.0, kTwoPi, 1.0 / kTwoPi});
    Xoshiro256pp rng(17);
    for (int i = 0; i < 100; ++i) {
        DiskPoint z = random_point(rng, 0.99);
        CHECK(std::fabs(poisson_integral(z, leb) - 1.0) <= 1e-8);
    }

    // indicator arc of the shadow of 0.9 at the origin: mean value
    double half = 2.0 * std::asin(0.05);
    BoundaryMeasure arc;
    arc.add_arc(0.0, half, 3.0 / kTwoPi);
    CHECK(poisson_integral(DiskPoint(0, 0), arc) ==
          doctest::Approx(3.0 * 2.0 * half / kTwoPi).epsilon(1e-9));
}

TEST_CASE("positivity and harmonicity") {
    BoundaryMeasure mu;
    mu.atoms.push_back({1.1, 0.4});
    mu.add_arc(3.0, 0.5, 0.7);
    Xoshiro256pp rng(5);
    for (int i = 0; i < 20; ++i) {
        DiskPoint z = random_point(rng, 0.8);
        double v = poisson_integral(z, mu);
        CHECK(v >= 0.0);
        // mean value on a small circle
        double s = 0.05;
        double mean = 0.0;
        const int nodes = 256;
        for (int k = 0; k < nodes; ++k) {
            Complex w = z.value() + s * std::polar(1.0, kTwoPi * k / nodes);
            mean += poisson_integral(DiskPoint::unchecked(w), mu);
        }
        mean /= nodes;
        CHECK(std::fabs(mean - v) <= 1e-6 * std::max(1.0, std::fabs(v)));
    }
}

TEST_CASE("radial mass scale recovers atom mass") {
    BoundaryMeasure mu;
    mu.atoms.push_back({0.0, 0.7});
    mu.atoms.push_back({2.0, 1.3});
    for (int j = 18; j <= 20; ++j) {
        double r = 1.0 - std::ldexp(1.0, -j);
        double v = (1.0 - r) * poisson_integral(DiskPoint(r, 0), mu);
        CHECK(std::fabs(v - 2.0 * 0.7) <= 0.01 * 2.0 * 0.7);
    }
}

TEST_CASE("singular inner log modulus") {
    BoundaryMeasure mu;
    mu.atoms.push_back({0.0, 1.0});
    CHECK(singular_inner_log_modulus(mu, DiskPoint(0, 0)) == doctest::Approx(-1.0));
    for (double r : {0.3, 0.8}) {
        CHECK(singular_inner_log_modulus(mu, DiskPoint(r, 0)) ==
              doctest::Approx(-(1.0 + r) / (1.0 - r)).epsilon(1e-13));
    }
    BoundaryMeasure two;
    two.atoms.push_back({0.0, 0.5});
    two.atoms.push_back({1.0, 0.25});
    DiskPoint z(0.2, 0.3);
    BoundaryMeasure a1, a2;
    a1.atoms.push_back(two.atoms[0]);
    a2.atoms.push_back(two.atoms[1]);
    CHECK(singular_inner_log_modulus(two, z) ==
          doctest::Approx(singular_inner_log_modulus(a1, z) +
                          singular_inner_log_modulus(a2, z)));
    BoundaryMeasure with_density;
    with_density.atoms.push_back({0.0, 1.0});
    with_density.segments.push_back({0.0, 1.0, 0.1});
    CHECK_THROWS_AS(singular_inner_log_modulus(with_density, z),
                    std::invalid_argument);
}

TEST_CASE("harnack ratio bounds") {
    auto b0 = harnack_ratio_bounds(0.0);
    CHECK(b0.lo == doctest::Approx(1.0));
    CHECK(b0.hi == doctest::Approx(1.0));
    auto b5 = harnack_ratio_bounds(0.5);
    CHECK(b5.lo == doctest::Approx(1.0 / 3.0));
    CHECK(b5.hi == doctest::Approx(3.0));

    Xoshiro256pp rng(9);
    for (int i = 0; i < 1000; ++i) {
        DiskPoint z = random_point(rng, 0.95);
        // a second point at controlled pseudohyperbolic distance
        double rho = rng.uniform(0.0, 0.8);
        Complex step = std::polar(rho, rng.uniform(0.0, kTwoPi));
        DiskPoint w = mobius(DiskPoint::unchecked(-z.value()), DiskPoint::unchecked(step));
        double theta = rng.uniform(0.0, kTwoPi);
        double ratio = poisson_kernel(z, theta) / poisson_kernel(w, theta);
        auto b = harnack_ratio_bounds(rho);
        CHECK(ratio >= b.lo - 1e-12);
        CHECK(ratio <= b.hi + 1e-12);
    }
}

TEST_CASE("half-plane poisson integral") {
    // constant density has the arctangent closed form
    for (double y : {0.1, 0.5, 2.0}) {
        double v = halfplane_poisson_integral(HalfPlanePoint(0.0, y),
                                              [](double) { return 1.0; });
        CHECK(v == doctest::Approx(2.0 / (kTwoPi / 2.0) * std::atan(1.0 / y)).epsilon(1e-9));
    }
    CHECK(halfplane_poisson_integral(HalfPlanePoint(0.3, 0.2),
                                     [](double) { return 0.0; }) ==
          doctest::Approx(0.0));

    // class-F density psi(t)/t^2 with psi = t^{4/3}: y h(iy) -> 0
    auto density = [](double t) {
        double a = std::fabs(t);
        return a > 0.0 ? std::pow(a, 4.0 / 3.0) / (a * a) : 0.0;
    };
    double prev = 1e300;
    for (double y : {1e-1, 1e-2, 1e-3, 1e-4}) {
        double v = y * halfplane_poisson_integral(HalfPlanePoint(0.0, y), density);
        CHECK(v < prev);
        prev = v;
    }
    // the limit is 0; at y = 1e-4 the value sits near 2 y^{1/3}
    CHECK(prev <= 0.12);

    // a non-integrable density blows up the refinement
    auto bad = [](double t) {
        double a = std::fabs(t);
        return a > 0.0 ? 1.0 / (a * a) : 0.0;
    };
    CHECK_THROWS_AS(halfplane_poisson_integral(HalfPlanePoint(0.0, 0.5), bad),
                    QuadratureError);
}
