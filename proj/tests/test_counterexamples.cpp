#include <doctest.h>

#include <cmath>

#include "nevsamp/counterexamples.hpp"
#include "nevsamp/criteria.hpp"
#include "test_util.hpp"

using namespace nevsamp;

TEST_CASE("half-plane transport") {
    auto w1 = to_halfplane(Complex(0.0, 0.0));
    CHECK(w1.x == doctest::Approx(0.0));
    CHECK(w1.y == doctest::Approx(1.0));
    // the kernel at the image of z against 0 equals P_z(1)/pi
    Xoshiro256pp rng(3);
    for (int i = 0; i < 200; ++i) {
        DiskPoint z = testutil::random_point(rng, 0.99);
        auto w = to_halfplane(z.value());
        double lhs = w.y / (w.x * w.x + w.y * w.y) / (kTwoPi / 2.0);
        double rhs = poisson_kernel(z, 0.0) / (kTwoPi / 2.0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("horocycle witness structure") {
    NevanlinnaWitness w = example1_witness(1.0, 12);
    // zeros are exactly the centers strictly inside the kernel level set
    Configuration lam = generate_dyadic_centers(12);
    long inside = 0;
    for (const auto& p : lam.points)
        if (poisson_kernel(p, 0.0) > 1.0) inside++;
    CHECK(static_cast<long>(w.zero_set.distinct_count()) == inside);
    for (const auto& z : w.zero_set.zeros) {
        CHECK(poisson_kernel(z.point, 0.0) > 1.0);
        CHECK(z.multiplicity == 1);
    }

    // per-level membership count grows like sqrt(2^n)
    for (int n : {8, 10, 12}) {
        auto c = w.meta["level_counts"][std::to_string(n)].get<long>();
        double ratio = static_cast<double>(c) / std::pow(2.0, n / 2.0);
        CHECK(ratio > 0.2);
        CHECK(ratio < 1.5);
    }
}

TEST_CASE("horocycle witness bound and radial growth") {
    NevanlinnaWitness w = example1_witness(1.0, 12);
    Configuration lam = generate_dyadic_centers(12);
    auto grid = radial_grid(600, 0.5, 1.0 - std::ldexp(1.0, -14));
    WitnessReport rep = verify_witness(w, lam, 1.0, grid);

    CHECK(rep.zero_hits == static_cast<long>(w.zero_set.distinct_count()));
    CHECK(rep.sup_on_lambda <= 1.0 + 0.01);
    CHECK(rep.bounded_on_lambda);
    CHECK(rep.unbounded_radially_indicator >= 1.5);
    // the scan values approach (1-r) P_r(1) -> 2
    CHECK(rep.unbounded_radially_indicator <= 2.0 + 1e-9);

    // log|f| <= harmonic part pointwise (the zero part only subtracts)
    Xoshiro256pp rng(8);
    for (int i = 0; i < 1000; ++i) {
        DiskPoint z = testutil::random_point(rng, 0.999);
        double v = w.log_modulus(z.value());
        if (std::isinf(v)) continue;
        CHECK(v <= poisson_kernel(z, 0.0) + 1e-12);
    }
}

TEST_CASE("horocycle witness slack shrinks with depth") {
    double prev = 1e9;
    for (int depth : {10, 12, 14}) {
        double s = witness_slack(example1_witness(1.0, depth));
        CHECK(s < prev);
        prev = s;
    }
}

TEST_CASE("separated-subsequence witness") {
    Configuration c;
    for (int n = 1; n <= 20; ++n)
        c.points.push_back(DiskPoint(-(1.0 - std::ldexp(1.0, -n)), 0.0));

    NevanlinnaWitness w = appendix_witness(c, 0.5, 20);
    CHECK(w.harmonic_scale == doctest::Approx(std::log(2.0) / 6.0).epsilon(1e-12));
    // all kernel values below 1: no zeros at all
    CHECK(w.zero_set.total_count() == 0);

    auto grid = radial_grid(400, 0.5, 1.0 - 1e-7);
    WitnessReport rep = verify_witness(w, c, 2.0 * w.harmonic_scale, grid);
    CHECK(rep.sup_on_lambda <= 2.0 * w.harmonic_scale + 1e-6);
    CHECK(rep.unbounded_radially_indicator >= 0.1);

    // the construction refuses divergent kernel input
    Configuration toward = generate_dyadic_centers(10);
    CHECK_THROWS_AS(appendix_witness(toward, 0.5, 10), std::invalid_argument);
}

TEST_CASE("separated-subsequence witness case split") {
    // a configuration with zeros: separated points inside the unit horocycle
    Configuration c;
    for (int n = 1; n <= 18; ++n) {
        double r = 1.0 - std::ldexp(1.0, -n);
        c.points.push_back(DiskPoint::unchecked(std::polar(r, std::ldexp(1.0, -n))));
        c.points.push_back(
            DiskPoint::unchecked(std::polar(1.0 - 0.8 * std::ldexp(1.0, -n), 2.0)));
    }
    double delta = 0.5;
    SeriesVerdict hl = hayman_lyons_test(c, 0.0, delta, 18);
    REQUIRE(hl.classification == SeriesClass::Convergent);

    NevanlinnaWitness w = appendix_witness(c, delta, 18);
    CHECK(w.zero_set.total_count() > 0);
    double C = w.harmonic_scale;
    for (const auto& p : c.points) {
        double v = w.log_modulus(p.value());
        if (std::isinf(v)) continue;
        double P = poisson_kernel(p, 0.0);
        if (P <= 2.0) {
            CHECK(v <= 2.0 * C + 1e-9);
        } else {
            CHECK(v <= 0.0 + witness_slack(w));
        }
    }
}

TEST_CASE("tangential witness on a sparse net") {
    Profile g = Profile::parse("pow:0.25");
    Profile psi = psi_from_g(g);
    REQUIRE(psi.class_f_test().member());
    Configuration net = generate_g_net(g, 12);

    NevanlinnaWitness w = tangential_net_witness(psi, net, 12);
    CHECK(w.zero_set.total_count() > 0);
    CHECK(blaschke_sum(w.zero_set) < 1.0);
    // zeros are exactly the net points inside the approach region
    ApproachRegion region(0.0, psi);
    long inside = 0;
    for (const auto& p : net.points)
        if (in_approach_region(region, p)) inside++;
    CHECK(static_cast<long>(w.zero_set.distinct_count()) == inside);

    // bounded on the whole net
    auto grid = radial_grid(300, 0.5, 1.0 - std::ldexp(1.0, -14));
    WitnessReport rep = verify_witness(w, net, 0.05, grid);
    CHECK(rep.sup_on_lambda <= 0.05);
    CHECK(rep.bounded_on_lambda);

    // kernel growth survives the correction at the boundary point
    double y = 1e-3;
    double z = (1.0 - y) / (1.0 + y);
    double h = w.harmonic_scale * poisson_kernel(DiskPoint(z, 0), 0.0) -
               w.halfplane->C *
                   halfplane_poisson_integral(
                       HalfPlanePoint(0.0, y),
                       [&](double t) {
                           double a = std::fabs(t);
                           return a > 0 ? psi.eval(a) / (a * a) : 0.0;
                       });
    CHECK(y * h >= 0.1);

    // a profile outside class F is rejected
    CHECK_THROWS_AS(tangential_net_witness(Profile::parse("pow:1"), net, 12),
                    std::invalid_argument);
}

TEST_CASE("inflated-disk witness for a non-sampling profile") {
    Profile phi = Profile::parse("expinv:1");
    Configuration c = generate_udisks(12, phi);
    NevanlinnaWitness w = udisks_witness(phi, c, 12);

    CHECK(w.zero_set.total_count() > 0);
    CHECK(blaschke_sum(w.zero_set) < 4.0);
    CHECK(w.harmonic_scale > 0.0);

    // bounded on the representable part of the disk union
    double sup_union = -1e300;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        EuclideanDisk e = hyperbolic_to_euclidean(
            HyperbolicDisk(c.points[i], c.disk_radii[i]));
        if (e.radius < 1e-12) continue;
        for (int s = 0; s < 8; ++s) {
            Complex z = e.center + 0.7 * e.radius * std::polar(1.0, kTwoPi * (s + 0.37) / 8.0);
            double v = w.log_modulus(z);
            if (!std::isinf(v)) sup_union = std::max(sup_union, v);
        }
    }
    CHECK(sup_union <= 0.05);

    // radial indicator at least the kernel scale (the limit is twice it)
    auto grid = radial_grid(400, 0.5, 1.0 - std::ldexp(1.0, -14));
    WitnessReport rep = verify_witness(w, c, 0.05, grid);
    CHECK(rep.unbounded_radially_indicator >= w.harmonic_scale);
    CHECK(rep.unbounded_radially_indicator <= 2.0 * w.harmonic_scale + 1e-6);

    // a sampling profile is rejected
    CHECK_THROWS_AS(udisks_witness(Profile::parse("pow:1"), c, 12),
                    std::invalid_argument);
}

TEST_CASE("degenerate witness") {
    NevanlinnaWitness w;
    w.zero_set.depth = 5;
    Configuration c = generate_dyadic_centers(4);
    auto grid = radial_grid(50, 0.5, 0.99);
    WitnessReport rep = verify_witness(w, c, 0.0, grid);
    CHECK(rep.sup_on_lambda == 0.0);
    CHECK(rep.unbounded_radially_indicator == 0.0);
    CHECK(rep.bounded_on_lambda);
}

TEST_CASE("witness verification parallel batch equals pointwise") {
    NevanlinnaWitness w = example1_witness(1.0, 10);
    Xoshiro256pp rng(77);
    std::vector<Complex> pts(500);
    for (auto& z : pts) z = testutil::random_point(rng).value();
    auto batch = w.log_modulus_batch(pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(batch[i] == w.log_modulus(pts[i]));
}
