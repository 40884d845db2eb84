#include <doctest.h>

#include <cmath>
#include <set>

#include "nevsamp/generators.hpp"
#include "nevsamp/json_io.hpp"
#include "test_util.hpp"

using namespace nevsamp;
using testutil::random_point;

TEST_CASE("dyadic centers generator") {
    CHECK(generate_dyadic_centers(1).points.size() == 2);
    Configuration c = generate_dyadic_centers(3);
    CHECK(c.points.size() == 14);
    for (const auto& p : c.points) {
        DyadicIndex idx = dyadic_square_of(p);
        CHECK(dyadic_center(idx) == p);
    }
    CHECK_THROWS_AS(generate_dyadic_centers(0), std::invalid_argument);
}

TEST_CASE("generators are deterministic") {
    Configuration a = generate_g_net(Profile::parse("pow:0.25"), 8);
    Configuration b = generate_g_net(Profile::parse("pow:0.25"), 8);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);

    Configuration r1 = generate_rings(RingSpec{0.5, RingSpec::Geometric{1.0, 0.5}, 6});
    Configuration r2 = generate_rings(RingSpec{0.5, RingSpec::Geometric{1.0, 0.5}, 6});
    REQUIRE(r1.points.size() == r2.points.size());
    for (std::size_t i = 0; i < r1.points.size(); ++i) CHECK(r1.points[i] == r2.points[i]);
}

TEST_CASE("net occupancy tracks the packing scale") {
    // per-square counts near g(2^{-n})^{-2}, within a factor of 4
    Profile g(PowerLaw{0.25, 1.0});
    Configuration net = generate_g_net(g, 9);
    auto counts = counts_per_square(net);
    std::map<int, std::pair<double, long>> level_totals;
    for (const auto& [idx, cnt] : counts) {
        level_totals[idx.n].first += static_cast<double>(cnt);
        level_totals[idx.n].second++;
    }
    int first = net.meta.parameters["first_level"].get<int>();
    for (int n = first; n <= 9; ++n) {
        double target = std::pow(g.eval(std::ldexp(1.0, -n)), -2.0);
        double mean = level_totals[n].first / static_cast<double>(level_totals[n].second);
        CHECK(mean >= target / 4.0);
        CHECK(mean <= target * 4.0);
    }
    // growth like 2^{n/2} for g = t^{1/4}
    double lo = level_totals[first].first / static_cast<double>(level_totals[first].second);
    double hi = level_totals[first + 2].first /
                static_cast<double>(level_totals[first + 2].second);
    CHECK(hi / lo > 2.0 / 1.6);
    CHECK(hi / lo < 2.0 * 1.6);
}

TEST_CASE("net separation: no two points closer than g") {
    Profile g(PowerLaw{0.25, 1.0});
    Configuration net = generate_g_net(g, 9);
    REQUIRE(net.points.size() <= 20000);
    double worst = 1e9;
    for (std::size_t i = 0; i < net.points.size(); ++i) {
        double gi = g.eval(1.0 - net.points[i].abs());
        for (std::size_t j = i + 1; j < net.points.size(); ++j) {
            double rho = pseudo_distance(net.points[i], net.points[j]);
            worst = std::min(worst, rho / gi);
        }
    }
    CHECK(worst >= 1.0);
}

TEST_CASE("net rejects scales too large to separate") {
    // the packing scale exceeds the band height on every requested level
    CHECK_THROWS_AS(generate_g_net(Profile::parse("pow:0.25"), 3),
                    std::invalid_argument);
    // deep enough levels recover
    CHECK_NOTHROW(generate_g_net(Profile::parse("pow:0.25"), 7));
}

TEST_CASE("ring counts and spacing") {
    Configuration c = generate_rings(RingSpec{0.5, RingSpec::Geometric{1.0, 0.5}, 6});
    // ring n carries floor(1/((1-r_n) eps_n)) = 4^n points
    long total = 0;
    for (int n = 1; n <= 6; ++n) total += static_cast<long>(std::pow(4.0, n));
    CHECK(static_cast<long>(c.points.size()) == total);

    Configuration one = generate_rings(RingSpec{0.5, RingSpec::Geometric{1.0, 0.5}, 1});
    REQUIRE(one.points.size() == 4);
    CHECK(one.points[0].re() == doctest::Approx(0.5));
    CHECK(one.points[1].im() == doctest::Approx(0.5));

    // consecutive points sit at pseudohyperbolic separation ~ eps_n
    Configuration deep = generate_rings(RingSpec{0.5, RingSpec::Geometric{1.0, 0.5}, 10});
    std::vector<DiskPoint> ring10;
    for (const auto& p : deep.points)
        if (dyadic_square_of(p).n == 10) ring10.push_back(p);
    double eps10 = std::ldexp(1.0, -10);
    double sep = pseudo_distance(ring10[0], ring10[1]);
    CHECK(sep / eps10 > 1.0);
    CHECK(sep / eps10 < 6.0);

    CHECK_THROWS_AS(generate_rings(RingSpec{0.5, RingSpec::Geometric{100.0, 0.999}, 3}),
                    std::invalid_argument);
}

TEST_CASE("ring radii rule is strictly contracting") {
    RingSpec spec{0.37, RingSpec::Power{2.0}, 12};
    Configuration c = generate_rings(spec);
    for (int n = 1; n < 12; ++n) {
        double ratio = (1.0 - spec.radius(n + 1)) / (1.0 - spec.radius(n));
        CHECK(ratio > 0.0);
        CHECK(ratio < 1.0);
    }
    CHECK(c.points.size() > 0);
}

TEST_CASE("uniformly dense disks") {
    Profile phi(PowerLaw{1.0, 1.0});
    Configuration c = generate_udisks(6, phi);
    REQUIRE(c.has_radii());
    REQUIRE(c.disk_radii.size() == c.points.size());
    for (std::size_t i = 0; i < c.points.size(); ++i)
        CHECK(c.disk_radii[i] == doctest::Approx(1.0 - c.points[i].abs()));

    // base separation by construction
    double min_rho = 1e9;
    for (std::size_t i = 0; i < c.points.size(); ++i)
        for (std::size_t j = i + 1; j < c.points.size(); ++j)
            min_rho = std::min(min_rho, pseudo_distance(c.points[i], c.points[j]));
    CHECK(min_rho >= 0.3);

    // covering within the generated annulus
    Xoshiro256pp rng(3);
    for (int t = 0; t < 1000; ++t) {
        double r = rng.uniform(0.51, 1.0 - std::ldexp(1.0, -7));
        Complex z = std::polar(r, rng.uniform(0.0, kTwoPi));
        double best = 1e9;
        for (const auto& p : c.points)
            best = std::min(best, pseudo_distance(z, p.value()));
        CHECK(best <= 0.9);
    }
}

TEST_CASE("net quality report") {
    Profile g(PowerLaw{0.25, 1.0});
    Configuration net = generate_g_net(g, 7);
    NetQuality q = verify_net(net, g, 400);
    CHECK(q.min_separation_ratio >= 1.0);
    CHECK(q.covering_constant < 8.0);
    CHECK(!q.points_per_square.empty());
}

TEST_CASE("maximal separated subsequence") {
    // delta below the minimum distance: identity
    Configuration c = generate_dyadic_centers(5);
    Configuration s = max_separated_subsequence(c, 0.05);
    CHECK(s.points.size() == c.points.size());

    // two points at rho 0.4: the smaller modulus survives
    Configuration two;
    two.points.push_back(DiskPoint(0.5, 0));
    double outer = (0.5 + 0.4) / (1.0 + 0.5 * 0.4);
    two.points.push_back(DiskPoint(outer - 1e-9, 0));
    Configuration kept = max_separated_subsequence(two, 0.5);
    REQUIRE(kept.points.size() == 1);
    CHECK(kept.points[0].re() == doctest::Approx(0.5));

    // maximality: every rejected point is within delta of a kept one
    Configuration base = generate_dyadic_centers(8);
    double delta = 0.9;
    Configuration sep = max_separated_subsequence(base, delta);
    std::set<std::pair<double, double>> kept_set;
    for (const auto& p : sep.points) kept_set.insert({p.re(), p.im()});
    for (std::size_t i = 0; i < sep.points.size(); ++i)
        for (std::size_t j = i + 1; j < sep.points.size(); ++j)
            CHECK(pseudo_distance(sep.points[i], sep.points[j]) >= delta);
    for (const auto& p : base.points) {
        if (kept_set.count({p.re(), p.im()})) continue;
        double best = 1e9;
        for (const auto& q : sep.points)
            best = std::min(best, pseudo_distance(p, q));
        CHECK(best < delta);
    }
}

TEST_CASE("counts per square conserve the total") {
    Configuration c = generate_dyadic_centers(6);
    c.multiplicities.assign(c.points.size(), 2);
    auto counts = counts_per_square(c);
    long total = 0;
    for (const auto& [idx, n] : counts) total += n;
    CHECK(total == 2 * static_cast<long>(c.points.size()));
}

TEST_CASE("configuration json roundtrip") {
    Configuration c = generate_udisks(5, Profile::parse("pow:1"));
    Json j = to_json(c);
    Configuration back = configuration_from_json(j);
    REQUIRE(back.points.size() == c.points.size());
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        CHECK(back.points[i] == c.points[i]);
        CHECK(back.disk_radii[i] == c.disk_radii[i]);
    }
    CHECK(back.meta.kind == "disks");
    CHECK(back.meta.depth == 5);
}
