#include <doctest.h>

#include <cmath>

#include "nevsamp/profiles.hpp"
#include "nevsamp/quadrature.hpp"
#include "nevsamp/rng.hpp"

using namespace nevsamp;

TEST_CASE("profile evaluation") {
    Profile p(PowerLaw{1.0, 1.0});
    CHECK(p.eval(0.25) == doctest::Approx(0.25));
    Profile e(ExpInvPower{1.0});
    CHECK(e.eval(0.5) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    Profile t(Table{{0.1, 1.0}, {0.2, 0.6}, false});
    CHECK(t.eval(0.1) == doctest::Approx(0.2));
    CHECK(t.eval(1.0) == doctest::Approx(0.6));
    CHECK(t.eval(0.55) == doctest::Approx(0.4));
    CHECK(t.eval(0.05) == doctest::Approx(0.1));  // ramp to 0 below the table
    CHECK_THROWS_AS(p.eval(0.0), std::domain_error);
    CHECK_THROWS_AS(p.eval(2.5), std::domain_error);
}

TEST_CASE("profile inversion") {
    Profile p(PowerLaw{2.0, 1.0});
    CHECK(p.inverse(0.25) == doctest::Approx(0.5).epsilon(1e-12));

    Xoshiro256pp rng(8);
    Profile families[] = {Profile(PowerLaw{0.7, 2.0}), Profile(ExpInvPower{1.5}),
                          Profile(LogPower{2.0, 1.0})};
    for (const auto& f : families) {
        for (int i = 0; i < 100; ++i) {
            // exp(-1/t^b) underflows below t ~ 1/700; stay above it
            double t = rng.uniform(0.05, 1.0);
            double s = f.eval(t);
            CHECK(std::fabs(f.eval(f.inverse(s)) - s) <= 1e-10 * std::max(1.0, s));
        }
    }

    Profile tab(Table{{0.1, 0.4, 1.0}, {0.2, 0.3, 0.6}, false});
    CHECK(tab.inverse(0.3) == doctest::Approx(0.4));  // breakpoint value
}

TEST_CASE("class F membership") {
    CHECK(Profile(PowerLaw{4.0 / 3.0, 1.0}).class_f_test().member());
    CHECK(!Profile(PowerLaw{1.0, 1.0}).class_f_test().member());
    CHECK(Profile(ExpInvPower{1.0}).class_f_test().member());
    CHECK(Profile(LogPower{2.0, 1.0}).class_f_test().member());
    CHECK(!Profile(LogPower{1.0, 1.0}).class_f_test().member());

    // closed forms agree with quadrature where quadrature converges (the
    // cutoff at 1e-9 leaves a small tail out of the numerical integral)
    for (double alpha : {1.3, 1.8, 2.5}) {
        Profile p(PowerLaw{alpha, 1.0});
        auto closed = p.class_f_test();
        auto quad = integrate_adaptive(
            [&](double x) { return p.eval(x) / (x * x); }, 1e-9, 1.0, 1e-9);
        double tail = std::pow(1e-9, alpha - 1.0) / (alpha - 1.0);
        CHECK(closed.integral_value_or_partial ==
              doctest::Approx(quad.value + tail).epsilon(1e-6));
    }

    // tabulated power law matches the analytic verdict
    Table tab;
    for (int j = 40; j >= 0; --j) {
        tab.breaks.push_back(std::ldexp(1.0, -j));
        tab.values.push_back(std::pow(std::ldexp(1.0, -j), 4.0 / 3.0));
    }
    CHECK(Profile(tab).class_f_test().verdict == ClassFVerdict::Member);
}

TEST_CASE("psi from g") {
    Profile g14(PowerLaw{0.25, 1.0});
    Profile psi = psi_from_g(g14);
    auto* fam = std::get_if<PowerLaw>(&psi.family());
    REQUIRE(fam != nullptr);
    CHECK(fam->alpha == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

    Profile g12(PowerLaw{0.5, 1.0});
    Profile psi12 = psi_from_g(g12);
    auto* fam2 = std::get_if<PowerLaw>(&psi12.family());
    REQUIRE(fam2 != nullptr);
    CHECK(fam2->alpha == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(!psi12.class_f_test().member());

    // roundtrip: inverse of psi equals sqrt(t) g(t)
    Xoshiro256pp rng(3);
    for (int i = 0; i < 100; ++i) {
        double t = rng.uniform(1e-6, 1.0);
        CHECK(psi.inverse(psi.eval(t)) == doctest::Approx(t).epsilon(1e-10));
        CHECK(psi.eval(std::sqrt(t) * g14.eval(t)) == doctest::Approx(t).epsilon(1e-10));
    }

    // membership via the substitution identity: integral of dt/(sqrt t g)
    // finite iff psi passes the class-F test, over the power family
    for (double gamma : {0.2, 0.4, 0.5, 0.6, 1.0}) {
        Profile g(PowerLaw{gamma, 1.0});
        // t^{-1/2-gamma} is integrable near 0 iff 1/2+gamma < 1
        bool integral_finite = gamma + 0.5 < 1.0;
        CHECK(psi_from_g(g).class_f_test().member() == integral_finite);
    }
}

TEST_CASE("psi eta raise") {
    Profile id(PowerLaw{1.0, 1.0});
    Profile raised = psi_eta_raise(id, 0.0, 20);
    // plateau value 2^{-n} on [2^{-n-2}, 2^{-n-1})
    for (int n = 0; n < 18; ++n) {
        double x = std::ldexp(1.0, -n - 2) * 1.01;
        CHECK(raised.eval(x) == doctest::Approx(std::ldexp(1.0, -n)).epsilon(1e-12));
    }

    // psi_eta(x) >= p(x/4)
    Xoshiro256pp rng(12);
    for (double eta : {0.0, 0.3, 0.6}) {
        Profile r = psi_eta_raise(id, eta, 24);
        for (int i = 0; i < 200; ++i) {
            double x = rng.uniform(1e-6, 0.5);
            CHECK(r.eval(x) >= id.eval(x / 4.0) - 1e-12);
        }
    }

    // integral comparability within 8 (1+eta)/(1-eta) on power laws
    for (double eta : {0.0, 0.4}) {
        for (double alpha : {1.5, 2.0}) {
            Profile p(PowerLaw{alpha, 1.0});
            Profile r = psi_eta_raise(p, eta, 30);
            auto base = integrate_adaptive(
                [&](double x) { return p.eval(x) / (x * x); }, 1e-8, 0.25, 1e-8);
            auto lifted = integrate_adaptive(
                [&](double x) { return r.eval(x) / (x * x); }, 1e-8, 0.25, 1e-8);
            double factor = 8.0 * (1.0 + eta) / (1.0 - eta);
            CHECK(lifted.value <= factor * base.value);
            CHECK(base.value <= factor * std::max(lifted.value, 1e-300));
        }
    }
}

TEST_CASE("monotonicity preserved by transforms") {
    Profile g(PowerLaw{0.25, 1.0});
    Profile psi = psi_from_g(g, 24);
    Profile raised = psi_eta_raise(psi, 0.3, 24);
    double prev_psi = 0.0, prev_raised = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        double x = i / 1000.0;
        double a = psi.eval(x), b = raised.eval(x);
        CHECK(a >= prev_psi);
        CHECK(b >= prev_raised);
        prev_psi = a;
        prev_raised = b;
    }
}

TEST_CASE("profile parsing") {
    CHECK(Profile::parse("pow:0.25").eval(0.0625) == doctest::Approx(0.5));
    CHECK(Profile::parse("pow:1:2").eval(0.5) == doctest::Approx(1.0));
    CHECK(Profile::parse("expinv:1").eval(1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(Profile::parse("logpow:2").eval(1.0) == doctest::Approx(1.0));
    CHECK_THROWS(Profile::parse("pow"));
    CHECK_THROWS(Profile::parse("spline:3"));
}
