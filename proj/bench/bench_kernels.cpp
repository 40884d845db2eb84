// Serial vs OpenMP timings for the three hot kernels: batch log-modulus,
// walk-on-spheres, and the multistart placement optimizer.

#include <chrono>
#include <cstdio>

#include "nevsamp/blaschke.hpp"
#include "nevsamp/counterexamples.hpp"
#include "nevsamp/harmonic_measure.hpp"
#include "nevsamp/parallel.hpp"
#include "nevsamp/rng.hpp"
#include "nevsamp/vulnerability.hpp"

using namespace nevsamp;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return seconds(t0, t1);
}

}  // namespace

int main() {
    std::printf("threads available: %d\n\n", hardware_threads());
    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");

    {
        NevanlinnaWitness w = example1_witness(1.0, 12);
        Xoshiro256pp rng(7);
        std::vector<Complex> pts(200000);
        for (auto& z : pts) {
            double r = std::sqrt(rng.uniform01()) * 0.999;
            z = std::polar(r, rng.uniform(0.0, kTwoPi));
        }
        std::vector<double> a, b;
        double ts = timed([&] { a = blaschke_log_modulus_batch_serial(w.zero_set, pts); });
        double tp = timed([&] { b = blaschke_log_modulus_batch(w.zero_set, pts); });
        bool same = a == b;
        std::printf("%-28s %10.3f %10.3f %7.2fx%s\n", "blaschke_log_modulus_batch",
                    ts, tp, ts / tp, same ? "" : "  MISMATCH");
    }

    {
        Configuration c = generate_udisks(8, Profile::parse("pow:1"));
        ExcisedDomain dom = build_domain(c, 6, 2.0);
        double eps = 1e-4 * (1.0 - dom.outer_radius);
        HMEstimate ser, par;
        double ts = timed([&] { ser = estimate_escape_serial(dom, 20000, 42, eps); });
        double tp = timed([&] { par = estimate_escape(dom, 20000, 42, eps); });
        bool same = ser.escaped == par.escaped && ser.captured == par.captured;
        std::printf("%-28s %10.3f %10.3f %7.2fx%s\n", "walk_on_spheres",
                    ts, tp, ts / tp, same ? "" : "  MISMATCH");
    }

    {
        Configuration net = generate_g_net(Profile::parse("pow:0.5"), 7);
        VulnerabilityInstance inst;
        inst.square = {7, 0};
        for (const auto& p : net.points)
            if (dyadic_square_of(p) == inst.square) inst.lambda_points.push_back(p);
        inst.N = std::max<int>(1, static_cast<int>(inst.lambda_points.size() / 10));
        VulnerabilityResult rs, rp;
        double ts = timed([&] { rs = w_optimize_serial(inst, 8, 3); });
        double tp = timed([&] { rp = w_optimize(inst, 8, 3); });
        bool same = rs.value == rp.value;
        std::printf("%-28s %10.3f %10.3f %7.2fx%s\n", "placement_multistart",
                    ts, tp, ts / tp, same ? "" : "  MISMATCH");
    }

    return 0;
}
