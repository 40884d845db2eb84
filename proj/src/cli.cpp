#include "nevsamp/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "nevsamp/json_io.hpp"
#include "nevsamp/parallel.hpp"
#include "nevsamp/version.hpp"

namespace nevsamp {

namespace {

std::string timestamp_now() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void apply_thread_cap(int threads) {
    if (threads <= 0) {
        if (const char* env = std::getenv("NEVSAMP_THREADS")) threads = std::atoi(env);
    }
    if (threads > 0) set_thread_cap(threads);
}

RingSpec parse_rings(double q, const std::string& eps_spec, int depth) {
    auto colon = eps_spec.find(':');
    std::string kind = eps_spec.substr(0, colon);
    RingSpec spec{q, RingSpec::Power{2.0}, depth};
    if (kind == "geom") {
        auto rest = eps_spec.substr(colon + 1);
        auto c2 = rest.find(':');
        if (c2 == std::string::npos)
            throw PreconditionError("rings eps: expected geom:eps0:ratio");
        spec.spacing = RingSpec::Geometric{std::stod(rest.substr(0, c2)),
                                           std::stod(rest.substr(c2 + 1))};
    } else if (kind == "pow") {
        spec.spacing = RingSpec::Power{std::stod(eps_spec.substr(colon + 1))};
    } else {
        throw PreconditionError("rings eps: families are geom:eps0:ratio and pow:s");
    }
    return spec;
}

void write_level_csv(const std::string& path, const CriterionReport& rep) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << "n,count,term,partial_sum\n";
    for (const auto& row : rep.per_level)
        f << row.n << ',' << std::setprecision(17) << row.count << ','
          << row.term << ',' << row.partial_sum << "\n";
}

int run_generate(CLI::App* cmd, std::ostream& out) {
    const auto kind = cmd->get_option("--kind")->as<std::string>();
    const int depth = cmd->get_option("--depth")->as<int>();
    const auto out_path = cmd->get_option("--out")->as<std::string>();

    Configuration c;
    if (kind == "dyadic") {
        c = generate_dyadic_centers(depth);
    } else if (kind == "net") {
        c = generate_g_net(Profile::parse(cmd->get_option("--g")->as<std::string>()), depth);
    } else if (kind == "rings") {
        c = generate_rings(parse_rings(cmd->get_option("--rings-q")->as<double>(),
                                       cmd->get_option("--rings-eps")->as<std::string>(),
                                       depth));
    } else if (kind == "disks") {
        c = generate_udisks(depth, Profile::parse(cmd->get_option("--phi")->as<std::string>()));
    } else {
        throw PreconditionError("generate: kind must be net|rings|disks|dyadic");
    }
    save_json(out_path, to_json(c));
    out << "wrote " << c.points.size() << " points to " << out_path << "\n";
    return 0;
}

int run_analyze(CLI::App* cmd, std::ostream& out) {
    const auto criterion = cmd->get_option("--criterion")->as<std::string>();
    const int depth = cmd->get_option("--depth")->as<int>();
    const auto report_path = cmd->get_option("--report")->as<std::string>();
    const auto csv_path = cmd->get_option("--csv")->as<std::string>();
    const auto config_path = cmd->get_option("--config")->as<std::string>();

    RunManifest manifest;
    manifest.command = "analyze";
    manifest.depth = depth;
    manifest.version = kVersion;
    manifest.timestamp = timestamp_now();
    manifest.parameters["criterion"] = criterion;

    Json result;
    CriterionReport rep;
    bool have_rep = false;

    if (criterion == "hl") {
        Configuration c = configuration_from_json(load_json(config_path));
        double zeta = cmd->get_option("--zeta")->as<double>() * kTwoPi;
        double delta = cmd->get_option("--delta")->as<double>();
        manifest.parameters["zeta"] = cmd->get_option("--zeta")->as<double>();
        manifest.parameters["delta"] = delta;
        manifest.parameters["config"] = config_path;
        SeriesVerdict v = hayman_lyons_test(c, zeta, delta, depth);
        result = Json{{"criterion", "hl"}, {"series", to_json(v)}};
        rep.criterion = "hl";
        rep.series = v;
        for (std::size_t n = 0; n < v.partial_sums.size(); ++n)
            rep.per_level.push_back(
                {static_cast<int>(n), 0.0,
                 n == 0 ? v.partial_sums[0]
                        : v.partial_sums[n] - v.partial_sums[n - 1],
                 v.partial_sums[n]});
        have_rep = true;
    } else if (criterion == "net") {
        Profile g = Profile::parse(cmd->get_option("--g")->as<std::string>());
        manifest.parameters["g"] = g.describe();
        rep = net_sampling_criterion(g, depth);
        result = to_json(rep);
        have_rep = true;
    } else if (criterion == "rings") {
        RingSpec spec = parse_rings(cmd->get_option("--rings-q")->as<double>(),
                                    cmd->get_option("--rings-eps")->as<std::string>(),
                                    depth);
        manifest.parameters["q"] = spec.q;
        manifest.parameters["eps"] = cmd->get_option("--rings-eps")->as<std::string>();
        rep = rings_sampling_criterion(spec, depth);
        result = to_json(rep);
        have_rep = true;
    } else if (criterion == "udisks") {
        Profile phi = Profile::parse(cmd->get_option("--phi")->as<std::string>());
        manifest.parameters["phi"] = phi.describe();
        double K = cmd->get_option("--K")->as<double>();
        manifest.parameters["K"] = K;
        rep = udisks_sampling_criterion(phi, depth, K);
        result = to_json(rep);
        have_rep = true;
    } else if (criterion == "witness") {
        Configuration c = configuration_from_json(load_json(config_path));
        manifest.parameters["config"] = config_path;
        double eps = cmd->get_option("--eps")->as<double>();
        manifest.parameters["eps"] = eps;
        BlaschkeDistribution dist;
        const auto dist_path = cmd->get_option("--dist")->as<std::string>();
        if (!dist_path.empty()) {
            dist = distribution_from_json(load_json(dist_path));
            manifest.parameters["dist"] = dist_path;
        } else {
            auto seed_opt = cmd->get_option("--dist-seed");
            if (seed_opt->empty())
                throw PreconditionError("witness criterion: --dist or --dist-seed required");
            auto seed = seed_opt->as<unsigned long long>();
            dist = random_blaschke_distribution(depth, seed);
            manifest.parameters["dist_seed"] = seed;
        }
        result = to_json(witness_selector(c, dist, eps));
    } else {
        throw PreconditionError("analyze: criterion must be hl|net|rings|udisks|witness");
    }

    Json report = wrap_report(manifest, result);
    if (!report_path.empty()) save_json(report_path, report);
    if (!csv_path.empty() && have_rep) write_level_csv(csv_path, rep);
    out << report.dump(2) << "\n";
    return 0;
}

int run_witness(CLI::App* cmd, std::ostream& out) {
    const auto type = cmd->get_option("--type")->as<std::string>();
    const int depth = cmd->get_option("--depth")->as<int>();
    const auto report_path = cmd->get_option("--report")->as<std::string>();
    const auto config_path = cmd->get_option("--config")->as<std::string>();

    RunManifest manifest;
    manifest.command = "witness";
    manifest.depth = depth;
    manifest.version = kVersion;
    manifest.timestamp = timestamp_now();
    manifest.parameters["type"] = type;

    NevanlinnaWitness w;
    Configuration c;
    if (type == "example1") {
        double chor = cmd->get_option("--c")->as<double>();
        manifest.parameters["c"] = chor;
        w = example1_witness(chor, depth);
        c = generate_dyadic_centers(depth);
    } else if (type == "appendix") {
        double delta = cmd->get_option("--delta")->as<double>();
        manifest.parameters["delta"] = delta;
        manifest.parameters["config"] = config_path;
        c = configuration_from_json(load_json(config_path));
        w = appendix_witness(c, delta, depth);
    } else if (type == "net-necessity") {
        Profile psi = Profile::parse(cmd->get_option("--psi")->as<std::string>());
        manifest.parameters["psi"] = psi.describe();
        manifest.parameters["config"] = config_path;
        c = configuration_from_json(load_json(config_path));
        w = tangential_net_witness(psi, c, depth);
    } else if (type == "udisks-necessity") {
        Profile phi = Profile::parse(cmd->get_option("--phi")->as<std::string>());
        manifest.parameters["phi"] = phi.describe();
        manifest.parameters["config"] = config_path;
        c = configuration_from_json(load_json(config_path));
        w = udisks_witness(phi, c, depth);
    } else {
        throw PreconditionError(
            "witness: type must be example1|appendix|net-necessity|udisks-necessity");
    }

    double bound = cmd->get_option("--bound")->as<double>();
    auto grid = radial_grid(1000, 0.5, 1.0 - std::ldexp(1.0, -depth - 2));
    WitnessReport rep = verify_witness(w, c, bound, grid);
    Json result{{"witness_meta", w.meta}, {"report", to_json(rep)}};
    Json report = wrap_report(manifest, result);
    if (!report_path.empty()) save_json(report_path, report);
    out << report.dump(2) << "\n";
    return 0;
}

int run_vuln(CLI::App* cmd, std::ostream& out) {
    const auto config_path = cmd->get_option("--config")->as<std::string>();
    const auto square_str = cmd->get_option("--square")->as<std::string>();
    const int N = cmd->get_option("--N")->as<int>();
    const auto mode = cmd->get_option("--mode")->as<std::string>();

    auto comma = square_str.find(',');
    if (comma == std::string::npos)
        throw PreconditionError("vuln: --square expects n,k");
    DyadicIndex square{std::stoi(square_str.substr(0, comma)),
                       std::stoll(square_str.substr(comma + 1))};

    Configuration c = configuration_from_json(load_json(config_path));
    VulnerabilityInstance inst;
    inst.square = square;
    inst.N = N;
    inst.dilation = cmd->get_option("--dilation")->as<double>();
    for (const auto& p : c.points)
        if (dyadic_square_of(p) == square) inst.lambda_points.push_back(p);
    if (inst.lambda_points.empty())
        throw PreconditionError("vuln: no configuration points in that square");

    RunManifest manifest;
    manifest.command = "vuln";
    manifest.version = kVersion;
    manifest.timestamp = timestamp_now();
    manifest.parameters = {{"config", config_path},
                           {"square", square_str},
                           {"N", N},
                           {"mode", mode}};

    VulnerabilityResult res;
    if (mode == "brute") {
        int grid = cmd->get_option("--grid")->as<int>();
        manifest.parameters["grid"] = grid;
        res = w_brute_force(inst, grid);
    } else if (mode == "opt") {
        auto seed_opt = cmd->get_option("--seed");
        if (seed_opt->empty()) throw PreconditionError("vuln opt: --seed required");
        auto seed = seed_opt->as<unsigned long long>();
        int starts = cmd->get_option("--starts")->as<int>();
        manifest.seed = static_cast<long long>(seed);
        manifest.parameters["starts"] = starts;
        res = w_optimize(inst, starts, seed);
    } else {
        throw PreconditionError("vuln: mode must be brute|opt");
    }

    Json report = wrap_report(manifest, to_json(res));
    const auto report_path = cmd->get_option("--report")->as<std::string>();
    if (!report_path.empty()) save_json(report_path, report);
    out << report.dump(2) << "\n";
    return 0;
}

int run_hm(CLI::App* cmd, std::ostream& out) {
    auto seed_opt = cmd->get_option("--seed");
    if (seed_opt->empty()) throw PreconditionError("hm: --seed required");
    auto seed = seed_opt->as<unsigned long long>();
    const auto phi_spec = cmd->get_option("--phi")->as<std::string>();
    const auto levels = cmd->get_option("--levels")->as<std::string>();
    const long walks = cmd->get_option("--walks")->as<long>();
    const double K = cmd->get_option("--K")->as<double>();
    const auto csv_path = cmd->get_option("--csv")->as<std::string>();

    auto dots = levels.find("..");
    if (dots == std::string::npos)
        throw PreconditionError("hm: --levels expects a..b");
    int lo = std::stoi(levels.substr(0, dots));
    int hi = std::stoi(levels.substr(dots + 2));
    if (walks < 1) throw PreconditionError("hm: walks must be >= 1");

    Profile phi = Profile::parse(phi_spec);
    auto rows = sampling_vs_escape_experiment(phi, lo, hi, walks, seed, K);

    RunManifest manifest;
    manifest.command = "hm";
    manifest.seed = static_cast<long long>(seed);
    manifest.version = kVersion;
    manifest.timestamp = timestamp_now();
    manifest.parameters = {{"phi", phi.describe()},
                           {"levels", levels},
                           {"walks", walks},
                           {"K", K}};

    std::ostringstream csv;
    csv << "n,R_n,excised_count,escape,stderr,stalled,eps_product_C0.1,"
           "eps_product_C0.5,eps_product_C1\n";
    Json jrows = Json::array();
    for (const auto& r : rows) {
        csv << r.n << ',' << std::setprecision(17) << r.R_n << ','
            << r.excised_count << ',' << r.escape << ',' << r.std_error << ','
            << r.stalled << ',' << r.eps_product_c01 << ',' << r.eps_product_c05
            << ',' << r.eps_product_c1 << "\n";
        jrows.push_back({{"n", r.n},
                         {"R_n", r.R_n},
                         {"excised_count", r.excised_count},
                         {"escape", r.escape},
                         {"stderr", r.std_error},
                         {"stalled", r.stalled}});
    }
    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw std::runtime_error("cannot write " + csv_path);
        f << csv.str();
    }
    Json report = wrap_report(manifest, Json{{"rows", jrows}});
    out << report.dump(2) << "\n";
    return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"structured point configurations in the unit disk: sampling "
                 "criteria, counterexample witnesses, harmonic-measure runs"};
    app.set_version_flag("--version", kVersion);
    int threads = 0;
    app.add_option("--threads", threads, "worker thread cap");

    auto* gen = app.add_subcommand("generate", "emit a point configuration");
    gen->add_option("--kind", "net|rings|disks|dyadic")->required();
    gen->add_option("--depth", "generation depth")->required();
    gen->add_option("--out", "output configuration path")->required();
    gen->add_option("--g", "net profile spec");
    gen->add_option("--phi", "disk profile spec");
    gen->add_option("--rings-q", "ring radii rule r_n = 1-q^n")->default_val(0.5);
    gen->add_option("--rings-eps", "ring spacing, geom:e0:p or pow:s")
        ->default_val("geom:1:0.5");

    auto* ana = app.add_subcommand("analyze", "run a sampling criterion");
    ana->add_option("--config", "configuration path")->default_val("");
    ana->add_option("--criterion", "hl|net|rings|udisks|witness")->required();
    ana->add_option("--zeta", "boundary point as a fraction of a turn")->default_val(0.0);
    ana->add_option("--delta", "separation parameter")->default_val(0.4);
    ana->add_option("--depth", "truncation depth")->default_val(20);
    ana->add_option("--g", "net profile spec")->default_val("pow:0.5");
    ana->add_option("--phi", "disk profile spec")->default_val("pow:1");
    ana->add_option("--K", "dyadic base for the disks test")->default_val(2.0);
    ana->add_option("--rings-q", "ring radii rule")->default_val(0.5);
    ana->add_option("--rings-eps", "ring spacing spec")->default_val("geom:1:0.5");
    ana->add_option("--eps", "square selection threshold")->default_val(0.25);
    ana->add_option("--dist", "zero distribution path")->default_val("");
    ana->add_option("--dist-seed", "random distribution seed");
    ana->add_option("--report", "report JSON path")->default_val("");
    ana->add_option("--csv", "per-level CSV path")->default_val("");

    auto* wit = app.add_subcommand("witness", "build and verify a witness");
    wit->add_option("--type", "example1|appendix|net-necessity|udisks-necessity")
        ->required();
    wit->add_option("--config", "configuration path")->default_val("");
    wit->add_option("--c", "horocycle level")->default_val(1.0);
    wit->add_option("--delta", "separation parameter")->default_val(0.5);
    wit->add_option("--psi", "approach profile spec")->default_val("pow:1.3333333333333333");
    wit->add_option("--phi", "disk profile spec")->default_val("expinv:1");
    wit->add_option("--bound", "boundedness target")->default_val(1.0);
    wit->add_option("--depth", "truncation depth")->required();
    wit->add_option("--report", "report JSON path")->default_val("");

    auto* vul = app.add_subcommand("vuln", "placement functional on one square");
    vul->add_option("--config", "configuration path")->required();
    vul->add_option("--square", "square as n,k")->required();
    vul->add_option("--N", "placement count")->required();
    vul->add_option("--mode", "brute|opt")->required();
    vul->add_option("--grid", "brute grid resolution")->default_val(32);
    vul->add_option("--starts", "multistart count")->default_val(8);
    vul->add_option("--dilation", "square dilation")->default_val(0.2);
    vul->add_option("--seed", "RNG seed");
    vul->add_option("--report", "report JSON path")->default_val("");

    auto* hm = app.add_subcommand("hm", "escape-probability experiment");
    hm->add_option("--phi", "disk profile spec")->required();
    hm->add_option("--levels", "level range a..b")->required();
    hm->add_option("--walks", "walks per level")->required();
    hm->add_option("--seed", "RNG seed");
    hm->add_option("--K", "outer radius rule R_n = 1-K^-n")->default_val(2.0);
    hm->add_option("--csv", "CSV output path")->default_val("");

    app.require_subcommand(1);

    try {
        std::vector<std::string> argv_rev(args.rbegin(), args.rend());
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help() << "\n";
            return 0;
        }
        err << Json{{"error", "usage"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    }

    apply_thread_cap(threads);

    try {
        if (gen->parsed()) return run_generate(gen, out);
        if (ana->parsed()) return run_analyze(ana, out);
        if (wit->parsed()) return run_witness(wit, out);
        if (vul->parsed()) return run_vuln(vul, out);
        if (hm->parsed()) return run_hm(hm, out);
        err << Json{{"error", "usage"}, {"detail", "missing subcommand"}}.dump() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        err << Json{{"error", "precondition"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << Json{{"error", "precondition"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << Json{{"error", "precondition"}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << Json{{"error", "internal"}, {"detail", e.what()}}.dump() << "\n";
        return 1;
    }
}

}  // namespace nevsamp
