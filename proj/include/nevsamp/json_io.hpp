#pragma once

#include <string>

#include <json.hpp>

#include "nevsamp/blaschke.hpp"
#include "nevsamp/counterexamples.hpp"
#include "nevsamp/criteria.hpp"
#include "nevsamp/generators.hpp"
#include "nevsamp/harmonic_measure.hpp"
#include "nevsamp/vulnerability.hpp"

namespace nevsamp {

using Json = nlohmann::json;

Json to_json(const ZeroSet& z);
ZeroSet zeroset_from_json(const Json& j);

Json to_json(const Configuration& c);
Configuration configuration_from_json(const Json& j);

Json to_json(const BoundaryMeasure& m);
BoundaryMeasure measure_from_json(const Json& j);

Json to_json(const SeriesVerdict& v);
Json to_json(const CriterionReport& r);
Json to_json(const WitnessSelection& s);
Json to_json(const BlaschkeDistribution& d);
BlaschkeDistribution distribution_from_json(const Json& j);
Json to_json(const WitnessReport& r);
Json to_json(const VulnerabilityResult& r);
Json to_json(const HMEstimate& e);

Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

// Run manifest: every report embeds one; the hashable section is the report
// with the timestamp removed.
struct RunManifest {
    std::string command;
    Json parameters = Json::object();
    long long seed = -1;  // -1 = unseeded command
    int depth = 0;
    std::string version;
    std::string timestamp;
};

Json to_json(const RunManifest& m);
Json wrap_report(const RunManifest& m, Json result);
std::string hashable_section(const Json& report);

}  // namespace nevsamp
