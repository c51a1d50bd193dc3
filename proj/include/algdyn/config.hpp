#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "algdyn/dynamics.hpp"
#include "algdyn/entropy_mc.hpp"
#include "algdyn/group_ring.hpp"
#include "algdyn/groups.hpp"

namespace algdyn {

using json = nlohmann::json;

// One experiment document. Exact quantities (coefficients, tolerances) are
// strings of the form "p/q" or plain integers; everything a command does not
// use may be omitted.
struct ExperimentConfig {
    GroupSpec group;
    RingElement f;
    std::vector<QuotientParams> quotients;
    std::vector<GroupElement> window;
    mpq_class tail_tol = mpq_class(1, 1000000);
    mpq_class epsilon = mpq_class(2, 5);
    mpq_class delta = mpq_class(1, 10);
    std::int64_t samples = 10000;
    int bernoulli_n = 100;
    SamplerSpec::Kind sampler = SamplerSpec::Kind::Bernoulli;
    int grid = 512;
    EnumOptions enum_opt;
    std::uint64_t seed = 1;
    bool seed_given = false;
    int threads = 0;  // 0 = all hardware threads
    std::string out;

    ExperimentConfig() : f(GroupSpec::free_abelian(1)) {}
};

ExperimentConfig parse_config_json(const json& doc);
ExperimentConfig parse_config(const std::string& path);

// Formatting used by every report: big integers in decimal, rationals "p/q",
// non-finite floats as strings so JSON round-trips them.
std::string decimal(const mpz_class& z);
std::string rational(const mpq_class& q);
json json_double(double d);

json ring_element_json(const RingElement& f);
json quotient_params_json(const QuotientParams& p);
json window_distribution_json(const WindowDistribution& d);

// Reports carry a deterministic "results" object; timestamps and other
// run-varying facts are confined to "meta".
json make_meta(const std::string& command, std::uint64_t seed, int threads);
void write_report(const std::string& path, const json& meta, const json& results);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace algdyn
