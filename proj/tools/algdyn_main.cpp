// Command-line front end: parse an experiment config, run one subcommand,
// print the results document to stdout, and (with --out) write report files.
// Exit codes: 0 success, 1 unexpected error or failing verification,
// 2 invalid input, 3 refusal (precondition not met, caps), 4 internal
// cross-check failure.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algdyn/acceptance.hpp"
#include "algdyn/config.hpp"
#include "algdyn/dynamics.hpp"
#include "algdyn/entropy_mc.hpp"
#include "algdyn/expansive.hpp"
#include "algdyn/fk_det.hpp"
#include "algdyn/group_ring.hpp"
#include "algdyn/groups.hpp"
#include "algdyn/quotient_op.hpp"
#include "algdyn/rng.hpp"
#include "algdyn/util.hpp"

namespace {

using algdyn::build_quotient;
using algdyn::decimal;
using algdyn::ExperimentConfig;
using algdyn::json;
using algdyn::json_double;
using algdyn::rational;

struct CliArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = -1;
    std::string out;
};

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string fstr(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ExperimentConfig load_config(const CliArgs& a, bool need_seed) {
    ExperimentConfig cfg = algdyn::parse_config(a.config_path);
    if (a.seed_given) {
        cfg.seed = a.seed;
        cfg.seed_given = true;
    }
    if (a.threads >= 0) cfg.threads = a.threads;
    if (!a.out.empty()) cfg.out = a.out;
    if (need_seed && !cfg.seed_given)
        algdyn::fail("config_invalid",
                     "this command is stochastic; pass --seed or set \"seed\" in the config");
    return cfg;
}

// Results go to stdout; report files (JSON with a meta block, optional CSV
// series) are written only when an output directory was chosen.
void emit(const ExperimentConfig& cfg, const std::string& command, const json& results,
          const std::vector<std::string>& csv_header = {},
          const std::vector<std::vector<std::string>>& csv_rows = {}) {
    std::printf("%s\n", results.dump(2).c_str());
    if (cfg.out.empty()) return;
    json meta = algdyn::make_meta(command, cfg.seed_given ? cfg.seed : 0, cfg.threads);
    algdyn::write_report(cfg.out + "/" + command + ".json", meta, results);
    if (!csv_header.empty())
        algdyn::write_csv(cfg.out + "/" + command + ".csv", csv_header, csv_rows);
}

algdyn::DetOptions det_options(const ExperimentConfig& cfg) {
    algdyn::DetOptions opt;
    opt.threads = algdyn::effective_threads(cfg.threads);
    return opt;
}

int cmd_certify(const CliArgs& a) {
    ExperimentConfig cfg = load_config(a, false);
    algdyn::DominanceCertificate cert = algdyn::dominance_certificate(cfg.f);
    json res;
    res["f"] = algdyn::ring_element_json(cfg.f);
    res["certified"] = cert.certified;
    if (!cert.certified) {
        res["margin"] = nullptr;
        emit(cfg, "certify", res);
        algdyn::fail("not_certified",
                     "identity coefficient does not dominate the off-identity l1 mass");
    }
    res["margin"] = rational(cert.margin);
    algdyn::TruncatedInverse inv = algdyn::neumann_inverse(cfg.f, cfg.tail_tol);
    mpq_class resid = algdyn::inverse_residual(cfg.f, inv);
    res["inverse"] = {{"order", inv.order},
                      {"support", inv.approx.support_size()},
                      {"tail_tol", rational(cfg.tail_tol)},
                      {"tail_bound", rational(inv.tail_bound)},
                      {"residual", rational(resid)}};
    emit(cfg, "certify", res);
    return 0;
}

int cmd_fixcount(const CliArgs& a) {
    ExperimentConfig cfg = load_config(a, false);
    if (cfg.quotients.empty())
        algdyn::fail("config_invalid", "fixcount needs at least one quotient");
    algdyn::DetOptions opt = det_options(cfg);
    json series = json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& qp : cfg.quotients) {
        algdyn::FiniteQuotient q = build_quotient(cfg.group, qp);
        mpz_class cnt = algdyn::fixed_point_count(cfg.f, q, opt);
        double per = algdyn::log_abs_mpz(cnt) / static_cast<double>(q.index());
        series.push_back({{"quotient", q.describe()},
                          {"index", q.index()},
                          {"count", decimal(cnt)},
                          {"log_count_over_index", json_double(per)}});
        rows.push_back({csv_quote(q.describe()), std::to_string(q.index()), decimal(cnt),
                        fstr(per)});
    }
    json res;
    res["f"] = algdyn::ring_element_json(cfg.f);
    res["series"] = series;
    emit(cfg, "fixcount", res, {"quotient", "index", "count", "log_count_over_index"}, rows);
    return 0;
}

int cmd_fkdet(const CliArgs& a) {
    ExperimentConfig cfg = load_config(a, false);
    if (cfg.quotients.empty()) algdyn::fail("config_invalid", "fkdet needs a quotient family");
    algdyn::FkReport rep =
        algdyn::fk_estimate(cfg.f, cfg.group, cfg.quotients, cfg.grid, det_options(cfg));
    json series = json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : rep.series) {
        series.push_back({{"quotient", e.quotient},
                          {"index", e.index},
                          {"count", e.count_dec},
                          {"log_det_over_index", json_double(e.log_det_over_index)}});
        rows.push_back(
            {csv_quote(e.quotient), std::to_string(e.index), e.count_dec, fstr(e.log_det_over_index)});
    }
    json res;
    res["f"] = algdyn::ring_element_json(cfg.f);
    res["series"] = series;
    res["tail_max"] = json_double(rep.tail_max);
    res["oracle_kind"] = rep.oracle_kind;
    if (rep.oracle) res["oracle"] = json_double(*rep.oracle);
    if (rep.gap) res["gap"] = json_double(*rep.gap);
    emit(cfg, "fkdet", res, {"quotient", "index", "count", "log_det_over_index"}, rows);
    return 0;
}

int cmd_sample(const CliArgs& a) {
    ExperimentConfig cfg = load_config(a, true);
    if (cfg.quotients.empty()) algdyn::fail("config_invalid", "sample needs a quotient");
    algdyn::FiniteQuotient q = build_quotient(cfg.group, cfg.quotients.front());
    algdyn::FixedPointSpace space(cfg.f, q);
    algdyn::LiftConfig lift = algdyn::lift_config_for(cfg.f, space.torus_den());
    std::vector<algdyn::GroupElement> window = cfg.window;
    if (window.empty()) window.push_back(algdyn::GroupElement::identity(cfg.group));

    algdyn::Rng root(cfg.seed);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header = {"sample"};
    for (std::size_t i = 0; i < window.size(); ++i) header.push_back("w" + std::to_string(i));
    for (std::int64_t s = 0; s < cfg.samples; ++s) {
        algdyn::Rng sr = root.child(static_cast<std::uint64_t>(s));
        algdyn::TorusPoint x = space.sample(sr);
        std::vector<std::int64_t> p = algdyn::map_P(x, cfg.f, q, lift);
        std::vector<mpz_class> h;
        h.reserve(p.size());
        for (std::int64_t v : p) h.emplace_back(static_cast<long>(v));
        if (!(algdyn::map_xi(h, space) == x))
            algdyn::fail("internal_error", "decode failed to invert the encoding on a sample");
        std::vector<int> tup = algdyn::window_tuple(p, q, window, 0);
        std::vector<std::string> row = {std::to_string(s)};
        for (int v : tup) row.push_back(std::to_string(v));
        rows.push_back(std::move(row));
    }
    json wnames = json::array();
    for (const auto& w : window) wnames.push_back(algdyn::format_word(w));
    json res;
    res["quotient"] = q.describe();
    res["index"] = q.index();
    res["fixed_point_count"] = decimal(space.count());
    res["bound_M"] = lift.bound_M;
    res["samples"] = cfg.samples;
    res["window"] = wnames;
    res["roundtrip_failures"] = 0;
    emit(cfg, "sample", res, header, rows);
    return 0;
}

algdyn::SamplerSpec sampler_spec(const ExperimentConfig& cfg) {
    algdyn::SamplerSpec spec;
    spec.kind = cfg.sampler;
    spec.bernoulli_n = cfg.bernoulli_n;
    if (spec.kind == algdyn::SamplerSpec::Kind::FixedPoints) {
        if (cfg.quotients.empty())
            algdyn::fail("config_invalid",
                         "the fixed-point sampler needs a quotient (last one in the list is used)");
        spec.params = cfg.quotients.back();
    }
    return spec;
}

int cmd_marginal(const CliArgs& a) {
    ExperimentConfig cfg = load_config(a, true);
    if (cfg.window.empty()) algdyn::fail("config_invalid", "marginal needs a nonempty window");
    algdyn::SamplerSpec spec = sampler_spec(cfg);
    algdyn::Rng rng(cfg.seed);
    algdyn::WindowDistribution wd =
        algdyn::reference_marginal(cfg.f, cfg.window, spec, cfg.samples, rng);
    json res;
    res["f"] = algdyn::ring_element_json(cfg.f);
    res["sampler"] =
        spec.kind == algdyn::SamplerSpec::Kind::Bernoulli ? "bernoulli" : "fixed_points";
    if (spec.kind == algdyn::SamplerSpec::Kind::Bernoulli)
        res["noise_n"] = spec.bernoulli_n;
    else
        res["sampler_quotient"] = spec.params.describe(cfg.group);
    res["samples"] = cfg.samples;
    res["distribution"] = algdyn::window_distribution_json(wd);
    res["shannon_entropy_nats"] = json_double(algdyn::shannon_entropy(wd));
    emit(cfg, "marginal", res);
    return 0;
}

int cmd_microcount(const CliArgs& a) {
    ExperimentConfig cfg = load_config(a, true);
    if (cfg.window.empty()) algdyn::fail("config_invalid", "microcount needs a nonempty window");
    if (cfg.quotients.empty())
        algdyn::fail("config_invalid", "microcount needs at least one quotient to enumerate");
    algdyn::SamplerSpec spec = sampler_spec(cfg);
    algdyn::Rng rng(cfg.seed);
    algdyn::Rng ref_rng = rng.child(1);
    algdyn::WindowDistribution ref =
        algdyn::reference_marginal(cfg.f, cfg.window, spec, cfg.samples, ref_rng);

    algdyn::EnumOptions eo = cfg.enum_opt;
    eo.threads = algdyn::effective_threads(cfg.threads);

    json series = json::array();
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < cfg.quotients.size(); ++i) {
        algdyn::FiniteQuotient q = build_quotient(cfg.group, cfg.quotients[i]);
        algdyn::MicrocountReport rep =
            algdyn::exhaustive_model_count(cfg.f, q, cfg.window, ref, cfg.epsilon, eo);
        algdyn::Rng enc_rng = rng.child(100 + static_cast<std::uint64_t>(i));
        algdyn::FixedPointTally tally = algdyn::count_encoded_fixed_points(
            cfg.f, q, cfg.window, ref, cfg.epsilon, eo, enc_rng);
        algdyn::BoundCheck bc = algdyn::model_count_bound_check(rep, cfg.f);
        series.push_back({{"quotient", q.describe()},
                          {"index", rep.index},
                          {"count", decimal(rep.count)},
                          {"log_count_over_index", json_double(rep.log_count_over_index)},
                          {"fix_count", decimal(rep.fix_count)},
                          {"encoded_matches", decimal(tally.matches)},
                          {"encoded_exact", tally.exact},
                          {"bound",
                           {{"applicable", bc.applicable},
                            {"holds", bc.holds},
                            {"two_eps_s", rational(bc.two_eps_s)},
                            {"log_count_per_index", json_double(bc.log_count_per_index)},
                            {"stirling_rhs_per_index", json_double(bc.stirling_rhs_per_index)}}}});
        rows.push_back({csv_quote(q.describe()), std::to_string(rep.index), decimal(rep.count),
                        fstr(rep.log_count_over_index), decimal(rep.fix_count),
                        decimal(tally.matches), bc.applicable && bc.holds ? "1" : "0"});
    }
    json wnames = json::array();
    for (const auto& w : cfg.window) wnames.push_back(algdyn::format_word(w));
    json res;
    res["f"] = algdyn::ring_element_json(cfg.f);
    res["epsilon"] = rational(cfg.epsilon);
    res["window"] = wnames;
    res["reference"] = algdyn::window_distribution_json(ref);
    res["series"] = series;
    emit(cfg, "microcount", res,
         {"quotient", "index", "count", "log_count_over_index", "fix_count", "encoded_matches",
          "bound_holds"},
         rows);
    return 0;
}

int cmd_verify(const CliArgs& a) {
    std::uint64_t seed = algdyn::kAcceptanceSeed;
    std::string out = a.out;
    if (!a.config_path.empty()) {
        ExperimentConfig cfg = algdyn::parse_config(a.config_path);
        if (cfg.seed_given) seed = cfg.seed;
        if (out.empty()) out = cfg.out;
    }
    if (a.seed_given) seed = a.seed;

    algdyn::AcceptanceRun run = algdyn::run_acceptance(seed);
    for (const auto& r : run.results)
        std::printf("[%s] %d. %s — %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.details.c_str());
    std::printf("%s\n", run.all_passed ? "all criteria passed" : "some criteria FAILED");
    if (!out.empty()) {
        json criteria = json::array();
        for (const auto& r : run.results)
            criteria.push_back(
                {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"details", r.details}});
        json res;
        res["criteria"] = criteria;
        res["payload"] = run.payload;
        algdyn::write_report(out + "/verify.json", algdyn::make_meta("verify", seed, 0), res);
    }
    return run.all_passed ? 0 : 1;
}

int exit_code_for(const algdyn::Error& e) {
    const std::string& c = e.code();
    if (c == "not_certified" || c == "cap_exceeded" || c == "tail_too_loose" ||
        c == "rejection_rate" || c == "degenerate_quotient")
        return 3;
    if (c == "det_mismatch" || c == "internal_error") return 4;
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "periodic points, operator determinants, and finite-model counts of principal "
        "algebraic actions over finite group quotients"};
    app.require_subcommand(1);

    CliArgs args;
    auto add_common = [&](CLI::App* c, bool config_required) {
        auto* opt = c->add_option("--config", args.config_path, "experiment config (JSON)");
        if (config_required) opt->required();
        c->add_option("--seed", args.seed, "seed for stochastic draws");
        c->add_option("--threads", args.threads, "worker cap (0 = all hardware threads)");
        c->add_option("--out", args.out, "directory for report files");
    };

    add_common(app.add_subcommand("certify", "dominance certificate and truncated inverse"), true);
    add_common(app.add_subcommand("fixcount", "fixed-point counts over a quotient family"), true);
    add_common(app.add_subcommand("fkdet", "determinant growth rate with the torus-integral oracle"),
               true);
    add_common(app.add_subcommand("sample", "uniform fixed points with their encoded window tuples"),
               true);
    add_common(app.add_subcommand("marginal", "empirical window marginal of a sampler"), true);
    add_common(app.add_subcommand("microcount", "exhaustive model counts against a reference"),
               true);
    add_common(app.add_subcommand("verify", "run the acceptance checks"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    args.seed_given = sub->count("--seed") > 0;
    if (sub->count("--threads") == 0) args.threads = -1;

    try {
        const std::string& name = sub->get_name();
        if (name == "certify") return cmd_certify(args);
        if (name == "fixcount") return cmd_fixcount(args);
        if (name == "fkdet") return cmd_fkdet(args);
        if (name == "sample") return cmd_sample(args);
        if (name == "marginal") return cmd_marginal(args);
        if (name == "microcount") return cmd_microcount(args);
        if (name == "verify") return cmd_verify(args);
        algdyn::fail("config_invalid", "unknown subcommand");
    } catch (const algdyn::Error& e) {
        json err = {{"error", {{"code", e.code()}, {"message", e.message()}}}};
        std::fprintf(stderr, "%s\n", err.dump(2).c_str());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
    return 1;
}
