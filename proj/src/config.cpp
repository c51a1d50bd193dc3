#include "algdyn/config.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "algdyn/util.hpp"

namespace algdyn {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
    fail("config_invalid", "field '" + field + "': " + what);
}

const json& require(const json& doc, const std::string& field) {
    if (!doc.is_object()) bad(field, "enclosing value is not an object");
    auto it = doc.find(field);
    if (it == doc.end()) bad(field, "missing");
    return *it;
}

std::string get_string(const json& j, const std::string& field) {
    if (!j.is_string()) bad(field, "expected a string");
    return j.get<std::string>();
}

std::int64_t get_int(const json& j, const std::string& field) {
    if (!j.is_number_integer()) bad(field, "expected an integer");
    return j.get<std::int64_t>();
}

mpq_class get_rational(const json& j, const std::string& field) {
    if (j.is_number_integer()) return mpq_class(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    bad(field, "expected an integer or a \"p/q\" string");
}

GroupSpec parse_group(const json& j) {
    std::string family = get_string(require(j, "family"), "group.family");
    if (family == "free_abelian") {
        std::int64_t rank = get_int(require(j, "rank"), "group.rank");
        if (rank < 1 || rank > 8) bad("group.rank", "rank must be in 1..8");
        return GroupSpec::free_abelian(static_cast<int>(rank));
    }
    if (family == "free") {
        std::int64_t rank = get_int(require(j, "rank"), "group.rank");
        if (rank < 1 || rank > 8) bad("group.rank", "rank must be in 1..8");
        return GroupSpec::free_group(static_cast<int>(rank));
    }
    if (family == "heisenberg") return GroupSpec::heisenberg();
    bad("group.family", "unknown family '" + family + "'");
}

RingElement parse_f(const GroupSpec& spec, const json& j) {
    if (!j.is_array() || j.empty()) bad("f", "expected a nonempty array of [word, coeff] pairs");
    RingElement f = RingElement::zero(spec);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& term = j[i];
        std::string field = "f[" + std::to_string(i) + "]";
        if (!term.is_array() || term.size() != 2) bad(field, "expected a [word, coeff] pair");
        GroupElement g = parse_word(spec, get_string(term[0], field + ".word"));
        mpq_class c = get_rational(term[1], field + ".coeff");
        f.add_term(g, c);
    }
    if (f.is_zero()) bad("f", "all coefficients cancelled");
    return f;
}

QuotientParams parse_quotient(const GroupSpec& spec, const json& j, const std::string& field) {
    QuotientParams p;
    if (!j.is_object()) bad(field, "expected an object");
    switch (spec.family) {
        case GroupFamily::FreeAbelian: {
            const json& m = require(j, "moduli");
            if (!m.is_array() || static_cast<int>(m.size()) != spec.rank)
                bad(field + ".moduli", "expected an array of length rank");
            for (std::size_t i = 0; i < m.size(); ++i)
                p.moduli.push_back(get_int(m[i], field + ".moduli"));
            break;
        }
        case GroupFamily::Heisenberg:
            p.modulus = get_int(require(j, "modulus"), field + ".modulus");
            break;
        case GroupFamily::Free: {
            p.degree = static_cast<int>(get_int(require(j, "degree"), field + ".degree"));
            const json& imgs = require(j, "generator_images");
            if (!imgs.is_array() || static_cast<int>(imgs.size()) != spec.rank)
                bad(field + ".generator_images", "expected one permutation per generator");
            for (std::size_t gi = 0; gi < imgs.size(); ++gi) {
                const json& perm = imgs[gi];
                if (!perm.is_array() || static_cast<int>(perm.size()) != p.degree)
                    bad(field + ".generator_images", "permutation length must equal degree");
                std::vector<int> v;
                for (std::size_t k = 0; k < perm.size(); ++k)
                    v.push_back(static_cast<int>(get_int(perm[k], field + ".generator_images")));
                p.generator_images.push_back(std::move(v));
            }
            break;
        }
    }
    return p;
}

}  // namespace

ExperimentConfig parse_config_json(const json& doc) {
    if (!doc.is_object()) fail("config_invalid", "top-level config must be a JSON object");
    ExperimentConfig cfg;
    cfg.group = parse_group(require(doc, "group"));
    cfg.f = parse_f(cfg.group, require(doc, "f"));

    if (auto it = doc.find("quotients"); it != doc.end()) {
        if (!it->is_array()) bad("quotients", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i)
            cfg.quotients.push_back(
                parse_quotient(cfg.group, (*it)[i], "quotients[" + std::to_string(i) + "]"));
    }
    if (auto it = doc.find("window"); it != doc.end()) {
        if (!it->is_array()) bad("window", "expected an array of words");
        for (std::size_t i = 0; i < it->size(); ++i)
            cfg.window.push_back(
                parse_word(cfg.group, get_string((*it)[i], "window[" + std::to_string(i) + "]")));
    }

    if (auto it = doc.find("tail_tol"); it != doc.end()) cfg.tail_tol = get_rational(*it, "tail_tol");
    if (auto it = doc.find("epsilon"); it != doc.end()) cfg.epsilon = get_rational(*it, "epsilon");
    if (auto it = doc.find("delta"); it != doc.end()) cfg.delta = get_rational(*it, "delta");
    if (cfg.tail_tol <= 0) bad("tail_tol", "must be positive");
    if (cfg.epsilon <= 0) bad("epsilon", "must be positive");
    if (cfg.delta <= 0) bad("delta", "must be positive");

    if (auto it = doc.find("samples"); it != doc.end()) {
        cfg.samples = get_int(*it, "samples");
        if (cfg.samples < 1) bad("samples", "must be >= 1");
    }
    if (auto it = doc.find("bernoulli_n"); it != doc.end()) {
        std::int64_t n = get_int(*it, "bernoulli_n");
        if (n < 1 || n > 1000000) bad("bernoulli_n", "must be in 1..10^6");
        cfg.bernoulli_n = static_cast<int>(n);
    }
    if (auto it = doc.find("sampler"); it != doc.end()) {
        std::string s = get_string(*it, "sampler");
        if (s == "bernoulli")
            cfg.sampler = SamplerSpec::Kind::Bernoulli;
        else if (s == "fixed_points")
            cfg.sampler = SamplerSpec::Kind::FixedPoints;
        else
            bad("sampler", "expected \"bernoulli\" or \"fixed_points\"");
    }
    if (auto it = doc.find("grid"); it != doc.end()) {
        std::int64_t g = get_int(*it, "grid");
        if (g < 1 || g > (1 << 22)) bad("grid", "must be in 1..2^22");
        cfg.grid = static_cast<int>(g);
    }
    if (auto it = doc.find("enumeration_cap"); it != doc.end())
        cfg.enum_opt.enumeration_cap = static_cast<std::uint64_t>(get_int(*it, "enumeration_cap"));
    if (auto it = doc.find("fix_enum_cap"); it != doc.end())
        cfg.enum_opt.fix_enum_cap = static_cast<std::uint64_t>(get_int(*it, "fix_enum_cap"));
    if (auto it = doc.find("fix_sample_n"); it != doc.end())
        cfg.enum_opt.fix_sample_n = get_int(*it, "fix_sample_n");
    if (auto it = doc.find("seed"); it != doc.end()) {
        cfg.seed = static_cast<std::uint64_t>(get_int(*it, "seed"));
        cfg.seed_given = true;
    }
    if (auto it = doc.find("threads"); it != doc.end()) {
        std::int64_t t = get_int(*it, "threads");
        if (t < 0 || t > 1024) bad("threads", "must be in 0..1024");
        cfg.threads = static_cast<int>(t);
    }
    if (auto it = doc.find("out"); it != doc.end()) cfg.out = get_string(*it, "out");
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("config_invalid", "cannot open config file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        fail("config_invalid", std::string("JSON parse error: ") + e.what());
    }
    return parse_config_json(doc);
}

std::string decimal(const mpz_class& z) { return z.get_str(); }

std::string rational(const mpq_class& q) { return format_rational(q); }

json json_double(double d) {
    if (std::isfinite(d)) return d;
    if (std::isnan(d)) return "nan";
    return d > 0 ? "inf" : "-inf";
}

json ring_element_json(const RingElement& f) {
    json terms = json::array();
    for (const auto& [g, c] : f.coeffs())
        terms.push_back(json::array({format_word(g), rational(c)}));
    return terms;
}

json quotient_params_json(const QuotientParams& p) {
    json j = json::object();
    if (!p.moduli.empty()) j["moduli"] = p.moduli;
    if (p.modulus != 0) j["modulus"] = p.modulus;
    if (p.degree != 0) {
        j["degree"] = p.degree;
        j["generator_images"] = p.generator_images;
    }
    return j;
}

json window_distribution_json(const WindowDistribution& d) {
    json j;
    json window = json::array();
    for (const auto& w : d.window) window.push_back(format_word(w));
    j["window"] = window;
    j["alphabet_M"] = d.alphabet_M;
    j["aliased"] = d.aliased;
    json masses = json::array();
    for (const auto& [t, p] : d.probs) {
        json tuple = json::array();
        for (int s : t) tuple.push_back(s);
        masses.push_back(json::array({tuple, rational(p)}));
    }
    j["masses"] = masses;
    return j;
}

json make_meta(const std::string& command, std::uint64_t seed, int threads) {
    json meta;
    meta["command"] = command;
    meta["seed"] = seed;
    meta["threads"] = threads;
    auto now = std::chrono::system_clock::now();
    meta["timestamp_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
    return meta;
}

void write_report(const std::string& path, const json& meta, const json& results) {
    json doc;
    doc["meta"] = meta;
    doc["results"] = results;
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) fail("config_invalid", "cannot write report file: " + path);
    out << doc.dump(2) << "\n";
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) fail("config_invalid", "cannot write series file: " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

}  // namespace algdyn
