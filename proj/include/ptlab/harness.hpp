#pragma once

#include "ptlab/bits.hpp"
#include "ptlab/errors.hpp"
#include "ptlab/oracle.hpp"
#include "ptlab/properties.hpp"
#include "ptlab/seed_elim.hpp"
#include "ptlab/stats.hpp"
#include "ptlab/strings.hpp"
#include "ptlab/testers.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ptlab {

// One (property, instance, tester, adversary) experiment. Rationals are
// carried as exact strings in the JSON form ("0.3" and "3/10" both parse
// exactly; never through a double).
struct experiment_config {
    std::string property;
    std::string instance = "member";  // member | far
    std::string tester;
    std::string adversary = "null";
    std::string mode = "standard";
    unsigned budget_t = 0;
    rational alpha{0, 1};
    std::string offline_chooser = "rarest-symbols";  // rarest-symbols | uniform
    rational epsilon{1, 2};
    std::size_t n = 0;
    std::size_t trials = 0;
    std::uint64_t master_seed = 1;
    unsigned rbits = 0;  // > 0: run testers from an rbits-wide seed window
    std::optional<rational> planted_distance;
    std::optional<double> assert_min_accept;
    std::optional<double> assert_max_accept;

    friend bool operator==(const experiment_config&, const experiment_config&) = default;
};

struct trial_record {
    std::size_t id = 0;
    verdict v = verdict::accept;
    std::size_t queries = 0;
    std::size_t erased_seen = 0;
    std::size_t corrupted_seen = 0;
    std::size_t non_erased = 0;
    std::uint64_t bits_consumed = 0;
};

struct experiment_stats {
    std::size_t trials = 0;
    std::size_t accepts = 0;
    double acceptance_rate = 0.0;
    binomial_ci ci99;
    double mean_queries = 0.0;
    std::size_t max_queries = 0;
    double mean_bits = 0.0;
    std::uint64_t max_bits = 0;
    double mean_erased_seen = 0.0;
    std::size_t erasure_hit_runs = 0;  // runs that saw at least one erased answer
    double erasure_hit_rate = 0.0;
    std::size_t max_non_erased = 0;
};

struct experiment_result {
    experiment_config config;
    std::vector<trial_record> records;
    experiment_stats stats;
    std::vector<std::string> warnings;
    bool assertions_ok = true;
    rational instance_distance{0, 1};
};

// --------------------------------------------------------------------------
// Config <-> JSON (schema frozen; the summary embeds the config so summaries
// round-trip through this parser)
// --------------------------------------------------------------------------

inline nlohmann::json config_to_json(const experiment_config& c) {
    nlohmann::json j{{"property", c.property},
                     {"instance", c.instance},
                     {"tester", c.tester},
                     {"adversary", c.adversary},
                     {"mode", c.mode},
                     {"t", c.budget_t},
                     {"alpha", to_string(c.alpha)},
                     {"offline_chooser", c.offline_chooser},
                     {"epsilon", to_string(c.epsilon)},
                     {"n", c.n},
                     {"trials", c.trials},
                     {"master_seed", c.master_seed},
                     {"rbits", c.rbits}};
    if (c.planted_distance) j["planted_distance"] = to_string(*c.planted_distance);
    if (c.assert_min_accept) j["assert_min_accept"] = *c.assert_min_accept;
    if (c.assert_max_accept) j["assert_max_accept"] = *c.assert_max_accept;
    return j;
}

inline experiment_config config_from_json(const nlohmann::json& j) {
    experiment_config c;
    c.property = j.at("property").get<std::string>();
    c.tester = j.at("tester").get<std::string>();
    c.epsilon = parse_rational(j.at("epsilon").get<std::string>());
    c.n = j.at("n").get<std::size_t>();
    c.trials = j.at("trials").get<std::size_t>();
    c.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("instance")) c.instance = j.at("instance").get<std::string>();
    if (j.contains("adversary")) c.adversary = j.at("adversary").get<std::string>();
    if (j.contains("mode")) c.mode = j.at("mode").get<std::string>();
    if (j.contains("t")) c.budget_t = j.at("t").get<unsigned>();
    if (j.contains("alpha")) c.alpha = parse_rational(j.at("alpha").get<std::string>());
    if (j.contains("offline_chooser")) c.offline_chooser = j.at("offline_chooser").get<std::string>();
    if (j.contains("rbits")) c.rbits = j.at("rbits").get<unsigned>();
    if (j.contains("planted_distance"))
        c.planted_distance = parse_rational(j.at("planted_distance").get<std::string>());
    if (j.contains("assert_min_accept")) c.assert_min_accept = j.at("assert_min_accept").get<double>();
    if (j.contains("assert_max_accept")) c.assert_max_accept = j.at("assert_max_accept").get<double>();
    return c;
}

inline experiment_config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    return config_from_json(j);
}

// --------------------------------------------------------------------------
// CSV (column order frozen: trial_id, verdict, queries, erased_seen,
// bits_consumed)
// --------------------------------------------------------------------------

inline std::string csv_string(const std::vector<trial_record>& records) {
    std::ostringstream out;
    out << "trial_id,verdict,queries,erased_seen,bits_consumed\n";
    for (const trial_record& t : records)
        out << t.id << ',' << to_string(t.v) << ',' << t.queries << ',' << t.erased_seen << ','
            << t.bits_consumed << '\n';
    return out.str();
}

// Re-aggregation of the stats that are derivable from the emitted CSV alone.
inline experiment_stats stats_from_csv(const std::string& csv) {
    experiment_stats s;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    std::uint64_t query_sum = 0;
    std::uint64_t bits_sum = 0;
    std::uint64_t erased_sum = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = detail::split(line, ',');
        if (fields.size() != 5) throw std::runtime_error("malformed CSV row: " + line);
        ++s.trials;
        if (fields[1] == "accept") ++s.accepts;
        const auto queries = std::stoull(fields[2]);
        const auto erased = std::stoull(fields[3]);
        const auto bits = std::stoull(fields[4]);
        query_sum += queries;
        bits_sum += bits;
        erased_sum += erased;
        s.max_queries = std::max<std::size_t>(s.max_queries, queries);
        s.max_bits = std::max<std::uint64_t>(s.max_bits, bits);
        s.max_non_erased = std::max<std::size_t>(s.max_non_erased, queries - erased);
        if (erased > 0) ++s.erasure_hit_runs;
    }
    if (s.trials > 0) {
        s.acceptance_rate = static_cast<double>(s.accepts) / static_cast<double>(s.trials);
        s.mean_queries = static_cast<double>(query_sum) / static_cast<double>(s.trials);
        s.mean_bits = static_cast<double>(bits_sum) / static_cast<double>(s.trials);
        s.mean_erased_seen = static_cast<double>(erased_sum) / static_cast<double>(s.trials);
        s.erasure_hit_rate = static_cast<double>(s.erasure_hit_runs) / static_cast<double>(s.trials);
    }
    s.ci99 = clopper_pearson(s.accepts, s.trials);
    return s;
}

inline nlohmann::json summary_json(const experiment_result& r) {
    return nlohmann::json{
        {"config", config_to_json(r.config)},
        {"instance_distance", to_string(r.instance_distance)},
        {"stats",
         {{"trials", r.stats.trials},
          {"accepts", r.stats.accepts},
          {"acceptance_rate", r.stats.acceptance_rate},
          {"ci99_low", r.stats.ci99.low},
          {"ci99_high", r.stats.ci99.high},
          {"mean_queries", r.stats.mean_queries},
          {"max_queries", r.stats.max_queries},
          {"mean_bits", r.stats.mean_bits},
          {"max_bits", r.stats.max_bits},
          {"mean_erased_seen", r.stats.mean_erased_seen},
          {"erasure_hit_runs", r.stats.erasure_hit_runs},
          {"erasure_hit_rate", r.stats.erasure_hit_rate},
          {"max_non_erased", r.stats.max_non_erased}}},
        {"warnings", r.warnings},
        {"assertions_ok", r.assertions_ok}};
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

inline void emit_report(const experiment_result& r, const std::optional<std::string>& csv_path,
                        const std::optional<std::string>& json_path) {
    if (csv_path) write_text_file(*csv_path, csv_string(r.records));
    if (json_path) write_text_file(*json_path, summary_json(r).dump(2) + "\n");
}

// One JSON line per answered query: index, answer, manipulations applied.
inline std::string transcript_jsonl(std::size_t trial_id, const oracle_session& session) {
    std::ostringstream out;
    const auto cell_json = [](const cell& c) {
        return c ? nlohmann::json(*c) : nlohmann::json(nullptr);
    };
    for (const transcript_entry& e : session.transcript()) {
        nlohmann::json manips = nlohmann::json::array();
        for (const manipulation& m : e.manipulations)
            manips.push_back({{"index", m.index}, {"value", cell_json(m.value)}});
        out << nlohmann::json{{"trial", trial_id},
                              {"index", e.index},
                              {"answer", cell_json(e.answer)},
                              {"manipulations", manips}}
                   .dump()
            << '\n';
    }
    return out.str();
}

// --------------------------------------------------------------------------
// Hypothesis checks: flag configurations that step outside the regime the
// corresponding guarantee was stated for. Warnings, not errors.
// --------------------------------------------------------------------------

inline std::vector<std::string> hypothesis_warnings(const experiment_config& cfg,
                                                    const std::shared_ptr<property>& prop) {
    std::vector<std::string> warnings;
    const oracle_mode mode = parse_oracle_mode(cfg.mode);
    const double eps = to_double(cfg.epsilon);
    if (cfg.tester.rfind("de", 0) == 0 &&
        (mode == oracle_mode::online_erase || mode == oracle_mode::online_corrupt)) {
        const auto tau = prop->tau();
        if (tau) {
            const double bound = std::pow(0.01 * eps * std::sqrt(static_cast<double>(cfg.n)) /
                                              static_cast<double>(*tau),
                                          2.0);
            if (static_cast<double>(cfg.budget_t) > bound)
                warnings.push_back("online budget t exceeds (0.01*eps*sqrt(n)/tau)^2 = " +
                                   std::to_string(bound));
        }
    }
    if (cfg.tester.rfind("lifted", 0) == 0 && mode == oracle_mode::online_corrupt) {
        const auto rep = prop->repetition();
        if (rep) {
            const double q = std::ceil(2.0 / (eps / 2.0));
            const double ql = q * std::log2(q);
            const double bound = 0.01 * static_cast<double>(rep->r) / (ql * ql);
            if (static_cast<double>(cfg.budget_t) > bound)
                warnings.push_back("online budget t exceeds delta*r/[q*log2(q)]^2 = " +
                                   std::to_string(bound));
        }
    }
    return warnings;
}

// --------------------------------------------------------------------------
// The Monte Carlo runner
// --------------------------------------------------------------------------

namespace detail {

struct adversary_factory {
    std::string name;
    std::optional<repetition_structure> rep;
    std::shared_ptr<const symbol_occurrences> occurrences;
    const seeded_tester* tester = nullptr;
    unsigned rbits = 0;

    std::unique_ptr<adversary> make(std::uint64_t trial_seed, std::uint32_t true_seed) const {
        if (name == "null") return std::make_unique<null_adversary>();
        if (name == "mirror") return std::make_unique<mirror_adversary>();
        if (name == "same-symbol") return std::make_unique<same_symbol_eraser>(occurrences);
        if (name == "greedy-block") {
            if (!rep) throw std::invalid_argument("greedy-block needs a repetition structure");
            return std::make_unique<greedy_block_corruptor>(*rep, split_mix64(trial_seed ^ 0x6ad5));
        }
        if (name == "seed-elim") {
            if (!tester) throw std::invalid_argument("seed-elim needs a replayable tester");
            return std::make_unique<seed_elimination_adversary>(*tester, rbits, true_seed);
        }
        throw std::invalid_argument("unknown adversary '" + name + "'");
    }
};

}  // namespace detail

inline experiment_stats aggregate(const std::vector<trial_record>& records) {
    experiment_stats s;
    std::uint64_t query_sum = 0;
    std::uint64_t bits_sum = 0;
    std::uint64_t erased_sum = 0;
    for (const trial_record& t : records) {
        ++s.trials;
        if (t.v == verdict::accept) ++s.accepts;
        query_sum += t.queries;
        bits_sum += t.bits_consumed;
        erased_sum += t.erased_seen;
        s.max_queries = std::max(s.max_queries, t.queries);
        s.max_bits = std::max(s.max_bits, t.bits_consumed);
        s.max_non_erased = std::max(s.max_non_erased, t.non_erased);
        if (t.erased_seen > 0) ++s.erasure_hit_runs;
    }
    if (s.trials > 0) {
        s.acceptance_rate = static_cast<double>(s.accepts) / static_cast<double>(s.trials);
        s.mean_queries = static_cast<double>(query_sum) / static_cast<double>(s.trials);
        s.mean_bits = static_cast<double>(bits_sum) / static_cast<double>(s.trials);
        s.mean_erased_seen = static_cast<double>(erased_sum) / static_cast<double>(s.trials);
        s.erasure_hit_rate = static_cast<double>(s.erasure_hit_runs) / static_cast<double>(s.trials);
    }
    s.ci99 = clopper_pearson(s.accepts, s.trials);
    return s;
}

using trial_observer = std::function<void(std::size_t, const oracle_session&)>;

// Runs the configured experiment on a caller-supplied instance (already
// certified by whoever built it).
inline experiment_result run_trials_on(const experiment_config& cfg, const input_string& instance,
                                       const trial_observer& observe = {}) {
    if (cfg.trials == 0) throw std::invalid_argument("run_trials: trials must be >= 1");
    if (cfg.epsilon <= rational(0) || cfg.epsilon >= rational(1))
        throw std::invalid_argument("run_trials: epsilon must lie in (0,1)");
    const oracle_mode mode = parse_oracle_mode(cfg.mode);
    const bool online = mode == oracle_mode::online_erase || mode == oracle_mode::online_corrupt;
    if (!online && (cfg.adversary != "null" || cfg.budget_t != 0))
        throw std::invalid_argument("run_trials: " + cfg.mode +
                                    " mode takes no online adversary or budget");
    auto prop = make_property(cfg.property, cfg.n);
    if (instance.size() != cfg.n) throw std::invalid_argument("run_trials: instance length != n");

    experiment_result result;
    result.config = cfg;
    result.instance_distance = prop->exact_distance(instance);
    result.warnings = hypothesis_warnings(cfg, prop);

    // Offline erasures are chosen once, in advance.
    std::vector<std::size_t> erased_indices;
    if (mode == oracle_mode::offline_erased) {
        if (cfg.offline_chooser == "rarest-symbols") {
            erased_indices = rarest_symbol_indices(instance, cfg.alpha);
        } else if (cfg.offline_chooser == "uniform") {
            bit_reader rng(randomness_spec::from_prng(split_mix64(cfg.master_seed ^ 0x0ff1)));
            erased_indices = uniform_erased_indices(instance, cfg.alpha, rng);
        } else {
            throw std::invalid_argument("unknown offline_chooser '" + cfg.offline_chooser + "'");
        }
    }

    const bool estimator = cfg.tester == "ww-estimate";
    std::shared_ptr<seeded_tester> tester;
    if (!estimator) {
        tester_context ctx{cfg.n, cfg.epsilon, prop->repetition(), prop->tau()};
        tester = make_tester(cfg.tester, ctx);
    }
    const rational truth = cfg.planted_distance ? *cfg.planted_distance : result.instance_distance;

    detail::adversary_factory adv_factory{cfg.adversary, prop->repetition(), nullptr, tester.get(),
                                          cfg.rbits};
    if (cfg.adversary == "same-symbol") adv_factory.occurrences = symbol_occurrences::build(instance);
    if (cfg.adversary == "seed-elim" && (estimator || cfg.rbits == 0))
        throw std::invalid_argument("seed-elim needs a seeded tester and rbits > 0");

    const std::uint32_t seed_mask =
        cfg.rbits == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << cfg.rbits) - 1);

    result.records.reserve(cfg.trials);
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        const std::uint64_t trial_seed = derive_trial_seed(cfg.master_seed, i);
        const std::uint32_t window_seed = static_cast<std::uint32_t>(trial_seed) & seed_mask;
        const randomness_spec spec = cfg.rbits > 0
                                         ? randomness_spec::from_window(window_seed, cfg.rbits)
                                         : randomness_spec::from_prng(trial_seed);

        std::unique_ptr<adversary> adv;
        std::optional<oracle_session> session;
        if (mode == oracle_mode::offline_erased) {
            session.emplace(oracle_session::offline_erased(instance, erased_indices, cfg.alpha));
        } else {
            if (mode != oracle_mode::standard) adv = adv_factory.make(trial_seed, window_seed);
            session.emplace(instance, mode, cfg.budget_t, adv.get());
        }

        trial_record rec;
        rec.id = i;
        if (estimator) {
            const estimate_result est = ww_distance_estimate(*session, cfg.epsilon, spec);
            const rational err = est.estimate > truth ? est.estimate - truth : truth - est.estimate;
            rec.v = err <= cfg.epsilon ? verdict::accept : verdict::reject;
            rec.queries = est.queries;
            rec.bits_consumed = est.bits_consumed;
        } else {
            const run_result run = run_tester(*tester, *session, spec);
            rec.v = run.v;
            rec.queries = run.queries;
            rec.bits_consumed = run.bits_consumed;
        }
        rec.erased_seen = session->erased_answers();
        rec.corrupted_seen = session->corrupted_answers();
        rec.non_erased = session->answered() - session->erased_answers();
        if (!session->budget_law_holds()) throw std::logic_error("budget law violated");
        if (observe) observe(i, *session);
        result.records.push_back(rec);
    }

    result.stats = aggregate(result.records);
    if (cfg.assert_min_accept && result.stats.acceptance_rate < *cfg.assert_min_accept)
        result.assertions_ok = false;
    if (cfg.assert_max_accept && result.stats.acceptance_rate > *cfg.assert_max_accept)
        result.assertions_ok = false;
    return result;
}

// Generates the instance from the property's generators (far instances are
// certified against the exact oracle before any trial runs), then runs.
inline experiment_result run_trials(const experiment_config& cfg, const trial_observer& observe = {}) {
    auto prop = make_property(cfg.property, cfg.n);
    bit_reader rng(randomness_spec::from_prng(split_mix64(cfg.master_seed ^ 0x1857)));
    input_string instance = cfg.instance == "far" ? prop->sample_far(cfg.n, cfg.epsilon, rng)
                                                  : prop->sample_member(cfg.n, rng);
    return run_trials_on(cfg, instance, observe);
}

}  // namespace ptlab
