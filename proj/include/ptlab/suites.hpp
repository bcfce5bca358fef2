#pragma once

#include "ptlab/harness.hpp"
#include "ptlab/seed_elim.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

namespace ptlab::suites {

struct suite_result {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream out;
    out.precision(4);
    out << v;
    return out.str();
}

}  // namespace detail

// --------------------------------------------------------------------------
// 1. Distance-oracle equivalence: every registered property, every string
//    with n <= 10 over sigma <= 3, exact_distance == exhaustive brute force.
// --------------------------------------------------------------------------

inline suite_result suite_oracle_equivalence(std::size_t max_n = 10, std::uint32_t max_sigma = 3) {
    suite_result res{"oracle-equivalence", true, ""};
    std::size_t strings_checked = 0;
    std::size_t cases = 0;

    const auto check_property = [&](const property& prop, std::uint32_t sigma, std::size_t n) {
        // members via the property's own enumeration (membership only; the
        // distance oracle under test plays no part in it)
        std::vector<std::vector<symbol>> members;
        const bool ok = prop.for_each_member(
            n, 1ULL << 22, [&](const input_string& w) { members.emplace_back(w.cells().begin(), w.cells().end()); });
        if (!ok) return;  // enumeration infeasible; nothing to compare against
        ++cases;
        std::vector<symbol> cells(n, 0);
        for (;;) {
            const input_string x(sigma, cells);
            ++strings_checked;
            std::int64_t best = static_cast<std::int64_t>(n) + 1;
            for (const auto& w : members) {
                std::int64_t diff = 0;
                for (std::size_t i = 0; i < n && diff < best; ++i)
                    if (cells[i] != w[i]) ++diff;
                best = std::min(best, diff);
                if (best == 0) break;
            }
            const rational expected{best, static_cast<std::int64_t>(n)};
            if (prop.exact_distance(x) != expected) {
                res.pass = false;
                res.detail = prop.name() + " disagrees with brute force at n=" + std::to_string(n);
                return;
            }
            std::size_t i = 0;
            while (i < n && ++cells[i] == sigma) cells[i++] = 0;
            if (i == n) break;
        }
    };

    for (std::size_t n = 1; n <= max_n && res.pass; ++n) {
        check_property(zero_string_property{}, 2, n);
        if (n % 2 == 0) check_property(ww_property{}, 2, n);
        for (std::uint32_t sigma = 2; sigma <= max_sigma; ++sigma)
            check_property(sortedness_property{sigma}, sigma, n);
        if (max_sigma >= 3) check_property(lipschitz_property{}, 3, n);
        for (const unsigned tau : {1u, 2u})
            check_property(distinct_elements_property{tau, max_sigma}, max_sigma, n);
        for (std::size_t m = 1; m <= n && res.pass; ++m) {
            if (n % m != 0) continue;
            const repetition_structure st(m, n / m);
            check_property(repetition_code_property{st, 2}, 2, n);
            if (max_sigma >= 3) check_property(repetition_code_property{st, 3}, 3, n);
            check_property(lifted_property{std::make_shared<zero_string_property>(), st}, 2, n);
            if (max_sigma >= 3) {
                check_property(
                    lifted_property{std::make_shared<distinct_elements_property>(1, 3), st}, 3, n);
                check_property(lifted_property{std::make_shared<sortedness_property>(3), st}, 3, n);
            }
        }
    }
    if (res.pass)
        res.detail = std::to_string(strings_checked) + " strings across " + std::to_string(cases) +
                     " property/length cases, all exact";
    return res;
}

// --------------------------------------------------------------------------
// 2. RepTest completeness: m=50, r=20, members, 1000 trials, rate exactly 1.
// --------------------------------------------------------------------------

inline suite_result suite_rep_completeness() {
    experiment_config cfg;
    cfg.property = "rep-code:m=50,r=20";
    cfg.instance = "member";
    cfg.tester = "rep-test";
    cfg.epsilon = rational(1, 4);
    cfg.n = 1000;
    cfg.trials = 1000;
    cfg.master_seed = 2000;
    const auto result = run_trials(cfg);
    return {"rep-completeness", result.stats.acceptance_rate == 1.0,
            "acceptance " + detail::fmt(result.stats.acceptance_rate) + " over 1000 member trials"};
}

// --------------------------------------------------------------------------
// 3. RepTest soundness: a certified exactly-(1/4)-far instance, 10^4 trials,
//    empirical acceptance <= 0.13 (bound (3/4)^8 ~ 0.100 + 0.03 margin).
// --------------------------------------------------------------------------

inline suite_result suite_rep_soundness() {
    const repetition_structure st(50, 20);
    bit_reader rng(randomness_spec::from_prng(3000));
    const repetition_code_property code(st, 2);
    input_string s = code.sample_member(st.n(), rng);
    // Flip half the blocks in half the columns: those columns sit at distance
    // 1/2 (tied plurality), the rest at 0, so the total distance is exactly
    // 1/4 and the per-iteration collision probability is exactly 3/4.
    for (std::size_t mu = 0; mu < st.m / 2; ++mu)
        for (std::size_t rho = 0; rho < st.r / 2; ++rho)
            s.mutable_cells()[st.global_index(rho, mu)] ^= 1u;
    if (code.exact_distance(s) != rational(1, 4))
        return {"rep-soundness", false, "instance certification failed"};

    experiment_config cfg;
    cfg.property = "rep-code:m=50,r=20";
    cfg.tester = "rep-test";
    cfg.epsilon = rational(1, 4);
    cfg.n = 1000;
    cfg.trials = 10000;
    cfg.master_seed = 3001;
    const auto result = run_trials_on(cfg, s);
    return {"rep-soundness", result.stats.acceptance_rate <= 0.13,
            "acceptance " + detail::fmt(result.stats.acceptance_rate) +
                " on a certified 1/4-far instance (bound 0.100, threshold 0.13)"};
}

// --------------------------------------------------------------------------
// 4. Lifted tester, standard model: base zero-string, m=64, r=10^4,
//    eps=1/2; members accepted and far instances rejected in >= 80% of 2000
//    trials each.
// --------------------------------------------------------------------------

inline suite_result suite_lifted_standard() {
    experiment_config cfg;
    cfg.property = "lift:zero-string:r=10000";
    cfg.tester = "lifted:base=zero-string";
    cfg.epsilon = rational(1, 2);
    cfg.n = 640000;
    cfg.trials = 2000;

    cfg.instance = "member";
    cfg.master_seed = 4000;
    const auto member = run_trials(cfg);

    cfg.instance = "far";
    cfg.master_seed = 4001;
    const auto far = run_trials(cfg);

    const double reject_far = 1.0 - far.stats.acceptance_rate;
    const bool pass = member.stats.acceptance_rate >= 0.80 && reject_far >= 0.80;
    return {"lifted-standard", pass,
            "member accept " + detail::fmt(member.stats.acceptance_rate) + ", far reject " +
                detail::fmt(reject_far) + " (thresholds 0.80)"};
}

// --------------------------------------------------------------------------
// 5. Lifted tester vs online corruption: r = 57600 puts t=1 exactly at the
//    delta*r/[q log2 q]^2 bound with delta = 0.01; error <= 1/3 + 0.03 on
//    both suites against the greedy block corruptor.
// --------------------------------------------------------------------------

inline suite_result suite_lifted_online_corruption() {
    experiment_config cfg;
    cfg.property = "lift:zero-string:r=57600";
    cfg.tester = "lifted:base=zero-string";
    cfg.mode = "online-corrupt";
    cfg.adversary = "greedy-block";
    cfg.budget_t = 1;
    cfg.epsilon = rational(1, 2);
    cfg.n = 64 * 57600;
    cfg.trials = 2000;

    cfg.instance = "member";
    cfg.master_seed = 5000;
    const auto member = run_trials(cfg);

    cfg.instance = "far";
    cfg.master_seed = 5001;
    const auto far = run_trials(cfg);

    const double member_error = 1.0 - member.stats.acceptance_rate;
    const double far_error = far.stats.acceptance_rate;
    const double threshold = 1.0 / 3.0 + 0.03;
    const bool hypothesis_ok = member.warnings.empty() && far.warnings.empty();
    const bool pass = hypothesis_ok && member_error <= threshold && far_error <= threshold;
    return {"lifted-online", pass,
            "member error " + detail::fmt(member_error) + ", far error " + detail::fmt(far_error) +
                " vs t=1 greedy-block (threshold " + detail::fmt(threshold) + ")"};
}

// --------------------------------------------------------------------------
// 6. DE tester, offline erasures: tau=5, n=10^4, alpha=0.2, eps=0.3, the
//    adversary erases the rarest symbols. Members 100% accepted (one-sided);
//    certified far instances rejected >= 70%.
// --------------------------------------------------------------------------

inline suite_result suite_de_offline() {
    experiment_config cfg;
    cfg.property = "distinct-elements:tau=5";
    cfg.tester = "de:tau=5";
    cfg.mode = "offline-erased";
    cfg.alpha = rational(1, 5);
    cfg.offline_chooser = "rarest-symbols";
    cfg.epsilon = rational(3, 10);
    cfg.n = 10000;
    cfg.trials = 2000;

    cfg.instance = "member";
    cfg.master_seed = 6000;
    const auto member = run_trials(cfg);

    cfg.instance = "far";
    cfg.master_seed = 6001;
    // Certify that even the erased view keeps every completion far, so
    // rejection is the right verdict for the whole suite, not just the
    // pristine instance.
    auto prop = make_property(cfg.property, cfg.n);
    bit_reader rng(randomness_spec::from_prng(split_mix64(cfg.master_seed ^ 0x1857)));
    const input_string far_instance = prop->sample_far(cfg.n, cfg.epsilon, rng);
    const auto erased = rarest_symbol_indices(far_instance, cfg.alpha);
    std::unordered_set<std::size_t> erased_set(erased.begin(), erased.end());
    std::unordered_map<symbol, std::int64_t> present_counts;
    for (std::size_t i = 0; i < far_instance.size(); ++i)
        if (!erased_set.count(i)) ++present_counts[far_instance[i]];
    std::vector<std::int64_t> counts;
    for (const auto& [_, c] : present_counts) counts.push_back(c);
    std::sort(counts.rbegin(), counts.rend());
    std::int64_t kept = 0;
    for (std::size_t i = 0; i < counts.size() && i < 5; ++i) kept += counts[i];
    const std::int64_t present_total =
        static_cast<std::int64_t>(far_instance.size()) - static_cast<std::int64_t>(erased.size());
    const rational completion_distance{present_total - kept,
                                       static_cast<std::int64_t>(far_instance.size())};

    const auto far = run_trials_on(cfg, far_instance);
    const double reject_far = 1.0 - far.stats.acceptance_rate;
    const bool pass = member.stats.acceptance_rate == 1.0 && reject_far >= 0.70 &&
                      completion_distance > rational(0);
    return {"de-offline", pass,
            "member accept " + detail::fmt(member.stats.acceptance_rate) + ", far reject " +
                detail::fmt(reject_far) + ", erased-view completion distance " +
                to_string(completion_distance)};
}

// --------------------------------------------------------------------------
// 7. DE tester, online erasures: n=10^6, eps=1/2, tau=5, t=1 (the floor of
//    (0.01 eps sqrt(n)/tau)^2); the adversary erases other occurrences of
//    each answered symbol. Erasure-hit frequency <= 0.02; verdict error <=
//    1/3 + 0.03.
// --------------------------------------------------------------------------

inline suite_result suite_de_online() {
    const std::size_t n = 1000000;
    const double bound = std::pow(0.01 * 0.5 * std::sqrt(static_cast<double>(n)) / 5.0, 2.0);
    if (static_cast<unsigned>(bound) != 1)
        return {"de-online", false, "parameter derivation drifted: floor(bound) != 1"};

    experiment_config cfg;
    cfg.property = "distinct-elements:tau=5";
    cfg.tester = "de:tau=5";
    cfg.mode = "online-erase";
    cfg.adversary = "same-symbol";
    cfg.budget_t = 1;
    cfg.epsilon = rational(1, 2);
    cfg.n = n;
    cfg.trials = 2000;

    cfg.instance = "member";
    cfg.master_seed = 7000;
    const auto member = run_trials(cfg);

    cfg.instance = "far";
    cfg.master_seed = 7001;
    const auto far = run_trials(cfg);

    const double threshold = 1.0 / 3.0 + 0.03;
    const double member_error = 1.0 - member.stats.acceptance_rate;
    const double far_error = far.stats.acceptance_rate;
    const bool pass = member.stats.erasure_hit_rate <= 0.02 && far.stats.erasure_hit_rate <= 0.02 &&
                      member_error <= threshold && far_error <= threshold &&
                      member.warnings.empty() && far.warnings.empty();
    return {"de-online", pass,
            "erasure-hit rates member " + detail::fmt(member.stats.erasure_hit_rate) + " / far " +
                detail::fmt(far.stats.erasure_hit_rate) + ", member error " +
                detail::fmt(member_error) + ", far error " + detail::fmt(far_error)};
}

// --------------------------------------------------------------------------
// 8. Seed-elimination cap: rbits in {8,10,16} x t in {1,3,7}, 10^3 runs per
//    combination; max non-erased queries <= floor(rbits/log2(t+1)), exactly,
//    and the true seed survives every prune.
// --------------------------------------------------------------------------

inline suite_result suite_seed_elimination_cap() {
    const input_string zeros4(2, std::vector<symbol>(4, 0));
    const input_string zeros16(2, std::vector<symbol>(16, 0));
    struct row {
        unsigned rbits;
        const input_string* x;
        zero_string_tester tester;
    };
    const std::vector<row> rows{
        {8, &zeros4, zero_string_tester(4, rational(1, 2))},     // 4 queries x 2 bits
        {10, &zeros4, zero_string_tester(4, rational(2, 5))},    // 5 queries x 2 bits
        {16, &zeros16, zero_string_tester(16, rational(1, 2))},  // 4 queries x 4 bits
    };
    std::ostringstream detail_out;
    bool pass = true;
    for (const row& r : rows) {
        if (r.tester.exact_bit_budget() != r.rbits) {
            pass = false;
            detail_out << "tester bit budget mismatch at rbits=" << r.rbits << "; ";
            continue;
        }
        for (const unsigned t : {1u, 3u, 7u}) {
            const auto report = verify_seed_cap(r.tester, r.rbits, t, 1000, *r.x, 8000 + r.rbits + t);
            if (!report.within_cap || !report.true_seed_always_kept) pass = false;
            detail_out << "rbits=" << r.rbits << ",t=" << t << ": max " << report.max_non_erased
                       << "<=cap " << report.cap << "; ";
        }
    }
    return {"seed-cap", pass, detail_out.str()};
}

// --------------------------------------------------------------------------
// 9. Mirror adversary on {ww}: for every implemented tester (the estimator
//    is excluded by its own precondition), over 10^3 trials with t=1, no
//    transcript contains Present answers at both p and its partner.
// --------------------------------------------------------------------------

inline suite_result suite_mirror_ww() {
    const std::size_t n = 1000;
    const std::size_t k = n / 2;
    const repetition_structure st(k, 2);

    bit_reader rng(randomness_spec::from_prng(9000));
    ww_property ww;
    const input_string zero_member(2, std::vector<symbol>(n, 0));
    const input_string random_member = ww.sample_member(n, rng);
    const std::vector<const input_string*> instances{&zero_member, &random_member};

    std::vector<std::shared_ptr<seeded_tester>> testers;
    testers.push_back(std::make_shared<rep_tester>(st, rational(1, 2)));
    testers.push_back(std::make_shared<zero_string_tester>(n, rational(1, 100)));
    testers.push_back(std::make_shared<de_tester>(n, 2, rational(1, 2)));
    testers.push_back(
        make_tester("lifted:base=zero-string", tester_context{n, rational(1, 2), st, std::nullopt}));

    const auto transcript_ok = [&](const std::vector<transcript_entry>& transcript) {
        std::unordered_set<std::size_t> low, high;
        for (const auto& e : transcript) {
            if (!e.answer) continue;
            (e.index < k ? low : high).insert(e.index < k ? e.index : e.index - k);
        }
        return std::all_of(low.begin(), low.end(),
                           [&](std::size_t p) { return high.find(p) == high.end(); });
    };

    std::size_t runs = 0;
    for (const auto& t : testers) {
        for (const input_string* x : instances) {
            for (std::size_t trial = 0; trial < 500; ++trial) {
                mirror_adversary adv;
                oracle_session session(*x, oracle_mode::online_erase, 1, &adv);
                run_tester(*t, session,
                           randomness_spec::from_prng(derive_trial_seed(9001, runs * 1000 + trial)));
                if (!transcript_ok(session.transcript()))
                    return {"mirror", false, t->name() + " transcript exposed a full pair"};
                if (!session.budget_law_holds())
                    return {"mirror", false, "budget law violated"};
            }
            ++runs;
        }
    }
    return {"mirror", true,
            std::to_string(testers.size()) + " testers x 1000 trials, no pair ever fully visible"};
}

// --------------------------------------------------------------------------
// 10. ww estimator: n=10^4, planted distance exactly 3/20, eps=1/20 (800
//     pair samples); |estimate - 0.15| <= 0.05 in >= 93% of 10^3 trials.
// --------------------------------------------------------------------------

inline suite_result suite_ww_estimator() {
    experiment_config cfg;
    cfg.property = "ww";
    cfg.tester = "ww-estimate";
    cfg.epsilon = rational(1, 20);
    cfg.planted_distance = rational(3, 20);
    cfg.n = 10000;
    cfg.trials = 1000;
    cfg.master_seed = 10000;

    auto prop = make_property(cfg.property, cfg.n);
    bit_reader rng(randomness_spec::from_prng(10001));
    const input_string planted = prop->sample_far(cfg.n, rational(3, 20), rng);
    if (prop->exact_distance(planted) != rational(3, 20))
        return {"ww-estimator", false, "planting failed"};

    const auto result = run_trials_on(cfg, planted);
    const bool pass = result.stats.acceptance_rate >= 0.93 && result.stats.max_queries == 1600;
    return {"ww-estimator", pass,
            "within-eps rate " + detail::fmt(result.stats.acceptance_rate) +
                " over 1000 trials (threshold 0.93), 800 pair samples each"};
}

// --------------------------------------------------------------------------
// 11. Budget law & determinism: per-step manipulation counts stay within k*t
//     in every mode (sessions throw otherwise), and identical master seeds
//     reproduce bit-identical CSV.
// --------------------------------------------------------------------------

inline suite_result suite_budget_and_determinism() {
    std::vector<experiment_config> adversarial(3);
    adversarial[0].property = "ww";
    adversarial[0].tester = "zero-string";
    adversarial[0].mode = "online-erase";
    adversarial[0].adversary = "mirror";
    adversarial[0].budget_t = 1;
    adversarial[0].epsilon = rational(1, 10);
    adversarial[0].n = 128;

    adversarial[1].property = "lift:zero-string:r=64";
    adversarial[1].tester = "lifted:base=zero-string";
    adversarial[1].mode = "online-corrupt";
    adversarial[1].adversary = "greedy-block";
    adversarial[1].budget_t = 3;
    adversarial[1].epsilon = rational(1, 2);
    adversarial[1].n = 64 * 64;

    adversarial[2].property = "distinct-elements:tau=3";
    adversarial[2].tester = "de:tau=3";
    adversarial[2].mode = "online-erase";
    adversarial[2].adversary = "same-symbol";
    adversarial[2].budget_t = 2;
    adversarial[2].epsilon = rational(1, 2);
    adversarial[2].n = 2048;

    for (auto& cfg : adversarial) {
        cfg.instance = "member";
        cfg.trials = 300;
        cfg.master_seed = 11000;
        try {
            run_trials(cfg);  // throws std::logic_error on any budget breach
        } catch (const std::logic_error& e) {
            return {"budget-determinism", false, std::string("budget law: ") + e.what()};
        }
    }

    experiment_config cfg;
    cfg.property = "rep-code:m=50,r=20";
    cfg.instance = "far";
    cfg.tester = "rep-test";
    cfg.epsilon = rational(1, 4);
    cfg.n = 1000;
    cfg.trials = 500;
    cfg.master_seed = 11001;
    const std::string csv_a = csv_string(run_trials(cfg).records);
    const std::string csv_b = csv_string(run_trials(cfg).records);
    cfg.master_seed = 11002;
    const std::string csv_other = csv_string(run_trials(cfg).records);

    const bool pass = csv_a == csv_b && csv_a != csv_other;
    return {"budget-determinism", pass,
            pass ? "budget law enforced per step; CSV bit-identical across reruns"
                 : "CSV reruns diverged"};
}

// --------------------------------------------------------------------------

inline const std::vector<std::pair<std::string, std::function<suite_result()>>>& all_suites() {
    static const std::vector<std::pair<std::string, std::function<suite_result()>>> table{
        {"oracle-equivalence", [] { return suite_oracle_equivalence(); }},
        {"rep-completeness", [] { return suite_rep_completeness(); }},
        {"rep-soundness", [] { return suite_rep_soundness(); }},
        {"lifted-standard", [] { return suite_lifted_standard(); }},
        {"lifted-online", [] { return suite_lifted_online_corruption(); }},
        {"de-offline", [] { return suite_de_offline(); }},
        {"de-online", [] { return suite_de_online(); }},
        {"seed-cap", [] { return suite_seed_elimination_cap(); }},
        {"mirror", [] { return suite_mirror_ww(); }},
        {"ww-estimator", [] { return suite_ww_estimator(); }},
        {"budget-determinism", [] { return suite_budget_and_determinism(); }},
    };
    return table;
}

inline suite_result run_suite(const std::string& name) {
    for (const auto& [suite_name, fn] : all_suites())
        if (suite_name == name) return fn();
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace ptlab::suites
