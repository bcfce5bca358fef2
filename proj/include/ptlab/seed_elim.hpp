#pragma once

#include "ptlab/errors.hpp"
#include "ptlab/oracle.hpp"
#include "ptlab/testers.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

namespace ptlab {

// Seeds still consistent with the query transcript. Non-increasing over a
// run; the true seed of the tester under attack is always a member.
struct seed_set {
    unsigned rbits = 0;
    std::vector<std::uint32_t> seeds;
};

// The random-seed-elimination adversary: after each answer it (1) prunes the
// seed set to seeds that would have produced the observed query sequence,
// then (2) simulates the tester's next query under every surviving seed and
// erases the t indices with the highest predicted multiplicity (ties toward
// the lower index). Once a single seed remains, every predicted query is
// erased, so each non-erased query shrinks the set by a factor t+1 and the
// tester gets at most rbits/log2(t+1) of them.
class seed_elimination_adversary final : public adversary {
  public:
    // 2^24 tester replays per step is the desk-scale ceiling.
    static constexpr unsigned max_rbits = 24;

    seed_elimination_adversary(const seeded_tester& tester, unsigned rbits,
                               std::optional<std::uint32_t> instrumented_true_seed = std::nullopt)
        : tester_(&tester),
          rbits_(rbits),
          true_seed_(instrumented_true_seed),
          scratch_machine_(tester.make_machine()) {
        if (rbits_ > max_rbits)
            throw capability_error("seed-elim: seed spaces beyond " + std::to_string(max_rbits) +
                                   " bits cannot be enumerated");
        set_.rbits = rbits_;
        set_.seeds.resize(std::size_t{1} << rbits_);
        std::iota(set_.seeds.begin(), set_.seeds.end(), 0u);
    }

    std::string name() const override { return "seed-elim"; }

    void session_started(const oracle_session& s) override {
        if (s.mode() != oracle_mode::online_erase)
            throw std::invalid_argument("seed-elim adversary runs in online-erase mode");
        queries_.clear();
        answers_.clear();
        set_.seeds.resize(std::size_t{1} << rbits_);
        std::iota(set_.seeds.begin(), set_.seeds.end(), 0u);
    }

    std::vector<manipulation> step(const oracle_session& s) override {
        queries_.push_back(s.transcript().back().index);
        answers_.push_back(s.transcript().back().answer);

        histogram_.clear();
        survivors_.clear();
        for (const std::uint32_t seed : set_.seeds) {
            const auto res = seeded_tester::replay_checked(
                *scratch_machine_, scratch_bits_, randomness_spec::from_window(seed, rbits_), queries_,
                answers_);
            if (!res.consistent) continue;
            survivors_.push_back(seed);
            if (is_query(res.action)) ++histogram_[query_index(res.action)];
        }
        set_.seeds.swap(survivors_);
        if (true_seed_ &&
            std::find(set_.seeds.begin(), set_.seeds.end(), *true_seed_) == set_.seeds.end())
            throw std::logic_error("seed-elim: the true seed was pruned");

        std::vector<std::pair<std::size_t, std::size_t>> ranked;  // (index, multiplicity)
        ranked.reserve(histogram_.size());
        for (const auto& [idx, count] : histogram_) ranked.emplace_back(idx, count);
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        std::vector<manipulation> out;
        for (std::size_t i = 0; i < ranked.size() && out.size() < s.budget(); ++i)
            out.push_back({ranked[i].first, erased_cell});
        return out;
    }

    const seed_set& seeds() const { return set_; }

  private:
    const seeded_tester* tester_;
    unsigned rbits_;
    std::optional<std::uint32_t> true_seed_;
    std::unique_ptr<tester_machine> scratch_machine_;
    bit_reader scratch_bits_;
    seed_set set_;
    std::vector<std::size_t> queries_;
    std::vector<cell> answers_;
    std::unordered_map<std::size_t, std::size_t> histogram_;
    std::vector<std::uint32_t> survivors_;
};

// Largest k with (t+1)^k <= 2^rbits. The first query is always answered
// truthfully, so the cap never drops below one.
inline std::size_t seed_cap_bound(unsigned rbits, unsigned t) {
    if (t == 0) throw std::invalid_argument("seed_cap_bound: t must be >= 1");
    std::size_t k = 0;
    unsigned __int128 power = 1;
    const unsigned __int128 limit = static_cast<unsigned __int128>(1) << rbits;
    while (power * (t + 1) <= limit) {
        power *= t + 1;
        ++k;
    }
    return std::max<std::size_t>(k, 1);
}

struct simulation_result {
    verdict v;
    std::size_t non_erased_queries;
    std::size_t total_queries;
    std::uint64_t bits_consumed;
    std::size_t surviving_seeds;
};

// T*: draw a seed, run the tester against the (locally simulated)
// seed-elimination adversary; erased rounds are answered with the erasure
// mark without touching x, so the count of non-erased answers is exactly the
// standard-model query count of the simulation.
inline simulation_result standard_model_simulation(const seeded_tester& tester, unsigned rbits,
                                                   const input_string& x, unsigned t,
                                                   std::uint32_t true_seed) {
    if (t == 0) throw std::invalid_argument("standard_model_simulation: t must be >= 1");
    seed_elimination_adversary adv(tester, rbits, true_seed);
    oracle_session session(x, oracle_mode::online_erase, t, &adv);
    const run_result res = run_tester(tester, session, randomness_spec::from_window(true_seed, rbits));
    return {res.v, session.answered() - session.erased_answers(), res.queries, res.bits_consumed,
            adv.seeds().seeds.size()};
}

struct seed_cap_report {
    unsigned rbits = 0;
    unsigned t = 0;
    std::size_t trials = 0;
    std::size_t cap = 0;
    std::size_t max_non_erased = 0;
    bool within_cap = false;
    bool true_seed_always_kept = false;
};

inline seed_cap_report verify_seed_cap(const seeded_tester& tester, unsigned rbits, unsigned t,
                                       std::size_t trials, const input_string& x,
                                       std::uint64_t master_seed) {
    seed_cap_report report;
    report.rbits = rbits;
    report.t = t;
    report.trials = trials;
    report.cap = seed_cap_bound(rbits, t);
    const std::uint32_t mask =
        rbits == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << rbits) - 1);
    for (std::size_t i = 0; i < trials; ++i) {
        const auto seed = static_cast<std::uint32_t>(derive_trial_seed(master_seed, i)) & mask;
        const simulation_result res = standard_model_simulation(tester, rbits, x, t, seed);
        report.max_non_erased = std::max(report.max_non_erased, res.non_erased_queries);
    }
    // standard_model_simulation throws if the true seed is ever pruned.
    report.true_seed_always_kept = true;
    report.within_cap = report.max_non_erased <= report.cap;
    return report;
}

}  // namespace ptlab
