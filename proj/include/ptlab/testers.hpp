#pragma once

#include "ptlab/bits.hpp"
#include "ptlab/errors.hpp"
#include "ptlab/oracle.hpp"
#include "ptlab/param_parse.hpp"
#include "ptlab/rational.hpp"
#include "ptlab/strings.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

namespace ptlab {

enum class verdict : std::uint8_t { accept, reject };

inline std::string to_string(verdict v) { return v == verdict::accept ? "accept" : "reject"; }

struct make_query {
    std::size_t index;
};
struct halt {
    verdict v;
};
using tester_action = std::variant<make_query, halt>;

inline bool is_query(const tester_action& a) { return std::holds_alternative<make_query>(a); }
inline std::size_t query_index(const tester_action& a) { return std::get<make_query>(a).index; }
inline bool is_halt(const tester_action& a) { return std::holds_alternative<halt>(a); }
inline verdict halt_verdict(const tester_action& a) { return std::get<halt>(a).v; }

// A single run of a tester, as a resumable state machine. reset() binds a bit
// source and computes the first action; feed() consumes the answer to the
// pending query. All randomness flows through the bound bit_reader, so a run
// is a pure function of (bit stream, answer sequence), which is what makes
// seed enumeration and deterministic replay possible.
class tester_machine {
  public:
    virtual ~tester_machine() = default;
    virtual void reset(bit_reader& bits) = 0;
    virtual const tester_action& current() const = 0;
    virtual void feed(const cell& answer) = 0;
};

struct step_result {
    tester_action action;
    std::uint64_t bits_consumed;
};

struct checked_replay_result {
    bool consistent;
    tester_action action;
};

// Immutable tester description + machine factory. next_action() is the
// replay interface: the tester's next move as a deterministic function of
// (random seed, answers so far).
class seeded_tester {
  public:
    virtual ~seeded_tester() = default;

    virtual std::string name() const = 0;
    virtual std::size_t query_budget() const = 0;
    virtual bool one_sided() const = 0;
    virtual std::unique_ptr<tester_machine> make_machine() const = 0;

    // Exact total bit consumption, when it is input-independent (power-of-two
    // sampling domains). nullopt means consumption varies by run.
    virtual std::optional<std::uint64_t> exact_bit_budget() const { return std::nullopt; }

    step_result next_action(const randomness_spec& spec, std::span<const cell> answers) const {
        auto m = make_machine();
        bit_reader bits(spec);
        return replay(*m, bits, spec, answers);
    }

    static step_result replay(tester_machine& m, bit_reader& bits, const randomness_spec& spec,
                              std::span<const cell> answers) {
        bits.reset(spec);
        m.reset(bits);
        for (const cell& a : answers) {
            if (!is_query(m.current())) throw std::logic_error("replay: more answers than queries");
            m.feed(a);
        }
        return {m.current(), bits.bits_consumed()};
    }

    // Replay that verifies the machine reproduces the observed query sequence.
    // Used by the seed-elimination adversary to prune inconsistent seeds.
    static checked_replay_result replay_checked(tester_machine& m, bit_reader& bits,
                                                const randomness_spec& spec,
                                                std::span<const std::size_t> queries,
                                                std::span<const cell> answers) {
        try {
            bits.reset(spec);
            m.reset(bits);
            for (std::size_t j = 0; j < queries.size(); ++j) {
                if (!is_query(m.current()) || query_index(m.current()) != queries[j])
                    return {false, m.current()};
                m.feed(answers[j]);
            }
            return {true, m.current()};
        } catch (const seed_exhausted_error&) {
            return {false, halt{verdict::reject}};
        }
    }
};

struct run_result {
    verdict v;
    std::size_t queries;
    std::uint64_t bits_consumed;
};

inline run_result run_tester(const seeded_tester& t, oracle_session& session,
                             const randomness_spec& spec) {
    bit_reader bits(spec);
    auto m = t.make_machine();
    m->reset(bits);
    std::size_t queries = 0;
    while (is_query(m->current())) {
        ++queries;
        if (queries > t.query_budget()) throw std::logic_error(t.name() + ": query budget exceeded");
        m->feed(session.query(query_index(m->current())));
    }
    return {halt_verdict(m->current()), queries, bits.bits_consumed()};
}

// ---------------------------------------------------------------------------
// Query-count bookkeeping for the lifted tester. q(m, eps) is the base
// tester's query function (per unamplified run); c0 is the amplification
// multiplier the construction realized; c1 = 24*c0 exactly.
// ---------------------------------------------------------------------------

struct query_function {
    std::function<std::int64_t(std::size_t, const rational&)> q;
    unsigned c0 = 1;
    rational delta{1, 100};  // lifting slack constant

    std::int64_t c1() const { return 24LL * static_cast<std::int64_t>(c0); }

    // d = ceil(log2(c1 * q(m, eps)))
    unsigned block_samples(std::size_t m, const rational& eps) const {
        const std::int64_t v = c1() * q(m, eps);
        if (v < 1) throw std::invalid_argument("query_function: nonpositive query count");
        return static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(v - 1)));
    }

    void validate(std::size_t m, const rational& eps) const {
        if (q(m, eps) < ceil_to_int(rational(1) / eps))
            throw std::invalid_argument("query_function: q(m,eps) must be >= ceil(1/eps)");
    }
};

inline query_function zero_string_query_function(unsigned c0) {
    return {[](std::size_t, const rational& eps) { return ceil_to_int(rational(2) / eps); }, c0, {1, 100}};
}

// ---------------------------------------------------------------------------
// Folklore zero-string tester: ceil(2/eps) uniform probes, reject on any 1.
// ---------------------------------------------------------------------------

class zero_string_tester final : public seeded_tester {
  public:
    zero_string_tester(std::size_t n, const rational& eps)
        : n_(n), queries_(static_cast<std::size_t>(ceil_to_int(rational(2) / eps))) {
        if (n_ == 0) throw std::invalid_argument("zero-string tester: empty input");
    }

    std::string name() const override { return "zero-string"; }
    std::size_t query_budget() const override { return queries_; }
    bool one_sided() const override { return true; }

    std::optional<std::uint64_t> exact_bit_budget() const override {
        if (!std::has_single_bit(static_cast<std::uint64_t>(n_))) return std::nullopt;
        return queries_ * static_cast<std::uint64_t>(std::bit_width(static_cast<std::uint64_t>(n_ - 1)));
    }

    std::unique_ptr<tester_machine> make_machine() const override;

  private:
    std::size_t n_;
    std::size_t queries_;
};

class zero_string_machine final : public tester_machine {
  public:
    zero_string_machine(std::size_t n, std::size_t queries) : n_(n), queries_(queries) {}

    void reset(bit_reader& bits) override {
        bits_ = &bits;
        answered_ = 0;
        advance();
    }

    const tester_action& current() const override { return cur_; }

    void feed(const cell& answer) override {
        if (!is_query(cur_)) throw std::logic_error("feed after halt");
        if (answer && *answer != 0) {
            cur_ = halt{verdict::reject};
            return;
        }
        ++answered_;
        advance();
    }

  private:
    void advance() {
        if (answered_ == queries_)
            cur_ = halt{verdict::accept};
        else
            cur_ = make_query{bits_->uniform_below(n_)};
    }

    std::size_t n_;
    std::size_t queries_;
    bit_reader* bits_ = nullptr;
    std::size_t answered_ = 0;
    tester_action cur_ = halt{verdict::accept};
};

inline std::unique_ptr<tester_machine> zero_string_tester::make_machine() const {
    return std::make_unique<zero_string_machine>(n_, queries_);
}

// ---------------------------------------------------------------------------
// RepTest: ceil(2/eps) iterations, each compares one column cell across two
// uniform blocks; rejects only on two Present, unequal answers, so erasures
// never break one-sidedness.
// ---------------------------------------------------------------------------

class rep_tester final : public seeded_tester {
  public:
    rep_tester(repetition_structure st, const rational& eps)
        : st_(st), iterations_(static_cast<std::size_t>(ceil_to_int(rational(2) / eps))) {}

    std::string name() const override { return "rep-test"; }
    std::size_t query_budget() const override { return 2 * iterations_; }
    bool one_sided() const override { return true; }
    const repetition_structure& structure() const { return st_; }
    std::size_t iterations() const { return iterations_; }

    std::unique_ptr<tester_machine> make_machine() const override;

  private:
    repetition_structure st_;
    std::size_t iterations_;
};

class rep_test_machine final : public tester_machine {
  public:
    rep_test_machine(repetition_structure st, std::size_t iterations) : st_(st), iterations_(iterations) {}

    void reset(bit_reader& bits) override {
        bits_ = &bits;
        iter_ = 0;
        begin_iteration();
    }

    const tester_action& current() const override { return cur_; }

    void feed(const cell& answer) override {
        if (!is_query(cur_)) throw std::logic_error("feed after halt");
        if (!second_pending_) {
            first_answer_ = answer;
            second_pending_ = true;
            cur_ = make_query{st_.global_index(rho2_, mu_)};
            return;
        }
        if (first_answer_ && answer && *first_answer_ != *answer) {
            cur_ = halt{verdict::reject};
            return;
        }
        ++iter_;
        begin_iteration();
    }

  private:
    void begin_iteration() {
        second_pending_ = false;
        if (iter_ == iterations_) {
            cur_ = halt{verdict::accept};
            return;
        }
        const std::size_t rho1 = bits_->uniform_below(st_.r);
        rho2_ = bits_->uniform_below(st_.r);
        mu_ = bits_->uniform_below(st_.m);
        cur_ = make_query{st_.global_index(rho1, mu_)};
    }

    repetition_structure st_;
    std::size_t iterations_;
    bit_reader* bits_ = nullptr;
    std::size_t iter_ = 0;
    std::size_t rho2_ = 0;
    std::size_t mu_ = 0;
    bool second_pending_ = false;
    cell first_answer_;
    tester_action cur_ = halt{verdict::accept};
};

inline std::unique_ptr<tester_machine> rep_tester::make_machine() const {
    return std::make_unique<rep_test_machine>(st_, iterations_);
}

// ---------------------------------------------------------------------------
// Distinct-elements tester: three independent rounds of ceil(3(tau+1)/eps)
// uniform samples; reject iff some round sees more than tau distinct Present
// symbols (the erasure mark is never counted).
// ---------------------------------------------------------------------------

class de_tester final : public seeded_tester {
  public:
    de_tester(std::size_t n, unsigned tau, const rational& eps, std::size_t rounds = 3)
        : n_(n),
          tau_(tau),
          rounds_(rounds),
          samples_per_round_(static_cast<std::size_t>(
              ceil_to_int(rational(3) * rational(static_cast<std::int64_t>(tau) + 1) / eps))) {
        if (tau == 0) throw std::invalid_argument("de tester: tau must be >= 1");
        if (rounds == 0) throw std::invalid_argument("de tester: rounds must be >= 1");
    }

    std::string name() const override { return "de:tau=" + std::to_string(tau_); }
    std::size_t query_budget() const override { return rounds_ * samples_per_round_; }
    bool one_sided() const override { return true; }
    std::size_t samples_per_round() const { return samples_per_round_; }
    std::size_t rounds() const { return rounds_; }

    std::unique_ptr<tester_machine> make_machine() const override;

  private:
    std::size_t n_;
    unsigned tau_;
    std::size_t rounds_;
    std::size_t samples_per_round_;
};

class de_test_machine final : public tester_machine {
  public:
    de_test_machine(std::size_t n, unsigned tau, std::size_t rounds, std::size_t samples_per_round)
        : n_(n), tau_(tau), rounds_(rounds), samples_(samples_per_round) {}

    void reset(bit_reader& bits) override {
        bits_ = &bits;
        round_ = 0;
        sample_ = 0;
        seen_.clear();
        advance();
    }

    const tester_action& current() const override { return cur_; }

    void feed(const cell& answer) override {
        if (!is_query(cur_)) throw std::logic_error("feed after halt");
        if (answer) {
            seen_.insert(*answer);
            if (seen_.size() > tau_) {
                cur_ = halt{verdict::reject};
                return;
            }
        }
        ++sample_;
        if (sample_ == samples_) {
            ++round_;
            sample_ = 0;
            seen_.clear();
        }
        advance();
    }

  private:
    void advance() {
        if (round_ == rounds_)
            cur_ = halt{verdict::accept};
        else
            cur_ = make_query{bits_->uniform_below(n_)};
    }

    std::size_t n_;
    unsigned tau_;
    std::size_t rounds_;
    std::size_t samples_;
    bit_reader* bits_ = nullptr;
    std::size_t round_ = 0;
    std::size_t sample_ = 0;
    std::unordered_set<symbol> seen_;
    tester_action cur_ = halt{verdict::accept};
};

inline std::unique_ptr<tester_machine> de_tester::make_machine() const {
    return std::make_unique<de_test_machine>(n_, tau_, rounds_, samples_per_round_);
}

// ---------------------------------------------------------------------------
// Standard amplification. One-sided: three independent runs, reject if any
// rejects (failure (1/3)^3 = 1/27 <= 1/12). Two-sided: majority over the
// smallest odd k with Pr[Bin(k, 1/3) >= k/2] <= 1/12, computed exactly.
// ---------------------------------------------------------------------------

inline rational two_sided_majority_failure(unsigned k) {
    // sum_{j >= ceil(k/2)} C(k,j) 2^(k-j) / 3^k, exact in 64-bit integers for
    // the k this construction reaches.
    std::int64_t numer = 0;
    std::int64_t denom = 1;
    for (unsigned i = 0; i < k; ++i) denom *= 3;
    for (unsigned j = (k + 1) / 2; j <= k; ++j) {
        std::int64_t binom = 1;
        for (unsigned i = 0; i < j; ++i) binom = binom * static_cast<std::int64_t>(k - i) / (i + 1);
        std::int64_t pow2 = 1;
        for (unsigned i = 0; i < k - j; ++i) pow2 *= 2;
        numer += binom * pow2;
    }
    return {numer, denom};
}

inline unsigned two_sided_majority_runs(const rational& target = {1, 12}) {
    for (unsigned k = 1; k <= 33; k += 2)
        if (two_sided_majority_failure(k) <= target) return k;
    throw std::logic_error("two_sided_majority_runs: no k <= 33 reached the target");
}

class amplified_tester final : public seeded_tester {
  public:
    amplified_tester(std::shared_ptr<const seeded_tester> base, bool one_sided_base)
        : base_(std::move(base)), one_sided_(one_sided_base) {
        runs_ = one_sided_ ? 3 : two_sided_majority_runs();
        failure_bound_ = one_sided_ ? rational{1, 27} : two_sided_majority_failure(runs_);
        if (failure_bound_ > rational{1, 12})
            throw std::logic_error("amplified_tester: failure bound above 1/12");
    }

    std::string name() const override { return "amplified:" + base_->name(); }
    std::size_t query_budget() const override { return runs_ * base_->query_budget(); }
    bool one_sided() const override { return one_sided_; }
    unsigned runs() const { return runs_; }
    rational failure_bound() const { return failure_bound_; }
    const seeded_tester& base() const { return *base_; }

    std::optional<std::uint64_t> exact_bit_budget() const override {
        // Early halts make consumption run-dependent in general.
        return std::nullopt;
    }

    std::unique_ptr<tester_machine> make_machine() const override;

  private:
    std::shared_ptr<const seeded_tester> base_;
    bool one_sided_;
    unsigned runs_;
    rational failure_bound_;
};

class amplified_machine final : public tester_machine {
  public:
    amplified_machine(std::unique_ptr<tester_machine> base, unsigned runs, bool one_sided)
        : base_(std::move(base)), runs_(runs), one_sided_(one_sided) {}

    void reset(bit_reader& bits) override {
        bits_ = &bits;
        accepts_ = rejects_ = 0;
        base_->reset(bits);
        sync();
    }

    const tester_action& current() const override { return cur_; }

    void feed(const cell& answer) override {
        if (!is_query(cur_)) throw std::logic_error("feed after halt");
        base_->feed(answer);
        sync();
    }

  private:
    void sync() {
        for (;;) {
            const tester_action& a = base_->current();
            if (is_query(a)) {
                cur_ = a;
                return;
            }
            if (halt_verdict(a) == verdict::accept)
                ++accepts_;
            else
                ++rejects_;
            if (one_sided_) {
                if (rejects_ > 0) {
                    cur_ = halt{verdict::reject};
                    return;
                }
            } else {
                if (2 * accepts_ > runs_) {
                    cur_ = halt{verdict::accept};
                    return;
                }
                if (2 * rejects_ > runs_) {
                    cur_ = halt{verdict::reject};
                    return;
                }
            }
            if (accepts_ + rejects_ == runs_) {
                cur_ = halt{accepts_ > rejects_ ? verdict::accept : verdict::reject};
                return;
            }
            base_->reset(*bits_);  // next independent run continues the stream
        }
    }

    std::unique_ptr<tester_machine> base_;
    unsigned runs_;
    bool one_sided_;
    bit_reader* bits_ = nullptr;
    unsigned accepts_ = 0;
    unsigned rejects_ = 0;
    tester_action cur_ = halt{verdict::accept};
};

inline std::unique_ptr<tester_machine> amplified_tester::make_machine() const {
    return std::make_unique<amplified_machine>(base_->make_machine(), runs_, one_sided_);
}

inline std::shared_ptr<amplified_tester> amplify(std::shared_ptr<const seeded_tester> base) {
    const bool one_sided = base->one_sided();
    return std::make_shared<amplified_tester>(std::move(base), one_sided);
}

// ---------------------------------------------------------------------------
// The lifted tester T' for P^r. Phase 1 runs RepTest with eps/2. Phase 2
// simulates the (amplified) base tester: each base query mu is answered by
// sampling d = ceil(log2(c1 * q(m, eps/2))) uniform blocks, rejecting on any
// two unequal Present answers, else forwarding the first sample. An erased
// first sample is forwarded as symbol 0, a path only reachable outside the
// corruption model this tester targets.
// ---------------------------------------------------------------------------

class lifted_tester final : public seeded_tester {
  public:
    lifted_tester(std::shared_ptr<const seeded_tester> amplified_base, query_function qf,
                  repetition_structure st, const rational& eps)
        : base_(std::move(amplified_base)),
          qf_(std::move(qf)),
          st_(st),
          eps_(eps),
          rep_phase_(st, eps / 2) {
        if (!dynamic_cast<const amplified_tester*>(base_.get()))
            throw std::invalid_argument("lifted_tester: base must come from amplify()");
        qf_.validate(st_.m, eps_ / 2);
        d_ = qf_.block_samples(st_.m, eps_ / 2);
    }

    std::string name() const override { return "lifted:" + base_->name(); }
    std::size_t query_budget() const override {
        return rep_phase_.query_budget() + base_->query_budget() * d_;
    }
    bool one_sided() const override { return base_->one_sided(); }
    unsigned block_samples() const { return d_; }
    const repetition_structure& structure() const { return st_; }

    std::unique_ptr<tester_machine> make_machine() const override;

  private:
    friend class lifted_machine;
    std::shared_ptr<const seeded_tester> base_;
    query_function qf_;
    repetition_structure st_;
    rational eps_;
    rep_tester rep_phase_;
    unsigned d_ = 0;
};

class lifted_machine final : public tester_machine {
  public:
    lifted_machine(const lifted_tester& owner)
        : st_(owner.st_),
          d_(owner.d_),
          rep_m_(owner.rep_phase_.make_machine()),
          base_m_(owner.base_->make_machine()) {}

    void reset(bit_reader& bits) override {
        bits_ = &bits;
        phase_ = phase::rep;
        rep_m_->reset(bits);
        sync_from_rep();
    }

    const tester_action& current() const override { return cur_; }

    void feed(const cell& answer) override {
        if (!is_query(cur_)) throw std::logic_error("feed after halt");
        switch (phase_) {
            case phase::rep:
                rep_m_->feed(answer);
                sync_from_rep();
                return;
            case phase::blocks:
                consume_block_answer(answer);
                return;
            case phase::done:
                throw std::logic_error("feed after halt");
        }
    }

  private:
    enum class phase : std::uint8_t { rep, blocks, done };

    void sync_from_rep() {
        const tester_action& a = rep_m_->current();
        if (is_query(a)) {
            cur_ = a;
            return;
        }
        if (halt_verdict(a) == verdict::reject) {
            cur_ = halt{verdict::reject};
            phase_ = phase::done;
            return;
        }
        phase_ = phase::blocks;
        base_m_->reset(*bits_);
        advance_base();
    }

    void advance_base() {
        const tester_action& a = base_m_->current();
        if (is_halt(a)) {
            cur_ = a;
            phase_ = phase::done;
            return;
        }
        base_mu_ = query_index(a);
        if (base_mu_ >= st_.m) throw std::logic_error("lifted: base queried outside its block");
        blocks_.clear();
        for (unsigned j = 0; j < d_; ++j) blocks_.push_back(bits_->uniform_below(st_.r));
        block_cursor_ = 0;
        have_present_ = false;
        cur_ = make_query{st_.global_index(blocks_[0], base_mu_)};
    }

    void consume_block_answer(const cell& answer) {
        if (block_cursor_ == 0) first_block_answer_ = answer;
        if (answer) {
            if (have_present_ && *answer != present_value_) {
                cur_ = halt{verdict::reject};
                phase_ = phase::done;
                return;
            }
            have_present_ = true;
            present_value_ = *answer;
        }
        ++block_cursor_;
        if (block_cursor_ < d_) {
            cur_ = make_query{st_.global_index(blocks_[block_cursor_], base_mu_)};
            return;
        }
        base_m_->feed(cell(first_block_answer_ ? *first_block_answer_ : symbol{0}));
        advance_base();
    }

    repetition_structure st_;
    unsigned d_;
    std::unique_ptr<tester_machine> rep_m_;
    std::unique_ptr<tester_machine> base_m_;
    bit_reader* bits_ = nullptr;
    phase phase_ = phase::rep;
    std::size_t base_mu_ = 0;
    std::vector<std::size_t> blocks_;
    std::size_t block_cursor_ = 0;
    bool have_present_ = false;
    symbol present_value_ = 0;
    cell first_block_answer_;
    tester_action cur_ = halt{verdict::accept};
};

inline std::unique_ptr<tester_machine> lifted_tester::make_machine() const {
    return std::make_unique<lifted_machine>(*this);
}

// ---------------------------------------------------------------------------
// {ww} distance estimator: ceil(2/eps^2) uniform pair probes, estimate =
// (mismatched fraction)/2, within eps of the true distance with probability
// >= 1 - 2exp(-4) by Hoeffding. The mirror adversary defeats it, so online
// sessions are rejected.
// ---------------------------------------------------------------------------

struct estimate_result {
    rational estimate;
    std::size_t queries;
    std::size_t pairs;
    std::uint64_t bits_consumed;
};

inline estimate_result ww_distance_estimate(oracle_session& session, const rational& eps,
                                            const randomness_spec& spec) {
    if (session.mode() == oracle_mode::online_erase || session.mode() == oracle_mode::online_corrupt)
        throw std::invalid_argument("ww_distance_estimate: online sessions are not supported");
    if (session.n() % 2 != 0) throw std::invalid_argument("ww_distance_estimate: input length must be even");
    const std::size_t k = session.n() / 2;
    const auto pairs = static_cast<std::size_t>(ceil_to_int(rational(2) / (eps * eps)));
    bit_reader bits(spec);
    std::int64_t mismatched = 0;
    for (std::size_t i = 0; i < pairs; ++i) {
        const std::size_t p = bits.uniform_below(k);
        const cell a = session.query(p);
        const cell b = session.query(k + p);
        if (a && b && *a != *b) ++mismatched;
    }
    return {rational{mismatched, 2 * static_cast<std::int64_t>(pairs)}, 2 * pairs, pairs,
            bits.bits_consumed()};
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

struct tester_context {
    std::size_t n = 0;
    rational eps;
    std::optional<repetition_structure> rep;
    std::optional<unsigned> tau;
};

inline std::shared_ptr<seeded_tester> make_tester(const std::string& spec, const tester_context& ctx) {
    const auto tokens = detail::split(spec, ':');
    if (tokens.empty() || tokens[0].empty()) throw std::invalid_argument("empty tester spec");
    const std::string& kind = tokens[0];
    if (kind == "zero-string") return std::make_shared<zero_string_tester>(ctx.n, ctx.eps);
    if (kind == "rep-test") {
        if (!ctx.rep) throw std::invalid_argument("rep-test needs a repetition structure");
        return std::make_shared<rep_tester>(*ctx.rep, ctx.eps);
    }
    if (kind == "de") {
        const auto pm = detail::param_map::parse(tokens, 1);
        const auto tau_param = pm.get_uint("tau");
        const unsigned tau = tau_param ? static_cast<unsigned>(*tau_param)
                                       : (ctx.tau ? *ctx.tau : throw std::invalid_argument("de: missing tau"));
        return std::make_shared<de_tester>(ctx.n, tau, ctx.eps);
    }
    if (kind == "lifted") {
        if (!ctx.rep) throw std::invalid_argument("lifted tester needs a repetition structure");
        const auto pm = detail::param_map::parse(tokens, 1);
        const auto it = pm.kv.find("base");
        if (it == pm.kv.end() || it->second != "zero-string")
            throw std::invalid_argument("lifted: only base=zero-string is registered");
        auto base = std::make_shared<zero_string_tester>(ctx.rep->m, ctx.eps / 2);
        auto amplified = amplify(base);
        return std::make_shared<lifted_tester>(amplified, zero_string_query_function(amplified->runs()),
                                               *ctx.rep, ctx.eps);
    }
    if (kind == "ww-estimate")
        throw std::invalid_argument("ww-estimate is an estimator; run it via the harness");
    throw std::invalid_argument("unknown tester '" + kind + "'");
}

inline std::vector<std::string> tester_names() {
    return {"zero-string", "rep-test", "de:tau=T", "lifted:base=zero-string", "ww-estimate"};
}

}  // namespace ptlab
