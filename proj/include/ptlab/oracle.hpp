#pragma once

#include "ptlab/bits.hpp"
#include "ptlab/strings.hpp"

#include <algorithm>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ptlab {

enum class oracle_mode : std::uint8_t { standard, offline_erased, online_erase, online_corrupt };

inline std::string to_string(oracle_mode m) {
    switch (m) {
        case oracle_mode::standard: return "standard";
        case oracle_mode::offline_erased: return "offline-erased";
        case oracle_mode::online_erase: return "online-erase";
        case oracle_mode::online_corrupt: return "online-corrupt";
    }
    return "?";
}

inline oracle_mode parse_oracle_mode(const std::string& s) {
    if (s == "standard") return oracle_mode::standard;
    if (s == "offline-erased") return oracle_mode::offline_erased;
    if (s == "online-erase") return oracle_mode::online_erase;
    if (s == "online-corrupt") return oracle_mode::online_corrupt;
    throw std::invalid_argument("unknown oracle mode '" + s + "'");
}

// One view rewrite: erase (value = nullopt) or corrupt (value = symbol).
struct manipulation {
    std::size_t index;
    cell value;
};

struct transcript_entry {
    std::size_t index;
    cell answer;
    std::vector<manipulation> manipulations;  // applied after this answer
};

class oracle_session;

// An online adversary strategy. Called once after every answered query; may
// rewrite at most `budget` view cells. Strategies see the whole session
// (input, transcript, current view) but never future coin tosses.
class adversary {
  public:
    virtual ~adversary() = default;
    virtual std::string name() const = 0;
    virtual void session_started(const oracle_session&) {}
    virtual std::vector<manipulation> step(const oracle_session&) = 0;
};

// The query-answer state machine shared by all access models. Answers are
// taken from the current view *before* the adversary's step for this round,
// so the first query is always answered from the pristine input in the
// online modes. The view is the pristine string plus a sparse overlay of
// manipulated cells.
class oracle_session {
  public:
    // Sessions view the input; the caller keeps it alive for the whole run.
    oracle_session(input_string&& x, oracle_mode mode, unsigned budget, adversary* adv) = delete;
    oracle_session(const input_string& x, oracle_mode mode, unsigned budget, adversary* adv)
        : pristine_(&x), mode_(mode), budget_(budget), adversary_(adv) {
        switch (mode_) {
            case oracle_mode::standard:
                if (budget_ != 0) throw std::invalid_argument("standard mode has no manipulation budget");
                break;
            case oracle_mode::offline_erased:
                throw std::invalid_argument("use offline_erased() to build offline sessions");
            case oracle_mode::online_erase:
            case oracle_mode::online_corrupt:
                break;
        }
        if (adversary_) adversary_->session_started(*this);
    }

    // Offline model: the adversary acts once, in advance; the view is static.
    static oracle_session offline_erased(input_string&& x, const std::vector<std::size_t>& erased,
                                         const rational& alpha) = delete;
    static oracle_session offline_erased(const input_string& x, const std::vector<std::size_t>& erased,
                                         const rational& alpha) {
        if (rational(static_cast<std::int64_t>(erased.size()), static_cast<std::int64_t>(x.size())) > alpha)
            throw std::invalid_argument("offline_erased: more than an alpha fraction of erasures");
        oracle_session s(x);
        for (std::size_t i : erased) {
            if (i >= x.size()) throw std::invalid_argument("offline_erased: index out of range");
            s.overlay_[i] = erased_cell;
        }
        return s;
    }

    cell query(std::size_t i) {
        if (i >= pristine_->size()) throw std::invalid_argument("query: index out of range");
        const cell answer = view_at(i);
        transcript_.push_back({i, answer, {}});
        if (answer) {
            if (*answer != (*pristine_)[i]) ++corrupted_answers_;
        } else {
            ++erased_answers_;
        }
        if (adversary_ && budget_ > 0) apply_adversary_step();
        return answer;
    }

    cell view_at(std::size_t i) const {
        const auto it = overlay_.find(i);
        if (it != overlay_.end()) return it->second;
        return (*pristine_)[i];
    }

    std::size_t n() const { return pristine_->size(); }
    std::uint32_t sigma() const { return pristine_->sigma(); }
    oracle_mode mode() const { return mode_; }
    unsigned budget() const { return budget_; }
    const input_string& pristine() const { return *pristine_; }
    const std::vector<transcript_entry>& transcript() const { return transcript_; }
    std::size_t answered() const { return transcript_.size(); }
    std::size_t erased_answers() const { return erased_answers_; }
    std::size_t corrupted_answers() const { return corrupted_answers_; }
    std::size_t manipulation_applications() const { return manipulation_applications_; }
    std::size_t manipulated_cells() const { return overlay_.size(); }

    // Budget law: after k answered queries the adversary has applied at most
    // k*t manipulations (and so at most k*t cells differ from pristine).
    bool budget_law_holds() const {
        return manipulation_applications_ <= answered() * static_cast<std::size_t>(budget_);
    }

  private:
    explicit oracle_session(const input_string& x)
        : pristine_(&x), mode_(oracle_mode::offline_erased), budget_(0), adversary_(nullptr) {}

    void apply_adversary_step() {
        std::vector<manipulation> manips = adversary_->step(*this);
        if (manips.size() > budget_)
            throw std::logic_error("adversary exceeded its per-query manipulation budget");
        for (const manipulation& m : manips) {
            if (m.index >= pristine_->size()) throw std::logic_error("adversary manipulation out of range");
            if (mode_ == oracle_mode::online_erase && m.value)
                throw std::logic_error("erase-mode adversary tried to write a symbol");
            if (mode_ == oracle_mode::online_corrupt &&
                (!m.value || *m.value >= pristine_->sigma()))
                throw std::logic_error("corrupt-mode adversary must write a valid symbol");
            overlay_[m.index] = m.value;
            ++manipulation_applications_;
        }
        transcript_.back().manipulations = std::move(manips);
        if (!budget_law_holds()) throw std::logic_error("budget law violated");
    }

    const input_string* pristine_;
    oracle_mode mode_;
    unsigned budget_;
    adversary* adversary_;
    std::unordered_map<std::size_t, cell> overlay_;
    std::vector<transcript_entry> transcript_;
    std::size_t erased_answers_ = 0;
    std::size_t corrupted_answers_ = 0;
    std::size_t manipulation_applications_ = 0;
};

// The offline adversary acts once, in advance: the erased view never changes
// during a run.
inline erased_string make_offline_erased(const input_string& x,
                                         const std::vector<std::size_t>& erased,
                                         const rational& alpha) {
    if (rational(static_cast<std::int64_t>(erased.size()), static_cast<std::int64_t>(x.size())) > alpha)
        throw std::invalid_argument("make_offline_erased: more than an alpha fraction of erasures");
    erased_string out{x.sigma(), std::vector<cell>(x.cells().begin(), x.cells().end()),
                      rational(static_cast<std::int64_t>(erased.size()),
                               static_cast<std::int64_t>(x.size()))};
    for (std::size_t i : erased) {
        if (i >= x.size()) throw std::invalid_argument("make_offline_erased: index out of range");
        out.cells[i] = erased_cell;
    }
    return out;
}

// Builds the erased index set for the offline model by wiping the rarest
// symbols first (ties toward the smaller symbol, positions in index order).
inline std::vector<std::size_t> rarest_symbol_indices(const input_string& x, const rational& alpha) {
    const auto limit = static_cast<std::size_t>(
        floor_to_int(alpha * rational(static_cast<std::int64_t>(x.size()))));
    std::unordered_map<symbol, std::size_t> counts;
    for (symbol s : x.cells()) ++counts[s];
    std::vector<std::pair<std::size_t, symbol>> order;
    order.reserve(counts.size());
    for (const auto& [sym, count] : counts) order.emplace_back(count, sym);
    std::sort(order.begin(), order.end());
    std::vector<std::size_t> erased;
    erased.reserve(limit);
    for (const auto& [count, sym] : order) {
        if (erased.size() >= limit) break;
        for (std::size_t i = 0; i < x.size() && erased.size() < limit; ++i)
            if (x[i] == sym) erased.push_back(i);
    }
    return erased;
}

inline std::vector<std::size_t> uniform_erased_indices(const input_string& x, const rational& alpha,
                                                       bit_reader& rng) {
    const auto limit = static_cast<std::size_t>(
        floor_to_int(alpha * rational(static_cast<std::int64_t>(x.size()))));
    std::vector<std::size_t> idx(x.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < limit; ++i)
        std::swap(idx[i], idx[i + rng.uniform_below(idx.size() - i)]);
    idx.resize(limit);
    return idx;
}

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

class null_adversary final : public adversary {
  public:
    std::string name() const override { return "null"; }
    std::vector<manipulation> step(const oracle_session&) override { return {}; }
};

// For {ww}: after each answer at p, erase the pair partner (p+k or p-k).
// No-op when the partner is already erased.
class mirror_adversary final : public adversary {
  public:
    std::string name() const override { return "mirror"; }

    void session_started(const oracle_session& s) override {
        if (s.n() % 2 != 0) throw std::invalid_argument("mirror adversary needs an even-length input");
        if (s.mode() != oracle_mode::online_erase)
            throw std::invalid_argument("mirror adversary runs in online-erase mode");
    }

    std::vector<manipulation> step(const oracle_session& s) override {
        const std::size_t k = s.n() / 2;
        const std::size_t p = s.transcript().back().index;
        const std::size_t partner = p < k ? p + k : p - k;
        if (!s.view_at(partner)) return {};
        return {{partner, erased_cell}};
    }
};

// Stress adversary for the lifted tester: corrupt up to t cells at the
// just-answered offset, in uniformly chosen other blocks, writing a symbol
// different from the answered value.
class greedy_block_corruptor final : public adversary {
  public:
    greedy_block_corruptor(repetition_structure st, std::uint64_t seed)
        : st_(st), rng_(randomness_spec::from_prng(seed)) {}

    std::string name() const override { return "greedy-block"; }

    void session_started(const oracle_session& s) override {
        if (s.mode() != oracle_mode::online_corrupt)
            throw std::invalid_argument("greedy-block adversary runs in online-corrupt mode");
        if (s.n() != st_.n()) throw std::invalid_argument("greedy-block: repetition structure mismatch");
    }

    std::vector<manipulation> step(const oracle_session& s) override {
        if (s.sigma() < 2 || s.budget() == 0) return {};
        const transcript_entry& last = s.transcript().back();
        if (!last.answer) return {};
        const auto [rho, mu] = st_.block_offset(last.index);
        const std::size_t how_many = std::min<std::size_t>(s.budget(), st_.r - 1);
        std::vector<manipulation> out;
        out.reserve(how_many);
        std::vector<std::size_t> chosen;
        while (chosen.size() < how_many) {
            const std::size_t other = rng_.uniform_below(st_.r);
            if (other == rho || std::find(chosen.begin(), chosen.end(), other) != chosen.end()) continue;
            chosen.push_back(other);
            const symbol wrong = static_cast<symbol>((*last.answer + 1) % s.sigma());
            out.push_back({st_.global_index(other, mu), cell(wrong)});
        }
        return out;
    }

  private:
    repetition_structure st_;
    bit_reader rng_;
};

// Pristine-input occurrence lists, shareable across the trials of one
// experiment so the per-trial setup stays O(1).
struct symbol_occurrences {
    std::unordered_map<symbol, std::vector<std::size_t>> by_symbol;

    static std::shared_ptr<const symbol_occurrences> build(const input_string& x) {
        auto table = std::make_shared<symbol_occurrences>();
        for (std::size_t i = 0; i < x.size(); ++i) table->by_symbol[x[i]].push_back(i);
        return table;
    }
};

// After each answer, erase up to t other occurrences of the answered
// symbol (by pristine value), walking that symbol's occurrence list.
class same_symbol_eraser final : public adversary {
  public:
    same_symbol_eraser() = default;
    explicit same_symbol_eraser(std::shared_ptr<const symbol_occurrences> table)
        : occurrences_(std::move(table)) {}

    std::string name() const override { return "same-symbol"; }

    void session_started(const oracle_session& s) override {
        if (s.mode() != oracle_mode::online_erase)
            throw std::invalid_argument("same-symbol adversary runs in online-erase mode");
        if (!occurrences_) occurrences_ = symbol_occurrences::build(s.pristine());
        cursors_.clear();
    }

    std::vector<manipulation> step(const oracle_session& s) override {
        const transcript_entry& last = s.transcript().back();
        const symbol v = s.pristine()[last.index];
        const auto occ_it = occurrences_->by_symbol.find(v);
        if (occ_it == occurrences_->by_symbol.end()) return {};
        const std::vector<std::size_t>& occ = occ_it->second;
        std::size_t& cursor = cursors_[v];
        std::vector<manipulation> out;
        std::size_t scanned = 0;
        while (out.size() < s.budget() && scanned < occ.size()) {
            const std::size_t candidate = occ[cursor];
            cursor = (cursor + 1) % occ.size();
            ++scanned;
            if (candidate == last.index || !s.view_at(candidate)) continue;
            out.push_back({candidate, erased_cell});
        }
        return out;
    }

  private:
    std::shared_ptr<const symbol_occurrences> occurrences_;
    std::unordered_map<symbol, std::size_t> cursors_;
};

inline std::vector<std::string> adversary_names() {
    return {"null", "mirror", "greedy-block", "same-symbol", "seed-elim"};
}

}  // namespace ptlab
