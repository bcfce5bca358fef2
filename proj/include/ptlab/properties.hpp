#pragma once

#include "ptlab/bits.hpp"
#include "ptlab/errors.hpp"
#include "ptlab/param_parse.hpp"
#include "ptlab/strings.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ptlab {

// A property bundles membership, an exact distance oracle, and generators of
// members and certified far instances. Generators take an explicit bit_reader
// so concurrent trials can use independent streams; descriptors themselves
// are immutable after construction.
class property {
  public:
    virtual ~property() = default;

    virtual std::string name() const = 0;
    virtual std::uint32_t default_sigma(std::size_t n) const = 0;
    virtual bool contains(const input_string& x) const = 0;
    virtual rational exact_distance(const input_string& x) const = 0;
    virtual input_string sample_member(std::size_t n, bit_reader& rng) const = 0;

    // Enumerates every member of length n, up to `cap` candidates considered.
    // Returns false when enumeration is infeasible within the cap.
    virtual bool for_each_member(std::size_t n, std::uint64_t cap,
                                 const std::function<void(const input_string&)>& fn) const {
        const std::uint32_t sigma = default_sigma(n);
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (total > cap / sigma + 1) return false;
            total *= sigma;
        }
        if (total > cap) return false;
        std::vector<symbol> cells(n, 0);
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            for (std::size_t i = 0; i < n; ++i) {
                cells[i] = static_cast<symbol>(c % sigma);
                c /= sigma;
            }
            input_string candidate(sigma, cells);
            if (contains(candidate)) fn(candidate);
        }
        return true;
    }

    // Certified far-instance sampling: every returned instance has
    // exact_distance >= eps, checked against the exact oracle before use.
    input_string sample_far(std::size_t n, const rational& eps, bit_reader& rng,
                            unsigned max_attempts = 16) const {
        if (eps <= rational(0) || eps >= rational(1))
            throw std::invalid_argument("sample_far: eps must lie in (0,1)");
        for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
            input_string z = generate_far(n, eps, rng);
            if (exact_distance(z) >= eps) return z;
        }
        throw generation_error(name() + ": could not certify a " + ptlab::to_string(eps) +
                               "-far instance of length " + std::to_string(n));
    }

    // Geometry hooks used by testers that need them.
    virtual std::optional<repetition_structure> repetition() const { return std::nullopt; }
    virtual std::optional<unsigned> tau() const { return std::nullopt; }

  protected:
    virtual input_string generate_far(std::size_t n, const rational& eps, bit_reader& rng) const = 0;
};

namespace detail {

inline std::vector<std::size_t> sample_distinct_indices(std::size_t n, std::size_t k, bit_reader& rng) {
    if (k > n) throw std::invalid_argument("sample_distinct_indices: k > n");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i)
        std::swap(idx[i], idx[i + rng.uniform_below(n - i)]);
    idx.resize(k);
    return idx;
}

inline void shuffle(std::vector<symbol>& v, bit_reader& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.uniform_below(i)]);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The zero string: the single member 0^n over {0,1}.
// ---------------------------------------------------------------------------

class zero_string_property final : public property {
  public:
    std::string name() const override { return "zero-string"; }
    std::uint32_t default_sigma(std::size_t) const override { return 2; }

    bool contains(const input_string& x) const override {
        for (symbol s : x.cells())
            if (s != 0) return false;
        return true;
    }

    rational exact_distance(const input_string& x) const override {
        std::int64_t ones = 0;
        for (symbol s : x.cells())
            if (s != 0) ++ones;
        return {ones, static_cast<std::int64_t>(x.size())};
    }

    input_string sample_member(std::size_t n, bit_reader&) const override {
        return {2, std::vector<symbol>(n, 0)};
    }

    bool for_each_member(std::size_t n, std::uint64_t,
                         const std::function<void(const input_string&)>& fn) const override {
        fn(input_string(2, std::vector<symbol>(n, 0)));
        return true;
    }

  protected:
    input_string generate_far(std::size_t n, const rational& eps, bit_reader& rng) const override {
        const auto flips = static_cast<std::size_t>(ceil_to_int(eps * rational(static_cast<std::int64_t>(n))));
        std::vector<symbol> cells(n, 0);
        for (std::size_t i : detail::sample_distinct_indices(n, flips, rng)) cells[i] = 1;
        return {2, std::move(cells)};
    }
};

// ---------------------------------------------------------------------------
// tau-Distinct-Elements: strings with at most tau distinct symbols.
// ---------------------------------------------------------------------------

class distinct_elements_property final : public property {
  public:
    explicit distinct_elements_property(unsigned tau, std::optional<std::uint32_t> sigma = std::nullopt)
        : tau_(tau), sigma_override_(sigma) {
        if (tau == 0) throw std::invalid_argument("distinct-elements: tau must be >= 1");
    }

    std::string name() const override { return "distinct-elements:tau=" + std::to_string(tau_); }
    std::uint32_t default_sigma(std::size_t n) const override {
        return sigma_override_ ? *sigma_override_ : static_cast<std::uint32_t>(n);
    }
    std::optional<unsigned> tau() const override { return tau_; }

    bool contains(const input_string& x) const override {
        std::unordered_set<symbol> seen;
        for (symbol s : x.cells()) {
            seen.insert(s);
            if (seen.size() > tau_) return false;
        }
        return true;
    }

    // Min changes = keep the tau most frequent symbols, rewrite the rest.
    rational exact_distance(const input_string& x) const override {
        std::unordered_map<symbol, std::int64_t> counts;
        for (symbol s : x.cells()) ++counts[s];
        if (counts.size() <= tau_) return {0, 1};
        std::vector<std::int64_t> c;
        c.reserve(counts.size());
        for (const auto& [_, k] : counts) c.push_back(k);
        std::nth_element(c.begin(), c.begin() + tau_, c.end(), std::greater<>());
        const std::int64_t kept = std::accumulate(c.begin(), c.begin() + tau_, std::int64_t{0});
        return {static_cast<std::int64_t>(x.size()) - kept, static_cast<std::int64_t>(x.size())};
    }

    input_string sample_member(std::size_t n, bit_reader& rng) const override {
        const std::uint32_t sigma = default_sigma(n);
        const std::size_t k = std::min<std::size_t>(tau_, sigma);
        const std::vector<symbol> pool = pick_distinct_symbols(k, sigma, rng);
        std::vector<symbol> cells(n);
        for (auto& c : cells) c = pool[rng.uniform_below(pool.size())];
        return {sigma, std::move(cells)};
    }

  protected:
    // Spread mass evenly over K > tau symbols so that distance = 1 - tau/K,
    // leaving nothing for an eraser to hide cheaply.
    input_string generate_far(std::size_t n, const rational& eps, bit_reader& rng) const override {
        const std::uint32_t sigma = default_sigma(n);
        std::size_t k = std::max<std::size_t>(
            tau_ + 1, static_cast<std::size_t>(ceil_to_int(rational(tau_) / (rational(1) - eps))));
        while (k <= sigma && k <= n && planned_distance(n, k) < eps) ++k;
        if (k > sigma || k > n)
            throw generation_error(name() + ": alphabet too small for an eps-far spread instance");
        const std::vector<symbol> pool = pick_distinct_symbols(k, sigma, rng);
        std::vector<symbol> cells;
        cells.reserve(n);
        for (std::size_t i = 0; i < n; ++i) cells.push_back(pool[i % k]);
        detail::shuffle(cells, rng);
        return {sigma, std::move(cells)};
    }

  private:
    rational planned_distance(std::size_t n, std::size_t k) const {
        const std::int64_t base = static_cast<std::int64_t>(n / k);
        const std::int64_t rem = static_cast<std::int64_t>(n % k);
        const std::int64_t big = std::min<std::int64_t>(rem, tau_);
        const std::int64_t kept = big * (base + 1) + (static_cast<std::int64_t>(tau_) - big) * base;
        return {static_cast<std::int64_t>(n) - kept, static_cast<std::int64_t>(n)};
    }

    static std::vector<symbol> pick_distinct_symbols(std::size_t k, std::uint32_t sigma, bit_reader& rng) {
        std::unordered_set<symbol> chosen;
        std::vector<symbol> pool;
        while (pool.size() < k) {
            const auto s = static_cast<symbol>(rng.uniform_below(sigma));
            if (chosen.insert(s).second) pool.push_back(s);
        }
        return pool;
    }

    unsigned tau_;
    std::optional<std::uint32_t> sigma_override_;
};

// ---------------------------------------------------------------------------
// {ww}: even-length binary strings whose halves coincide.
// ---------------------------------------------------------------------------

class ww_property final : public property {
  public:
    std::string name() const override { return "ww"; }
    std::uint32_t default_sigma(std::size_t) const override { return 2; }

    static std::size_t half_length(const input_string& x) {
        if (x.size() % 2 != 0) throw std::invalid_argument("ww: string length must be even");
        return x.size() / 2;
    }

    bool contains(const input_string& x) const override {
        const std::size_t k = half_length(x);
        for (std::size_t p = 0; p < k; ++p)
            if (x[p] != x[k + p]) return false;
        return true;
    }

    // Each mismatched pair costs exactly one change.
    rational exact_distance(const input_string& x) const override {
        const std::size_t k = half_length(x);
        std::int64_t mismatched = 0;
        for (std::size_t p = 0; p < k; ++p)
            if (x[p] != x[k + p]) ++mismatched;
        return {mismatched, static_cast<std::int64_t>(x.size())};
    }

    input_string sample_member(std::size_t n, bit_reader& rng) const override {
        if (n % 2 != 0) throw std::invalid_argument("ww: n must be even");
        std::vector<symbol> cells(n);
        for (std::size_t p = 0; p < n / 2; ++p) cells[p] = cells[n / 2 + p] = static_cast<symbol>(rng.next_bit());
        return {2, std::move(cells)};
    }

  protected:
    input_string generate_far(std::size_t n, const rational& eps, bit_reader& rng) const override {
        const std::size_t k = n / 2;
        const auto mismatches =
            static_cast<std::size_t>(ceil_to_int(eps * rational(static_cast<std::int64_t>(n))));
        if (n % 2 != 0 || mismatches > k)
            throw generation_error("ww: eps-far instance impossible (max distance is 1/2)");
        input_string x = sample_member(n, rng);
        for (std::size_t p : detail::sample_distinct_indices(k, mismatches, rng))
            x.mutable_cells()[k + p] ^= 1u;
        return x;
    }
};

// ---------------------------------------------------------------------------
// Sortedness and the Lipschitz property, as distance oracles and
// mirror-adversary targets. No testers for these are registered.
// ---------------------------------------------------------------------------

class sortedness_property final : public property {
  public:
    explicit sortedness_property(std::uint32_t sigma = 3) : sigma_(sigma) {
        if (sigma_ < 2) throw std::invalid_argument("sortedness: sigma must be >= 2");
    }

    std::string name() const override { return "sortedness"; }
    std::uint32_t default_sigma(std::size_t) const override { return sigma_; }

    bool contains(const input_string& x) const override {
        for (std::size_t i = 0; i + 1 < x.size(); ++i)
            if (x[i] > x[i + 1]) return false;
        return true;
    }

    // distance = 1 - LNDS/n: keep a longest non-decreasing subsequence, every
    // other position must change.
    rational exact_distance(const input_string& x) const override {
        std::vector<symbol> tails;  // patience: tails[j] = min tail of a (j+1)-long subsequence
        for (symbol s : x.cells()) {
            auto it = std::upper_bound(tails.begin(), tails.end(), s);
            if (it == tails.end())
                tails.push_back(s);
            else
                *it = s;
        }
        const auto n = static_cast<std::int64_t>(x.size());
        return {n - static_cast<std::int64_t>(tails.size()), n};
    }

    input_string sample_member(std::size_t n, bit_reader& rng) const override {
        std::vector<symbol> cells(n);
        for (auto& c : cells) c = static_cast<symbol>(rng.uniform_below(sigma_));
        std::sort(cells.begin(), cells.end());
        return {sigma_, std::move(cells)};
    }

  protected:
    input_string generate_far(std::size_t n, const rational& eps, bit_reader& rng) const override {
        // Descending staircase; LNDS is one run of equal values, so the
        // distance approaches 1 - 1/sigma.
        const std::size_t offset = rng.uniform_below(sigma_);
        std::vector<symbol> cells(n);
        for (std::size_t i = 0; i < n; ++i)
            cells[i] = static_cast<symbol>(sigma_ - 1 - (i + offset) % sigma_);
        input_string z(sigma_, std::move(cells));
        if (exact_distance(z) < eps)
            throw generation_error("sortedness: eps too large for a staircase-far instance");
        return z;
    }

  private:
    std::uint32_t sigma_;
};

class lipschitz_property final : public property {
  public:
    std::string name() const override { return "lipschitz"; }
    std::uint32_t default_sigma(std::size_t) const override { return 3; }

    bool contains(const input_string& x) const override {
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            const auto a = static_cast<std::int64_t>(x[i]);
            const auto b = static_cast<std::int64_t>(x[i + 1]);
            if (a - b > 1 || b - a > 1) return false;
        }
        return true;
    }

    // dp[v] = min changes for a Lipschitz prefix ending with value v.
    rational exact_distance(const input_string& x) const override {
        constexpr std::size_t sigma = 3;
        std::vector<std::int64_t> dp(sigma);
        for (std::size_t v = 0; v < sigma; ++v) dp[v] = x[0] != v ? 1 : 0;
        for (std::size_t i = 1; i < x.size(); ++i) {
            std::vector<std::int64_t> next(sigma);
            for (std::size_t v = 0; v < sigma; ++v) {
                std::int64_t best = dp[v];
                if (v > 0) best = std::min(best, dp[v - 1]);
                if (v + 1 < sigma) best = std::min(best, dp[v + 1]);
                next[v] = best + (x[i] != v ? 1 : 0);
            }
            dp = std::move(next);
        }
        return {*std::min_element(dp.begin(), dp.end()), static_cast<std::int64_t>(x.size())};
    }

    input_string sample_member(std::size_t n, bit_reader& rng) const override {
        std::vector<symbol> cells(n);
        std::int64_t v = static_cast<std::int64_t>(rng.uniform_below(3));
        for (std::size_t i = 0; i < n; ++i) {
            cells[i] = static_cast<symbol>(v);
            const std::int64_t step = static_cast<std::int64_t>(rng.uniform_below(3)) - 1;
            v = std::clamp<std::int64_t>(v + step, 0, 2);
        }
        return {3, std::move(cells)};
    }

  protected:
    input_string generate_far(std::size_t n, const rational& eps, bit_reader&) const override {
        // 0,2,0,2,...: every adjacent pair violates; fixing costs ~n/2.
        std::vector<symbol> cells(n);
        for (std::size_t i = 0; i < n; ++i) cells[i] = i % 2 == 0 ? 0 : 2;
        input_string z(3, std::move(cells));
        if (exact_distance(z) < eps)
            throw generation_error("lipschitz: eps too large for an alternating-far instance");
        return z;
    }
};

// ---------------------------------------------------------------------------
// The repetition code C_{m,r} itself, as a property.
// ---------------------------------------------------------------------------

class repetition_code_property final : public property {
  public:
    repetition_code_property(repetition_structure st, std::uint32_t sigma) : st_(st), sigma_(sigma) {
        if (sigma_ < 1) throw std::invalid_argument("rep-code: sigma must be >= 1");
    }

    std::string name() const override {
        return "rep-code:m=" + std::to_string(st_.m) + ",r=" + std::to_string(st_.r);
    }
    std::uint32_t default_sigma(std::size_t) const override { return sigma_; }
    std::optional<repetition_structure> repetition() const override { return st_; }

    bool contains(const input_string& x) const override {
        check_length(x.size());
        for (std::size_t rho = 1; rho < st_.r; ++rho)
            for (std::size_t mu = 0; mu < st_.m; ++mu)
                if (x[st_.global_index(rho, mu)] != x[mu]) return false;
        return true;
    }

    rational exact_distance(const input_string& x) const override {
        check_length(x.size());
        return distance_to_repetition_code(x, st_);
    }

    input_string sample_member(std::size_t n, bit_reader& rng) const override {
        check_length(n);
        std::vector<symbol> w(st_.m);
        for (auto& c : w) c = static_cast<symbol>(rng.uniform_below(sigma_));
        return concatenate_repetitions(input_string(sigma_, std::move(w)), st_.r);
    }

  protected:
    // Corrupt ceil(eps*n) cells while keeping every column's plurality at the
    // original block, so the resulting distance is exactly the corruption
    // fraction.
    input_string generate_far(std::size_t n, const rational& eps, bit_reader& rng) const override {
        check_length(n);
        if (sigma_ < 2) throw generation_error("rep-code: no far instance over a unary alphabet");
        const auto budget = static_cast<std::size_t>(ceil_to_int(eps * rational(static_cast<std::int64_t>(n))));
        const std::size_t per_column_cap = (st_.r - 1) / 2;
        if (budget > per_column_cap * st_.m)
            throw generation_error("rep-code: eps too large to keep pluralities intact");
        input_string s = sample_member(n, rng);
        std::size_t corrupted = 0;
        for (std::size_t mu = 0; mu < st_.m && corrupted < budget; ++mu) {
            const std::size_t in_this_column = std::min(per_column_cap, budget - corrupted);
            const auto blocks = detail::sample_distinct_indices(st_.r, in_this_column, rng);
            for (std::size_t rho : blocks) {
                auto& cellv = s.mutable_cells()[st_.global_index(rho, mu)];
                cellv = static_cast<symbol>((cellv + 1 + rng.uniform_below(sigma_ - 1)) % sigma_);
                ++corrupted;
            }
        }
        return s;
    }

  private:
    void check_length(std::size_t n) const {
        if (n != st_.n()) throw std::invalid_argument("rep-code: length must equal m*r");
    }

    repetition_structure st_;
    std::uint32_t sigma_;
};

// ---------------------------------------------------------------------------
// P^r: the repetition lifting of a base property.
// ---------------------------------------------------------------------------

class lifted_property final : public property {
  public:
    // Enumeration cap for brute-force distance over base members.
    static constexpr std::uint64_t enumeration_cap = 1ULL << 20;

    lifted_property(std::shared_ptr<const property> base, repetition_structure st)
        : base_(std::move(base)), st_(st) {}

    std::string name() const override { return "lift:" + base_->name() + ":r=" + std::to_string(st_.r); }
    std::uint32_t default_sigma(std::size_t) const override { return base_->default_sigma(st_.m); }
    std::optional<repetition_structure> repetition() const override { return st_; }
    const property& base() const { return *base_; }

    bool contains(const input_string& x) const override {
        check_length(x.size());
        for (std::size_t rho = 1; rho < st_.r; ++rho)
            for (std::size_t mu = 0; mu < st_.m; ++mu)
                if (x[st_.global_index(rho, mu)] != x[mu]) return false;
        return base_->contains(block(x, 0));
    }

    rational exact_distance(const input_string& x) const override {
        check_length(x.size());
        // Codewords: distance(w^r, P^r) = distance(w, P), no enumeration needed.
        if (is_codeword(x)) return base_->exact_distance(block(x, 0));
        std::optional<rational> best;
        const bool enumerated =
            base_->for_each_member(st_.m, enumeration_cap, [&](const input_string& w) {
                const rational d = distance_to_lifted_member(x, w);
                if (!best || d < *best) best = d;
            });
        if (!enumerated)
            throw capability_error(name() +
                                   ": base member enumeration exceeds the brute-force cap; "
                                   "use generator-certified instances instead");
        if (!best) throw capability_error(name() + ": base property has no members at this length");
        return *best;
    }

    input_string sample_member(std::size_t n, bit_reader& rng) const override {
        check_length(n);
        return concatenate_repetitions(base_->sample_member(st_.m, rng), st_.r);
    }

    bool for_each_member(std::size_t n, std::uint64_t cap,
                         const std::function<void(const input_string&)>& fn) const override {
        check_length(n);
        return base_->for_each_member(st_.m, cap,
                                      [&](const input_string& w) { fn(concatenate_repetitions(w, st_.r)); });
    }

  protected:
    // Plant a base-far block and repeat it; certification goes through the
    // codeword identity, so this works at any m.
    input_string generate_far(std::size_t n, const rational& eps, bit_reader& rng) const override {
        check_length(n);
        return concatenate_repetitions(base_->sample_far(st_.m, eps, rng), st_.r);
    }

  private:
    void check_length(std::size_t n) const {
        if (n != st_.n()) throw std::invalid_argument("lift: length must equal m*r");
    }

    bool is_codeword(const input_string& x) const {
        for (std::size_t rho = 1; rho < st_.r; ++rho)
            for (std::size_t mu = 0; mu < st_.m; ++mu)
                if (x[st_.global_index(rho, mu)] != x[mu]) return false;
        return true;
    }

    input_string block(const input_string& x, std::size_t rho) const {
        std::vector<symbol> cells(x.cells().begin() + static_cast<std::ptrdiff_t>(rho * st_.m),
                                  x.cells().begin() + static_cast<std::ptrdiff_t>((rho + 1) * st_.m));
        return {x.sigma(), std::move(cells)};
    }

    rational distance_to_lifted_member(const input_string& x, const input_string& w) const {
        std::int64_t diff = 0;
        for (std::size_t rho = 0; rho < st_.r; ++rho)
            for (std::size_t mu = 0; mu < st_.m; ++mu)
                if (x[st_.global_index(rho, mu)] != w[mu]) ++diff;
        return {diff, static_cast<std::int64_t>(st_.n())};
    }

    std::shared_ptr<const property> base_;
    repetition_structure st_;
};

// ---------------------------------------------------------------------------
// Registry: properties addressable by name string from CLI/config.
// ---------------------------------------------------------------------------

inline std::shared_ptr<property> make_property(const std::string& spec, std::size_t n);

namespace detail {

inline std::shared_ptr<property> make_lifted(const std::vector<std::string>& tokens, std::size_t n) {
    // lift:<base-spec>:r=K, where trailing r=/m= tokens belong to the lift.
    std::size_t lift_param_start = tokens.size();
    while (lift_param_start > 1) {
        const std::string& tok = tokens[lift_param_start - 1];
        if (tok.rfind("r=", 0) == 0 || tok.rfind("m=", 0) == 0)
            --lift_param_start;
        else
            break;
    }
    if (lift_param_start == tokens.size())
        throw std::invalid_argument("lift: missing repetition parameter r=");
    std::string base_spec;
    for (std::size_t i = 1; i < lift_param_start; ++i) {
        if (!base_spec.empty()) base_spec += ':';
        base_spec += tokens[i];
    }
    if (base_spec.empty()) throw std::invalid_argument("lift: missing base property");
    const param_map pm = param_map::parse(tokens, lift_param_start);
    const auto r = static_cast<std::size_t>(pm.require_uint("r", "lift"));
    if (r == 0 || n % r != 0) throw std::invalid_argument("lift: r must divide n");
    const std::size_t m = pm.get_uint("m") ? static_cast<std::size_t>(*pm.get_uint("m")) : n / r;
    if (m * r != n) throw std::invalid_argument("lift: n must equal m*r");
    return std::make_shared<lifted_property>(make_property(base_spec, m), repetition_structure(m, r));
}

}  // namespace detail

inline std::shared_ptr<property> make_property(const std::string& spec, std::size_t n) {
    const auto tokens = detail::split(spec, ':');
    if (tokens.empty() || tokens[0].empty()) throw std::invalid_argument("empty property spec");
    const std::string& kind = tokens[0];
    if (kind == "zero-string") return std::make_shared<zero_string_property>();
    if (kind == "ww") return std::make_shared<ww_property>();
    if (kind == "lipschitz") return std::make_shared<lipschitz_property>();
    if (kind == "sortedness") {
        const auto pm = detail::param_map::parse(tokens, 1);
        const auto sigma = pm.get_uint("sigma");
        return std::make_shared<sortedness_property>(sigma ? static_cast<std::uint32_t>(*sigma) : 3);
    }
    if (kind == "distinct-elements") {
        const auto pm = detail::param_map::parse(tokens, 1);
        const auto tau = static_cast<unsigned>(pm.require_uint("tau", "distinct-elements"));
        const auto sigma = pm.get_uint("sigma");
        return std::make_shared<distinct_elements_property>(
            tau, sigma ? std::optional<std::uint32_t>(static_cast<std::uint32_t>(*sigma)) : std::nullopt);
    }
    if (kind == "rep-code") {
        const auto pm = detail::param_map::parse(tokens, 1);
        const auto m = static_cast<std::size_t>(pm.require_uint("m", "rep-code"));
        const auto r = static_cast<std::size_t>(pm.require_uint("r", "rep-code"));
        if (n != 0 && m * r != n) throw std::invalid_argument("rep-code: n must equal m*r");
        const auto sigma = pm.get_uint("sigma");
        return std::make_shared<repetition_code_property>(repetition_structure(m, r),
                                                          sigma ? static_cast<std::uint32_t>(*sigma) : 2);
    }
    if (kind == "lift") return detail::make_lifted(tokens, n);
    throw std::invalid_argument("unknown property '" + kind + "'");
}

inline std::vector<std::string> property_names() {
    return {"zero-string",
            "ww",
            "sortedness[:sigma=S]",
            "lipschitz",
            "distinct-elements:tau=T[,sigma=S]",
            "rep-code:m=M,r=R[,sigma=S]",
            "lift:<base>:r=R"};
}

}  // namespace ptlab
