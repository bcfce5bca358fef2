#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace ptlab {

// splitmix64 finalizer; used to derive independent per-trial seeds from a
// master seed (documented scheme: trial_seed(master, i) =
// split_mix64(split_mix64(master) ^ (i + 1))).
constexpr std::uint64_t split_mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t trial_index) {
    return split_mix64(split_mix64(master) ^ (trial_index + 1));
}

struct seed_exhausted_error : std::runtime_error {
    seed_exhausted_error() : std::runtime_error("random bit source exhausted before the declared budget") {}
};

// Where a bit stream comes from. `prng` expands a 64-bit seed into an
// unbounded deterministic stream (mt19937_64); `seed_window` serves exactly
// `window_bits` bits of `seed` (LSB first) and errors on overrun; this is
// the replayable-seed mode the seed-elimination adversary enumerates.
struct randomness_spec {
    enum class source_kind : std::uint8_t { prng, seed_window };

    source_kind kind = source_kind::prng;
    std::uint64_t seed = 0;
    unsigned window_bits = 0;     // seed_window only, <= 64
    std::uint64_t hard_budget = 0;  // optional cap for prng sources; 0 = none

    static randomness_spec from_prng(std::uint64_t seed, std::uint64_t hard_budget = 0) {
        return {source_kind::prng, seed, 0, hard_budget};
    }
    static randomness_spec from_window(std::uint64_t seed, unsigned bits) {
        if (bits > 64) throw std::invalid_argument("seed window wider than 64 bits");
        return {source_kind::seed_window, seed, bits, 0};
    }
};

// Counted bit source. Every consumed bit is tallied exactly; exceeding a
// hard budget (or the seed window) throws rather than silently reusing bits.
class bit_reader {
  public:
    bit_reader() : bit_reader(randomness_spec::from_prng(0)) {}
    explicit bit_reader(const randomness_spec& spec) { reset(spec); }

    void reset(const randomness_spec& spec) {
        spec_ = spec;
        consumed_ = 0;
        buffered_ = 0;
        buffer_ = 0;
        if (spec_.kind == randomness_spec::source_kind::prng) engine_.seed(spec_.seed);
    }

    bool next_bit() {
        if (spec_.kind == randomness_spec::source_kind::seed_window) {
            if (consumed_ >= spec_.window_bits) throw seed_exhausted_error{};
            return ((spec_.seed >> consumed_++) & 1ULL) != 0;
        }
        if (spec_.hard_budget != 0 && consumed_ >= spec_.hard_budget) throw seed_exhausted_error{};
        if (buffered_ == 0) {
            buffer_ = engine_();
            buffered_ = 64;
        }
        const bool b = (buffer_ & 1ULL) != 0;
        buffer_ >>= 1;
        --buffered_;
        ++consumed_;
        return b;
    }

    std::uint64_t next_bits(unsigned k) {
        if (k > 63) throw std::invalid_argument("next_bits: k > 63");
        std::uint64_t v = 0;
        for (unsigned i = 0; i < k; ++i)
            if (next_bit()) v |= 1ULL << i;
        return v;
    }

    // Uniform draw from [0, k) by rejection sampling in ceil(log2 k)-bit
    // chunks. Consumed (not requested) bits are counted, rejections included.
    std::uint64_t uniform_below(std::uint64_t k) {
        if (k == 0) throw std::invalid_argument("uniform_below: k == 0");
        if (k == 1) return 0;
        const unsigned width = static_cast<unsigned>(std::bit_width(k - 1));
        for (;;) {
            const std::uint64_t v = next_bits(width);
            if (v < k) return v;
        }
    }

    std::uint64_t bits_consumed() const { return consumed_; }
    const randomness_spec& spec() const { return spec_; }

  private:
    randomness_spec spec_;
    std::mt19937_64 engine_;
    std::uint64_t buffer_ = 0;
    unsigned buffered_ = 0;
    std::uint64_t consumed_ = 0;
};

}  // namespace ptlab
