#pragma once

#include "ptlab/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ptlab {

// Symbols are dense integers in [0, sigma). Binary {0,1}, ternary {0,1,2}
// and [n]-valued alphabets all embed this way; sigma travels with the string.
using symbol = std::uint32_t;

// A queried position either shows a symbol or the erasure mark.
using cell = std::optional<symbol>;

inline constexpr cell erased_cell = std::nullopt;

class input_string {
  public:
    input_string(std::uint32_t sigma, std::vector<symbol> cells)
        : sigma_(sigma), cells_(std::move(cells)) {
        if (sigma_ == 0) throw std::invalid_argument("input_string: empty alphabet");
        for (symbol s : cells_)
            if (s >= sigma_) throw std::invalid_argument("input_string: symbol outside alphabet");
    }

    std::size_t size() const { return cells_.size(); }
    std::uint32_t sigma() const { return sigma_; }
    symbol operator[](std::size_t i) const { return cells_[i]; }
    std::span<const symbol> cells() const { return cells_; }
    std::vector<symbol>& mutable_cells() { return cells_; }

    friend bool operator==(const input_string& a, const input_string& b) {
        return a.sigma_ == b.sigma_ && a.cells_ == b.cells_;
    }

  private:
    std::uint32_t sigma_;
    std::vector<symbol> cells_;
};

// An input with some positions already erased (offline model), together with
// the fraction that is erased.
struct erased_string {
    std::uint32_t sigma;
    std::vector<cell> cells;
    rational erased_fraction;
};

// Block/offset geometry of the repetition code C_{m,r}: length-n strings
// viewed as r blocks of length m, n = m*r. All indices 0-based.
struct repetition_structure {
    std::size_t m = 0;
    std::size_t r = 0;

    repetition_structure() = default;
    repetition_structure(std::size_t block_len, std::size_t repetitions) : m(block_len), r(repetitions) {
        if (m == 0 || r == 0) throw std::invalid_argument("repetition_structure: m and r must be positive");
    }

    std::size_t n() const { return m * r; }
    std::size_t global_index(std::size_t block, std::size_t offset) const { return block * m + offset; }
    std::pair<std::size_t, std::size_t> block_offset(std::size_t global) const {
        return {global / m, global % m};
    }
};

inline rational relative_hamming_distance(const input_string& x, const input_string& y) {
    if (x.size() != y.size()) throw std::invalid_argument("relative_hamming_distance: length mismatch");
    if (x.size() == 0) throw std::invalid_argument("relative_hamming_distance: empty strings");
    std::int64_t diff = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i]) ++diff;
    return {diff, static_cast<std::int64_t>(x.size())};
}

inline input_string concatenate_repetitions(const input_string& w, std::size_t r) {
    if (r == 0) throw std::invalid_argument("concatenate_repetitions: r must be >= 1");
    std::vector<symbol> out;
    out.reserve(w.size() * r);
    for (std::size_t i = 0; i < r; ++i)
        out.insert(out.end(), w.cells().begin(), w.cells().end());
    return {w.sigma(), std::move(out)};
}

// Per-column most frequent symbol; ties resolved toward the smallest symbol
// value so decoding is deterministic.
inline input_string plurality_decode(const input_string& s, const repetition_structure& st) {
    if (s.size() != st.n()) throw std::invalid_argument("plurality_decode: length != m*r");
    std::vector<symbol> decoded(st.m);
    for (std::size_t mu = 0; mu < st.m; ++mu) {
        std::map<symbol, std::size_t> counts;
        for (std::size_t rho = 0; rho < st.r; ++rho) ++counts[s[st.global_index(rho, mu)]];
        symbol best = 0;
        std::size_t best_count = 0;
        for (const auto& [sym, count] : counts) {
            if (count > best_count) {  // strict: first (smallest) symbol wins ties
                best = sym;
                best_count = count;
            }
        }
        decoded[mu] = best;
    }
    return {s.sigma(), std::move(decoded)};
}

// delta_H(s, w^r) for the plurality decoding w, which equals the distance
// from s to the repetition code C_{m,r}.
inline rational distance_to_repetition_code(const input_string& s, const repetition_structure& st) {
    if (s.size() != st.n()) throw std::invalid_argument("distance_to_repetition_code: length != m*r");
    const input_string decoded = plurality_decode(s, st);
    std::int64_t diff = 0;
    for (std::size_t rho = 0; rho < st.r; ++rho)
        for (std::size_t mu = 0; mu < st.m; ++mu)
            if (s[st.global_index(rho, mu)] != decoded[mu]) ++diff;
    return {diff, static_cast<std::int64_t>(st.n())};
}

}  // namespace ptlab
