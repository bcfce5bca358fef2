#pragma once

// Test-only exhaustive oracles. These work straight from the definitions
// (enumerate candidates, take minima) and stay independent of the library's
// distance implementations they are used to check.

#include <ptlab/strings.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace brute {

template <typename Fn>
void for_each_string(std::uint32_t sigma, std::size_t n, Fn&& fn) {
    std::vector<ptlab::symbol> cells(n, 0);
    for (;;) {
        fn(ptlab::input_string(sigma, cells));
        std::size_t i = 0;
        while (i < n && ++cells[i] == sigma) cells[i++] = 0;
        if (i == n) break;
    }
}

// Min relative Hamming distance from x to any string satisfying `member`,
// by enumerating the whole cube.
template <typename Pred>
std::optional<ptlab::rational> min_distance(const ptlab::input_string& x, std::uint32_t sigma,
                                            Pred&& member) {
    std::optional<ptlab::rational> best;
    for_each_string(sigma, x.size(), [&](const ptlab::input_string& y) {
        if (!member(y)) return;
        const ptlab::rational d = ptlab::relative_hamming_distance(x, y);
        if (!best || d < *best) best = d;
    });
    return best;
}

// Distance to the repetition code straight from the definition: minimize
// over every block w in sigma^m.
inline ptlab::rational distance_to_code(const ptlab::input_string& s, std::size_t m, std::size_t r) {
    std::optional<ptlab::rational> best;
    for_each_string(s.sigma(), m, [&](const ptlab::input_string& w) {
        const ptlab::rational d =
            ptlab::relative_hamming_distance(s, ptlab::concatenate_repetitions(w, r));
        if (!best || d < *best) best = d;
    });
    return *best;
}

}  // namespace brute
