#include <ptlab/oracle.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ptlab;

namespace {

input_string str(std::uint32_t sigma, std::initializer_list<symbol> cells) {
    return {sigma, std::vector<symbol>(cells)};
}

input_string random_string(std::uint32_t sigma, std::size_t n, std::mt19937_64& gen) {
    std::vector<symbol> cells(n);
    for (auto& c : cells) c = static_cast<symbol>(gen() % sigma);
    return {sigma, std::move(cells)};
}

// Erases everything it can, as fast as it can.
class scorched_earth final : public adversary {
  public:
    std::string name() const override { return "scorched-earth"; }
    std::vector<manipulation> step(const oracle_session& s) override {
        std::vector<manipulation> out;
        for (std::size_t i = 0; i < s.n() && out.size() < s.budget(); ++i)
            if (s.view_at(i)) out.push_back({i, erased_cell});
        return out;
    }
};

// Deliberately buggy: manipulates budget+1 cells.
class budget_cheater final : public adversary {
  public:
    std::string name() const override { return "cheater"; }
    std::vector<manipulation> step(const oracle_session& s) override {
        std::vector<manipulation> out;
        for (std::size_t i = 0; i <= s.budget() && i < s.n(); ++i) out.push_back({i, erased_cell});
        return out;
    }
};

}  // namespace

TEST_CASE("standard sessions answer from the pristine input forever") {
    std::mt19937_64 gen(3);
    const auto x = random_string(3, 40, gen);
    oracle_session s(x, oracle_mode::standard, 0, nullptr);
    for (int i = 0; i < 200; ++i) {
        const std::size_t idx = gen() % x.size();
        REQUIRE(s.query(idx) == cell(x[idx]));
    }
    REQUIRE(s.erased_answers() == 0);
    REQUIRE(s.corrupted_answers() == 0);
    REQUIRE(s.budget_law_holds());
}

TEST_CASE("the first answer of every online session is pristine") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_string(2, 16, gen);
        scorched_earth adv;
        oracle_session s(x, oracle_mode::online_erase, 4, &adv);
        const std::size_t idx = gen() % x.size();
        REQUIRE(s.query(idx) == cell(x[idx]));
    }
}

TEST_CASE("offline erased sessions have a static view") {
    const auto x = str(2, {1, 1, 0, 0, 1, 0, 1, 0, 1, 1});
    auto s = oracle_session::offline_erased(x, {0, 1}, rational(1, 5));
    REQUIRE(s.query(0) == erased_cell);
    REQUIRE(s.query(0) == erased_cell);  // still erased on the second read
    REQUIRE(s.query(1) == erased_cell);
    for (std::size_t i = 2; i < x.size(); ++i) REQUIRE(s.query(i) == cell(x[i]));

    SECTION("erasing more than an alpha fraction is a usage error") {
        REQUIRE_THROWS_AS(oracle_session::offline_erased(x, {0, 1, 2}, rational(1, 5)),
                          std::invalid_argument);
    }
    SECTION("an empty erasure set behaves like the standard model") {
        auto clean = oracle_session::offline_erased(x, {}, rational(1, 5));
        for (std::size_t i = 0; i < x.size(); ++i) REQUIRE(clean.query(i) == cell(x[i]));
    }
}

TEST_CASE("budget law holds for every strategy and budget") {
    std::mt19937_64 gen(7);
    for (const unsigned t : {0u, 1u, 2u, 5u}) {
        const auto x = random_string(2, 30, gen);
        scorched_earth adv;
        oracle_session s(x, oracle_mode::online_erase, t, t == 0 ? nullptr : &adv);
        for (int k = 1; k <= 25; ++k) {
            s.query(gen() % x.size());
            REQUIRE(s.manipulation_applications() <= k * t);
            REQUIRE(s.manipulated_cells() <= k * t);
            REQUIRE(s.budget_law_holds());
        }
    }
}

TEST_CASE("a strategy that exceeds its budget is rejected") {
    std::mt19937_64 gen(9);
    const auto x = random_string(2, 8, gen);
    budget_cheater adv;
    oracle_session s(x, oracle_mode::online_erase, 2, &adv);
    REQUIRE_THROWS_AS(s.query(0), std::logic_error);
}

TEST_CASE("mode purity") {
    std::mt19937_64 gen(11);
    SECTION("erase sessions never answer a symbol at a manipulated cell") {
        const auto x = random_string(3, 20, gen);
        scorched_earth adv;
        oracle_session s(x, oracle_mode::online_erase, 3, &adv);
        s.query(0);
        for (int k = 0; k < 40; ++k) {
            const std::size_t idx = gen() % x.size();
            const cell a = s.query(idx);
            if (a) REQUIRE(*a == x[idx]);  // Present answers are always pristine
        }
        REQUIRE(s.corrupted_answers() == 0);
        REQUIRE(s.erased_answers() > 0);
    }
    SECTION("corrupt sessions never answer the erasure mark") {
        const auto x = random_string(2, 24, gen);
        greedy_block_corruptor adv({4, 6}, 99);
        oracle_session s(x, oracle_mode::online_corrupt, 2, &adv);
        for (int k = 0; k < 60; ++k) REQUIRE(s.query(gen() % x.size()).has_value());
        REQUIRE(s.erased_answers() == 0);
    }
}

TEST_CASE("mirror adversary erases the pair partner") {
    const auto x = str(2, {0, 1, 0, 1, 0, 1, 0, 1});  // n=8, k=4
    SECTION("partner of an index in the first half") {
        mirror_adversary adv;
        oracle_session s(x, oracle_mode::online_erase, 1, &adv);
        REQUIRE(s.query(2) == cell(x[2]));
        REQUIRE(s.query(6) == erased_cell);  // 2 + k
    }
    SECTION("partner of an index in the second half") {
        mirror_adversary adv;
        oracle_session s(x, oracle_mode::online_erase, 1, &adv);
        REQUIRE(s.query(6) == cell(x[6]));
        REQUIRE(s.query(2) == erased_cell);  // 6 - k
    }
    SECTION("already-erased partner is a no-op") {
        mirror_adversary adv;
        oracle_session s(x, oracle_mode::online_erase, 1, &adv);
        s.query(2);
        s.query(2);  // partner 6 already erased
        REQUIRE(s.manipulation_applications() == 1);
    }
    SECTION("odd-length inputs are rejected") {
        mirror_adversary adv;
        const auto odd = str(2, {0, 1, 0});
        REQUIRE_THROWS_AS(oracle_session(odd, oracle_mode::online_erase, 1, &adv),
                          std::invalid_argument);
    }
}

TEST_CASE("greedy block corruptor") {
    std::mt19937_64 gen(13);
    const repetition_structure st(5, 8);
    const auto w = random_string(3, st.m, gen);
    const auto s_input = concatenate_repetitions(w, st.r);

    SECTION("corrupts only cells sharing the answered offset, in other blocks") {
        greedy_block_corruptor adv(st, 7);
        oracle_session s(s_input, oracle_mode::online_corrupt, 2, &adv);
        s.query(st.global_index(3, 2));
        const auto& manips = s.transcript().back().manipulations;
        REQUIRE(manips.size() == 2);
        for (const auto& m : manips) {
            const auto [rho, mu] = st.block_offset(m.index);
            REQUIRE(mu == 2);
            REQUIRE(rho != 3);
            REQUIRE(m.value.has_value());
            REQUIRE(*m.value != *s.transcript().back().answer);
        }
    }
    SECTION("unary alphabets leave nothing to corrupt") {
        const input_string ones(1, std::vector<symbol>(st.n(), 0));
        greedy_block_corruptor adv(st, 7);
        oracle_session s(ones, oracle_mode::online_corrupt, 2, &adv);
        s.query(0);
        REQUIRE(s.manipulation_applications() == 0);
    }
    SECTION("zero budget is a no-op") {
        greedy_block_corruptor adv(st, 7);
        oracle_session s(s_input, oracle_mode::online_corrupt, 0, &adv);
        s.query(0);
        REQUIRE(s.manipulation_applications() == 0);
    }
}

TEST_CASE("same-symbol eraser hits other occurrences of the answered symbol") {
    const auto x = str(3, {0, 1, 0, 2, 0, 1});
    same_symbol_eraser adv;
    oracle_session s(x, oracle_mode::online_erase, 2, &adv);
    REQUIRE(s.query(0) == cell(symbol{0}));
    const auto& manips = s.transcript().back().manipulations;
    REQUIRE(manips.size() == 2);
    for (const auto& m : manips) {
        REQUIRE(m.index != 0);
        REQUIRE(x[m.index] == 0);
    }
    // remaining occurrence of 0 gets erased next; after that, no more
    s.query(0);
    REQUIRE(s.manipulated_cells() == 2);  // only two other occurrences existed
}

TEST_CASE("make_offline_erased builds the erased view") {
    const auto x = str(2, {1, 0, 1, 0, 1, 0, 1, 0, 1, 0});
    SECTION("marks exactly the requested indices") {
        const auto e = make_offline_erased(x, {1, 2}, rational(1, 5));
        REQUIRE(e.erased_fraction == rational(1, 5));
        REQUIRE(e.cells[1] == erased_cell);
        REQUIRE(e.cells[2] == erased_cell);
        std::size_t present = 0;
        for (const cell& c : e.cells)
            if (c) ++present;
        REQUIRE(present == 8);
    }
    SECTION("no erasures reproduces the input") {
        const auto e = make_offline_erased(x, {}, rational(1, 5));
        for (std::size_t i = 0; i < x.size(); ++i) REQUIRE(e.cells[i] == cell(x[i]));
    }
    SECTION("exceeding alpha or the index range is a usage error") {
        REQUIRE_THROWS_AS(make_offline_erased(x, {0, 1, 2}, rational(1, 5)), std::invalid_argument);
        REQUIRE_THROWS_AS(make_offline_erased(x, {10}, rational(1, 2)), std::invalid_argument);
    }
}

TEST_CASE("rarest-symbol offline chooser") {
    const auto x = str(4, {3, 3, 3, 3, 1, 1, 2, 2, 2, 0});
    const auto erased = rarest_symbol_indices(x, rational(3, 10));
    REQUIRE(erased.size() == 3);
    // rarest first: symbol 0 (count 1), then symbol 1 (count 2, partial)
    REQUIRE(erased[0] == 9);
    REQUIRE(x[erased[1]] == 1);
    REQUIRE(x[erased[2]] == 1);

    std::mt19937_64 gen(15);
    bit_reader rng(randomness_spec::from_prng(17));
    const auto uniform = uniform_erased_indices(x, rational(1, 2), rng);
    REQUIRE(uniform.size() == 5);
}

TEST_CASE("transcripts record answers and manipulations in order") {
    const auto x = str(2, {0, 1, 0, 1});
    mirror_adversary adv;
    oracle_session s(x, oracle_mode::online_erase, 1, &adv);
    s.query(1);
    s.query(3);
    REQUIRE(s.transcript().size() == 2);
    REQUIRE(s.transcript()[0].index == 1);
    REQUIRE(s.transcript()[0].answer == cell(symbol{1}));
    REQUIRE(s.transcript()[0].manipulations.size() == 1);
    REQUIRE(s.transcript()[0].manipulations[0].index == 3);
    REQUIRE(s.transcript()[1].answer == erased_cell);
    REQUIRE_THROWS_AS(s.query(99), std::invalid_argument);
}
