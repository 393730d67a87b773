#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shiftlab/bigmath.hpp"
#include "shiftlab/language.hpp"
#include "shiftlab/shift_model.hpp"

using namespace shiftlab;

TEST_CASE("sft construction validates and trims")
{
    CHECK_NOTHROW(sft_from_matrix({{1, 1}, {1, 1}}));
    CHECK_THROWS_AS(sft_from_matrix({{0, 1}, {0, 0}}), ConstructionError);  // nilpotent
    CHECK_THROWS_AS(sft_from_matrix({{1, 1}, {1}}), ConstructionError);
    CHECK_THROWS_AS(sft_from_matrix({{2, 0}, {0, 1}}), ConstructionError);

    // dead-end state gets trimmed, the cycle survives
    const auto m = sft_from_matrix({{1, 1, 1}, {1, 0, 1}, {0, 0, 0}});
    const auto* sft = dynamic_cast<const SftModel*>(m.get());
    REQUIRE(sft != nullptr);
    CHECK_FALSE(sft->live(2));
    CHECK(sft->live(0));
    CHECK_FALSE(sft->membership(Word::from_string("02")));
}

TEST_CASE("vertex-SFT counts equal the matrix-power entry sum")
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> coin(0, 1);
    int built = 0;
    while (built < 5) {
        std::vector<std::vector<int>> m(3, std::vector<int>(3, 0));
        for (auto& row : m)
            for (auto& x : row) x = coin(rng);
        ModelPtr model;
        try {
            model = sft_from_matrix(m);
        } catch (const ConstructionError&) {
            continue;
        }
        const auto* sft = dynamic_cast<const SftModel*>(model.get());
        // the oracle needs the trimmed matrix (dead states spell no words)
        BigIntMatrix a(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a.at(i, j) = sft->live_matrix()[i][j];
        const Language lang = enumerate_language(*model, 9);
        for (int n = 1; n <= 9; ++n) CHECK(lang.count(n) == a.pow(n - 1).entry_sum());
        ++built;
    }
}

TEST_CASE("edge-shift adapter builds the edge SFT")
{
    // two vertices, double edge one way: 3 edges total
    const auto model = sft_edge_shift({{0, 2}, {1, 0}});
    CHECK(model->alphabet_size() == 3);
    const Language lang = enumerate_language(*model, 6);
    // edge counts: #L_n = sum of entries of the edge-transition matrix power
    CHECK(lang.count(1) == 3);
    for (int n = 2; n <= 6; ++n) {
        // paths in the 2-vertex multigraph of length n
        BigIntMatrix a(2);
        a.at(0, 1) = 2;
        a.at(1, 0) = 1;
        CHECK(lang.count(n) == a.pow(n).entry_sum());
    }
}

TEST_CASE("sofic even shift matches its defining predicate")
{
    // even shift: runs of 0s between 1s have even length; two-state presentation
    const auto model = std::make_shared<SoficModel>(
        2, 2,
        std::vector<LabeledEdge>{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    const Language lang = enumerate_language(*model, 12);
    auto even_ok = [](const std::string& w) {
        bool seen = false;
        int run = 0;
        for (char c : w) {
            if (c == '0') ++run;
            else {
                if (seen && run % 2 != 0) return false;
                seen = true;
                run = 0;
            }
        }
        return true;
    };
    for (int n = 1; n <= 12; ++n)
        CHECK(lang.count_sz(n) == oracles::count_filtered(2, n, even_ok));
}

TEST_CASE("sgap membership follows the gap rule")
{
    const SGapModel s12(GapSet{{1, 2}, {}});
    CHECK_FALSE(s12.membership(Word::from_string("10110")));
    CHECK(s12.membership(Word::from_string("10100")));
    const SGapModel s0(GapSet{{0}, {}});
    CHECK(s0.membership(Word::from_string("111")));
    CHECK_FALSE(s0.membership(Word::from_string("0")));

    const Language lang = enumerate_language(s12, 12);
    for (int n = 1; n <= 12; ++n)
        CHECK(lang.count_sz(n) ==
              oracles::count_filtered(2, n, [](const std::string& w) {
                  return oracles::sgap_ok(w, {1, 2});
              }));
}

TEST_CASE("sgap with all gaps allowed is the full 2-shift")
{
    const SGapModel all(GapSet{{}, {{0, 1}}});  // 0 + k: every gap length
    const Language lang = enumerate_language(all, 10);
    for (int n = 1; n <= 10; ++n) CHECK(lang.count(n) == BigInt(1) << n);
}

TEST_CASE("sgap arithmetic tails define eventually periodic gap sets")
{
    const GapSet odd{{}, {{1, 2}}};  // 1 + 2k
    CHECK(odd.contains(1));
    CHECK(odd.contains(7));
    CHECK_FALSE(odd.contains(4));
    CHECK(odd.unbounded());
    const SGapModel model(odd);
    CHECK(model.membership(Word::from_string("101")));
    CHECK_FALSE(model.membership(Word::from_string("1001")));
    CHECK(model.membership(Word::from_string("10001")));
}

TEST_CASE("successor oracle matches membership on random words")
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<ModelPtr> models{
        sft_from_matrix({{1, 1}, {1, 0}}),
        std::make_shared<SGapModel>(GapSet{{1, 2}, {}}),
        std::make_shared<SoficModel>(2, 2,
                                     std::vector<LabeledEdge>{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}),
    };
    for (const auto& model : models) {
        for (int it = 0; it < 300; ++it) {
            Word w;
            const int len = 1 + it % 9;
            for (int i = 0; i < len; ++i) w.push_back(static_cast<Symbol>(coin(rng)));
            if (!model->membership(w)) continue;
            const auto succ = model->successors(w);
            for (int s = 0; s < model->alphabet_size(); ++s) {
                Word ws = w;
                ws.push_back(static_cast<Symbol>(s));
                const bool in_succ =
                    std::find(succ.begin(), succ.end(), static_cast<Symbol>(s)) != succ.end();
                CHECK(in_succ == model->membership(ws));
            }
        }
    }
}

TEST_CASE("irreducibility detection")
{
    const auto irr = sft_from_matrix({{1, 1}, {1, 0}});
    CHECK(dynamic_cast<const SftModel&>(*irr).irreducible());
    const auto red = sft_from_matrix({{1, 1}, {0, 1}});  // can't get back from state 1
    CHECK_FALSE(dynamic_cast<const SftModel&>(*red).irreducible());
}
