#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "shiftlab/beta_shift.hpp"
#include "shiftlab/language.hpp"
#include "shiftlab/shift_model.hpp"

using namespace shiftlab;

TEST_CASE("subword follows 1-based inclusive indexing")
{
    const Word w = Word::from_string("10110");
    CHECK(w.subword(2, 4).to_string() == "011");
    CHECK(w.subword(1, 5).to_string() == "10110");
    CHECK(w.subword(3, 3).to_string() == "1");
    CHECK_THROWS_AS(w.subword(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(w.subword(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(w.subword(2, 6), std::invalid_argument);
}

TEST_CASE("lexicographic pre-order compares the overlap only")
{
    const Word a = Word::from_string("10");
    const Word b = Word::from_string("1010");
    CHECK(lex_compare_prefix(a, b) == 0);  // prefix of each other
    CHECK(lex_compare_prefix(Word::from_string("11"), b) > 0);
    CHECK(lex_compare_prefix(Word::from_string("01"), a) < 0);
}

TEST_CASE("full 2-shift enumerates all words")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 1}});
    const Language lang = enumerate_language(*model, 3);
    CHECK(lang.count(1) == 2);
    CHECK(lang.count(2) == 4);
    CHECK(lang.count(3) == 8);
}

TEST_CASE("golden mean counts are Fibonacci")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    const Language lang = enumerate_language(*model, 12);
    const auto fib = oracles::fibonacci(16);
    for (int n = 1; n <= 12; ++n) CHECK(lang.count(n) == BigInt(fib[n + 2]));
    // cross-check against the brute-force string filter
    for (int n = 1; n <= 10; ++n)
        CHECK(lang.count_sz(n) == oracles::count_filtered(2, n, oracles::golden_ok));
}

TEST_CASE("beta-shift with z = 1010... matches the lexicographic filter")
{
    const auto model = beta_from_z(Word::from_string("10101010101010"));
    const Language lang = enumerate_language(*model, 3);
    CHECK(lang.count(1) == 2);
    CHECK(lang.count(2) == 3);
    CHECK(lang.count(3) == 5);
    const Language deeper = enumerate_language(*model, 10);
    for (int n = 1; n <= 10; ++n)
        CHECK(deeper.count_sz(n) ==
              oracles::count_filtered(2, n, [&](const std::string& w) {
                  return oracles::beta_lex_ok(w, "10101010101010");
              }));
}

TEST_CASE("trie is prefix-closed and factor-closed")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    const Language lang = enumerate_language(*model, 10);
    std::mt19937_64 rng(7);
    std::vector<Word> words = lang.words(10);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    for (int it = 0; it < 200; ++it) {
        const Word& w = words[pick(rng)];
        std::uniform_int_distribution<std::size_t> ij(1, w.size());
        std::size_t i = ij(rng), j = ij(rng);
        if (i > j) std::swap(i, j);
        CHECK(lang.contains(w.subword(i, j)));  // factors of admissible words are admissible
        CHECK(lang.contains(w.subword(1, j)));  // prefixes in particular
    }
}

TEST_CASE("log-counts are subadditive for enumerated languages")
{
    for (const auto& matrix : {std::vector<std::vector<int>>{{1, 1}, {1, 0}},
                               std::vector<std::vector<int>>{{1, 1}, {1, 1}}}) {
        const auto model = sft_from_matrix(matrix);
        const Language lang = enumerate_language(*model, 12);
        for (int m = 1; m <= 11; ++m)
            for (int n = 1; m + n <= 12; ++n)
                CHECK(lang.count(m + n) <= lang.count(m) * lang.count(n));
    }
}

TEST_CASE("re-enumeration is deterministic")
{
    const auto model = std::make_shared<SGapModel>(GapSet{{1, 2}, {}});
    const Language a = enumerate_language(*model, 10);
    const Language b = enumerate_language(*model, 10);
    std::ostringstream da, db;
    a.dump(da);
    b.dump(db);
    CHECK(da.str() == db.str());
}

TEST_CASE("dump lists words in lexicographic order")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    const Language lang = enumerate_language(*model, 4);
    std::ostringstream os;
    lang.dump(os);
    std::istringstream is(os.str());
    std::string prev, cur;
    std::size_t lines = 0;
    while (std::getline(is, cur)) {
        if (lines > 0) CHECK(prev < cur);
        prev = cur;
        ++lines;
    }
    std::size_t total = 0;
    for (int n = 1; n <= 4; ++n) total += lang.count_sz(n);
    CHECK(lines == total);
}

TEST_CASE("collection counts: D = L, starts-with-0, and D <= L")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 8));
    const OrbitCollection whole = OrbitCollection::whole_language(lang);
    const auto whole_counts = collection_counts(whole, 8);
    for (int n = 1; n <= 8; ++n) CHECK(whole_counts[n - 1] == lang->count(n));

    const OrbitCollection zero_start(lang, [](const Word& w) { return w.front() == 0; }, "start0");
    const auto zc = collection_counts(zero_start, 4);
    CHECK(zc[0] == 1);
    CHECK(zc[1] == 2);
    CHECK(zc[2] == 3);
    CHECK(zc[3] == 5);
    for (int n = 1; n <= 4; ++n) CHECK(zc[n - 1] <= lang->count(n));

    // counts are reproducible from the predicate
    const OrbitCollection again(lang, [](const Word& w) { return w.front() == 0; }, "start0");
    CHECK(collection_counts(again, 4) == zc);
}

TEST_CASE("concat_check mirrors admissibility of the concatenation")
{
    const auto golden = sft_from_matrix({{1, 1}, {1, 0}});
    const auto full = sft_from_matrix({{1, 1}, {1, 1}});
    const Word one = Word::from_string("1"), zero = Word::from_string("0"), empty;
    CHECK(concat_check(one, zero, one, *golden));
    CHECK_FALSE(concat_check(one, empty, one, *golden));
    CHECK(concat_check(one, empty, one, *full));
    CHECK_THROWS_AS(concat_check(Word::from_string("2"), empty, one, *golden),
                    std::invalid_argument);
}

TEST_CASE("depth budget and memory budget are hard limits")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 1}});
    EnumerateOptions opt;
    opt.depth_budget = 5;
    CHECK_THROWS_AS(enumerate_language(*model, 6, opt), ResourceError);
    EnumerateOptions tiny;
    tiny.memory_budget = 64;  // bytes
    CHECK_THROWS_AS(enumerate_language(*model, 12, tiny), ResourceError);
}

namespace {
// successor oracle claims both symbols always extend; membership rejects "11"
std::optional<WalkState> bad_step(WalkState, Symbol) { return 0u; }
bool gm_member(const Word& w)
{
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == 1 && w[i + 1] == 1) return false;
    return true;
}
}  // namespace

TEST_CASE("unsound successor oracle trips the consistency probe")
{
    const CustomModel bad(2, &bad_step, &gm_member);
    CHECK_THROWS_AS(enumerate_language(bad, 6), ConsistencyError);
}

TEST_CASE("streaming counts agree with the trie")
{
    const auto model = std::make_shared<SGapModel>(GapSet{{1, 3}, {}});
    const Language lang = enumerate_language(*model, 12);
    const auto sc = streaming_counts(*model, 12);
    for (int n = 1; n <= 12; ++n) CHECK(sc[n - 1] == lang.count(n));
}
