#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "shiftlab/decomposition.hpp"
#include "shiftlab/language.hpp"

using namespace shiftlab;

namespace {

std::shared_ptr<const BetaModel> beta_1010(int len = 24)
{
    std::vector<Symbol> z;
    for (int i = 0; i < len / 2; ++i) {
        z.push_back(1);
        z.push_back(0);
    }
    return std::make_shared<const BetaModel>(Word(std::move(z)));
}

}  // namespace

TEST_CASE("beta canonical: the spine is the only never-returning word per length")
{
    const auto model = beta_1010();
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 12));
    const Decomposition dec = beta_canonical_decomposition(model, lang);
    for (int n = 1; n <= 12; ++n) {
        CHECK(dec.cs().count(n) == 1);
        CHECK(dec.cp().count(n) == 0);  // C^p = {epsilon}
    }
    // G . C^s covers: every word splits with empty prefix
    for (int n = 1; n <= 10; ++n)
        lang->for_each_word(n, [&](const Word& w) {
            const WordSplit s = dec.split(w);
            CHECK(s.prefix.empty());
            CHECK(s.prefix.concat(s.core).concat(s.suffix) == w);
        });
}

TEST_CASE("trivial decomposition: G = L, obstructions empty")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 1}});
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 8));
    const Decomposition dec = trivial_decomposition(lang);
    for (int n = 1; n <= 8; ++n) {
        CHECK(dec.g().count(n) == lang->count(n));
        CHECK(dec.obstructions().count(n) == 0);
    }
    const WordSplit s = dec.split(Word::from_string("0110"));
    CHECK(s.core.to_string() == "0110");
}

TEST_CASE("threshold rule on the golden mean: C^p = words with few 1s")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 12));
    const Potential phi = Potential::locally_constant(
        1, {{Word::from_string("0"), 0.0}, {Word::from_string("1"), -1.0}});
    const double r = 0.5;
    const Decomposition dec = threshold_decomposition(lang, phi, r);

    // brute force: S_n phi(w) = -#1s(w) >= -n/2  <=>  #1s <= n/2
    for (int n = 1; n <= 12; ++n) {
        std::size_t expect = 0;
        lang->for_each_word(n, [&](const Word& w) {
            int ones = 0;
            for (Symbol a : w.symbols) ones += a;
            if (ones <= n / 2.0) ++expect;
        });
        CHECK(dec.cp().count(n) == BigInt(expect));
    }

    // split then concatenate is the identity on every enumerated word
    for (int n = 1; n <= 12; ++n)
        lang->for_each_word(n, [&](const Word& w) {
            const WordSplit s = dec.split(w);
            CHECK(s.prefix.concat(s.core).concat(s.suffix) == w);
            CHECK(s.suffix.empty());
        });
}

TEST_CASE("G^M is monotone in M and exhausts the language")
{
    const auto model = beta_1010();
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 10));
    const Decomposition dec = beta_canonical_decomposition(model, lang);
    for (int n = 1; n <= 10; ++n) {
        BigInt prev = 0;
        for (int m = 0; m <= n; ++m) {
            const BigInt c = dec.gm(m).count(n);
            CHECK(c >= prev);
            prev = c;
        }
        CHECK(dec.gm(n).count(n) == lang->count(n));  // union over M reaches L_n
    }
    // G^M through the graph: membership = path ends at vertex <= M
    for (int n = 1; n <= 8; ++n)
        lang->for_each_word(n, [&](const Word& w) {
            const auto end = model->graph().path_end(w);
            REQUIRE(end.has_value());
            for (int m = 0; m <= 4; ++m)
                CHECK(dec.in_gm(w, m) == (*end <= static_cast<std::uint32_t>(m)));
        });
}

TEST_CASE("uniqueness hypotheses hold for the canonical beta decomposition")
{
    const auto model = beta_1010();
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 12));
    const Decomposition dec = beta_canonical_decomposition(model, lang);
    SpecOptions opt;
    opt.depth = 4;
    opt.tau_max = 5;
    const UniquenessReport rep =
        verify_uniqueness_hypotheses(*model, dec, {1, 2, 3}, opt, {6, 12});
    CHECK(rep.spec_all_certified);
    // h(C^s) = 0 from counts identically 1; gap against log beta = log phi
    CHECK(rep.h_obstruction_tail == doctest::Approx(0.0));
    CHECK(rep.gap_margin > 0.4);
    CHECK(rep.plausible);
    for (const auto& per : rep.per_m) {
        CHECK(per.spec.cert.tau <= per.m + 2);  // graph distance back to the base
        CHECK(per.min_density > 0.0);
        // the density lemma: some fixed fraction of all words
        CHECK(per.min_density <= 1.0);
    }
}

TEST_CASE("trivial decomposition reports a vacuous gap")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 1}});
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 10));
    const Decomposition dec = trivial_decomposition(lang);
    SpecOptions opt;
    opt.depth = 3;
    opt.tau_max = 2;
    const UniquenessReport rep = verify_uniqueness_hypotheses(*model, dec, {1, 2}, opt, {5, 10});
    CHECK(rep.obstructions_empty);
    CHECK(rep.plausible);
}

TEST_CASE("custom rule failing to cover a word names it")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 1}});
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 6));
    auto never = [](const Word&) { return false; };
    auto is_empty = [](const Word& w) { return w.empty(); };
    const Decomposition dec = custom_decomposition(lang, is_empty, never, is_empty, "broken");
    CHECK_THROWS_WITH_AS(dec.split(Word::from_string("01")),
                         doctest::Contains("01"), ConstructionError);
}
