#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "shiftlab/language.hpp"
#include "shiftlab/potential.hpp"
#include "shiftlab/shift_model.hpp"

using namespace shiftlab;

namespace {

Potential geometric_series(double base0, double base1, int big_j)
{
    std::vector<double> coeffs;
    for (int j = 0; j <= big_j; ++j) coeffs.push_back(std::pow(2.0, -j));
    return Potential::holder_series(std::move(coeffs), {base0, base1}, std::pow(2.0, -big_j));
}

Potential harmonic_series(int big_j)
{
    std::vector<double> coeffs{0.0};  // c_0 unused so the sums match 1/j
    for (int j = 1; j <= big_j; ++j) coeffs.push_back(1.0 / j);
    return Potential::holder_series(std::move(coeffs), {0.0, 1.0});
}

}  // namespace

TEST_CASE("birkhoff bracket of a constant is exact")
{
    const Potential c = Potential::constant(0.7);
    const Interval iv = birkhoff_bracket(c, Word::from_string("0101"));
    CHECK(iv.lo == doctest::Approx(2.8));
    CHECK(iv.hi == doctest::Approx(2.8));
}

TEST_CASE("window-1 potentials evaluate exactly on any word")
{
    const Potential phi = Potential::locally_constant(
        1, {{Word::from_string("0"), 0.0}, {Word::from_string("1"), std::log(2.0)}});
    const Interval iv = birkhoff_bracket(phi, Word::from_string("101"));
    CHECK(iv.lo == doctest::Approx(2.0 * std::log(2.0)));
    CHECK(iv.width() == doctest::Approx(0.0));
    CHECK_THROWS_AS(
        birkhoff_bracket(phi, Word::from_string("2")), std::invalid_argument);
}

TEST_CASE("window-2 brackets become exact with extension context")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    const Language lang = enumerate_language(*model, 8);
    std::map<Word, double> table;
    lang.for_each_word(2, [&](const Word& w) { table[w] = 0.3 * w[0] - 0.7 * w[1]; });
    const Potential phi = Potential::locally_constant(2, table);

    const Word w = Word::from_string("010");
    // S_3 phi over [w]: terms at 01, 10, 0? -- the last depends on the next symbol
    const Interval no_ctx = birkhoff_bracket(phi, w);
    const Interval ctx = birkhoff_bracket(phi, w, &lang);
    CHECK(ctx.lo >= no_ctx.lo - 1e-12);
    CHECK(ctx.hi <= no_ctx.hi + 1e-12);
    // exact interval: extensions 00 and 01 give last terms 0.0 and -0.7
    const double head = (0.3 * 0 - 0.7 * 1) + (0.3 * 1 - 0.7 * 0);
    CHECK(ctx.lo == doctest::Approx(head - 0.7));
    CHECK(ctx.hi == doctest::Approx(head - 0.0));
}

TEST_CASE("series bracket width telescopes the variations")
{
    const Potential phi = geometric_series(0.0, 1.0, 30);
    const Word w = Word::from_string("10110");
    const Interval iv = birkhoff_bracket(phi, w);
    CHECK(iv.width() == doctest::Approx(phi.variation_sum(5)).epsilon(1e-9));
}

TEST_CASE("cocycle: the bracket of a word sits inside the sum of its parts")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    const Language lang = enumerate_language(*model, 10);
    const Potential phi = geometric_series(-0.5, 1.0, 24);
    lang.for_each_word(8, [&](const Word& w) {
        const Interval whole = birkhoff_bracket(phi, w);
        const Interval left = birkhoff_bracket(phi, w.subword(1, 3));
        const Interval right = birkhoff_bracket(phi, w.subword(4, 8));
        CHECK(whole.lo >= left.lo + right.lo - 1e-9);
        CHECK(whole.hi <= left.hi + right.hi + 1e-9);
    });
}

TEST_CASE("bowen check: locally constant potentials have V = 0 past the window")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 12));
    std::map<Word, double> table;
    lang->for_each_word(2, [&](const Word& w) { table[w] = 0.2 * w[0] + 1.1 * w[1]; });
    const Potential phi = Potential::locally_constant(2, table);
    const BowenReport rep = bowen_check(phi, OrbitCollection::whole_language(lang), 12);
    CHECK(rep.pass);
    for (const auto& row : rep.rows)
        if (row.n >= 2) CHECK(row.v_max == doctest::Approx(0.0));
}

TEST_CASE("bowen check: summable variations plateau under the closed-form bound")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 1}});
    const Potential phi = geometric_series(0.0, 1.0, 60);
    const BowenReport rep = bowen_check(phi, *model, 40, 256);
    CHECK(rep.pass);
    // closed form: osc(g) * sum_j j c_j = sum_j j 2^{-j} = 2
    CHECK(rep.v_estimate <= 2.0 + phi.dropped_tail() * 40 + 1e-9);
    const double mid = rep.rows[19].running_max;
    CHECK(rep.rows[39].running_max <= mid * 1.10 + 1e-12);
}

TEST_CASE("bowen check: harmonic variations keep growing and fail")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 1}});
    const Potential phi = harmonic_series(64);
    const BowenReport rep = bowen_check(phi, *model, 48, 128);
    CHECK_FALSE(rep.pass);
    CHECK(rep.rows[47].running_max > rep.rows[23].running_max * 1.10);
}

TEST_CASE("constant shifts do not change bowen widths")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 1}});
    const Potential phi = geometric_series(0.0, 1.0, 40);
    const Potential shifted = phi.shifted(3.25);
    const BowenReport a = bowen_check(phi, *model, 20, 64);
    const BowenReport b = bowen_check(shifted, *model, 20, 64);
    for (int n = 0; n < 20; ++n)
        CHECK(a.rows[n].v_max == doctest::Approx(b.rows[n].v_max).epsilon(1e-12));
}

TEST_CASE("table validation catches missing admissible words")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    const Language lang = enumerate_language(*model, 4);
    const Potential incomplete =
        Potential::locally_constant(2, {{Word::from_string("00"), 1.0}});
    CHECK_THROWS_AS(incomplete.validate_against(lang), std::invalid_argument);
}
