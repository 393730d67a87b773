#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "shiftlab/language.hpp"
#include "shiftlab/measure.hpp"
#include "shiftlab/potential.hpp"
#include "shiftlab/shift_model.hpp"

using namespace shiftlab;

namespace {

const SftModel& golden_model()
{
    static const auto m = sft_from_matrix({{1, 1}, {1, 0}});
    return dynamic_cast<const SftModel&>(*m);
}

Potential log2_on_one()
{
    return Potential::locally_constant(
        1, {{Word::from_string("0"), 0.0}, {Word::from_string("1"), std::log(2.0)}});
}

}  // namespace

TEST_CASE("parry measure of the golden mean from Perron eigendata")
{
    const MarkovMeasure mu = parry_measure(golden_model());
    const double phi_ratio = oracles::kGoldenRatio;
    CHECK(mu.mass(Word::from_string("0")) == doctest::Approx(0.72360679775).epsilon(1e-9));
    CHECK(mu.mass(Word::from_string("1")) == doctest::Approx(0.27639320225).epsilon(1e-9));
    CHECK(mu.transition()[0][0] == doctest::Approx(1.0 / phi_ratio).epsilon(1e-9));
    CHECK(mu.transition()[0][1] == doctest::Approx(1.0 / (phi_ratio * phi_ratio)).epsilon(1e-9));
    CHECK(mu.transition()[1][0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mu.entropy() == doctest::Approx(oracles::kLogGolden).epsilon(1e-9));
    CHECK(mu.stationarity_defect() < 1e-9);
}

TEST_CASE("parry on the full shift is the fair Bernoulli measure")
{
    const auto full = sft_from_matrix({{1, 1}, {1, 1}});
    const MarkovMeasure mu = parry_measure(dynamic_cast<const SftModel&>(*full));
    CHECK(mu.mass(Word::from_string("0")) == doctest::Approx(0.5));
    CHECK(mu.mass(Word::from_string("0101")) == doctest::Approx(1.0 / 16.0));
    CHECK(mu.entropy() == doctest::Approx(std::log(2.0)));
}

TEST_CASE("permutation matrix gives zero entropy")
{
    const auto perm = sft_from_matrix({{0, 1}, {1, 0}});
    const MarkovMeasure mu = parry_measure(dynamic_cast<const SftModel&>(*perm));
    CHECK(mu.mass(Word::from_string("0")) == doctest::Approx(0.5));
    CHECK(mu.entropy() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("parry requires irreducibility")
{
    const auto red = sft_from_matrix({{1, 1}, {0, 1}});
    CHECK_THROWS_AS(parry_measure(dynamic_cast<const SftModel&>(*red)), ConstructionError);
}

TEST_CASE("weighted chain with phi = 0 is the Parry measure")
{
    const WeightedMarkov wm = weighted_gibbs_markov(golden_model(), Potential::constant(0.0));
    const MarkovMeasure parry = parry_measure(golden_model());
    CHECK(wm.log_rho == doctest::Approx(oracles::kLogGolden).epsilon(1e-9));
    const Language lang = enumerate_language(golden_model(), 6);
    for (int n = 1; n <= 6; ++n)
        lang.for_each_word(n, [&](const Word& w) {
            CHECK(wm.measure.mass(w) == doctest::Approx(parry.mass(w)).epsilon(1e-8));
        });
}

TEST_CASE("weighted chain: golden mean with log2-on-1 attains pressure log 2")
{
    const WeightedMarkov wm = weighted_gibbs_markov(golden_model(), log2_on_one());
    CHECK(wm.log_rho == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    const Potential phi = log2_on_one();
    const double attained = wm.measure.entropy() + wm.measure.integrate(phi);
    CHECK(attained == doctest::Approx(wm.log_rho).epsilon(1e-9));
}

TEST_CASE("full shift with phi = log t on 1 gives the (1/(1+t), t/(1+t)) Bernoulli")
{
    const auto full = sft_from_matrix({{1, 1}, {1, 1}});
    const double t = 3.0;
    const Potential phi = Potential::locally_constant(
        1, {{Word::from_string("0"), 0.0}, {Word::from_string("1"), std::log(t)}});
    const WeightedMarkov wm = weighted_gibbs_markov(dynamic_cast<const SftModel&>(*full), phi);
    CHECK(wm.measure.mass(Word::from_string("1")) == doctest::Approx(t / (1 + t)).epsilon(1e-9));
    CHECK(wm.measure.mass(Word::from_string("0")) == doctest::Approx(1 / (1 + t)).epsilon(1e-9));
    CHECK(wm.log_rho == doctest::Approx(std::log(1 + t)).epsilon(1e-9));
    // product structure: mass factorizes
    CHECK(wm.measure.mass(Word::from_string("11")) ==
          doctest::Approx(std::pow(t / (1 + t), 2)).epsilon(1e-9));
}

TEST_CASE("markov measures are additive, normalized, and shift invariant")
{
    const MarkovMeasure mu = parry_measure(golden_model());
    const Language lang = enumerate_language(golden_model(), 10);
    for (int n = 1; n <= 9; ++n) {
        double total = 0.0;
        lang.for_each_word(n, [&](const Word& w) {
            total += mu.mass(w);
            double ext = 0.0;
            for (int a = 0; a < 2; ++a) {
                Word wa = w;
                wa.push_back(static_cast<Symbol>(a));
                if (lang.contains(wa)) ext += mu.mass(wa);
            }
            CHECK(ext == doctest::Approx(mu.mass(w)).epsilon(1e-10));
            // sigma-invariance: sum over prepended symbols
            double pre = 0.0;
            for (int a = 0; a < 2; ++a) {
                Word aw;
                aw.push_back(static_cast<Symbol>(a));
                aw = aw.concat(w);
                if (lang.contains(aw)) pre += mu.mass(aw);
            }
            CHECK(pre == doctest::Approx(mu.mass(w)).epsilon(1e-10));
        });
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("empirical MME: exact additivity, normalization, and invariance defect <= d/n")
{
    const int n = 14, d = 3;
    const Language lang = enumerate_language(golden_model(), n);
    const EmpiricalMeasure mu = empirical_measure(golden_model(), lang, n, d);
    const Language shallow = enumerate_language(golden_model(), d + 1);
    for (int m = 1; m <= d; ++m) {
        BigRat total = 0;
        shallow.for_each_word(m, [&](const Word& w) {
            total += mu.exact_mass(w);
            if (m < d) {
                BigRat ext = 0;
                for (int a = 0; a < 2; ++a) {
                    Word wa = w;
                    wa.push_back(static_cast<Symbol>(a));
                    if (shallow.contains(wa)) ext += mu.exact_mass(wa);
                }
                CHECK(ext == mu.exact_mass(w));  // exact rational identity
            }
        });
        CHECK(total == 1);
    }
    // invariance defect in total variation: sigma_* mu needs depth d cylinders
    // to evaluate mu(sigma^{-1}[w]) for |w| = d-1
    BigRat defect = 0;
    shallow.for_each_word(d - 1, [&](const Word& w) {
        BigRat shifted = 0;
        for (int a = 0; a < 2; ++a) {
            Word aw;
            aw.push_back(static_cast<Symbol>(a));
            aw = aw.concat(w);
            if (shallow.contains(aw)) shifted += mu.exact_mass(aw);
        }
        const BigRat diff = shifted - mu.exact_mass(w);
        defect += diff < 0 ? BigRat(-diff) : diff;
    });
    defect /= 2;
    CHECK(defect <= BigRat(d, n));
}

TEST_CASE("empirical MME converges to Parry cylinder-wise")
{
    const int n = 14, d = 3;
    const Language lang = enumerate_language(golden_model(), n);
    const EmpiricalMeasure mu = empirical_measure(golden_model(), lang, n, d);
    const MarkovMeasure parry = parry_measure(golden_model());
    double max_diff = 0.0;
    const Language shallow = enumerate_language(golden_model(), d);
    for (int m = 1; m <= d; ++m)
        shallow.for_each_word(m, [&](const Word& w) {
            max_diff = std::max(max_diff, std::abs(mu.mass(w) - parry.mass(w)));
        });
    CHECK(max_diff < 0.03);  // tightens as n grows; the acceptance suite pins n = 18
}

TEST_CASE("full shift empirical MME is exactly uniform")
{
    const auto full = sft_from_matrix({{1, 1}, {1, 1}});
    const Language lang = enumerate_language(*full, 10);
    const EmpiricalMeasure mu = empirical_measure(*full, lang, 10, 3);
    const Language shallow = enumerate_language(*full, 3);
    for (int m = 1; m <= 3; ++m)
        shallow.for_each_word(m, [&](const Word& w) {
            CHECK(mu.exact_mass(w) == BigRat(1, 1 << m));
        });
}

TEST_CASE("empirical construction rejects depth >= n")
{
    const Language lang = enumerate_language(golden_model(), 6);
    CHECK_THROWS_AS(empirical_measure(golden_model(), lang, 6, 6), std::invalid_argument);
}

TEST_CASE("gibbs check: Parry passes at log phi, fails at h = 0.4")
{
    const Language lang = enumerate_language(golden_model(), 16);
    const MarkovMeasure mu = parry_measure(golden_model());
    const GibbsReport good = gibbs_check(mu, lang, 16, oracles::kLogGolden);
    CHECK(good.pass);
    CHECK(good.k_final < 3.0);
    const GibbsReport bad = gibbs_check(mu, lang, 16, 0.4);
    CHECK_FALSE(bad.pass);
}

TEST_CASE("gibbs check: biased Bernoulli against log 2 drifts")
{
    const auto full = sft_from_matrix({{1, 1}, {1, 1}});
    const Language lang = enumerate_language(*full, 14);
    const MarkovMeasure biased = bernoulli_measure({0.6, 0.4});
    const GibbsReport rep = gibbs_check(biased, lang, 14, std::log(2.0));
    CHECK_FALSE(rep.pass);  // ratio (0.6*2)^n on 0^n
    const GibbsReport trivial = gibbs_check(biased, lang, 1, std::log(2.0));
    CHECK(trivial.stable);  // a single level cannot drift
}

TEST_CASE("static entropy per symbol decreases toward the rate")
{
    const MarkovMeasure mu = parry_measure(golden_model());
    const Language lang = enumerate_language(golden_model(), 12);
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= 12; ++n) {
        const double h = static_entropy(mu, lang, n) / n;
        CHECK(h <= prev + 1e-12);
        CHECK(h >= mu.entropy() - 1e-12);
        prev = h;
    }
}

TEST_CASE("SMB: sampled orbits concentrate at the entropy")
{
    const MarkovMeasure mu = parry_measure(golden_model());
    const SmbCheck c = smb_check(mu, 10000, 24, 12345);
    CHECK(c.deviation_sigmas < 3.0);
}

TEST_CASE("periodic counts: golden mean gives the Lucas sequence (trace oracle)")
{
    const Language lang = enumerate_language(golden_model(), 12);
    const PeriodicReport rep = periodic_orbits(golden_model(), lang, 12, 3);
    CHECK(rep.certified_exact);
    const auto lucas = oracles::lucas(13);
    for (int n = 1; n <= 12; ++n) {
        CHECK(rep.per_counts[n - 1] == BigInt(lucas[n]));
        // trace oracle
        BigIntMatrix a(2);
        a.at(0, 0) = a.at(0, 1) = a.at(1, 0) = 1;
        CHECK(rep.per_counts[n - 1] == a.pow(n).trace());
    }
}

TEST_CASE("periodic counts: full shift has 2^n")
{
    const auto full = sft_from_matrix({{1, 1}, {1, 1}});
    const Language lang = enumerate_language(*full, 10);
    const PeriodicReport rep = periodic_orbits(*full, lang, 10, 2);
    for (int n = 1; n <= 10; ++n) CHECK(rep.per_counts[n - 1] == BigInt(1) << n);
}

TEST_CASE("periodic equidistribution approaches Parry")
{
    const Language lang = enumerate_language(golden_model(), 12);
    const PeriodicReport rep = periodic_orbits(golden_model(), lang, 12, 3);
    const MarkovMeasure parry = parry_measure(golden_model());
    double dev = 0.0;
    for (const auto& [w, m] : rep.cylinder_masses)
        dev = std::max(dev, std::abs(m - parry.mass(w)));
    CHECK(dev < 0.05);
}

TEST_CASE("sofic periodic decision through the relation digraph")
{
    // even shift: 10^k 1... periodic words need even interior gaps and an
    // even seam gap
    const auto model = std::make_shared<SoficModel>(
        2, 2, std::vector<LabeledEdge>{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    CHECK(periodic_admissible(*model, Word::from_string("100")) == true);   // seam gap 2
    CHECK(periodic_admissible(*model, Word::from_string("10")) == false);   // gap 1 forever
    CHECK(periodic_admissible(*model, Word::from_string("0")) == true);     // 0^inf
    CHECK(periodic_admissible(*model, Word::from_string("1")) == true);     // 1^inf
}

TEST_CASE("variational candidates from exact Markov data")
{
    const VariationalCandidate parry =
        variational_candidate("parry", parry_measure(golden_model()));
    CHECK(parry.entropy == doctest::Approx(oracles::kLogGolden).epsilon(1e-9));
    const Potential phi = log2_on_one();
    const WeightedMarkov wm = weighted_gibbs_markov(golden_model(), phi);
    const VariationalCandidate eq = variational_candidate("weighted", wm.measure, &phi);
    CHECK(eq.value() == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}
