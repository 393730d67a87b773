#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "shiftlab/beta_shift.hpp"
#include "shiftlab/language.hpp"
#include "shiftlab/specification.hpp"

using namespace shiftlab;

TEST_CASE("golden mean: tau = 1, the connector 0 always works")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 6));
    SpecOptions opt;
    opt.depth = 6;
    opt.tau_max = 4;
    const SpecCheckResult res = check_specification(*model, lang, opt);
    REQUIRE(res.certified());
    CHECK(res.cert.tau == 1);
    CHECK(res.cert.strong_tau == 1);
    // every recorded glue revalidates through concat_check
    for (const auto& e : res.cert.examples) {
        CHECK(concat_check(e.v, e.u, e.w, *model));
        CHECK(e.u.size() <= static_cast<std::size_t>(res.cert.tau));
    }
}

TEST_CASE("full shift: tau = 0")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 1}});
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 5));
    SpecOptions opt;
    opt.depth = 5;
    opt.tau_max = 3;
    const SpecCheckResult res = check_specification(*model, lang, opt);
    REQUIRE(res.certified());
    CHECK(res.cert.tau == 0);
    CHECK(res.cert.strong_tau == 0);
}

TEST_CASE("periodic strong specification holds on the golden mean")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 5));
    SpecOptions opt;
    opt.depth = 5;
    opt.tau_max = 3;
    opt.check_periodic = true;
    const SpecCheckResult res = check_specification(*model, lang, opt);
    REQUIRE(res.certified());
    CHECK(res.cert.periodic_strong);
}

TEST_CASE("beta shift with a long 0-run in z: counterexample pair appears")
{
    // z = 1 0^12 1...: the pair (1,1) cannot be glued with tau <= 6 because
    // 1 0^t 1 is inadmissible for t < 12
    Word z = Word::from_string("1");
    for (int i = 0; i < 12; ++i) z.push_back(0);
    z = z.concat(Word::from_string("1"));
    for (int i = 0; i < 14; ++i) z.push_back(0);  // certify enough depth
    const auto model = beta_from_z(z);
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 8));
    SpecOptions opt;
    opt.depth = 8;
    opt.tau_max = 6;
    const SpecCheckResult res = check_specification(*model, lang, opt);
    REQUIRE(res.status == SpecCheckResult::Status::Counterexample);
    // the found pair really has no connector: brute-force certificate
    for (int t = 0; t <= opt.tau_max; ++t)
        for (const std::string& us : oracles::all_strings(model->alphabet_size(), t)) {
            const Word u = Word::from_string(us);
            CHECK_FALSE(concat_check(res.cex_v, u, res.cex_w, *model));
        }
}

TEST_CASE("bounded 0-runs in z admit a certificate")
{
    const auto model = beta_from_z(Word::from_string("110110110110110110"));
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 5));
    SpecOptions opt;
    opt.depth = 5;
    opt.tau_max = 4;
    const SpecCheckResult res = check_specification(*model, lang, opt);
    REQUIRE(res.certified());
    CHECK(res.cert.tau <= 2);  // longest 0-run is 1
}

TEST_CASE("inconclusive when glued words outrun the certified depth")
{
    const auto model = beta_from_z(Word::from_string("101010"));
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 6));
    SpecOptions opt;
    opt.depth = 6;
    opt.tau_max = 4;  // 2*6+4 > 6 certified
    const SpecCheckResult res = check_specification(*model, lang, opt);
    CHECK(res.status == SpecCheckResult::Status::Inconclusive);
}

TEST_CASE("entropy production: golden mean words 0 and 1 at tau = 1")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    const EntropyProductionResult res = entropy_production_bound(
        *model, 1, Word::from_string("0"), Word::from_string("1"), 8);
    CHECK(res.injective);
    CHECK(res.max_k_verified == 8);
    for (int k = 1; k <= 8; ++k) CHECK(res.image_counts[k - 1] == BigInt(1) << k);
    CHECK(res.bound == doctest::Approx(std::log(2.0) / 2.0));
    CHECK(res.bound <= oracles::kLogGolden);
}

TEST_CASE("entropy production: full shift bound log 2 is tight")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 1}});
    const EntropyProductionResult res = entropy_production_bound(
        *model, 0, Word::from_string("0"), Word::from_string("1"), 10);
    CHECK(res.injective);
    CHECK(res.bound == doctest::Approx(std::log(2.0)));
}

TEST_CASE("entropy production: beta shift z = 1010...")
{
    const auto model = beta_from_z(Word::from_string(std::string("10101010101010101010"
                                                                 "101010101010101010")));
    const EntropyProductionResult res = entropy_production_bound(
        *model, 2, Word::from_string("10"), Word::from_string("00"), 4);
    CHECK(res.injective);
    CHECK(res.bound == doctest::Approx(std::log(2.0) / 4.0));
}

TEST_CASE("entropy production argument validation")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    CHECK_THROWS_AS(entropy_production_bound(*model, 1, Word::from_string("0"),
                                             Word::from_string("0"), 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(entropy_production_bound(*model, 1, Word::from_string("0"),
                                             Word::from_string("01"), 4),
                    std::invalid_argument);
}

TEST_CASE("surgery: full 2-shift over the golden mean meets the predicted gain")
{
    const auto x = sft_from_matrix({{1, 1}, {1, 1}});
    const auto y = sft_from_matrix({{1, 1}, {1, 0}});
    const SurgeryReport rep =
        subshift_gap_check(*x, *y, Word::from_string("11"), 0, 4, 6, 2);
    CHECK(rep.pass);
    CHECK(rep.y_count == 121393);            // #L_24(golden) = F_26
    CHECK(rep.c_constant == 3);              // #L_2(golden)
    CHECK(rep.realized == 270090);           // frozen from the exhaustive construction
    CHECK(rep.realized >= rep.predicted_binom);
    CHECK(rep.realized >= rep.predicted_loose);
    CHECK(rep.max_multiplicity <= rep.multiplicity_bound);
}

TEST_CASE("surgery: golden mean over the fixed point 0^inf")
{
    const auto x = sft_from_matrix({{1, 1}, {1, 0}});
    const auto y = sft_from_matrix({{1, 0}, {0, 0}});  // only 0^inf survives
    const SurgeryReport rep = subshift_gap_check(*x, *y, Word::from_string("1"), 1, 4, 6, 2);
    CHECK(rep.pass);
    CHECK(rep.y_count == 1);
    CHECK(rep.realized == 5);  // one per choice of the surgered boundary
    CHECK(rep.max_multiplicity == 1);
}

TEST_CASE("surgery rejects a marker inside the subshift")
{
    const auto x = sft_from_matrix({{1, 1}, {1, 1}});
    const auto y = sft_from_matrix({{1, 1}, {1, 0}});
    CHECK_THROWS_AS(subshift_gap_check(*x, *y, Word::from_string("10"), 0, 4, 6, 2),
                    std::invalid_argument);
}
