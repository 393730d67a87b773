#include <doctest.h>

#include <sstream>

#include "shiftlab/beta_shift.hpp"
#include "shiftlab/language.hpp"
#include "shiftlab/model_config.hpp"
#include "shiftlab/reports.hpp"
#include "shiftlab/specification.hpp"

using namespace shiftlab;

TEST_CASE("config parsing: key=value lines, comments, strictness")
{
    std::istringstream in("# golden mean\nkind=sft\nmatrix=1,1;1,0\n");
    const KeyValues kv = parse_key_values(in);
    CHECK(kv.at("kind") == "sft");
    CHECK_NOTHROW(reject_unknown_keys(kv));
    const auto model = model_from_config(kv);
    CHECK(model->kind() == "sft");
    CHECK(enumerate_language(*model, 4).count(4) == 8);
}

TEST_CASE("unknown and duplicate keys are rejected")
{
    std::istringstream dup("kind=sft\nkind=sft\n");
    CHECK_THROWS_AS(parse_key_values(dup), ConfigError);
    std::istringstream unk("kind=sft\nmatrix=1,1;1,0\nmystery=1\n");
    const KeyValues kv = parse_key_values(unk);
    CHECK_THROWS_AS(reject_unknown_keys(kv), ConfigError);
    std::istringstream noeq("kind=sft\nmatrix\n");
    CHECK_THROWS_AS(parse_key_values(noeq), ConfigError);
}

TEST_CASE("beta configs accept z-prefixes and rational beta")
{
    std::istringstream z("kind=beta\nz=2102001\n");
    const auto mz = model_from_config(parse_key_values(z));
    CHECK(mz->alphabet_size() == 3);

    std::istringstream b("kind=beta\nbeta=101/40\ndigits=10\n");
    const auto mb = model_from_config(parse_key_values(b));
    CHECK(mb->certified_depth() == 10);
    // derived prefix starts with the displayed digits
    const auto* beta = dynamic_cast<const BetaModel*>(mb.get());
    REQUIRE(beta != nullptr);
    CHECK(beta->z().to_string().substr(0, 7) == "2102001");
}

TEST_CASE("sgap configs parse finite parts and arithmetic tails")
{
    std::istringstream in("kind=sgap\nS=1,2,5+3k\n");
    const auto model = model_from_config(parse_key_values(in));
    const auto* sgap = dynamic_cast<const SGapModel*>(model.get());
    REQUIRE(sgap != nullptr);
    CHECK(sgap->gaps().contains(1));
    CHECK(sgap->gaps().contains(8));
    CHECK_FALSE(sgap->gaps().contains(4));
    CHECK(sgap->gaps().unbounded());
}

TEST_CASE("sofic configs build labeled automata")
{
    std::istringstream in("kind=sofic\nstates=2\nalphabet=2\nedges=0:1>0;0:0>1;1:0>0\n");
    const auto model = model_from_config(parse_key_values(in));
    CHECK(model->membership(Word::from_string("1001")));
    CHECK_FALSE(model->membership(Word::from_string("1010010")));  // odd gap between 1s
}

TEST_CASE("potential configs: locally constant and series")
{
    std::istringstream lc("kind=sft\nmatrix=1,1;1,0\npotential.kind=locally_constant\n"
                          "potential.window=1\npotential.table=0:0,1:0.6931\n");
    const KeyValues kv = parse_key_values(lc);
    const auto phi = potential_from_config(kv);
    REQUIRE(phi.has_value());
    CHECK(phi->window() == 1);
    CHECK(phi->table_value(Word::from_string("1")) == doctest::Approx(0.6931));

    std::istringstream sr("kind=sft\nmatrix=1,1;1,1\npotential.kind=series\n"
                          "potential.coeffs=1,0.5,0.25\npotential.base=0,1\npotential.tail=0.25\n");
    const auto psi = potential_from_config(parse_key_values(sr));
    REQUIRE(psi.has_value());
    CHECK(psi->kind() == Potential::Kind::HolderSeries);
    CHECK(psi->dropped_tail() == doctest::Approx(0.25));

    std::istringstream none("kind=sft\nmatrix=1,1;1,1\n");
    CHECK_FALSE(potential_from_config(parse_key_values(none)).has_value());
}

TEST_CASE("spec reports round-trip through JSON")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    auto lang = std::make_shared<const Language>(enumerate_language(*model, 5));
    SpecOptions opt;
    opt.depth = 5;
    opt.tau_max = 3;
    const SpecCheckResult res = check_specification(*model, lang, opt);
    std::ostringstream os;
    emit_spec(os, res, ReportFormat::Json);
    const SpecCheckResult back = parse_spec_json(os.str());
    CHECK(back.status == res.status);
    CHECK(back.cert.tau == res.cert.tau);
    CHECK(back.cert.strong_tau == res.cert.strong_tau);
    CHECK(back.cert.depth == res.cert.depth);
    CHECK(back.cert.basis == res.cert.basis);
    REQUIRE(back.cert.examples.size() == res.cert.examples.size());
    for (std::size_t i = 0; i < back.cert.examples.size(); ++i) {
        CHECK(back.cert.examples[i].v == res.cert.examples[i].v);
        CHECK(back.cert.examples[i].u == res.cert.examples[i].u);
        CHECK(back.cert.examples[i].w == res.cert.examples[i].w);
    }
}

TEST_CASE("emitters are deterministic")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 0}});
    const Language lang = enumerate_language(*model, 12);
    const GrowthEstimate g = entropy_estimate(lang, {6, 12});
    std::ostringstream a, b;
    emit_growth(a, g, ReportFormat::Csv, "entropy");
    emit_growth(b, g, ReportFormat::Csv, "entropy");
    CHECK(a.str() == b.str());
    std::ostringstream ja, jb;
    emit_growth(ja, g, ReportFormat::Json, "entropy");
    emit_growth(jb, g, ReportFormat::Json, "entropy");
    CHECK(ja.str() == jb.str());
}

TEST_CASE("csv growth table carries the documented columns")
{
    const auto model = sft_from_matrix({{1, 1}, {1, 1}});
    const Language lang = enumerate_language(*model, 6);
    const GrowthEstimate g = entropy_estimate(lang, {3, 6});
    std::ostringstream os;
    emit_growth(os, g, ReportFormat::Csv, "entropy");
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "n,count_or_logsum,point_estimate,running_fekete");
    int rows = 0;
    std::string line;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 6);
}
