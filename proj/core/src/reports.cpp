#include "shiftlab/reports.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace shiftlab {

using nlohmann::json;

namespace {

std::ostream& num(std::ostream& os)
{
    os << std::setprecision(12);
    return os;
}

void dump_json(std::ostream& os, json j)
{
    j["schema_version"] = kReportSchemaVersion;
    os << j.dump(2) << '\n';
}

}  // namespace

ReportFormat report_format_from_string(const std::string& s)
{
    if (s == "table") return ReportFormat::Table;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    throw std::invalid_argument("unknown format '" + s + "' (want table|csv|json)");
}

void emit_growth(std::ostream& os, const GrowthEstimate& g, ReportFormat fmt,
                 const std::string& label)
{
    const int n_max = static_cast<int>(g.log_values.size());
    if (fmt == ReportFormat::Json) {
        json j;
        j["label"] = label;
        j["log_values"] = g.log_values;
        j["point"] = g.point;
        j["window"] = {g.window.lo, g.window.hi};
        j["fekete"] = g.fekete;
        j["fekete_certified"] = g.fekete_certified;
        j["regression"] = g.regression;
        j["tail_min"] = g.tail_min;
        j["tail_max"] = g.tail_max;
        dump_json(os, std::move(j));
        return;
    }
    if (fmt == ReportFormat::Csv) {
        os << "n,count_or_logsum,point_estimate,running_fekete\n";
        double run = g.point[0];
        for (int n = 1; n <= n_max; ++n) {
            run = std::min(run, g.point[n - 1]);
            num(os) << n << ',' << g.log_values[n - 1] << ',' << g.point[n - 1] << ',' << run << '\n';
        }
        return;
    }
    os << label << " growth estimate (window " << g.window.lo << ":" << g.window.hi << ")\n";
    os << std::setw(4) << "n" << std::setw(16) << "log_value" << std::setw(14) << "a_n/n"
       << std::setw(14) << "fekete" << '\n';
    double run = g.point[0];
    for (int n = 1; n <= n_max; ++n) {
        run = std::min(run, g.point[n - 1]);
        num(os) << std::setw(4) << n << std::setw(16) << g.log_values[n - 1] << std::setw(14)
                << g.point[n - 1] << std::setw(14) << run << '\n';
    }
    num(os) << "regression estimate: " << g.regression << "\n";
    num(os) << "tail bracket: [" << g.tail_min << ", " << g.tail_max << "]";
    if (g.fekete_certified) num(os) << "  (fekete upper bound " << g.fekete << ")";
    os << '\n';
}

void emit_gibbs(std::ostream& os, const GibbsReport& rep, ReportFormat fmt)
{
    if (fmt == ReportFormat::Json) {
        json j;
        j["rows"] = json::array();
        for (const auto& r : rep.rows)
            j["rows"].push_back({{"n", r.n}, {"K_lower", r.k_lower}, {"K_upper", r.k_upper}});
        j["K_final"] = rep.k_final;
        j["stable"] = rep.stable;
        j["pass"] = rep.pass;
        dump_json(os, std::move(j));
        return;
    }
    if (fmt == ReportFormat::Csv) {
        os << "n,K_lower,K_upper\n";
        for (const auto& r : rep.rows) num(os) << r.n << ',' << r.k_lower << ',' << r.k_upper << '\n';
        return;
    }
    os << std::setw(4) << "n" << std::setw(16) << "K_lower" << std::setw(16) << "K_upper" << '\n';
    for (const auto& r : rep.rows)
        num(os) << std::setw(4) << r.n << std::setw(16) << r.k_lower << std::setw(16) << r.k_upper << '\n';
    num(os) << "running constant " << rep.k_final << (rep.stable ? " (stable)" : " (drifting)") << '\n'
            << "verdict: " << (rep.pass ? "PASS" : "FAIL") << '\n';
}

void emit_spec(std::ostream& os, const SpecCheckResult& res, ReportFormat fmt)
{
    if (fmt == ReportFormat::Json) {
        json j;
        switch (res.status) {
            case SpecCheckResult::Status::Certified: j["status"] = "certified"; break;
            case SpecCheckResult::Status::Counterexample: j["status"] = "counterexample"; break;
            case SpecCheckResult::Status::Inconclusive: j["status"] = "inconclusive"; break;
        }
        if (res.certified()) {
            j["tau"] = res.cert.tau;
            j["strong_tau"] = res.cert.strong_tau;
            j["periodic_strong"] = res.cert.periodic_strong;
            j["depth"] = res.cert.depth;
            j["variant"] = res.cert.strong_tau >= 0 ? "strong" : "leq-tau";
            j["basis"] = res.cert.basis;
            j["examples"] = json::array();
            for (const auto& e : res.cert.examples)
                j["examples"].push_back(
                    {{"v", e.v.to_string()}, {"u", e.u.to_string()}, {"w", e.w.to_string()}});
        } else if (res.status == SpecCheckResult::Status::Counterexample) {
            j["counterexample"] = {{"v", res.cex_v.to_string()}, {"w", res.cex_w.to_string()}};
        }
        if (!res.note.empty()) j["note"] = res.note;
        dump_json(os, std::move(j));
        return;
    }
    switch (res.status) {
        case SpecCheckResult::Status::Certified:
            os << "specification certified: tau=" << res.cert.tau;
            if (res.cert.strong_tau >= 0) os << " (strong tau=" << res.cert.strong_tau << ")";
            if (res.cert.periodic_strong) os << " (periodic strong)";
            os << " at depth " << res.cert.depth << '\n' << "basis: " << res.cert.basis << '\n';
            for (const auto& e : res.cert.examples)
                os << "  glue " << e.v.to_string() << " + '" << e.u.to_string() << "' + "
                   << e.w.to_string() << '\n';
            break;
        case SpecCheckResult::Status::Counterexample:
            os << "counterexample pair: v=" << res.cex_v.to_string() << " w=" << res.cex_w.to_string()
               << " (" << res.note << ")\n";
            break;
        case SpecCheckResult::Status::Inconclusive:
            os << "inconclusive: " << res.note << '\n';
            break;
    }
}

void emit_counting_bounds(std::ostream& os, const CountingBoundsReport& rep, ReportFormat fmt)
{
    if (fmt == ReportFormat::Json) {
        json j;
        j["tau"] = rep.tau;
        j["Q_bound"] = rep.q_bound;
        j["empirical_Q"] = rep.empirical_q;
        j["pass"] = rep.pass;
        j["rows"] = json::array();
        for (const auto& r : rep.rows)
            j["rows"].push_back({{"n", r.n},
                                 {"count", r.count.str()},
                                 {"ratio", r.ratio},
                                 {"lower_ok", r.lower_ok},
                                 {"upper_ok", r.upper_ok}});
        dump_json(os, std::move(j));
        return;
    }
    if (fmt == ReportFormat::Csv) {
        os << "n,count,ratio,lower_ok,upper_ok\n";
        for (const auto& r : rep.rows)
            num(os) << r.n << ',' << r.count.str() << ',' << r.ratio << ',' << r.lower_ok << ','
                    << r.upper_ok << '\n';
        return;
    }
    num(os) << "counting bounds with tau=" << rep.tau << ", Q=" << rep.q_bound << '\n';
    os << std::setw(4) << "n" << std::setw(20) << "count" << std::setw(14) << "ratio"
       << std::setw(8) << "lo_ok" << std::setw(8) << "hi_ok" << '\n';
    for (const auto& r : rep.rows)
        num(os) << std::setw(4) << r.n << std::setw(20) << r.count.str() << std::setw(14) << r.ratio
                << std::setw(8) << (r.lower_ok ? "y" : "N") << std::setw(8)
                << (r.upper_ok ? "y" : "N") << '\n';
    num(os) << "empirical Q = " << rep.empirical_q << ", verdict: " << (rep.pass ? "PASS" : "FAIL")
            << '\n';
}

void emit_uniqueness(std::ostream& os, const UniquenessReport& rep, ReportFormat fmt)
{
    if (fmt == ReportFormat::Json) {
        json j;
        j["h_full_regression"] = rep.h_full.regression;
        j["h_full_fekete"] = rep.h_full.fekete;
        j["obstructions_empty"] = rep.obstructions_empty;
        j["h_obstruction_tail"] = rep.h_obstruction_tail;
        j["h_obstruction_regression"] = rep.h_obstruction_regression;
        j["gap_margin"] = rep.gap_margin;
        j["spec_all_certified"] = rep.spec_all_certified;
        j["plausible"] = rep.plausible;
        j["per_M"] = json::array();
        for (const auto& p : rep.per_m) {
            json pj;
            pj["M"] = p.m;
            pj["spec_certified"] = p.spec.certified();
            if (p.spec.certified()) pj["tau"] = p.spec.cert.tau;
            pj["min_density"] = p.min_density;
            pj["density"] = p.density;
            j["per_M"].push_back(std::move(pj));
        }
        dump_json(os, std::move(j));
        return;
    }
    num(os) << "h(X) regression " << rep.h_full.regression << ", fekete upper " << rep.h_full.fekete
            << '\n';
    if (rep.obstructions_empty)
        os << "obstruction collection empty (vacuous gap)\n";
    else
        num(os) << "h(Cp u Cs) tail " << rep.h_obstruction_tail << ", regression "
                << rep.h_obstruction_regression << ", gap margin " << rep.gap_margin << '\n';
    for (const auto& p : rep.per_m) {
        os << "G^" << p.m << ": ";
        if (p.spec.certified())
            num(os) << "spec tau=" << p.spec.cert.tau << ", min density " << p.min_density << '\n';
        else
            os << "spec not certified\n";
    }
    os << "hypotheses " << (rep.plausible ? "PLAUSIBLE" : "NOT VERIFIED") << '\n';
}

void emit_periodic(std::ostream& os, const PeriodicReport& rep, ReportFormat fmt)
{
    if (fmt == ReportFormat::Json) {
        json j;
        j["certified_exact"] = rep.certified_exact;
        j["per_counts"] = json::array();
        for (const auto& c : rep.per_counts) j["per_counts"].push_back(c.str());
        j["cylinder_depth"] = rep.cylinder_depth;
        json masses = json::object();
        for (const auto& [w, m] : rep.cylinder_masses) masses[w.to_string()] = m;
        j["cylinder_masses"] = std::move(masses);
        dump_json(os, std::move(j));
        return;
    }
    if (fmt == ReportFormat::Csv) {
        os << "n,per_count\n";
        for (std::size_t i = 0; i < rep.per_counts.size(); ++i)
            os << (i + 1) << ',' << rep.per_counts[i].str() << '\n';
        return;
    }
    os << "Per_n counts" << (rep.certified_exact ? "" : " (depth-certified)") << ":\n";
    for (std::size_t i = 0; i < rep.per_counts.size(); ++i)
        os << "  Per_" << (i + 1) << " = " << rep.per_counts[i].str() << '\n';
    os << "periodic-point distribution on depth-" << rep.cylinder_depth << " cylinders:\n";
    for (const auto& [w, m] : rep.cylinder_masses)
        num(os) << "  [" << w.to_string() << "] " << m << '\n';
}

void emit_surgery(std::ostream& os, const SurgeryReport& rep, ReportFormat fmt)
{
    if (fmt == ReportFormat::Json) {
        json j;
        j["n"] = rep.n;
        j["N"] = rep.big_n;
        j["alpha_N"] = rep.alpha_n;
        j["tau"] = rep.tau;
        j["y_count"] = rep.y_count.str();
        j["C"] = rep.c_constant.str();
        j["realized"] = rep.realized;
        j["predicted_binom"] = rep.predicted_binom;
        j["predicted_loose"] = rep.predicted_loose;
        j["max_multiplicity"] = rep.max_multiplicity;
        j["multiplicity_bound"] = rep.multiplicity_bound;
        j["pass"] = rep.pass;
        dump_json(os, std::move(j));
        return;
    }
    num(os) << "surgery windows n=" << rep.n << " N=" << rep.big_n << " alphaN=" << rep.alpha_n
            << " tau=" << rep.tau << '\n'
            << "#L(Y) = " << rep.y_count.str() << ", C = " << rep.c_constant.str() << '\n'
            << "realized distinct words: " << rep.realized << '\n'
            << "predicted (count form):  " << rep.predicted_binom << '\n'
            << "predicted (closed form): " << rep.predicted_loose << '\n'
            << "multiplicity " << rep.max_multiplicity << " <= bound " << rep.multiplicity_bound
            << '\n'
            << "verdict: " << (rep.pass ? "PASS" : "FAIL") << '\n';
}

void emit_bowen(std::ostream& os, const BowenReport& rep, ReportFormat fmt)
{
    if (fmt == ReportFormat::Json) {
        json j;
        j["rows"] = json::array();
        for (const auto& r : rep.rows)
            j["rows"].push_back({{"n", r.n},
                                 {"V_max", r.v_max},
                                 {"running_max", r.running_max},
                                 {"closed_form", r.closed_form}});
        j["V_estimate"] = rep.v_estimate;
        j["pass"] = rep.pass;
        j["sampled"] = rep.sampled;
        dump_json(os, std::move(j));
        return;
    }
    if (fmt == ReportFormat::Csv) {
        os << "n,V_max,running_max,closed_form\n";
        for (const auto& r : rep.rows)
            num(os) << r.n << ',' << r.v_max << ',' << r.running_max << ',' << r.closed_form << '\n';
        return;
    }
    os << std::setw(4) << "n" << std::setw(14) << "V_max" << std::setw(14) << "running"
       << std::setw(14) << "bound" << '\n';
    for (const auto& r : rep.rows)
        num(os) << std::setw(4) << r.n << std::setw(14) << r.v_max << std::setw(14) << r.running_max
                << std::setw(14) << r.closed_form << '\n';
    num(os) << "V estimate " << rep.v_estimate << ", verdict: " << (rep.pass ? "PASS" : "FAIL")
            << '\n';
}

void emit_variational(std::ostream& os, const VariationalReport& rep, ReportFormat fmt)
{
    if (fmt == ReportFormat::Json) {
        json j;
        j["pressure"] = rep.pressure;
        j["rows"] = json::array();
        for (const auto& r : rep.rows)
            j["rows"].push_back(
                {{"name", r.name}, {"value", r.value}, {"defect", r.defect}, {"ok", r.ok}});
        j["best"] = rep.best;
        j["best_defect"] = rep.best_defect;
        j["pass"] = rep.pass;
        dump_json(os, std::move(j));
        return;
    }
    num(os) << "pressure " << rep.pressure << '\n';
    for (const auto& r : rep.rows)
        num(os) << "  " << std::setw(24) << r.name << "  value " << r.value << "  defect "
                << r.defect << (r.ok ? "" : "  VIOLATION") << '\n';
    num(os) << "best candidate: " << rep.best << " (defect " << rep.best_defect << ")\n"
            << "verdict: " << (rep.pass ? "PASS" : "FAIL") << '\n';
}

void emit_measure(std::ostream& os, const EmpiricalMeasure& mu, ReportFormat fmt)
{
    if (fmt == ReportFormat::Json) {
        json j;
        j["measure"] = mu.describe();
        json masses = json::object();
        for (const auto& [w, m] : mu.table())
            masses[w.to_string()] = BigRat(m).str();
        j["masses"] = std::move(masses);
        dump_json(os, std::move(j));
        return;
    }
    os << mu.describe() << '\n';
    for (const auto& [w, m] : mu.table())
        os << w.to_string() << ' ' << m.str() << '\n';
}

SpecCheckResult parse_spec_json(const std::string& text)
{
    const json j = json::parse(text);
    SpecCheckResult res;
    const std::string status = j.at("status");
    if (status == "certified") {
        res.status = SpecCheckResult::Status::Certified;
        res.cert.tau = j.at("tau");
        res.cert.strong_tau = j.at("strong_tau");
        res.cert.periodic_strong = j.at("periodic_strong");
        res.cert.depth = j.at("depth");
        res.cert.basis = j.at("basis");
        for (const auto& e : j.at("examples"))
            res.cert.examples.push_back({Word::from_string(e.at("v")), Word::from_string(e.at("u")),
                                         Word::from_string(e.at("w"))});
    } else if (status == "counterexample") {
        res.status = SpecCheckResult::Status::Counterexample;
        res.cex_v = Word::from_string(j.at("counterexample").at("v"));
        res.cex_w = Word::from_string(j.at("counterexample").at("w"));
    } else {
        res.status = SpecCheckResult::Status::Inconclusive;
    }
    if (j.contains("note")) res.note = j.at("note");
    return res;
}

}  // namespace shiftlab
