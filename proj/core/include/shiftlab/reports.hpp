// Report emitters: aligned text tables, plot-ready CSV, and versioned JSON.
// Field ordering is fixed so identical runs produce byte-identical files.

#pragma once

#include <iosfwd>
#include <string>

#include "shiftlab/decomposition.hpp"
#include "shiftlab/growth.hpp"
#include "shiftlab/measure.hpp"
#include "shiftlab/specification.hpp"

namespace shiftlab {

enum class ReportFormat { Table, Csv, Json };

ReportFormat report_format_from_string(const std::string& s);

constexpr int kReportSchemaVersion = 1;

// columns: n, count_or_logsum, point_estimate, running_fekete
void emit_growth(std::ostream& os, const GrowthEstimate& g, ReportFormat fmt,
                 const std::string& label);

// columns: n, K_lower, K_upper
void emit_gibbs(std::ostream& os, const GibbsReport& rep, ReportFormat fmt);

// fields: tau, depth, variant, counterexample?
void emit_spec(std::ostream& os, const SpecCheckResult& res, ReportFormat fmt);

void emit_counting_bounds(std::ostream& os, const CountingBoundsReport& rep, ReportFormat fmt);

void emit_uniqueness(std::ostream& os, const UniquenessReport& rep, ReportFormat fmt);

void emit_periodic(std::ostream& os, const PeriodicReport& rep, ReportFormat fmt);

void emit_surgery(std::ostream& os, const SurgeryReport& rep, ReportFormat fmt);

void emit_bowen(std::ostream& os, const BowenReport& rep, ReportFormat fmt);

void emit_variational(std::ostream& os, const VariationalReport& rep, ReportFormat fmt);

// (word, exact rational mass) listing of an empirical measure
void emit_measure(std::ostream& os, const EmpiricalMeasure& mu, ReportFormat fmt);

// round-trip helpers used by tests
SpecCheckResult parse_spec_json(const std::string& text);

}  // namespace shiftlab
