// Partition sums Lambda_n = sum_{w in D_n} exp(S_n phi over [w]) and the
// pressure growth estimates built from them.  In the shift metric, working
// per-cylinder fixes the scale parameter exactly (Bowen balls at scales in
// (1/4, 1/2) are cylinders), so no epsilon appears anywhere.
//
// Birkhoff sums over a cylinder are intervals, so each Lambda_n comes as a
// lower/upper pair; the pair collapses for locally constant potentials
// whenever enough extension context is available.

#pragma once

#include <string>
#include <vector>

#include "shiftlab/growth.hpp"
#include "shiftlab/language.hpp"
#include "shiftlab/potential.hpp"

namespace shiftlab {

struct PartitionSums {
    std::vector<double> log_lower;  // log Lambda_n with inf-convention sums
    std::vector<double> log_upper;  // log Lambda_n with sup-convention sums
    bool exact() const;             // true when the two sides coincide
};

// Per-length sums over an enumerated collection.  `ext` (defaults to the
// collection's own base language) supplies admissible extensions so locally
// constant tails are evaluated exactly where depth allows.
PartitionSums partition_sums(const OrbitCollection& d, const Potential& phi, int depth);

// Same sums over the whole language of a model, streaming (no trie); suits
// depths whose tries would not fit in memory.
PartitionSums partition_sums_streaming(const ShiftModel& model, const Potential& phi, int depth);

// Growth estimate of log Lambda_n (sup convention).  With phi == 0 this is
// exactly the entropy estimate.
GrowthEstimate pressure_estimate(const PartitionSums& sums, Window window);
GrowthEstimate pressure_estimate(const OrbitCollection& d, const Potential& phi, Window window);

// ---------------------------------------------------------------------------
// Variational-principle check: h_mu + int phi dmu <= P + tol for candidate
// measures whose two ingredients are exactly computable.

struct VariationalCandidate {
    std::string name;
    double entropy = 0.0;
    double phi_integral = 0.0;
    double value() const { return entropy + phi_integral; }
};

struct VariationalRow {
    std::string name;
    double value;
    double defect;  // P - value  (>= -tol when the principle holds)
    bool ok;
};

struct VariationalReport {
    double pressure = 0.0;
    std::vector<VariationalRow> rows;
    std::string best;  // candidate with the smallest defect
    double best_defect = 0.0;
    bool pass = false;
};

VariationalReport variational_check(double pressure, const std::vector<VariationalCandidate>& cands,
                                    double tol);

}  // namespace shiftlab
