// Growth-rate estimation for log-count and log-partition-sum sequences, and
// the two-sided counting-bound verdict e^{nh} <= #L_n <= (tau+1) e^{tau h} e^{nh}.
//
// A limsup is not computable from finite data, so estimates always come as a
// bracket: per-n point values, the Fekete bound (certified upper bound for
// subadditive sequences), a tail window min/max, and a regression slope.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shiftlab/bigmath.hpp"
#include "shiftlab/language.hpp"

namespace shiftlab {

struct Window {
    int lo = 1;
    int hi = 0;
};

struct GrowthEstimate {
    std::vector<double> log_values;   // a_n for n = 1..N (index 0 = n=1), nats
    std::vector<double> point;        // a_n / n
    Window window;
    double fekete = 0.0;              // min of point over the window
    bool fekete_certified = false;    // true when a_n is known subadditive
    double regression = 0.0;          // least-squares slope of a_n vs n over the window
    double tail_min = 0.0;
    double tail_max = 0.0;
};

GrowthEstimate growth_from_log_values(std::vector<double> log_values, Window window,
                                      bool subadditive);

// h(L) / h(D) from exact counts.  For a full language the counts are
// subadditive and the Fekete value is a certified upper bound on h.
GrowthEstimate entropy_estimate(const std::vector<BigInt>& counts, Window window,
                                bool full_language);
GrowthEstimate entropy_estimate(const Language& lang, Window window);
GrowthEstimate entropy_estimate(const OrbitCollection& coll, Window window);

// ---------------------------------------------------------------------------
// Counting bounds.  The growth rate is passed as a certified rational bracket
// for lambda = e^h, so both inequalities are decided in exact arithmetic.

struct CountingBoundsRow {
    int n;
    BigInt count;
    double ratio;        // #L_n / lambda^n (midpoint lambda)
    bool lower_ok;       // #L_n >= lambda^n, certified
    bool upper_ok;       // #L_n <= (tau+1) lambda^{n+tau}, certified
};

struct CountingBoundsReport {
    int tau = 0;
    double q_bound = 0.0;      // (tau+1) e^{tau h}
    double empirical_q = 0.0;  // max observed ratio
    bool pass = false;
    std::vector<CountingBoundsRow> rows;
};

// lambda_lo <= e^h <= lambda_hi, both > 0.
CountingBoundsReport counting_bounds_check(const std::vector<BigInt>& counts,
                                           const BigRat& lambda_lo, const BigRat& lambda_hi,
                                           int tau);

inline CountingBoundsReport counting_bounds_check(const Language& lang, const BigRat& lambda_lo,
                                                  const BigRat& lambda_hi, int tau)
{
    return counting_bounds_check(lang.counts(), lambda_lo, lambda_hi, tau);
}

// Convenience for a plain double h (bracketed by one ulp in each direction).
CountingBoundsReport counting_bounds_check(const std::vector<BigInt>& counts, double h, int tau);

}  // namespace shiftlab
