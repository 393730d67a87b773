// The interval map f(x) = beta x (mod 1): symbolic coding with certainty
// flags, exact cylinder intervals I(w), (n,eps)-separated sets on the circle
// metric, and a certified forward-contraction probe.
//
// beta is carried exactly as a rational when given so; otherwise as a
// midpoint-radius interval with outward rounding, and any digit whose value
// is not determined across the whole interval is flagged, never guessed.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "shiftlab/bigmath.hpp"
#include "shiftlab/growth.hpp"
#include "shiftlab/word.hpp"

namespace shiftlab {

struct CodedDigit {
    Symbol digit;
    bool certain;
};

struct RatInterval {
    BigRat lo, hi;  // half-open [lo, hi)
    BigRat length() const { return hi - lo; }
    bool empty() const { return lo >= hi; }
};

class BetaMap {
public:
    explicit BetaMap(BigRat beta);                    // exact mode
    BetaMap(double beta_mid, double beta_rad);        // interval mode

    bool exact() const { return exact_; }
    const BigRat& beta_rational() const;
    double beta_mid() const { return beta_mid_; }
    int digit_count() const { return digits_; }       // ceil(beta)

    // one application, exact mode
    BigRat apply(const BigRat& x) const;

    // first n digits of the coding of x
    std::vector<CodedDigit> code(const BigRat& x, std::size_t n) const;
    std::vector<CodedDigit> code_interval(double x, std::size_t n) const;

    // I(w) as an exact half-open interval; nullopt = empty (w inadmissible)
    std::optional<RatInterval> interval_of_word(const Word& w) const;

    // interval-mode emptiness test for I(w)
    enum class IntervalStatus { NonEmpty, Empty, Indeterminate };
    IntervalStatus interval_status(const Word& w) const;

private:
    bool exact_ = true;
    BigRat beta_q_;
    double beta_mid_ = 0.0, beta_rad_ = 0.0;
    int digits_ = 0;
};

// ---------------------------------------------------------------------------
// Separated sets.  Circle metric d(x,y) = min(|x-y|, 1-|x-y|), dynamical
// metric d_n = max over the first n iterates.

double circle_dist(double x, double y);

struct SeparatedSet {
    double eps = 0.0;
    int order = 0;              // n
    std::vector<double> points;
    bool greedy_maximal = false;
};

// Greedy packing on a uniform grid for an arbitrary 1-D map.  Produces a
// certified (n,eps)-separated set, hence a lower bound on Lambda(X,eps,n).
SeparatedSet greedy_separated(const std::function<double(double)>& f, double eps, int n,
                              int grid_points);

// Exact pairwise verification of the separation property.
bool verify_separated(const std::vector<double>& pts, const std::function<double(double)>& f,
                      int n, double eps);

// Preimage-propagated separated sets for the beta-map (exact rational mode):
// if S is (n,eps)-separated then f^{-1}(S) is (n+1,eps)-separated provided
// eps < min(1/beta, 1 - (ceil(beta)-1)/beta).  Counts are exact and grow like
// beta^n, far beyond what grid greedy can resolve.
struct SeparatedCounts {
    std::vector<BigInt> lambda_lower;  // per n = 1..n_max
    GrowthEstimate estimate;           // growth of log Lambda_lower (lower-bound semantics)
    std::vector<BigRat> last_level;    // the deepest separated set, for spot checks
};

SeparatedCounts beta_separated_counts(const BetaMap& map, double eps, int n_max, Window window);

// Growth estimate from greedy packing counts (generic maps).
SeparatedCounts greedy_separated_counts(const std::function<double(double)>& f, double eps,
                                        int n_max, int grid_points, Window window);

// ---------------------------------------------------------------------------
// Forward-contraction probe: certified outer bounds on
// diam( intersection of B_k(x,eps), k <= T ).  For beta > 1 the bound decays
// like beta^{-T}, witnessing positive expansivity.

struct ProbeResult {
    std::vector<double> diam_bound;  // index T = 0..horizon
    bool pieces_overflow = false;    // tracking aborted (bound stays valid up to that T)
};

ProbeResult forward_nonexpansive_probe(const BetaMap& map, const BigRat& x, double eps, int horizon);

}  // namespace shiftlab
