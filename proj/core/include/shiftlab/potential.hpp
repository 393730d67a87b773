// Potentials on shift spaces and their Birkhoff sums over cylinders.
//
// Two shapes:
//   * locally constant on k-cylinders (table per admissible k-word);
//   * summable-variation series  phi(x) = sum_j c_j g(x_{1+j}), truncated at
//     depth J, with the dropped tail recorded.  On the shift metric this is
//     the natural form of Holder regularity, and the variation sequence is
//     what every bound downstream actually consumes.
//
// Evaluation over a cylinder returns a certified interval; for locally
// constant potentials the interval is exact once enough symbols are visible
// (admissible extensions enumerated through a Language when provided).

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/language.hpp"
#include "shiftlab/word.hpp"

namespace shiftlab {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
    void include(double x)
    {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
};

class Potential {
public:
    enum class Kind { LocallyConstant, HolderSeries };

    static Potential locally_constant(int window, std::map<Word, double> table);
    static Potential constant(double c);
    // g per symbol; coeffs c_0..c_J; dropped_tail = sum_{j>J} c_j of the
    // un-truncated series when known (0 means the finite sum is the potential).
    static Potential holder_series(std::vector<double> coeffs, std::vector<double> base,
                                   double dropped_tail = 0.0);

    Kind kind() const { return kind_; }
    int window() const { return window_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double dropped_tail() const { return dropped_tail_; }

    // Certified interval for phi(x) over all x in [w] (w gives the first
    // |w| symbols).  Locally constant: exact value once |w| >= window.
    Interval value_bracket(const Word& w) const;

    // Variation on n-cylinders: sup |phi(x)-phi(y)| over pairs agreeing on
    // the first n symbols.  0 for locally constant once n >= window;
    // osc(g) * (sum_{j>=n} c_j + dropped_tail) for the series form.
    double variation(int n) const;

    // Closed-form bound on the Birkhoff bracket width at order n:
    // sum_{m=1..n} variation(m).
    double variation_sum(int n) const;

    // Checks the table covers every admissible window-word.
    void validate_against(const Language& lang) const;

    double table_value(const Word& k_word) const;  // locally constant only

    Potential shifted(double c) const;  // phi + c

private:
    Kind kind_ = Kind::LocallyConstant;
    int window_ = 1;
    std::map<Word, double> table_;
    std::vector<double> coeffs_;
    std::vector<double> base_;
    double dropped_tail_ = 0.0;
    double gmin_ = 0.0, gmax_ = 0.0;
    double shift_ = 0.0;
};

// Certified interval containing S_{|w|} phi(x) for every x in [w].
// With `ext` (a language at depth >= |w| + window - 1) the locally constant
// bracket is exact: tail terms are maximized jointly over admissible
// extensions.
Interval birkhoff_bracket(const Potential& phi, const Word& w, const Language* ext = nullptr);

// ---------------------------------------------------------------------------
// Bowen property check on a collection: reports max Birkhoff bracket width
// per order n over the collection, the running max, and a verdict.  The
// verdict is a finite-depth proxy: PASS iff the running max both plateaus
// (top-half growth < 10%) and stays below the closed-form variation bound.

struct BowenRow {
    int n;
    double v_max;        // max bracket width over sampled words of length n
    double running_max;
    double closed_form;  // variation_sum(n)
};

struct BowenReport {
    std::vector<BowenRow> rows;
    double v_estimate = 0.0;  // final running max
    bool pass = false;
    bool sampled = false;  // true when some level hit the sample cap
};

BowenReport bowen_check(const Potential& phi, const OrbitCollection& g, int depth,
                        std::size_t sample_cap = 4096);
BowenReport bowen_check(const Potential& phi, const ShiftModel& model, int depth,
                        std::size_t sample_cap = 4096);

}  // namespace shiftlab
