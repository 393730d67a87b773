// Decompositions C^p . G . C^s of a language: every word splits as
// prefix * core * suffix with the parts drawn from the three collections,
// plus the bounded-edge views G^M (prefix and suffix of length <= M) and the
// hypothesis checks of the decomposition uniqueness theorem:
//   (I)  every G^M has specification,
//   (II) h(C^p u C^s) < h(X),
// together with the density ratios #G^M_n / #L_n.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/beta_shift.hpp"
#include "shiftlab/growth.hpp"
#include "shiftlab/language.hpp"
#include "shiftlab/potential.hpp"
#include "shiftlab/specification.hpp"

namespace shiftlab {

struct WordSplit {
    Word prefix, core, suffix;
};

class Decomposition {
public:
    Decomposition(OrbitCollection cp, OrbitCollection g, OrbitCollection cs,
                  std::function<WordSplit(const Word&)> splitter, std::string name);

    const OrbitCollection& cp() const { return cp_; }
    const OrbitCollection& g() const { return g_; }
    const OrbitCollection& cs() const { return cs_; }
    const std::string& name() const { return name_; }
    const Language& base() const { return g_.base(); }

    // deterministic split; throws ConstructionError naming the word when the
    // rule fails to cover it
    WordSplit split(const Word& w) const;

    // does w admit any split with |prefix|, |suffix| <= M?
    bool in_gm(const Word& w, int M) const;
    OrbitCollection gm(int M) const;

    // union collection C^p u C^s
    OrbitCollection obstructions() const;

private:
    OrbitCollection cp_, g_, cs_;
    std::function<WordSplit(const Word&)> splitter_;
    std::string name_;
};

// every word splits as epsilon * w * epsilon
Decomposition trivial_decomposition(std::shared_ptr<const Language> lang);

// Canonical beta-shift decomposition: G = words whose graph path returns to
// the base vertex, C^s = words never returning (one per length: the spine),
// C^p = {epsilon}.  Split at the last visit to the base vertex.
Decomposition beta_canonical_decomposition(std::shared_ptr<const BetaModel> model,
                                           std::shared_ptr<const Language> lang);

// Birkhoff-threshold decomposition for a window-1 potential:
//   C^p = { w : S_{|w|} phi(w) >= -r |w| },
//   G   = { w : S_j phi(w) < -r j for 1 <= j <= |w| },   C^s = {epsilon}.
// Split by removing the longest C^p prefix.
Decomposition threshold_decomposition(std::shared_ptr<const Language> lang, const Potential& phi,
                                      double r);

Decomposition custom_decomposition(std::shared_ptr<const Language> lang,
                                   std::function<bool(const Word&)> cp_pred,
                                   std::function<bool(const Word&)> g_pred,
                                   std::function<bool(const Word&)> cs_pred, std::string name);

// ---------------------------------------------------------------------------

struct UniquenessPerM {
    int m = 0;
    SpecCheckResult spec;
    std::vector<double> density;  // #G^M_n / #L_n for n = 1..depth
    double min_density = 0.0;
};

struct UniquenessReport {
    GrowthEstimate h_full;
    bool obstructions_empty = false;
    double h_obstruction_tail = 0.0;        // tail-max point estimate over nonzero counts
    double h_obstruction_regression = 0.0;
    double gap_margin = 0.0;                // h_full.regression - h_obstruction_tail
    std::vector<UniquenessPerM> per_m;
    bool spec_all_certified = false;
    bool plausible = false;                 // spec for every M and positive margin
};

UniquenessReport verify_uniqueness_hypotheses(const ShiftModel& model, const Decomposition& dec,
                                              const std::vector<int>& m_list,
                                              const SpecOptions& spec_opt, Window window);

}  // namespace shiftlab
