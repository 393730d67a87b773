// Shift-invariant measures queryable on cylinders.
//
//   * Markov measures (block chains from Perron eigendata): the Parry MME,
//     and equilibrium states of locally constant potentials via weighted
//     transition matrices.  These are the exact oracles everything else is
//     checked against.
//   * Empirical measures: push-forward averages mu_n = (1/n) sum sigma_*^k nu_n
//     where nu_n weights every n-cylinder equally (or by exp of the Birkhoff
//     sum).  Computed in exact rational arithmetic so additivity and
//     normalization are identities, not tolerances.
//
// Plus the Gibbs-bound verdict, entropy formulas, and periodic-orbit counts.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "shiftlab/bigmath.hpp"
#include "shiftlab/language.hpp"
#include "shiftlab/potential.hpp"
#include "shiftlab/pressure.hpp"
#include "shiftlab/shift_model.hpp"

namespace shiftlab {

class ShiftMeasure {
public:
    virtual ~ShiftMeasure() = default;
    virtual double mass(const Word& w) const = 0;
    virtual std::string describe() const = 0;
    // largest cylinder depth the measure answers for (SIZE_MAX if unlimited)
    virtual std::size_t query_depth() const { return SIZE_MAX; }
};

// ---------------------------------------------------------------------------
// Block Markov chain: states are admissible words of a fixed block length B,
// with stationary vector p and transition matrix P.  B = 1 is the ordinary
// Markov case.

class MarkovMeasure final : public ShiftMeasure {
public:
    MarkovMeasure(std::vector<Word> states, std::vector<double> stationary,
                  std::vector<std::vector<double>> transition);

    double mass(const Word& w) const override;
    std::string describe() const override;

    int block_len() const { return block_; }
    const std::vector<Word>& states() const { return states_; }
    const std::vector<double>& stationary() const { return p_; }
    const std::vector<std::vector<double>>& transition() const { return tp_; }

    // exact closed form -sum p_i P_ij log P_ij
    double entropy() const;

    // int phi dmu for a locally constant potential (window <= block+1)
    double integrate(const Potential& phi) const;

    // stationarity / stochasticity defects, for validation
    double stationarity_defect() const;

    Word sample_orbit(std::size_t length, std::mt19937_64& rng) const;

private:
    int state_index(const Word& w, std::size_t pos) const;  // block starting at pos (0-based)

    int block_ = 1;
    std::vector<Word> states_;
    std::map<Word, int> index_;
    std::vector<double> p_;
    std::vector<std::vector<double>> tp_;
};

// Parry measure of an irreducible vertex SFT: P_ij = A_ij r_j / (lambda r_i),
// p_i = l_i r_i / sum l_k r_k.
MarkovMeasure parry_measure(const SftModel& model);

// Equilibrium-state oracle for a locally constant potential on an SFT, from
// Perron data of the weighted matrix.  Returns the measure and log rho.
struct WeightedMarkov {
    MarkovMeasure measure;
    double log_rho;
};
WeightedMarkov weighted_gibbs_markov(const SftModel& model, const Potential& phi);

// Row-uniform Markov chain on an SFT (each admissible successor equally
// likely), a natural suboptimal candidate for variational checks.
MarkovMeasure uniform_markov(const SftModel& model);

// Bernoulli measure on the full shift.
MarkovMeasure bernoulli_measure(const std::vector<double>& probs);

VariationalCandidate variational_candidate(const std::string& name, const MarkovMeasure& mu,
                                           const Potential* phi = nullptr);

// ---------------------------------------------------------------------------
// Empirical construction.  nu_n weights each n-cylinder by weight(u)
// (uniform: 1) and refines beyond depth n with a uniform-successor walk;
// mu_n = (1/n) sum_{k<n} sigma_*^k nu_n, tabulated on cylinders to depth d.

class EmpiricalMeasure final : public ShiftMeasure {
public:
    EmpiricalMeasure(std::map<Word, BigRat> table, int n, int depth, std::string descr);

    double mass(const Word& w) const override;
    const BigRat& exact_mass(const Word& w) const;
    std::size_t query_depth() const override { return depth_; }
    std::string describe() const override { return descr_; }

    int construction_n() const { return n_; }
    const std::map<Word, BigRat>& table() const { return table_; }

private:
    std::map<Word, BigRat> table_;
    int n_;
    int depth_;
    std::string descr_;
    BigRat zero_ = 0;
};

// phi == nullptr builds the MME candidate; otherwise cylinders are weighted
// by exp(S_n phi) (sup convention, dyadic-rounded so the arithmetic stays
// exactly rational).
EmpiricalMeasure empirical_measure(const ShiftModel& model, const Language& lang, int n, int depth,
                                   const Potential* phi = nullptr);

// ---------------------------------------------------------------------------
// Gibbs report: extremal ratios mu[w] * e^{n h - S_n phi(w)} per depth.

struct GibbsRow {
    int n;
    double k_lower;  // min ratio (restricted collection when given)
    double k_upper;  // max ratio over all words
};

struct GibbsReport {
    std::vector<GibbsRow> rows;
    double k_final = 0.0;   // max(K_upper, 1/K_lower) at full depth
    bool stable = false;    // running constant varies < 10% over the top half
    bool pass = false;      // == stable and all ratios finite/positive
};

GibbsReport gibbs_check(const ShiftMeasure& mu, const Language& lang, int depth, double h_or_pressure,
                        const Potential* phi = nullptr, const OrbitCollection* restriction = nullptr);

// ---------------------------------------------------------------------------
// Entropies.

double static_entropy(const ShiftMeasure& mu, const Language& lang, int n);

// Shannon-McMillan-Breiman spot check: -(1/n) log mu[x_{1..n}] along sampled
// orbits vs h_mu, in units of estimated standard errors.
struct SmbCheck {
    double h_target;
    double mean;
    double stderr_est;
    double deviation_sigmas;
};
SmbCheck smb_check(const MarkovMeasure& mu, std::size_t n, std::size_t orbits, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Periodic orbits.  Counts #Per_n = #{w in L_n : w^infinity in X} (exact for
// SFT/sofic/S-gap; certified up to the z-prefix for beta shifts) and the
// empirical distribution of periodic points on cylinders.

struct PeriodicReport {
    std::vector<BigInt> per_counts;            // Per_1..Per_nmax
    bool certified_exact = true;               // false when only depth-certified
    std::map<Word, double> cylinder_masses;    // equidistribution at cylinder_depth, from periods <= nmax
    int cylinder_depth = 0;
};

PeriodicReport periodic_orbits(const ShiftModel& model, const Language& lang, int n_max,
                               int cylinder_depth);

// Decision used by periodic_orbits: exact for finite-state models, nullopt
// when only a depth-limited certificate is possible.
std::optional<bool> periodic_admissible(const ShiftModel& model, const Word& w);

}  // namespace shiftlab
