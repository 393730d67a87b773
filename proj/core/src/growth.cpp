#include "shiftlab/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shiftlab {

GrowthEstimate growth_from_log_values(std::vector<double> log_values, Window window,
                                      bool subadditive)
{
    if (log_values.empty()) throw std::invalid_argument("growth estimate: no values");
    const int n_max = static_cast<int>(log_values.size());
    if (window.hi <= 0) window.hi = n_max;
    window.hi = std::min(window.hi, n_max);
    window.lo = std::max(window.lo, 1);
    if (window.lo > window.hi) throw std::invalid_argument("growth estimate: empty window");

    GrowthEstimate g;
    g.window = window;
    g.point.resize(log_values.size());
    for (int n = 1; n <= n_max; ++n) g.point[n - 1] = log_values[n - 1] / n;
    g.log_values = std::move(log_values);

    g.tail_min = g.tail_max = g.point[window.lo - 1];
    for (int n = window.lo; n <= window.hi; ++n) {
        g.tail_min = std::min(g.tail_min, g.point[n - 1]);
        g.tail_max = std::max(g.tail_max, g.point[n - 1]);
    }
    g.fekete = g.tail_min;
    g.fekete_certified = subadditive;

    // least squares slope of a_n against n over the window
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = window.hi - window.lo + 1;
    for (int n = window.lo; n <= window.hi; ++n) {
        sx += n;
        sy += g.log_values[n - 1];
        sxx += double(n) * n;
        sxy += double(n) * g.log_values[n - 1];
    }
    const double denom = m * sxx - sx * sx;
    g.regression = (m >= 2 && denom != 0.0) ? (m * sxy - sx * sy) / denom : g.point[window.hi - 1];
    return g;
}

GrowthEstimate entropy_estimate(const std::vector<BigInt>& counts, Window window,
                                bool full_language)
{
    if (counts.empty()) throw std::invalid_argument("entropy_estimate: empty counts");
    std::vector<double> logs;
    logs.reserve(counts.size());
    for (const BigInt& c : counts) {
        if (c <= 0) throw std::invalid_argument("entropy_estimate: count <= 0");
        logs.push_back(log_big(c));
    }
    return growth_from_log_values(std::move(logs), window, full_language);
}

GrowthEstimate entropy_estimate(const Language& lang, Window window)
{
    return entropy_estimate(lang.counts(), window, /*full_language=*/true);
}

GrowthEstimate entropy_estimate(const OrbitCollection& coll, Window window)
{
    const int n = window.hi > 0 ? window.hi : coll.base().depth();
    return entropy_estimate(coll.counts(n), window, /*full_language=*/false);
}

CountingBoundsReport counting_bounds_check(const std::vector<BigInt>& counts,
                                           const BigRat& lambda_lo, const BigRat& lambda_hi,
                                           int tau)
{
    if (lambda_lo <= 0 || lambda_hi < lambda_lo)
        throw std::invalid_argument("counting_bounds_check: bad lambda bracket");
    if (tau < 0) throw std::invalid_argument("counting_bounds_check: negative tau");

    CountingBoundsReport rep;
    rep.tau = tau;
    const double lam_mid = 0.5 * (to_double(lambda_lo) + to_double(lambda_hi));
    rep.q_bound = (tau + 1) * std::pow(lam_mid, tau);
    rep.pass = true;

    BigRat pow_lo(1), pow_hi(1);  // lambda^n brackets
    BigRat tail_lo = 1;           // lambda_lo^tau
    for (int t = 0; t < tau; ++t) tail_lo *= lambda_lo;

    for (std::size_t i = 0; i < counts.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        pow_lo *= lambda_lo;
        pow_hi *= lambda_hi;
        CountingBoundsRow row;
        row.n = n;
        row.count = counts[i];
        row.ratio = to_double(counts[i]) / std::pow(lam_mid, n);
        // certified directions: count >= lambda^n needs count >= pow_hi;
        // count <= (tau+1) lambda^{n+tau} needs count <= (tau+1) pow_lo tail_lo
        row.lower_ok = BigRat(counts[i]) >= pow_hi;
        row.upper_ok = BigRat(counts[i]) <= BigRat(tau + 1) * pow_lo * tail_lo;
        rep.pass = rep.pass && row.lower_ok && row.upper_ok;
        rep.empirical_q = std::max(rep.empirical_q, row.ratio);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

CountingBoundsReport counting_bounds_check(const std::vector<BigInt>& counts, double h, int tau)
{
    const BigRat lam = rational_from_double(std::exp(h));
    // one-part-in-1e12 slack absorbs the exp rounding
    const BigRat eps = lam / BigRat(1000000000000LL);
    return counting_bounds_check(counts, lam - eps, lam + eps, tau);
}

}  // namespace shiftlab
