#include "shiftlab/beta_map.hpp"

#include <algorithm>
#include <cmath>

#include "shiftlab/shift_model.hpp"

namespace shiftlab {

namespace {

BigInt floor_rat(const BigRat& x)
{
    BigInt q = numerator(x) / denominator(x);
    if (x < 0 && BigRat(q) != x) --q;
    return q;
}

}  // namespace

BetaMap::BetaMap(BigRat beta) : exact_(true), beta_q_(std::move(beta))
{
    if (beta_q_ <= 1) throw ConstructionError("beta map: beta must exceed 1");
    beta_mid_ = to_double(beta_q_);
    const BigInt fl = floor_rat(beta_q_);
    digits_ = fl.convert_to<int>() + (BigRat(fl) == beta_q_ ? 0 : 1);
}

BetaMap::BetaMap(double beta_mid, double beta_rad)
    : exact_(false), beta_mid_(beta_mid), beta_rad_(beta_rad)
{
    if (beta_mid - beta_rad <= 1.0) throw ConstructionError("beta map: interval must lie above 1");
    digits_ = static_cast<int>(std::ceil(beta_mid + beta_rad));
    if (std::ceil(beta_mid - beta_rad) != std::ceil(beta_mid + beta_rad))
        throw ConstructionError("beta map: interval straddles an integer (digit count ambiguous)");
}

const BigRat& BetaMap::beta_rational() const
{
    if (!exact_) throw std::logic_error("beta map: not in exact mode");
    return beta_q_;
}

BigRat BetaMap::apply(const BigRat& x) const
{
    const BigRat y = beta_rational() * x;
    return y - BigRat(floor_rat(y));
}

std::vector<CodedDigit> BetaMap::code(const BigRat& x, std::size_t n) const
{
    if (x < 0 || x >= 1) throw std::invalid_argument("beta code: x outside [0,1)");
    std::vector<CodedDigit> out;
    BigRat t = x;
    for (std::size_t i = 0; i < n; ++i) {
        const BigRat y = beta_rational() * t;
        const BigInt d = floor_rat(y);
        // exactly on a discontinuity a/beta: the digit is convention-dependent
        const bool on_boundary = (BigRat(d) == y && d > 0);
        out.push_back({static_cast<Symbol>(d.convert_to<int>()), !on_boundary});
        t = y - BigRat(d);
    }
    return out;
}

std::vector<CodedDigit> BetaMap::code_interval(double x, std::size_t n) const
{
    if (x < 0.0 || x >= 1.0) throw std::invalid_argument("beta code: x outside [0,1)");
    std::vector<CodedDigit> out;
    const double blo = exact_ ? beta_mid_ : beta_mid_ - beta_rad_;
    const double bhi = exact_ ? beta_mid_ : beta_mid_ + beta_rad_;
    double lo = x, hi = x;
    bool certain = true;
    for (std::size_t i = 0; i < n; ++i) {
        double ylo = std::nextafter(lo * blo, -1.0);
        double yhi = std::nextafter(hi * bhi, bhi * 2.0);
        double flo = std::floor(ylo), fhi = std::floor(yhi);
        if (flo != fhi || ylo == flo) certain = false;
        const double digit = std::floor(0.5 * (ylo + yhi));
        out.push_back({static_cast<Symbol>(std::max(0.0, digit)), certain});
        lo = std::max(0.0, ylo - digit);
        hi = std::max(lo, yhi - digit);
    }
    return out;
}

std::optional<RatInterval> BetaMap::interval_of_word(const Word& w) const
{
    // back to front: I(w) = I_{w_1} /\ f^{-1}(I(sigma w)); on I_a the map is
    // x -> beta x - a, so the pullback of [lo, hi) is [(lo+a)/b, (hi+a)/b).
    const BigRat& b = beta_rational();
    RatInterval j{BigRat(0), BigRat(1)};
    for (std::size_t i = w.size(); i > 0; --i) {
        const int a = w[i - 1];
        if (a >= digits_) return std::nullopt;
        j.lo = (j.lo + a) / b;
        j.hi = (j.hi + a) / b;
        const BigRat ia_lo = BigRat(a) / b;
        const BigRat ia_hi = a == digits_ - 1 ? BigRat(1) : BigRat(a + 1) / b;
        j.lo = std::max(j.lo, ia_lo);
        j.hi = std::min(j.hi, ia_hi);
        if (j.empty()) return std::nullopt;
    }
    return j;
}

BetaMap::IntervalStatus BetaMap::interval_status(const Word& w) const
{
    if (exact_) {
        const auto iv = interval_of_word(w);
        return iv ? IntervalStatus::NonEmpty : IntervalStatus::Empty;
    }
    // interval endpoints as outward-rounded doubles
    const double blo = beta_mid_ - beta_rad_, bhi = beta_mid_ + beta_rad_;
    double lo_lo = 0.0, lo_hi = 0.0, hi_lo = 1.0, hi_hi = 1.0;
    for (std::size_t i = w.size(); i > 0; --i) {
        const int a = w[i - 1];
        if (a >= digits_) return IntervalStatus::Empty;
        lo_lo = std::nextafter((lo_lo + a) / bhi, -1.0);
        lo_hi = std::nextafter((lo_hi + a) / blo, 2.0);
        hi_lo = std::nextafter((hi_lo + a) / bhi, -1.0);
        hi_hi = std::nextafter((hi_hi + a) / blo, 2.0);
        const double ia_lo_lo = std::nextafter(a / bhi, -1.0);
        const double ia_lo_hi = std::nextafter(a / blo, 2.0);
        const double ia_hi_lo = a == digits_ - 1 ? 1.0 : std::nextafter((a + 1) / bhi, -1.0);
        const double ia_hi_hi = a == digits_ - 1 ? 1.0 : std::nextafter((a + 1) / blo, 2.0);
        if (ia_lo_lo > lo_lo) { lo_lo = ia_lo_lo; lo_hi = std::max(lo_hi, ia_lo_hi); }
        if (ia_hi_hi < hi_hi) { hi_hi = ia_hi_hi; hi_lo = std::min(hi_lo, ia_hi_lo); }
        if (lo_hi < hi_lo) continue;            // certainly nonempty so far
        if (lo_lo >= hi_hi) return IntervalStatus::Empty;
        return IntervalStatus::Indeterminate;   // endpoints overlap within error
    }
    if (lo_hi < hi_lo) return IntervalStatus::NonEmpty;
    if (lo_lo >= hi_hi) return IntervalStatus::Empty;
    return IntervalStatus::Indeterminate;
}

// ---------------------------------------------------------------------------

double circle_dist(double x, double y)
{
    double d = std::abs(x - y);
    d = std::min(d, 1.0 - d);
    return d;
}

SeparatedSet greedy_separated(const std::function<double(double)>& f, double eps, int n,
                              int grid_points)
{
    if (grid_points < 2) throw std::invalid_argument("greedy_separated: need a grid");
    if (eps <= 2.0 / grid_points)
        throw std::invalid_argument("greedy_separated: eps below grid resolution");
    // orbits of all grid points up to time n-1
    std::vector<std::vector<double>> orbit(grid_points, std::vector<double>(n));
    for (int i = 0; i < grid_points; ++i) {
        double x = (i + 0.5) / grid_points;
        for (int k = 0; k < n; ++k) {
            orbit[i][k] = x;
            x = f(x);
            x -= std::floor(x);
        }
    }
    SeparatedSet s;
    s.eps = eps;
    s.order = n;
    std::vector<int> chosen;
    for (int i = 0; i < grid_points; ++i) {
        bool ok = true;
        for (int j : chosen) {
            // separated from j iff some iterate is farther than eps
            bool sep = false;
            for (int k = n - 1; k >= 0; --k)
                if (circle_dist(orbit[i][k], orbit[j][k]) > eps) { sep = true; break; }
            if (!sep) { ok = false; break; }
        }
        if (ok) chosen.push_back(i);
    }
    for (int i : chosen) s.points.push_back(orbit[i][0]);
    s.greedy_maximal = true;  // no grid point can be added, by construction
    return s;
}

bool verify_separated(const std::vector<double>& pts, const std::function<double(double)>& f,
                      int n, double eps)
{
    std::vector<std::vector<double>> orbit(pts.size(), std::vector<double>(n));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double x = pts[i];
        for (int k = 0; k < n; ++k) {
            orbit[i][k] = x;
            x = f(x);
            x -= std::floor(x);
        }
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            bool sep = false;
            for (int k = 0; k < n; ++k)
                if (circle_dist(orbit[i][k], orbit[j][k]) > eps) { sep = true; break; }
            if (!sep) return false;
        }
    return true;
}

SeparatedCounts beta_separated_counts(const BetaMap& map, double eps, int n_max, Window window)
{
    const BigRat& b = map.beta_rational();
    const int top = map.digit_count();
    // validity: eps below both the branch width 1/beta and the wrap gap
    const double wrap_gap = 1.0 - static_cast<double>(top - 1) / to_double(b);
    const double branch = 1.0 / to_double(b);
    if (eps >= std::min(branch, wrap_gap))
        throw std::invalid_argument("beta separated sets: eps too large for preimage propagation");

    // base level: m evenly spaced points with spacing 1/m > eps
    int m = static_cast<int>(std::floor(1.0 / eps));
    while (m > 1 && 1.0 / m <= eps) --m;
    if (m < 2) throw std::invalid_argument("beta separated sets: eps too large");

    SeparatedCounts out;
    std::vector<BigRat> level;
    for (int i = 0; i < m; ++i) level.push_back(BigRat(i) / m);
    out.lambda_lower.push_back(BigInt(level.size()));
    for (int n = 2; n <= n_max; ++n) {
        std::vector<BigRat> next;
        next.reserve(level.size() * top);
        for (const BigRat& s : level)
            for (int a = 0; a < top; ++a) {
                const BigRat pre = (s + a) / b;
                if (pre < 1) next.push_back(pre);
            }
        level = std::move(next);
        out.lambda_lower.push_back(BigInt(level.size()));
    }
    out.last_level = std::move(level);
    std::vector<double> logs;
    for (const BigInt& c : out.lambda_lower) logs.push_back(log_big(c));
    out.estimate = growth_from_log_values(std::move(logs), window, /*subadditive=*/false);
    return out;
}

SeparatedCounts greedy_separated_counts(const std::function<double(double)>& f, double eps,
                                        int n_max, int grid_points, Window window)
{
    SeparatedCounts out;
    for (int n = 1; n <= n_max; ++n) {
        const SeparatedSet s = greedy_separated(f, eps, n, grid_points);
        out.lambda_lower.push_back(BigInt(s.points.size()));
        if (n == n_max)
            for (double x : s.points) out.last_level.push_back(rational_from_double(x));
    }
    std::vector<double> logs;
    for (const BigInt& c : out.lambda_lower) logs.push_back(log_big(c));
    out.estimate = growth_from_log_values(std::move(logs), window, /*subadditive=*/false);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Piece {
    BigRat dom_lo, dom_hi;  // subinterval of the initial ball
    BigRat img_lo, img_hi;  // its image under f^k (affine, increasing)
};

}  // namespace

ProbeResult forward_nonexpansive_probe(const BetaMap& map, const BigRat& x, double eps, int horizon)
{
    const BigRat& b = map.beta_rational();
    const BigRat e = rational_from_double(eps);
    ProbeResult res;

    // circle ball around x, clipped to [0,1): up to two arcs, tracked as pieces
    std::vector<Piece> pieces;
    auto push_arc = [&](const BigRat& lo, const BigRat& hi) {
        if (lo < hi) pieces.push_back({lo, hi, lo, hi});
    };
    const BigRat lo0 = x - e, hi0 = x + e;
    push_arc(std::max(BigRat(0), lo0), std::min(BigRat(1), hi0));
    if (lo0 < 0) push_arc(BigRat(1) + lo0, BigRat(1));  // wrapped arc
    if (hi0 > 1) push_arc(BigRat(0), hi0 - 1);

    BigRat orbit = x;
    auto span = [&]() {
        // diameter of the union of domains, linear measure on [0,1)
        BigRat lo, hi;
        bool first = true;
        for (const Piece& p : pieces) {
            if (first) { lo = p.dom_lo; hi = p.dom_hi; first = false; }
            else {
                lo = std::min(lo, p.dom_lo);
                hi = std::max(hi, p.dom_hi);
            }
        }
        return first ? 0.0 : to_double(hi - lo);
    };
    res.diam_bound.push_back(std::min(2.0 * eps, span()));

    for (int t = 1; t <= horizon; ++t) {
        orbit = map.apply(orbit);
        // ball arcs around the orbit point
        std::vector<std::pair<BigRat, BigRat>> arcs;
        const BigRat alo = orbit - e, ahi = orbit + e;
        arcs.emplace_back(std::max(BigRat(0), alo), std::min(BigRat(1), ahi));
        if (alo < 0) arcs.emplace_back(BigRat(1) + alo, BigRat(1));
        if (ahi > 1) arcs.emplace_back(BigRat(0), ahi - 1);

        std::vector<Piece> next;
        for (const Piece& p : pieces) {
            // split the image at digit boundaries and advance each branch
            const BigRat scaled_lo = p.img_lo * b, scaled_hi = p.img_hi * b;
            const BigInt d_lo = floor_rat(scaled_lo);
            const BigInt d_hi_raw = floor_rat(scaled_hi);
            for (BigInt d = d_lo; d <= d_hi_raw; ++d) {
                // branch domain in image coordinates: [d/b, (d+1)/b)
                const BigRat cut_lo = std::max(p.img_lo, BigRat(d) / b);
                const BigRat cut_hi = std::min(p.img_hi, BigRat(d + 1) / b);
                if (cut_lo >= cut_hi) continue;
                const BigRat new_lo = cut_lo * b - BigRat(d);
                const BigRat new_hi = cut_hi * b - BigRat(d);
                for (const auto& [arc_lo, arc_hi] : arcs) {
                    const BigRat ilo = std::max(new_lo, arc_lo);
                    const BigRat ihi = std::min(new_hi, arc_hi);
                    if (ilo >= ihi) continue;
                    // pull back through the affine chain: image scale factor
                    const BigRat scale = (p.img_hi - p.img_lo) / (p.dom_hi - p.dom_lo);
                    // map image subinterval [ilo,ihi] (in new coords) back:
                    // first to pre-branch coords, then to domain coords
                    const BigRat pre_lo = (ilo + BigRat(d)) / b;
                    const BigRat pre_hi = (ihi + BigRat(d)) / b;
                    const BigRat dom_lo = p.dom_lo + (pre_lo - p.img_lo) / scale;
                    const BigRat dom_hi = p.dom_lo + (pre_hi - p.img_lo) / scale;
                    next.push_back({dom_lo, dom_hi, ilo, ihi});
                }
            }
        }
        pieces = std::move(next);
        if (pieces.size() > 4096) {
            res.pieces_overflow = true;
            break;
        }
        res.diam_bound.push_back(span());
        if (pieces.empty()) break;
    }
    return res;
}

}  // namespace shiftlab
