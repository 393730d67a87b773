#include "shiftlab/beta_shift.hpp"

#include <algorithm>
#include <cmath>

namespace shiftlab {

std::optional<std::uint32_t> BetaGraph::edge(std::uint32_t vertex, Symbol label) const
{
    if (vertex >= vertices)
        throw InsufficientDepthError("beta graph: vertex " + std::to_string(vertex) +
                                     " beyond certified cap " + std::to_string(vertices));
    const Symbol zmax = z[vertex];  // z_{vertex+1} in 1-based notation
    if (label > zmax) return std::nullopt;
    if (label == zmax) return vertex + 1;
    return 0;
}

std::optional<std::uint32_t> BetaGraph::path_end(const Word& w) const
{
    std::uint32_t v = 0;
    for (Symbol a : w.symbols) {
        auto nxt = edge(v, a);
        if (!nxt) return std::nullopt;
        v = *nxt;
    }
    return v;
}

std::vector<Symbol> BetaGraph::out_labels(std::uint32_t vertex) const
{
    if (vertex >= vertices)
        throw InsufficientDepthError("beta graph: vertex beyond certified cap");
    std::vector<Symbol> out;
    for (Symbol a = 0; a <= z[vertex]; ++a) out.push_back(a);
    return out;
}

BetaGraph beta_graph_build(const Word& z_prefix, std::size_t vertex_cap)
{
    if (vertex_cap > z_prefix.size())
        throw ConstructionError("beta graph: vertex cap exceeds z-prefix length");
    if (!beta_z_self_admissible(z_prefix))
        throw ConstructionError("beta graph: z-prefix violates its own lexicographic rule");
    return BetaGraph{z_prefix, vertex_cap};
}

bool beta_membership_lex(const Word& z_prefix, const Word& w)
{
    if (w.size() > z_prefix.size())
        throw InsufficientDepthError("beta membership: word longer than certified z-prefix");
    const std::size_t n = w.size();
    for (std::size_t j = 0; j < n; ++j) {
        // compare w_{[j+1,n]} against z symbol by symbol
        bool decided = false;
        for (std::size_t k = 0; j + k < n; ++k) {
            if (w[j + k] < z_prefix[k]) { decided = true; break; }
            if (w[j + k] > z_prefix[k]) return false;
        }
        (void)decided;  // equality as a prefix of z is fine
    }
    return true;
}

bool beta_z_self_admissible(const Word& z_prefix)
{
    if (z_prefix.empty()) return false;
    for (std::size_t j = 1; j < z_prefix.size(); ++j) {
        for (std::size_t k = 0; j + k < z_prefix.size(); ++k) {
            if (z_prefix[j + k] < z_prefix[k]) break;
            if (z_prefix[j + k] > z_prefix[k]) return false;
        }
    }
    return true;
}

BetaModel::BetaModel(Word z_prefix) : z_(std::move(z_prefix))
{
    if (z_.empty()) throw ConstructionError("beta model: empty z-prefix");
    if (!beta_z_self_admissible(z_))
        throw ConstructionError("beta model: z-prefix violates its own lexicographic rule");
    // self-admissibility forces z_1 to be the largest digit, so it fixes the alphabet
    alphabet_ = static_cast<int>(z_[0]) + 1;
    graph_ = BetaGraph{z_, z_.size()};
}

std::optional<WalkState> BetaModel::step(WalkState vertex, Symbol a) const
{
    if (a >= alphabet_) return std::nullopt;
    return graph_.edge(vertex, a);
}

bool BetaModel::membership(const Word& w) const
{
    return beta_membership_lex(z_, w);
}

ModelPtr beta_from_z(const Word& z_prefix)
{
    return std::make_shared<BetaModel>(z_prefix);
}

BetaSpecCriterion beta_spec_criterion(const Word& z_prefix)
{
    BetaSpecCriterion c;
    int run = 0;
    for (Symbol a : z_prefix.symbols) {
        if (a == 0) {
            ++run;
            c.longest_zero_run = std::max(c.longest_zero_run, run);
        } else {
            run = 0;
        }
    }
    return c;
}

Word beta_z_prefix_exact(const BigRat& beta, std::size_t digits)
{
    if (beta <= 1) throw ConstructionError("beta must exceed 1");
    std::vector<Symbol> greedy;
    BigRat r(1);
    std::ptrdiff_t finite_len = -1;
    for (std::size_t i = 0; i < digits; ++i) {
        const BigRat x = beta * r;
        const BigInt t = numerator(x) / denominator(x);  // floor for x >= 0
        greedy.push_back(static_cast<Symbol>(t.convert_to<int>()));
        r = x - BigRat(t);
        if (r == 0) { finite_len = static_cast<std::ptrdiff_t>(i) + 1; break; }
    }
    if (finite_len < 0) return Word(std::move(greedy));
    // quasi-greedy completion of a finite expansion
    std::vector<Symbol> base(greedy.begin(), greedy.begin() + finite_len);
    if (base.back() == 0) throw ConstructionError("greedy expansion ended in 0");
    base.back() -= 1;
    std::vector<Symbol> out;
    while (out.size() < digits)
        out.insert(out.end(), base.begin(), base.end());
    out.resize(digits);
    return Word(std::move(out));
}

CertifiedDigits beta_z_prefix_interval(double beta_mid, double beta_rad, std::size_t max_digits)
{
    if (beta_mid - beta_rad <= 1.0) throw ConstructionError("beta interval must lie above 1");
    CertifiedDigits out;
    // carry x as [lo, hi], outward-rounded one ulp per operation
    double lo = 1.0, hi = 1.0;
    const double blo = beta_mid - beta_rad, bhi = beta_mid + beta_rad;
    for (std::size_t i = 0; i < max_digits; ++i) {
        double xlo = std::nextafter(lo * blo, -1.0);
        double xhi = std::nextafter(hi * bhi, 2.0 * bhi);
        const double flo = std::floor(xlo), fhi = std::floor(xhi);
        if (flo != fhi || xlo == flo) {  // digit straddles or touches a boundary
            out.truncated_by_uncertainty = true;
            return out;
        }
        out.digits.push_back(static_cast<Symbol>(flo));
        lo = xlo - flo;
        hi = xhi - flo;
    }
    return out;
}

}  // namespace shiftlab
