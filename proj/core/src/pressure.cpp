#include "shiftlab/pressure.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace shiftlab {

bool PartitionSums::exact() const
{
    for (std::size_t i = 0; i < log_lower.size(); ++i)
        if (std::abs(log_lower[i] - log_upper[i]) > 1e-12) return false;
    return true;
}

PartitionSums partition_sums(const OrbitCollection& d, const Potential& phi, int depth)
{
    if (depth > d.base().depth()) throw std::out_of_range("partition_sums: depth beyond language");
    const Language* ext = &d.base();
    PartitionSums out;
    for (int n = 1; n <= depth; ++n) {
        double lo = 0.0, hi = 0.0;
        d.for_each(n, [&](const Word& w) {
            // exact extension context only if the trie is deep enough
            const Language* ctx =
                (phi.kind() == Potential::Kind::LocallyConstant &&
                 ext->depth() >= n + phi.window() - 1)
                    ? ext
                    : nullptr;
            const Interval s = birkhoff_bracket(phi, w, ctx);
            lo += std::exp(s.lo);
            hi += std::exp(s.hi);
        });
        if (hi <= 0.0)
            throw std::invalid_argument("partition_sums: empty collection at length " + std::to_string(n));
        out.log_lower.push_back(std::log(lo));
        out.log_upper.push_back(std::log(hi));
    }
    return out;
}

PartitionSums partition_sums_streaming(const ShiftModel& model, const Potential& phi, int depth)
{
    if (phi.kind() != Potential::Kind::LocallyConstant)
        throw std::invalid_argument("streaming partition sums support locally constant potentials only");
    const int k = phi.window();
    PartitionSums out;
    for (int n = 1; n <= depth; ++n) {
        double lo = 0.0, hi = 0.0;
        for_each_word_streaming(model, n, [&](const Word& w) {
            // deterministic head
            double head = 0.0;
            const int deterministic = std::max(0, n - k + 1);
            for (int i = 0; i < deterministic; ++i)
                head += phi.table_value(w.subword(i + 1, i + k));
            if (deterministic == n) {
                lo += std::exp(head);
                hi += std::exp(head);
                return;
            }
            // joint tail over admissible extensions of length k-1, via the model
            Interval tail;
            bool any = false;
            Word cur = w;
            std::function<void(int)> rec = [&](int remaining) {
                if (remaining == 0) {
                    double s = 0.0;
                    for (int i = deterministic; i < n; ++i)
                        s += phi.table_value(cur.subword(i + 1, i + k));
                    if (!any) { tail = {s, s}; any = true; }
                    else tail.include(s);
                    return;
                }
                for (int a = 0; a < model.alphabet_size(); ++a) {
                    cur.push_back(static_cast<Symbol>(a));
                    if (model.membership(cur)) rec(remaining - 1);
                    cur.pop_back();
                }
            };
            rec(k - 1);
            if (!any) throw std::invalid_argument("partition sums: word has no admissible extension");
            lo += std::exp(head + tail.lo);
            hi += std::exp(head + tail.hi);
        });
        if (hi <= 0.0)
            throw std::invalid_argument("partition_sums: language empty at length " + std::to_string(n));
        out.log_lower.push_back(std::log(lo));
        out.log_upper.push_back(std::log(hi));
    }
    return out;
}

GrowthEstimate pressure_estimate(const PartitionSums& sums, Window window)
{
    return growth_from_log_values(sums.log_upper, window, /*subadditive=*/false);
}

GrowthEstimate pressure_estimate(const OrbitCollection& d, const Potential& phi, Window window)
{
    const int depth = window.hi > 0 ? window.hi : d.base().depth();
    return pressure_estimate(partition_sums(d, phi, depth), window);
}

VariationalReport variational_check(double pressure, const std::vector<VariationalCandidate>& cands,
                                    double tol)
{
    VariationalReport rep;
    rep.pressure = pressure;
    rep.pass = true;
    rep.best_defect = std::numeric_limits<double>::infinity();
    for (const auto& c : cands) {
        VariationalRow row;
        row.name = c.name;
        row.value = c.value();
        row.defect = pressure - row.value;
        row.ok = row.value <= pressure + tol;
        rep.pass = rep.pass && row.ok;
        if (row.defect < rep.best_defect) {
            rep.best_defect = row.defect;
            rep.best = row.name;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace shiftlab
