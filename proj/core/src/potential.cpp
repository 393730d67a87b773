#include "shiftlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shiftlab {

Potential Potential::locally_constant(int window, std::map<Word, double> table)
{
    if (window < 1) throw std::invalid_argument("potential window must be >= 1");
    for (const auto& [w, v] : table) {
        if (static_cast<int>(w.size()) != window)
            throw std::invalid_argument("potential table key has wrong length: " + w.to_string());
        (void)v;
    }
    Potential p;
    p.kind_ = Kind::LocallyConstant;
    p.window_ = window;
    p.table_ = std::move(table);
    return p;
}

Potential Potential::constant(double c)
{
    Potential p;
    p.kind_ = Kind::LocallyConstant;
    p.window_ = 1;
    p.shift_ = c;
    // empty table + shift: every symbol evaluates to c
    return p;
}

Potential Potential::holder_series(std::vector<double> coeffs, std::vector<double> base,
                                   double dropped_tail)
{
    if (base.empty()) throw std::invalid_argument("series potential: empty base function");
    for (double c : coeffs)
        if (c < 0) throw std::invalid_argument("series potential: coefficients must be >= 0");
    if (dropped_tail < 0) throw std::invalid_argument("series potential: negative tail");
    Potential p;
    p.kind_ = Kind::HolderSeries;
    p.coeffs_ = std::move(coeffs);
    p.base_ = std::move(base);
    p.dropped_tail_ = dropped_tail;
    p.gmin_ = *std::min_element(p.base_.begin(), p.base_.end());
    p.gmax_ = *std::max_element(p.base_.begin(), p.base_.end());
    return p;
}

double Potential::table_value(const Word& k_word) const
{
    if (kind_ != Kind::LocallyConstant) throw std::logic_error("table_value on series potential");
    if (table_.empty()) return shift_;  // constant potential
    const auto it = table_.find(k_word);
    if (it == table_.end())
        throw std::invalid_argument("potential table missing word " + k_word.to_string());
    return it->second + shift_;
}

Interval Potential::value_bracket(const Word& w) const
{
    if (kind_ == Kind::LocallyConstant) {
        if (static_cast<int>(w.size()) >= window_) {
            const double v = table_value(w.subword(1, window_));
            return {v, v};
        }
        if (table_.empty()) return {shift_, shift_};
        // min/max over table entries extending the visible prefix
        bool any = false;
        Interval iv{0, 0};
        for (const auto& [key, val] : table_) {
            bool match = true;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (key[i] != w[i]) { match = false; break; }
            if (!match) continue;
            if (!any) { iv = {val, val}; any = true; }
            else iv.include(val);
        }
        if (!any) throw std::invalid_argument("potential table has no extension of " + w.to_string());
        return {iv.lo + shift_, iv.hi + shift_};
    }
    // series: known coefficients read w, unknown ones bracket through osc(g)
    Interval iv{shift_, shift_};
    double unknown = dropped_tail_;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (j < w.size()) {
            const Symbol a = w[j];
            if (a >= base_.size()) throw std::invalid_argument("series potential: symbol out of base range");
            iv.lo += coeffs_[j] * base_[a];
            iv.hi += coeffs_[j] * base_[a];
        } else {
            unknown += coeffs_[j];
        }
    }
    iv.lo += unknown * gmin_;
    iv.hi += unknown * gmax_;
    return iv;
}

double Potential::variation(int n) const
{
    if (n < 0) throw std::invalid_argument("variation: negative order");
    if (kind_ == Kind::LocallyConstant) {
        if (n >= window_) return 0.0;
        // crude but sound: oscillation of the whole table
        if (table_.empty()) return 0.0;
        double lo = table_.begin()->second, hi = lo;
        for (const auto& [k, v] : table_) {
            (void)k;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return hi - lo;
    }
    double tail = dropped_tail_;
    for (std::size_t j = static_cast<std::size_t>(n); j < coeffs_.size(); ++j) tail += coeffs_[j];
    return (gmax_ - gmin_) * tail;
}

double Potential::variation_sum(int n) const
{
    double s = 0.0;
    for (int m = 1; m <= n; ++m) s += variation(m);
    return s;
}

void Potential::validate_against(const Language& lang) const
{
    if (kind_ != Kind::LocallyConstant || table_.empty()) return;
    if (lang.depth() < window_) throw std::invalid_argument("language shallower than potential window");
    lang.for_each_word(window_, [&](const Word& w) {
        if (table_.find(w) == table_.end())
            throw std::invalid_argument("potential table missing admissible word " + w.to_string());
    });
}

Potential Potential::shifted(double c) const
{
    Potential p = *this;
    p.shift_ += c;
    return p;
}

Interval birkhoff_bracket(const Potential& phi, const Word& w, const Language* ext)
{
    const int n = static_cast<int>(w.size());
    if (n < 1) throw std::invalid_argument("birkhoff_bracket: empty word");

    if (phi.kind() == Potential::Kind::LocallyConstant) {
        const int k = phi.window();
        Interval total{0, 0};
        const int deterministic = std::max(0, n - k + 1);  // terms fully visible in w
        for (int i = 0; i < deterministic; ++i) {
            const double v = phi.table_value(w.subword(i + 1, i + k));
            total.lo += v;
            total.hi += v;
        }
        if (deterministic == n) return total;

        if (ext != nullptr && ext->depth() >= n + k - 1) {
            // exact: maximize the joint tail sum over admissible extensions
            Interval tail;
            bool any = false;
            // enumerate admissible extensions u of w with |u| = k-1 via trie
            std::function<void(Word&, int)> rec = [&](Word& cur, int remaining) {
                if (remaining == 0) {
                    double s = 0.0;
                    for (int i = deterministic; i < n; ++i)
                        s += phi.table_value(cur.subword(i + 1, i + k));
                    if (!any) { tail = {s, s}; any = true; }
                    else tail.include(s);
                    return;
                }
                for (int a = 0; a < ext->alphabet_size(); ++a) {
                    cur.push_back(static_cast<Symbol>(a));
                    if (ext->contains(cur)) rec(cur, remaining - 1);
                    cur.pop_back();
                }
            };
            Word cur = w;
            rec(cur, k - 1);
            if (!any) throw std::invalid_argument("birkhoff_bracket: word has no admissible extension");
            return total + tail;
        }

        // no extension context: per-term outer bracket
        Interval tail{0, 0};
        for (int i = deterministic; i < n; ++i) {
            const Interval t = phi.value_bracket(w.subword(i + 1, n));
            tail = tail + t;
        }
        return total + tail;
    }

    // series potential: sum per-shift value brackets (suffix views of w)
    Interval total{0, 0};
    for (int i = 0; i < n; ++i) total = total + phi.value_bracket(w.subword(i + 1, n));
    return total;
}

namespace {

BowenReport bowen_rows(const Potential& phi,
                       const std::function<void(int, const std::function<void(const Word&)>&)>& words_at,
                       int depth, std::size_t sample_cap)
{
    BowenReport rep;
    double running = 0.0;
    struct LevelDone {};
    for (int n = 1; n <= depth; ++n) {
        double vmax = 0.0;
        std::size_t seen = 0;
        try {
            words_at(n, [&](const Word& w) {
                if (seen >= sample_cap) {
                    rep.sampled = true;
                    throw LevelDone{};
                }
                ++seen;
                vmax = std::max(vmax, birkhoff_bracket(phi, w).width());
            });
        } catch (const LevelDone&) {
        }
        running = std::max(running, vmax);
        rep.rows.push_back({n, vmax, running, phi.variation_sum(n)});
    }
    rep.v_estimate = running;

    // plateau test over the top half, mirroring the K-stability rule
    const int half = std::max(1, depth / 2);
    const double early = rep.rows[half - 1].running_max;
    const double late = rep.rows[depth - 1].running_max;
    const bool plateau = late <= early * 1.10 + 1e-12;
    const bool below_bound = late <= phi.variation_sum(depth) + 1e-9;
    rep.pass = plateau && below_bound;
    return rep;
}

}  // namespace

BowenReport bowen_check(const Potential& phi, const OrbitCollection& g, int depth,
                        std::size_t sample_cap)
{
    if (depth > g.base().depth()) throw std::out_of_range("bowen_check: depth beyond language");
    return bowen_rows(
        phi,
        [&](int n, const std::function<void(const Word&)>& fn) { g.for_each(n, fn); },
        depth, sample_cap);
}

BowenReport bowen_check(const Potential& phi, const ShiftModel& model, int depth,
                        std::size_t sample_cap)
{
    return bowen_rows(
        phi,
        [&](int n, const std::function<void(const Word&)>& fn) {
            for_each_word_streaming(model, n, fn);
        },
        depth, sample_cap);
}

}  // namespace shiftlab
