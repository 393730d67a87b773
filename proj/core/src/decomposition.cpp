#include "shiftlab/decomposition.hpp"

#include <algorithm>
#include <cmath>

namespace shiftlab {

Decomposition::Decomposition(OrbitCollection cp, OrbitCollection g, OrbitCollection cs,
                             std::function<WordSplit(const Word&)> splitter, std::string name)
    : cp_(std::move(cp)), g_(std::move(g)), cs_(std::move(cs)), splitter_(std::move(splitter)),
      name_(std::move(name))
{
}

WordSplit Decomposition::split(const Word& w) const
{
    WordSplit s = splitter_(w);
    if (s.prefix.concat(s.core).concat(s.suffix) != w)
        throw ConstructionError("decomposition splitter broke the word " + w.to_string());
    const auto part_ok = [&](const OrbitCollection& c, const Word& part) {
        return part.empty() || c.predicate(part);
    };
    if (!part_ok(cp_, s.prefix) || !part_ok(g_, s.core) || !part_ok(cs_, s.suffix))
        throw ConstructionError("decomposition rule fails to cover word " + w.to_string());
    return s;
}

bool Decomposition::in_gm(const Word& w, int M) const
{
    const int n = static_cast<int>(w.size());
    for (int p = 0; p <= std::min(M, n); ++p) {
        if (p > 0 && !cp_.predicate(w.subword(1, p))) continue;
        for (int s = 0; s <= std::min(M, n - p); ++s) {
            if (s > 0 && !cs_.predicate(w.subword(n - s + 1, n))) continue;
            const Word core = (p + s == n) ? Word{} : w.subword(p + 1, n - s);
            if (core.empty() || g_.predicate(core)) return true;
        }
    }
    return false;
}

OrbitCollection Decomposition::gm(int M) const
{
    return OrbitCollection(
        g_.base_ptr(), [this, M](const Word& w) { return in_gm(w, M); },
        name_ + ".G^" + std::to_string(M));
}

OrbitCollection Decomposition::obstructions() const
{
    const OrbitCollection cp = cp_;
    const OrbitCollection cs = cs_;
    return OrbitCollection(
        g_.base_ptr(),
        [cp, cs](const Word& w) { return cp.predicate(w) || cs.predicate(w); },
        name_ + ".CpUCs");
}

Decomposition trivial_decomposition(std::shared_ptr<const Language> lang)
{
    auto is_empty = [](const Word& w) { return w.empty(); };
    auto all = [](const Word&) { return true; };
    OrbitCollection cp(lang, is_empty, "Cp");
    OrbitCollection g(lang, all, "G");
    OrbitCollection cs(lang, is_empty, "Cs");
    auto split = [](const Word& w) { return WordSplit{Word{}, w, Word{}}; };
    return Decomposition(std::move(cp), std::move(g), std::move(cs), split, "trivial");
}

Decomposition beta_canonical_decomposition(std::shared_ptr<const BetaModel> model,
                                           std::shared_ptr<const Language> lang)
{
    auto returns_to_base = [model](const Word& w) {
        const auto end = model->graph().path_end(w);
        return end.has_value() && *end == 0;
    };
    auto never_returns = [model](const Word& w) {
        if (w.empty()) return true;
        std::uint32_t v = 0;
        for (Symbol a : w.symbols) {
            const auto nxt = model->graph().edge(v, a);
            if (!nxt || *nxt == 0) return false;
            v = *nxt;
        }
        return true;
    };
    auto is_empty = [](const Word& w) { return w.empty(); };
    OrbitCollection cp(lang, is_empty, "Cp");
    OrbitCollection g(lang, returns_to_base, "G(return)");
    OrbitCollection cs(lang, never_returns, "Cs(spine)");
    auto split = [model](const Word& w) {
        std::uint32_t v = 0;
        std::size_t last_return = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const auto nxt = model->graph().edge(v, w[i]);
            if (!nxt) throw ConstructionError("beta splitter hit inadmissible word " + w.to_string());
            v = *nxt;
            if (v == 0) last_return = i + 1;
        }
        WordSplit s;
        s.core = last_return == 0 ? Word{} : w.subword(1, last_return);
        s.suffix = last_return == w.size() ? Word{} : w.subword(last_return + 1, w.size());
        return s;
    };
    return Decomposition(std::move(cp), std::move(g), std::move(cs), split, "beta-canonical");
}

Decomposition threshold_decomposition(std::shared_ptr<const Language> lang, const Potential& phi,
                                      double r)
{
    if (phi.kind() != Potential::Kind::LocallyConstant || phi.window() != 1)
        throw std::invalid_argument("threshold decomposition needs a window-1 potential");
    auto partial = [phi](const Word& w, std::size_t j) {
        double s = 0.0;
        for (std::size_t i = 0; i < j; ++i) s += phi.table_value(Word({w[i]}));
        return s;
    };
    auto cp_pred = [phi, partial, r](const Word& w) {
        return partial(w, w.size()) >= -r * static_cast<double>(w.size());
    };
    auto g_pred = [phi, partial, r](const Word& w) {
        double s = 0.0;
        for (std::size_t j = 1; j <= w.size(); ++j) {
            s += phi.table_value(Word({w[j - 1]}));
            if (!(s < -r * static_cast<double>(j))) return false;
        }
        return true;
    };
    auto is_empty = [](const Word& w) { return w.empty(); };
    OrbitCollection cp(lang, cp_pred, "Cp(threshold)");
    OrbitCollection g(lang, g_pred, "G(threshold)");
    OrbitCollection cs(lang, is_empty, "Cs");
    auto split = [cp_pred](const Word& w) {
        std::size_t p = 0;
        for (std::size_t j = w.size(); j > 0; --j)
            if (cp_pred(w.subword(1, j))) { p = j; break; }
        WordSplit s;
        s.prefix = p == 0 ? Word{} : w.subword(1, p);
        s.core = p == w.size() ? Word{} : w.subword(p + 1, w.size());
        return s;
    };
    return Decomposition(std::move(cp), std::move(g), std::move(cs), split, "threshold");
}

Decomposition custom_decomposition(std::shared_ptr<const Language> lang,
                                   std::function<bool(const Word&)> cp_pred,
                                   std::function<bool(const Word&)> g_pred,
                                   std::function<bool(const Word&)> cs_pred, std::string name)
{
    OrbitCollection cp(lang, cp_pred, name + ".Cp");
    OrbitCollection g(lang, g_pred, name + ".G");
    OrbitCollection cs(lang, cs_pred, name + ".Cs");
    auto split = [cp_pred, g_pred, cs_pred](const Word& w) {
        const std::size_t n = w.size();
        // longest C^p prefix, then longest C^s suffix of the remainder
        std::size_t p = 0;
        for (std::size_t j = n; j > 0; --j)
            if (cp_pred(w.subword(1, j))) { p = j; break; }
        std::size_t s = 0;
        for (std::size_t j = n - p; j > 0; --j)
            if (cs_pred(w.subword(n - j + 1, n))) { s = j; break; }
        WordSplit out;
        out.prefix = p ? w.subword(1, p) : Word{};
        out.suffix = s ? w.subword(n - s + 1, n) : Word{};
        out.core = (p + s == n) ? Word{} : w.subword(p + 1, n - s);
        if (!out.core.empty() && !g_pred(out.core))
            throw ConstructionError("decomposition rule fails to cover word " + w.to_string());
        return out;
    };
    return Decomposition(std::move(cp), std::move(g), std::move(cs), split, std::move(name));
}

UniquenessReport verify_uniqueness_hypotheses(const ShiftModel& model, const Decomposition& dec,
                                              const std::vector<int>& m_list,
                                              const SpecOptions& spec_opt, Window window)
{
    UniquenessReport rep;
    const Language& lang = dec.base();
    const int depth = window.hi > 0 ? std::min(window.hi, lang.depth()) : lang.depth();
    Window win{window.lo, depth};

    rep.h_full = entropy_estimate(lang.counts(), win, /*full_language=*/true);

    // obstruction entropy over nonzero counts only (a zero level carries no
    // exponential-growth information)
    const OrbitCollection obs = dec.obstructions();
    std::vector<std::pair<int, double>> pts;
    for (int n = 1; n <= depth; ++n) {
        const BigInt c = obs.count(n);
        if (c > 0) pts.emplace_back(n, log_big(c));
    }
    if (pts.empty()) {
        rep.obstructions_empty = true;
        rep.h_obstruction_tail = -std::numeric_limits<double>::infinity();
        rep.h_obstruction_regression = rep.h_obstruction_tail;
    } else {
        double tail = -std::numeric_limits<double>::infinity();
        for (const auto& [n, lc] : pts)
            if (n >= win.lo) tail = std::max(tail, lc / n);
        if (!std::isfinite(tail))  // window missed every nonzero level
            for (const auto& [n, lc] : pts) tail = std::max(tail, lc / n);
        rep.h_obstruction_tail = tail;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& [n, lc] : pts) {
            sx += n;
            sy += lc;
            sxx += double(n) * n;
            sxy += double(n) * lc;
        }
        const double m = static_cast<double>(pts.size());
        const double den = m * sxx - sx * sx;
        rep.h_obstruction_regression = den != 0.0 ? (m * sxy - sx * sy) / den : rep.h_obstruction_tail;
    }
    rep.gap_margin = rep.h_full.regression - rep.h_obstruction_tail;

    rep.spec_all_certified = true;
    for (int m : m_list) {
        UniquenessPerM per;
        per.m = m;
        const OrbitCollection gm = dec.gm(m);
        per.spec = check_specification(model, gm, spec_opt);
        rep.spec_all_certified = rep.spec_all_certified && per.spec.certified();
        per.min_density = 1.0;
        for (int n = 1; n <= depth; ++n) {
            const double ratio = to_double(BigRat(gm.count(n)) / BigRat(lang.count(n)));
            per.density.push_back(ratio);
            per.min_density = std::min(per.min_density, ratio);
        }
        rep.per_m.push_back(std::move(per));
    }
    rep.plausible = rep.spec_all_certified && (rep.obstructions_empty || rep.gap_margin > 0.0);
    return rep;
}

}  // namespace shiftlab
