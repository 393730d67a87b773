#include "shiftlab/specification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

namespace shiftlab {

namespace {

// Bitmask over connector lengths 0..tau_max: bit t set iff some u with
// |u| = t makes v u w admissible.  Depends on v only through its walker state.
class GlueSearch {
public:
    GlueSearch(const ShiftModel& model, int tau_max) : model_(model), tau_max_(tau_max) {}

    std::uint64_t feasible_lengths(WalkState after_v, const Word& w)
    {
        const std::uint64_t key = (static_cast<std::uint64_t>(after_v) << 20) | intern(w);
        const auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::uint64_t mask = 0;
        Word u;
        dfs(after_v, w, u, mask);
        memo_[key] = mask;
        return mask;
    }

    // lexicographically-first connector of exact length t, if any
    std::optional<Word> connector(WalkState after_v, const Word& w, int t) const
    {
        Word u;
        if (find_connector(after_v, w, t, u)) return u;
        return std::nullopt;
    }

private:
    bool reads(WalkState s, const Word& w) const
    {
        std::optional<WalkState> t = s;
        for (Symbol a : w.symbols) {
            t = model_.step(*t, a);
            if (!t) return false;
        }
        return true;
    }

    void dfs(WalkState s, const Word& w, Word& u, std::uint64_t& mask)
    {
        if (reads(s, w)) mask |= (1ULL << u.size());
        if (static_cast<int>(u.size()) == tau_max_) return;
        for (int a = 0; a < model_.alphabet_size(); ++a) {
            const auto t = model_.step(s, static_cast<Symbol>(a));
            if (!t) continue;
            u.push_back(static_cast<Symbol>(a));
            dfs(*t, w, u, mask);
            u.pop_back();
        }
    }

    bool find_connector(WalkState s, const Word& w, int remaining, Word& u) const
    {
        if (remaining == 0) return reads(s, w);
        for (int a = 0; a < model_.alphabet_size(); ++a) {
            const auto t = model_.step(s, static_cast<Symbol>(a));
            if (!t) continue;
            u.push_back(static_cast<Symbol>(a));
            if (find_connector(*t, w, remaining - 1, u)) return true;
            u.pop_back();
        }
        return false;
    }

    std::uint64_t intern(const Word& w)
    {
        const auto it = word_ids_.find(w.to_string());
        if (it != word_ids_.end()) return it->second;
        const std::uint64_t id = word_ids_.size() + 1;
        if (id >= (1ULL << 20)) throw ResourceError("glue search: too many distinct right words");
        word_ids_[w.to_string()] = id;
        return id;
    }

    const ShiftModel& model_;
    int tau_max_;
    std::unordered_map<std::uint64_t, std::uint64_t> memo_;
    std::unordered_map<std::string, std::uint64_t> word_ids_;
};

}  // namespace

SpecCheckResult check_specification(const ShiftModel& model, const OrbitCollection& g,
                                    const SpecOptions& opt)
{
    SpecCheckResult res;
    if (opt.tau_max < 0 || opt.tau_max > 62) throw std::invalid_argument("tau_max out of range");
    if (opt.depth < 1) throw std::invalid_argument("spec check needs depth >= 1");

    // the longest glued word the oracle must answer for
    const std::size_t need = 2 * static_cast<std::size_t>(opt.depth) + opt.tau_max;
    if (need > model.certified_depth()) {
        res.status = SpecCheckResult::Status::Inconclusive;
        res.note = "glued words of length " + std::to_string(need) +
                   " exceed the model's certified depth " + std::to_string(model.certified_depth());
        return res;
    }

    std::vector<Word> words;
    for (int n = 1; n <= opt.depth; ++n)
        g.for_each(n, [&](const Word& w) { words.push_back(w); });
    if (words.empty()) {
        res.status = SpecCheckResult::Status::Certified;
        res.cert.tau = 0;
        res.cert.depth = opt.depth;
        res.cert.basis = "vacuous (empty collection)";
        return res;
    }

    std::vector<std::size_t> left_idx, right_idx;
    std::mt19937_64 rng(opt.seed);
    const std::size_t total_pairs = words.size() * words.size();
    const bool sampled = opt.mode == SpecMode::Sampled && total_pairs > opt.sample_pairs;
    if (sampled) {
        std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
        for (std::size_t i = 0; i < opt.sample_pairs; ++i) {
            left_idx.push_back(pick(rng));
            right_idx.push_back(pick(rng));
        }
    }

    GlueSearch glue(model, opt.tau_max);
    std::uint64_t all_and = ~0ULL;  // lengths feasible for every pair
    int tau_needed = 0;             // max over pairs of min feasible length

    auto handle_pair = [&](const Word& v, const Word& w) -> bool {
        const auto sv = model.walk(v);
        const std::uint64_t mask = glue.feasible_lengths(*sv, w);
        if (mask == 0) {
            res.status = SpecCheckResult::Status::Counterexample;
            res.cex_v = v;
            res.cex_w = w;
            res.note = "no connector of length <= " + std::to_string(opt.tau_max);
            return false;
        }
        all_and &= mask;
        tau_needed = std::max(tau_needed, std::countr_zero(mask));
        return true;
    };

    if (sampled) {
        for (std::size_t i = 0; i < left_idx.size(); ++i)
            if (!handle_pair(words[left_idx[i]], words[right_idx[i]])) return res;
    } else {
        for (const Word& v : words)
            for (const Word& w : words)
                if (!handle_pair(v, w)) return res;
    }

    SpecCertificate cert;
    cert.tau = tau_needed;
    cert.depth = opt.depth;
    const std::uint64_t strong_mask = all_and & ((opt.tau_max == 62 ? ~0ULL : (1ULL << (opt.tau_max + 1))) - 1);
    cert.strong_tau = strong_mask ? std::countr_zero(strong_mask) : -1;
    cert.basis = sampled ? "pairwise-sampled" : "pairwise-exhaustive";

    // glue exemplars (and a closure probe: do glued words stay in G?)
    std::size_t closed_in_g = 0, probes = 0;
    for (std::size_t i = 0; i < words.size() && cert.examples.size() < opt.max_examples; i += std::max<std::size_t>(1, words.size() / 5)) {
        for (std::size_t j = 0; j < words.size() && cert.examples.size() < opt.max_examples; j += std::max<std::size_t>(1, words.size() / 5)) {
            const Word &v = words[i], &w = words[j];
            const auto sv = model.walk(v);
            for (int t = 0; t <= cert.tau; ++t) {
                const auto u = glue.connector(*sv, w, t);
                if (!u) continue;
                cert.examples.push_back({v, *u, w});
                ++probes;
                const Word glued = v.concat(*u).concat(w);
                if (static_cast<int>(glued.size()) <= g.base().depth() && g.contains(glued)) ++closed_in_g;
                break;
            }
        }
    }

    // k-fold reading: pairwise iterates to k-fold when glued words re-enter G;
    // otherwise sample triples and glue them directly
    if (probes > 0 && closed_in_g == probes) {
        cert.basis += "; glued samples re-enter the collection (pairwise iterates to k-fold)";
    } else if (opt.kfold_samples > 0) {
        std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
        std::size_t ok = 0;
        for (std::size_t s = 0; s < opt.kfold_samples; ++s) {
            const Word &a = words[pick(rng)], &b = words[pick(rng)], &c = words[pick(rng)];
            bool glued = false;
            const auto sa = model.walk(a);
            for (int t1 = 0; t1 <= cert.tau && !glued; ++t1) {
                const auto u1 = glue.connector(*sa, b, t1);
                if (!u1) continue;
                const Word ab = a.concat(*u1).concat(b);
                const auto sab = model.walk(ab);
                if (!sab) continue;
                for (int t2 = 0; t2 <= cert.tau && !glued; ++t2)
                    if (glue.connector(*sab, c, t2)) glued = true;
            }
            if (glued) ++ok;
        }
        cert.basis += "; k-fold sampled on triples (" + std::to_string(ok) + "/" +
                      std::to_string(opt.kfold_samples) + " glued)";
        if (ok < opt.kfold_samples) {
            res.status = SpecCheckResult::Status::Counterexample;
            res.note = "a sampled triple failed to glue within tau";
            return res;
        }
    }

    // periodic strong specification: every sampled pair extends to a periodic
    // point after one more connector
    if (opt.check_periodic && cert.strong_tau >= 0) {
        bool all_periodic = true;
        const int t = cert.strong_tau;
        for (std::size_t i = 0; i < words.size() && all_periodic; i += std::max<std::size_t>(1, words.size() / 8)) {
            for (std::size_t j = 0; j < words.size() && all_periodic; j += std::max<std::size_t>(1, words.size() / 8)) {
                const Word &v = words[i], &w = words[j];
                bool found = false;
                // search u, u' of exact length t with (v u w u')^inf admissible
                auto continuations = [&](WalkState s0) {
                    std::vector<Word> out;
                    Word u;
                    std::function<void(WalkState, int)> collect = [&](WalkState s, int remaining) {
                        if (remaining == 0) { out.push_back(u); return; }
                        for (int a = 0; a < model.alphabet_size(); ++a) {
                            const auto nx = model.step(s, static_cast<Symbol>(a));
                            if (!nx) continue;
                            u.push_back(static_cast<Symbol>(a));
                            collect(*nx, remaining - 1);
                            u.pop_back();
                        }
                    };
                    collect(s0, t);
                    return out;
                };
                const auto sv = model.walk(v);
                for (const Word& u1 : continuations(*sv)) {
                    const Word vuw = v.concat(u1).concat(w);
                    const auto s2 = model.walk(vuw);
                    if (!s2) continue;
                    for (const Word& u2 : continuations(*s2)) {
                        const Word cyc = vuw.concat(u2);
                        // repetition check, certified up to the oracle depth
                        Word x = cyc;
                        bool per = model.membership(x);
                        std::size_t reps = 1;
                        while (per && (x.size() + cyc.size()) <= model.certified_depth() && reps < 4) {
                            x = x.concat(cyc);
                            per = model.membership(x);
                            ++reps;
                        }
                        if (per) { found = true; break; }
                    }
                    if (found) break;
                }
                if (!found) all_periodic = false;
            }
        }
        cert.periodic_strong = all_periodic;
    }

    res.status = SpecCheckResult::Status::Certified;
    res.cert = std::move(cert);
    return res;
}

SpecCheckResult check_specification(const ShiftModel& model,
                                    std::shared_ptr<const Language> lang, const SpecOptions& opt)
{
    return check_specification(model, OrbitCollection::whole_language(std::move(lang)), opt);
}

EntropyProductionResult entropy_production_bound(const ShiftModel& model, int tau, const Word& w1,
                                                 const Word& w2, int k_max)
{
    if (w1.size() != w2.size() || w1 == w2)
        throw std::invalid_argument("entropy production needs two distinct words of equal length");
    if (!model.membership(w1) || !model.membership(w2))
        throw std::invalid_argument("entropy production: words must be admissible");
    const int n = static_cast<int>(w1.size());

    EntropyProductionResult res;
    res.bound = std::log(2.0) / (n + tau);

    for (int k = 1; k <= k_max; ++k) {
        std::unordered_set<std::string> images;
        bool all_built = true;
        for (std::uint64_t bits = 0; bits < (1ULL << k); ++bits) {
            // backtracking over the tau-length connectors after each block
            Word word;
            std::function<bool(int)> build = [&](int block) -> bool {
                if (block == k) return true;
                const Word& blk = ((bits >> block) & 1ULL) ? w2 : w1;
                const Word base = word;
                Word cand = base.concat(blk);
                if (!model.membership(cand)) return false;
                // choose u of exact length tau admissibly, backtracking
                std::function<bool(Word&, int)> pick = [&](Word& cur, int remaining) -> bool {
                    if (remaining == 0) {
                        word = cur;
                        if (build(block + 1)) return true;
                        word = base;
                        return false;
                    }
                    for (int a = 0; a < model.alphabet_size(); ++a) {
                        cur.push_back(static_cast<Symbol>(a));
                        if (model.membership(cur) && pick(cur, remaining - 1)) return true;
                        cur.pop_back();
                    }
                    return false;
                };
                return pick(cand, tau);
            };
            if (!build(0)) { all_built = false; break; }
            images.insert(word.to_string());
        }
        if (!all_built) break;
        res.image_counts.push_back(BigInt(images.size()));
        if (images.size() != (1ULL << k)) {
            res.injective = false;
            return res;
        }
        res.max_k_verified = k;
        res.injective = true;
    }
    return res;
}

SurgeryReport subshift_gap_check(const ShiftModel& model_x, const ShiftModel& model_y,
                                 const Word& marker, int tau, int n, int big_n, int alpha_n)
{
    if (model_y.membership(marker))
        throw std::invalid_argument("surgery: marker word must be outside the subshift's language");
    if (!model_x.membership(marker))
        throw std::invalid_argument("surgery: marker word must be admissible in the ambient shift");
    const int t = static_cast<int>(marker.size());
    if (n <= t + 2 * tau) throw std::invalid_argument("surgery: window must exceed |w| + 2 tau");
    if (alpha_n < 2 || alpha_n > big_n) throw std::invalid_argument("surgery: need 2 <= alpha N <= N");

    const int len = n * big_n;
    SurgeryReport rep;
    rep.n = n;
    rep.big_n = big_n;
    rep.alpha_n = alpha_n;
    rep.tau = tau;
    {
        const auto cy = streaming_counts(model_y, t + 2 * tau);
        rep.c_constant = cy[t + 2 * tau - 1];
    }

    // all J subsets of the window boundaries {n, 2n, .., (N-1)n} of size aN-1
    std::vector<std::vector<int>> j_sets;
    {
        std::vector<int> a;
        for (int k = 1; k < big_n; ++k) a.push_back(k * n);
        std::vector<int> idx(alpha_n - 1);
        std::function<void(int, int)> rec = [&](int start, int chosen) {
            if (chosen == alpha_n - 1) {
                std::vector<int> j;
                for (int q = 0; q < chosen; ++q) j.push_back(a[idx[q]]);
                j_sets.push_back(std::move(j));
                return;
            }
            for (int i = start; i < static_cast<int>(a.size()); ++i) {
                idx[chosen] = i;
                rec(i + 1, chosen + 1);
            }
        };
        rec(0, 0);
    }

    const int replace_len = t + 2 * tau;
    std::unordered_set<std::uint64_t> produced;
    // preimage counts per J, keyed by packed image word
    std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> mult(j_sets.size());
    std::uint64_t y_count = 0;

    for_each_word_streaming(model_y, len, [&](const Word& y) {
        ++y_count;
        for (std::size_t ji = 0; ji < j_sets.size(); ++ji) {
            const std::vector<int>& js = j_sets[ji];
            Word out = y;
            // nested backtracking over the connector choices of each surgery
            std::function<bool(std::size_t)> apply = [&](std::size_t si) -> bool {
                if (si == js.size()) return true;
                const int j = js[si];
                const Word saved = out;
                std::vector<Symbol> buf(static_cast<std::size_t>(replace_len));
                // enumerate v1, v2 in A^tau (admissibility enforced by the final check)
                const int a_sz = model_x.alphabet_size();
                std::function<bool(int)> fill = [&](int pos) -> bool {
                    if (pos == 2 * tau) {
                        // layout of the replaced stretch: v1 (tau) | marker (t) | v2 (tau)
                        Word cand = saved;
                        for (int q = 0; q < tau; ++q) cand.symbols[j - replace_len + q] = buf[q];
                        for (int q = 0; q < t; ++q) cand.symbols[j - replace_len + tau + q] = marker[q];
                        for (int q = 0; q < tau; ++q) cand.symbols[j - tau + q] = buf[tau + q];
                        if (!model_x.membership(cand.subword(1, j))) return false;
                        out = cand;
                        if (apply(si + 1)) return true;
                        out = saved;
                        return false;
                    }
                    for (int a = 0; a < a_sz; ++a) {
                        buf[pos] = static_cast<Symbol>(a);
                        if (fill(pos + 1)) return true;
                    }
                    return false;
                };
                return fill(0);
            };
            if (!apply(0)) continue;
            if (!model_x.membership(out)) continue;
            const std::uint64_t key = pack_word(out, model_x.alphabet_size());
            produced.insert(key);
            const std::uint64_t m = ++mult[ji][key];
            rep.max_multiplicity = std::max(rep.max_multiplicity, m);
        }
    });

    rep.y_count = BigInt(y_count);
    rep.realized = produced.size();

    const double alpha = static_cast<double>(alpha_n) / big_n;
    const double log_c = log_big(rep.c_constant);
    double log_binom = 0.0;
    for (int k = 1; k <= alpha_n - 1; ++k)
        log_binom += std::log(static_cast<double>(big_n - k)) - std::log(static_cast<double>(alpha_n - k));
    const double log_y = std::log(static_cast<double>(y_count));
    rep.predicted_binom = std::exp(log_binom + log_y - (alpha_n - 1) * log_c);
    rep.predicted_loose =
        alpha * std::exp((-alpha * std::log(alpha)) * big_n) * std::exp(-alpha * big_n * log_c) *
        static_cast<double>(y_count);

    std::uint64_t mbound = 1;
    for (int k = 0; k < alpha_n - 1; ++k) mbound *= rep.c_constant.convert_to<std::uint64_t>();
    rep.multiplicity_bound = mbound;

    rep.pass = static_cast<double>(rep.realized) >= rep.predicted_binom &&
               static_cast<double>(rep.realized) >= rep.predicted_loose &&
               rep.max_multiplicity <= rep.multiplicity_bound;
    return rep;
}

}  // namespace shiftlab
