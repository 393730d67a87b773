#include "shiftlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace shiftlab {

MarkovMeasure::MarkovMeasure(std::vector<Word> states, std::vector<double> stationary,
                             std::vector<std::vector<double>> transition)
    : states_(std::move(states)), p_(std::move(stationary)), tp_(std::move(transition))
{
    if (states_.empty() || p_.size() != states_.size() || tp_.size() != states_.size())
        throw std::invalid_argument("markov measure: inconsistent sizes");
    block_ = static_cast<int>(states_[0].size());
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (static_cast<int>(states_[i].size()) != block_)
            throw std::invalid_argument("markov measure: ragged block states");
        index_[states_[i]] = static_cast<int>(i);
    }
    double total = 0.0;
    for (double x : p_) {
        if (x < -1e-12) throw std::invalid_argument("markov measure: negative stationary mass");
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("markov measure: p not normalized");
}

int MarkovMeasure::state_index(const Word& w, std::size_t pos) const
{
    Word blk = w.subword(pos + 1, pos + block_);
    const auto it = index_.find(blk);
    return it == index_.end() ? -1 : it->second;
}

double MarkovMeasure::mass(const Word& w) const
{
    if (w.empty()) return 1.0;
    const std::size_t n = w.size();
    if (static_cast<int>(n) < block_) {
        // marginal: sum over states whose block starts with w
        double m = 0.0;
        for (std::size_t i = 0; i < states_.size(); ++i) {
            bool pref = true;
            for (std::size_t j = 0; j < n; ++j)
                if (states_[i][j] != w[j]) { pref = false; break; }
            if (pref) m += p_[i];
        }
        return m;
    }
    int s = state_index(w, 0);
    if (s < 0) return 0.0;
    double m = p_[s];
    for (std::size_t pos = 1; pos + block_ <= n; ++pos) {
        const int t = state_index(w, pos);
        if (t < 0) return 0.0;
        m *= tp_[s][t];
        s = t;
    }
    return m;
}

std::string MarkovMeasure::describe() const
{
    std::ostringstream os;
    os << "markov(block=" << block_ << ", states=" << states_.size() << ")";
    return os.str();
}

double MarkovMeasure::entropy() const
{
    double h = 0.0;
    for (std::size_t i = 0; i < states_.size(); ++i)
        for (std::size_t j = 0; j < states_.size(); ++j)
            if (tp_[i][j] > 0.0) h -= p_[i] * tp_[i][j] * std::log(tp_[i][j]);
    return h;
}

double MarkovMeasure::integrate(const Potential& phi) const
{
    if (phi.kind() != Potential::Kind::LocallyConstant)
        throw std::invalid_argument("integrate: locally constant potentials only");
    const int k = phi.window();
    if (k > block_ + 1)
        throw std::invalid_argument("integrate: potential window exceeds block resolution");
    // int phi dmu = sum over admissible k-words of mu[w] phi(w); enumerate
    // k-words through the chain structure
    double total = 0.0;
    if (k <= block_) {
        std::map<Word, double> seen;
        for (std::size_t i = 0; i < states_.size(); ++i)
            seen[states_[i].subword(1, k)] += p_[i];
        for (const auto& [w, m] : seen) total += m * phi.table_value(w);
    } else {  // k == block_ + 1: one transition pins the word
        for (std::size_t i = 0; i < states_.size(); ++i)
            for (std::size_t j = 0; j < states_.size(); ++j) {
                if (tp_[i][j] <= 0.0) continue;
                Word w = states_[i];
                w.push_back(states_[j].back());
                total += p_[i] * tp_[i][j] * phi.table_value(w);
            }
    }
    return total;
}

double MarkovMeasure::stationarity_defect() const
{
    double d = 0.0;
    for (std::size_t j = 0; j < states_.size(); ++j) {
        double pj = 0.0;
        for (std::size_t i = 0; i < states_.size(); ++i) pj += p_[i] * tp_[i][j];
        d = std::max(d, std::abs(pj - p_[j]));
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
        double row = 0.0;
        for (double x : tp_[i]) row += x;
        d = std::max(d, std::abs(row - 1.0));
    }
    return d;
}

Word MarkovMeasure::sample_orbit(std::size_t length, std::mt19937_64& rng) const
{
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto pick = [&](const std::vector<double>& dist) {
        double x = unif(rng), acc = 0.0;
        for (std::size_t i = 0; i < dist.size(); ++i) {
            acc += dist[i];
            if (x <= acc) return static_cast<int>(i);
        }
        return static_cast<int>(dist.size()) - 1;
    };
    int s = pick(p_);
    Word w = states_[s];
    while (w.size() < length) {
        const int t = pick(tp_[s]);
        w.push_back(states_[t].back());
        s = t;
    }
    w.symbols.resize(length);
    return w;
}

MarkovMeasure parry_measure(const SftModel& model)
{
    if (!model.irreducible())
        throw ConstructionError("parry measure: transition matrix is not irreducible");
    const int n = model.alphabet_size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = model.live_matrix()[i][j];
    const PerronData pd = perron_data(a);
    std::vector<Word> states;
    for (int i = 0; i < n; ++i) states.push_back(Word({static_cast<Symbol>(i)}));
    std::vector<double> p(n);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        p[i] = pd.left[i] * pd.right[i];
        z += p[i];
    }
    for (double& x : p) x /= z;
    std::vector<std::vector<double>> tp(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a[i][j] != 0.0) tp[i][j] = pd.right[j] / (pd.lambda * pd.right[i]);
    return MarkovMeasure(std::move(states), std::move(p), std::move(tp));
}

WeightedMarkov weighted_gibbs_markov(const SftModel& model, const Potential& phi)
{
    if (phi.kind() != Potential::Kind::LocallyConstant)
        throw std::invalid_argument("weighted_gibbs_markov: locally constant potentials only");
    if (!model.irreducible())
        throw ConstructionError("weighted_gibbs_markov: matrix is not irreducible");
    const int k = phi.window();
    const int block = std::max(1, k - 1);

    // states: admissible block-words; M weighted by e^{phi} on the k-word a
    // transition exposes (for k = 1 the weight sits on the arriving symbol)
    const Language lang = enumerate_language(model, std::max(block + 1, k), {});
    std::vector<Word> states = lang.words(block);
    std::map<Word, int> idx;
    for (std::size_t i = 0; i < states.size(); ++i) idx[states[i]] = static_cast<int>(i);
    const int m = static_cast<int>(states.size());
    std::vector<std::vector<double>> weighted(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i) {
        for (int a = 0; a < model.alphabet_size(); ++a) {
            Word w = states[i];
            w.push_back(static_cast<Symbol>(a));  // block+1 word
            if (!lang.contains(w)) continue;
            const Word target = w.subword(2, block + 1);
            const auto it = idx.find(target);
            if (it == idx.end()) continue;
            const double weight =
                k == 1 ? std::exp(phi.table_value(Word({static_cast<Symbol>(a)})))
                       : std::exp(phi.table_value(w.subword(1, k)));
            weighted[i][it->second] = weight;
        }
    }
    const PerronData pd = perron_data(weighted);
    std::vector<double> p(m);
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        p[i] = pd.left[i] * pd.right[i];
        z += p[i];
    }
    for (double& x : p) x /= z;
    std::vector<std::vector<double>> tp(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (weighted[i][j] != 0.0)
                tp[i][j] = weighted[i][j] * pd.right[j] / (pd.lambda * pd.right[i]);
    return WeightedMarkov{MarkovMeasure(std::move(states), std::move(p), std::move(tp)),
                          std::log(pd.lambda)};
}

MarkovMeasure uniform_markov(const SftModel& model)
{
    const int n = model.alphabet_size();
    std::vector<std::vector<double>> tp(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        if (!model.live(i)) continue;
        double deg = 0.0;
        for (int j = 0; j < n; ++j) deg += model.live_matrix()[i][j];
        for (int j = 0; j < n; ++j)
            if (model.live_matrix()[i][j]) tp[i][j] = 1.0 / deg;
    }
    // stationary vector by iteration
    std::vector<double> p(n, 0.0);
    int live = 0;
    for (int i = 0; i < n; ++i)
        if (model.live(i)) ++live;
    for (int i = 0; i < n; ++i) p[i] = model.live(i) ? 1.0 / live : 0.0;
    for (int it = 0; it < 5000; ++it) {
        std::vector<double> q(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) q[j] += p[i] * tp[i][j];
        p = std::move(q);
    }
    std::vector<Word> states;
    for (int i = 0; i < n; ++i) states.push_back(Word({static_cast<Symbol>(i)}));
    return MarkovMeasure(std::move(states), std::move(p), std::move(tp));
}

MarkovMeasure bernoulli_measure(const std::vector<double>& probs)
{
    const int n = static_cast<int>(probs.size());
    std::vector<Word> states;
    for (int i = 0; i < n; ++i) states.push_back(Word({static_cast<Symbol>(i)}));
    std::vector<std::vector<double>> tp(n, probs);
    return MarkovMeasure(std::move(states), probs, std::move(tp));
}

VariationalCandidate variational_candidate(const std::string& name, const MarkovMeasure& mu,
                                           const Potential* phi)
{
    VariationalCandidate c;
    c.name = name;
    c.entropy = mu.entropy();
    c.phi_integral = phi ? mu.integrate(*phi) : 0.0;
    return c;
}

// ---------------------------------------------------------------------------

EmpiricalMeasure::EmpiricalMeasure(std::map<Word, BigRat> table, int n, int depth, std::string descr)
    : table_(std::move(table)), n_(n), depth_(depth), descr_(std::move(descr))
{
}

double EmpiricalMeasure::mass(const Word& w) const { return to_double(exact_mass(w)); }

const BigRat& EmpiricalMeasure::exact_mass(const Word& w) const
{
    if (static_cast<int>(w.size()) > depth_)
        throw std::out_of_range("empirical measure: cylinder deeper than table");
    const auto it = table_.find(w);
    return it == table_.end() ? zero_ : it->second;
}

EmpiricalMeasure empirical_measure(const ShiftModel& model, const Language& lang, int n, int depth,
                                   const Potential* phi)
{
    if (depth >= n) throw std::invalid_argument("empirical measure needs depth < n");
    if (lang.depth() < n) throw std::out_of_range("empirical measure: language shallower than n");

    // cylinder weights; dyadic rationals keep all later arithmetic exact
    std::vector<Word> level = lang.words(n);
    std::vector<BigRat> weight(level.size(), BigRat(1));
    if (phi != nullptr) {
        for (std::size_t i = 0; i < level.size(); ++i) {
            const Interval s = birkhoff_bracket(*phi, level[i], &lang);
            weight[i] = rational_from_double(std::exp(s.hi));
        }
    }
    BigRat total_weight = 0;
    for (const BigRat& q : weight) total_weight += q;

    std::map<Word, BigRat> table;
    const BigRat denom = BigRat(n) * total_weight;

    // successor sets per walker state, for the uniform walk beyond depth n
    for (std::size_t ui = 0; ui < level.size(); ++ui) {
        const Word& u = level[ui];
        const BigRat base = weight[ui] / denom;
        for (int k = 0; k < n; ++k) {
            // window starts at position k (0-based); visible part comes from u
            const int visible = std::min(depth, n - k);
            Word w;
            for (int j = 0; j < visible; ++j) w.push_back(u[k + j]);
            for (int j = 1; j <= visible; ++j) table[w.subword(1, j)] += base;
            if (visible == depth) continue;
            // walk the remaining depth-visible symbols with uniform successors
            std::function<void(Word&, const Word&, BigRat)> walk = [&](Word& full, const Word& win,
                                                                       BigRat prob) {
                if (static_cast<int>(win.size()) == depth) return;
                const auto st = model.walk(full);
                std::vector<Symbol> succ;
                for (int a = 0; a < model.alphabet_size(); ++a)
                    if (model.step(*st, static_cast<Symbol>(a))) succ.push_back(static_cast<Symbol>(a));
                const BigRat p = prob / BigRat(static_cast<int>(succ.size()));
                for (Symbol a : succ) {
                    full.push_back(a);
                    Word win2 = win;
                    win2.push_back(a);
                    table[win2] += base * p;
                    walk(full, win2, p);
                    full.pop_back();
                }
            };
            Word full = u;
            walk(full, w, BigRat(1));
        }
    }
    std::ostringstream os;
    os << (phi ? "empirical equilibrium" : "empirical MME") << "(n=" << n << ", depth=" << depth << ")";
    return EmpiricalMeasure(std::move(table), n, depth, os.str());
}

// ---------------------------------------------------------------------------

GibbsReport gibbs_check(const ShiftMeasure& mu, const Language& lang, int depth, double h_or_pressure,
                        const Potential* phi, const OrbitCollection* restriction)
{
    if (depth > lang.depth()) throw std::out_of_range("gibbs_check: depth beyond language");
    if (mu.query_depth() < static_cast<std::size_t>(depth))
        throw std::out_of_range("gibbs_check: depth beyond measure table");
    GibbsReport rep;
    for (int n = 1; n <= depth; ++n) {
        GibbsRow row{n, std::numeric_limits<double>::infinity(), 0.0};
        bool any_lower = false;
        lang.for_each_word(n, [&](const Word& w) {
            const double m = mu.mass(w);
            Interval s{0.0, 0.0};
            if (phi) s = birkhoff_bracket(*phi, w, &lang);
            // ratio interval: mu[w] e^{nh - S}, conservative on both sides
            const double r_hi = m * std::exp(n * h_or_pressure - s.lo);
            const double r_lo = m * std::exp(n * h_or_pressure - s.hi);
            row.k_upper = std::max(row.k_upper, r_hi);
            if (!restriction || restriction->predicate(w)) {
                row.k_lower = std::min(row.k_lower, r_lo);
                any_lower = true;
            }
        });
        if (!any_lower) row.k_lower = std::numeric_limits<double>::quiet_NaN();
        rep.rows.push_back(row);
    }
    // running effective constant and its stability over the top half
    auto effective = [&](const GibbsRow& r) {
        const double inv = (r.k_lower > 0.0) ? 1.0 / r.k_lower : std::numeric_limits<double>::infinity();
        return std::max(r.k_upper, inv);
    };
    double running = 0.0;
    std::vector<double> run(depth);
    for (int n = 1; n <= depth; ++n) {
        running = std::max(running, effective(rep.rows[n - 1]));
        run[n - 1] = running;
    }
    rep.k_final = running;
    const int half = std::max(1, depth / 2);
    rep.stable = std::isfinite(running) && run[depth - 1] <= run[half - 1] * 1.10 + 1e-12;
    rep.pass = rep.stable;
    return rep;
}

double static_entropy(const ShiftMeasure& mu, const Language& lang, int n)
{
    double h = 0.0;
    lang.for_each_word(n, [&](const Word& w) {
        const double m = mu.mass(w);
        if (m > 0.0) h -= m * std::log(m);
    });
    return h;
}

SmbCheck smb_check(const MarkovMeasure& mu, std::size_t n, std::size_t orbits, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<double> vals;
    for (std::size_t i = 0; i < orbits; ++i) {
        const Word x = mu.sample_orbit(n, rng);
        const double v = -std::log(mu.mass(x)) / static_cast<double>(n);
        vals.push_back(v);
    }
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= vals.size();
    // per-step increments are near-iid; estimate the se of the mean across orbits
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= std::max<std::size_t>(1, vals.size() - 1);
    const double se = std::sqrt(var / vals.size());
    SmbCheck c;
    c.h_target = mu.entropy();
    c.mean = mean;
    c.stderr_est = se;
    c.deviation_sigmas = se > 0.0 ? std::abs(mean - c.h_target) / se : 0.0;
    return c;
}

// ---------------------------------------------------------------------------

std::optional<bool> periodic_admissible(const ShiftModel& model, const Word& w)
{
    if (w.empty()) return false;
    if (const auto* sft = dynamic_cast<const SftModel*>(&model)) {
        // symbols of an admissible word all lie on infinite paths, so w^inf
        // is a point exactly when the seam transition closes the cycle
        if (!sft->membership(w)) return false;
        return sft->live_matrix()[w.back()][w.front()] == 1;
    }
    if (const auto* sofic = dynamic_cast<const SoficModel*>(&model)) {
        // relation digraph: automaton state q -> states reachable reading w
        const int ns = sofic->num_states();
        std::vector<std::uint32_t> reach(ns, 0);
        for (int q = 0; q < ns; ++q) {
            std::uint32_t m = 1u << q;
            for (Symbol a : w.symbols) {
                m = sofic->subset_step(m, a);
                if (!m) break;
            }
            reach[q] = m;
        }
        // cycle detection on q -> bits(reach[q])
        std::vector<int> color(ns, 0);
        std::function<bool(int)> dfs = [&](int q) {
            color[q] = 1;
            std::uint32_t m = reach[q];
            while (m) {
                const int v = __builtin_ctz(m);
                m &= m - 1;
                if (color[v] == 1) return true;
                if (color[v] == 0 && dfs(v)) return true;
            }
            color[q] = 2;
            return false;
        };
        for (int q = 0; q < ns; ++q)
            if (color[q] == 0 && dfs(q)) return true;
        return false;
    }
    if (const auto* sgap = dynamic_cast<const SGapModel*>(&model)) {
        // gaps of w^inf: internal gaps of w, plus the seam gap
        bool has_one = false;
        for (Symbol a : w.symbols) has_one = has_one || (a == 1);
        if (!has_one) return sgap->gaps().unbounded();  // 0^inf needs arbitrarily long gaps
        int lead = 0;
        while (w[lead] == 0) ++lead;
        int trail = 0;
        while (w[w.size() - 1 - trail] == 0) ++trail;
        int run = 0;
        for (std::size_t i = lead; i < w.size(); ++i) {
            if (w[i] == 0) ++run;
            else {
                if (i > static_cast<std::size_t>(lead) && !sgap->gaps().contains(run)) return false;
                run = 0;
            }
        }
        return sgap->gaps().contains(lead + trail);
    }
    return std::nullopt;  // depth-certified decision only (beta, custom)
}

PeriodicReport periodic_orbits(const ShiftModel& model, const Language& lang, int n_max,
                               int cylinder_depth)
{
    PeriodicReport rep;
    rep.cylinder_depth = cylinder_depth;
    // the equidistribution table comes from Per_{n_max} alone, the deepest
    // level computed (the limiting-distribution statement is per level)
    BigInt top_total = 0;
    std::map<Word, BigInt> cyl;
    for (int n = 1; n <= n_max; ++n) {
        BigInt cnt = 0;
        lang.for_each_word(n, [&](const Word& w) {
            std::optional<bool> per = periodic_admissible(model, w);
            if (!per.has_value()) {
                // certify up to the model's depth: w^m admissible for the
                // largest m the oracle can check
                rep.certified_exact = false;
                const std::size_t cap = model.certified_depth();
                Word x = w;
                bool ok = true;
                while (x.size() + w.size() <= cap) {
                    x = x.concat(w);
                    if (!model.membership(x)) { ok = false; break; }
                }
                per = ok;
            }
            if (!*per) return;
            ++cnt;
            if (n == n_max) {
                ++top_total;
                Word c;  // cylinder of the periodic point w^inf
                for (int i = 0; i < cylinder_depth; ++i) c.push_back(w[i % w.size()]);
                cyl[c] += 1;
            }
        });
        rep.per_counts.push_back(cnt);
    }
    if (top_total > 0)
        for (const auto& [w, c] : cyl)
            rep.cylinder_masses[w] = to_double(BigRat(c) / BigRat(top_total));
    return rep;
}

}  // namespace shiftlab
