#include "shiftlab/language.hpp"

#include <bit>
#include <cstdlib>

namespace shiftlab {

std::size_t EnumerateOptions::default_memory_budget()
{
    if (const char* env = std::getenv("SHIFTLAB_MEM_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t(1536) * 1024 * 1024;  // 1.5 GiB
}

std::vector<BigInt> Language::counts() const
{
    std::vector<BigInt> out;
    for (int n = 1; n <= depth(); ++n) out.push_back(count(n));
    return out;
}

bool Language::contains(const Word& w) const
{
    if (static_cast<int>(w.size()) > depth()) throw std::out_of_range("word deeper than enumerated language");
    std::uint32_t idx = 0;
    for (std::size_t d = 0; d < w.size(); ++d) {
        const Node& node = levels_[d][idx];
        const Symbol a = w[d];
        if (a >= alphabet_ || !(node.child_mask & (1u << a))) return false;
        const std::uint32_t below = node.child_mask & ((1u << a) - 1u);
        idx = node.first_child + static_cast<std::uint32_t>(std::popcount(below));
    }
    return true;
}

namespace {

void dfs_words(const std::vector<std::vector<Language::Node>>& levels, int target, bool all_depths,
               const std::function<void(const Word&)>& fn)
{
    Word w;
    // iterative DFS: stack of (depth, node index)
    struct Frame {
        std::uint32_t idx;
        std::uint32_t mask;  // children not yet visited
    };
    std::vector<Frame> stack;
    stack.push_back({0, levels[0][0].child_mask});
    while (!stack.empty()) {
        Frame& f = stack.back();
        const int d = static_cast<int>(stack.size()) - 1;
        if (f.mask == 0 || d == target) {
            stack.pop_back();
            if (!w.empty()) w.pop_back();
            continue;
        }
        const int a = std::countr_zero(f.mask);
        f.mask &= f.mask - 1;
        const Language::Node& node = levels[d][f.idx];
        const std::uint32_t below = node.child_mask & ((1u << a) - 1u);
        const std::uint32_t child = node.first_child + static_cast<std::uint32_t>(std::popcount(below));
        w.push_back(static_cast<Symbol>(a));
        if (all_depths || d + 1 == target) fn(w);
        if (d + 1 < target)
            stack.push_back({child, levels[d + 1][child].child_mask});
        else
            w.pop_back();
    }
}

}  // namespace

void Language::for_each_word(int n, const std::function<void(const Word&)>& fn) const
{
    if (n < 0 || n > depth()) throw std::out_of_range("for_each_word: bad length");
    if (n == 0) { fn(Word{}); return; }
    dfs_words(levels_, n, false, fn);
}

void Language::for_each_word_prefix_order(const std::function<void(const Word&)>& fn) const
{
    dfs_words(levels_, depth(), true, fn);
}

std::vector<Word> Language::words(int n) const
{
    std::vector<Word> out;
    out.reserve(count_sz(n));
    for_each_word(n, [&](const Word& w) { out.push_back(w); });
    return out;
}

void Language::dump(std::ostream& os) const
{
    for_each_word_prefix_order([&](const Word& w) { os << w.to_string() << '\n'; });
}

Language enumerate_language(const ShiftModel& model, int depth, const EnumerateOptions& opt)
{
    if (depth < 1) throw std::invalid_argument("enumerate_language: depth must be >= 1");
    if (depth > opt.depth_budget)
        throw ResourceError("enumerate_language: depth " + std::to_string(depth) +
                            " exceeds depth budget " + std::to_string(opt.depth_budget));
    if (static_cast<std::size_t>(depth) > model.certified_depth())
        throw InsufficientDepthError("enumerate_language: model only certifies depth " +
                                     std::to_string(model.certified_depth()));

    Language lang;
    lang.alphabet_ = model.alphabet_size();
    if (lang.alphabet_ > kMaxAlphabet) throw ConstructionError("alphabet too large for trie bitmap");
    lang.levels_.assign(1, {Language::Node{}});

    std::vector<WalkState> states{model.initial_state()};
    std::size_t bytes = 0;
    for (int d = 0; d < depth; ++d) {
        std::vector<Language::Node>& cur = lang.levels_[d];
        std::vector<Language::Node> next;
        std::vector<WalkState> next_states;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            std::uint32_t mask = 0;
            cur[i].first_child = static_cast<std::uint32_t>(next.size());
            for (int a = 0; a < lang.alphabet_; ++a) {
                const auto t = model.step(states[i], static_cast<Symbol>(a));
                if (!t) continue;
                mask |= (1u << a);
                next.push_back(Language::Node{});
                next_states.push_back(*t);
            }
            cur[i].child_mask = mask;
        }
        bytes += next.size() * (sizeof(Language::Node) + sizeof(WalkState));
        if (bytes > opt.memory_budget)
            throw ResourceError("enumerate_language: memory budget exceeded at depth " +
                                std::to_string(d + 1));
        lang.levels_.push_back(std::move(next));
        states = std::move(next_states);
    }

    if (opt.consistency_probe) {
        // The trie was produced by the successor oracle alone; spot-check it
        // against the membership oracle (every stored word must be a member,
        // and the successor sets must match symbol-for-symbol).
        struct ProbeDone {};
        std::size_t checked = 0, budget = 2048;
        try {
            lang.for_each_word_prefix_order([&](const Word& w) {
                if (checked >= budget) throw ProbeDone{};
                ++checked;
                if (!model.membership(w))
                    throw ConsistencyError("successor oracle admits word rejected by membership: " +
                                           w.to_string());
                if (static_cast<int>(w.size()) < depth) {
                    for (int a = 0; a < lang.alphabet_; ++a) {
                        Word wa = w;
                        wa.push_back(static_cast<Symbol>(a));
                        const bool in_trie = lang.contains(wa);
                        if (in_trie != model.membership(wa))
                            throw ConsistencyError("successor/membership oracles disagree on " +
                                                   wa.to_string());
                    }
                }
            });
        } catch (const ProbeDone&) {
            // probe budget reached
        }
    }
    return lang;
}

std::vector<BigInt> streaming_counts(const ShiftModel& model, int depth)
{
    // Collapse identical walker states per level; counts stay exact.
    std::vector<std::pair<WalkState, BigInt>> states{{model.initial_state(), BigInt(1)}};
    std::vector<BigInt> out;
    for (int d = 0; d < depth; ++d) {
        std::vector<std::pair<WalkState, BigInt>> next;
        for (const auto& [s, c] : states) {
            for (int a = 0; a < model.alphabet_size(); ++a) {
                const auto t = model.step(s, static_cast<Symbol>(a));
                if (!t) continue;
                bool found = false;
                for (auto& [ns, nc] : next)
                    if (ns == *t) { nc += c; found = true; break; }
                if (!found) next.emplace_back(*t, c);
            }
        }
        BigInt total = 0;
        for (const auto& [s, c] : next) total += c;
        if (total == 0) throw ConstructionError("streaming_counts: language died at depth " + std::to_string(d + 1));
        out.push_back(total);
        states = std::move(next);
    }
    return out;
}

void for_each_word_streaming(const ShiftModel& model, int n,
                             const std::function<void(const Word&)>& fn)
{
    Word w;
    std::vector<WalkState> path{model.initial_state()};
    std::function<void()> rec = [&]() {
        if (static_cast<int>(w.size()) == n) { fn(w); return; }
        for (int a = 0; a < model.alphabet_size(); ++a) {
            const auto t = model.step(path.back(), static_cast<Symbol>(a));
            if (!t) continue;
            w.push_back(static_cast<Symbol>(a));
            path.push_back(*t);
            rec();
            path.pop_back();
            w.pop_back();
        }
    };
    rec();
}

OrbitCollection OrbitCollection::whole_language(std::shared_ptr<const Language> base)
{
    return OrbitCollection(std::move(base), [](const Word&) { return true; }, "L");
}

BigInt OrbitCollection::count(int n) const
{
    if (n <= 0 || n > base_->depth()) throw std::out_of_range("OrbitCollection::count");
    if (cache_.size() <= static_cast<std::size_t>(n)) cache_.resize(n + 1, BigInt(-1));
    if (cache_[n] >= 0) return cache_[n];
    BigInt c = 0;
    base_->for_each_word(n, [&](const Word& w) {
        if (pred_(w)) ++c;
    });
    cache_[n] = c;
    return c;
}

std::vector<BigInt> OrbitCollection::counts(int n) const
{
    std::vector<BigInt> out;
    for (int i = 1; i <= n; ++i) out.push_back(count(i));
    return out;
}

void OrbitCollection::for_each(int n, const std::function<void(const Word&)>& fn) const
{
    base_->for_each_word(n, [&](const Word& w) {
        if (pred_(w)) fn(w);
    });
}

std::vector<BigInt> collection_counts(const OrbitCollection& d, int n)
{
    return d.counts(n);
}

bool concat_check(const Word& v, const Word& u, const Word& w, const ShiftModel& model)
{
    const int a = model.alphabet_size();
    if (!v.fits_alphabet(a) || !u.fits_alphabet(a) || !w.fits_alphabet(a))
        throw std::invalid_argument("concat_check: word uses symbols outside the model alphabet");
    return model.membership(v.concat(u).concat(w));
}

}  // namespace shiftlab
