// Exact enumerated languages.  A Language is a prefix-closed trie of all
// admissible words up to a depth, built level by level from a model's
// successor oracle.  Nodes hold a child bitmap and the index of their first
// child in the next level, which keeps exact counting at depth ~22 on small
// alphabets within desk memory.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "shiftlab/bigmath.hpp"
#include "shiftlab/shift_model.hpp"
#include "shiftlab/word.hpp"

namespace shiftlab {

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnumerateOptions {
    int depth_budget = 22;                      // hard cap on requested depth
    std::size_t memory_budget = default_memory_budget();
    bool consistency_probe = true;              // spot-check successor oracle vs membership

    static std::size_t default_memory_budget();
};

class Language {
public:
    struct Node {
        std::uint32_t first_child = 0;
        std::uint32_t child_mask = 0;
    };

    int alphabet_size() const { return alphabet_; }
    int depth() const { return static_cast<int>(levels_.size()) - 1; }

    // #L_n as an exact integer; n = 0 gives 1 (the empty word).
    BigInt count(int n) const { return BigInt(levels_.at(n).size()); }
    std::size_t count_sz(int n) const { return levels_.at(n).size(); }
    std::vector<BigInt> counts() const;  // #L_1 .. #L_depth

    bool contains(const Word& w) const;

    // Visit every word of length n in lexicographic order.
    void for_each_word(int n, const std::function<void(const Word&)>& fn) const;

    // Visit all words of length 1..depth in lexicographic (prefix) order.
    void for_each_word_prefix_order(const std::function<void(const Word&)>& fn) const;

    std::vector<Word> words(int n) const;

    // Line-based dump: one word per line, lexicographic order, for
    // cross-implementation diffing.
    void dump(std::ostream& os) const;

    friend Language enumerate_language(const ShiftModel& model, int depth,
                                       const EnumerateOptions& opt);

private:
    int alphabet_ = 0;
    std::vector<std::vector<Node>> levels_;  // levels_[d] = nodes at depth d; level 0 = root
};

Language enumerate_language(const ShiftModel& model, int depth,
                            const EnumerateOptions& opt = {});

// Word counts per length straight off the model walker, without building a
// trie.  Suits deep counts whose tries would not fit in memory.
std::vector<BigInt> streaming_counts(const ShiftModel& model, int depth);

// DFS over all admissible words of exactly length n; lexicographic order.
void for_each_word_streaming(const ShiftModel& model, int n,
                             const std::function<void(const Word&)>& fn);

// ---------------------------------------------------------------------------
// A predicate-defined sub-collection D_n <= L_n of an enumerated language,
// with cached exact counts.

class OrbitCollection {
public:
    OrbitCollection() = default;
    OrbitCollection(std::shared_ptr<const Language> base,
                    std::function<bool(const Word&)> pred, std::string name)
        : base_(std::move(base)), pred_(std::move(pred)), name_(std::move(name))
    {
    }

    static OrbitCollection whole_language(std::shared_ptr<const Language> base);

    const Language& base() const { return *base_; }
    std::shared_ptr<const Language> base_ptr() const { return base_; }
    const std::string& name() const { return name_; }

    bool contains(const Word& w) const { return base_->contains(w) && pred_(w); }
    bool predicate(const Word& w) const { return pred_(w); }

    BigInt count(int n) const;
    std::vector<BigInt> counts(int n) const;  // #D_1..#D_n

    void for_each(int n, const std::function<void(const Word&)>& fn) const;

private:
    std::shared_ptr<const Language> base_;
    std::function<bool(const Word&)> pred_;
    std::string name_;
    mutable std::vector<BigInt> cache_;  // cache_[n] = #D_n, -1 when unset
};

// spec op: counts #D_1..#D_n by predicate filtering
std::vector<BigInt> collection_counts(const OrbitCollection& d, int n);

// True iff the concatenation v u w is admissible in the model.
bool concat_check(const Word& v, const Word& u, const Word& w, const ShiftModel& model);

}  // namespace shiftlab
