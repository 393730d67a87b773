// Executable presentations of shift spaces.  A model exposes the language of
// the shift through two oracles that must agree with each other:
//
//   membership(w)   -- is w an admissible word?
//   successors(w)   -- which symbols a make wa admissible?
//
// Both are driven by a finite walker state, so enumeration never rescans
// whole words.  Variants: vertex SFTs, sofic shifts (labeled automata),
// beta-shifts (lexicographic rule + countable-graph presentation, truncated
// to a certified prefix of z), and S-gap shifts.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shiftlab/word.hpp"

namespace shiftlab {

struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A query needed more symbols of a beta-shift's z-prefix than are certified.
// Deliberately never answered approximately.
struct InsufficientDepthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using WalkState = std::uint32_t;

class ShiftModel {
public:
    virtual ~ShiftModel() = default;

    virtual int alphabet_size() const = 0;
    virtual std::string kind() const = 0;

    // Walker interface: state after reading the empty word, and one-symbol
    // transitions.  nullopt = the extended word is inadmissible.
    virtual WalkState initial_state() const = 0;
    virtual std::optional<WalkState> step(WalkState s, Symbol a) const = 0;

    std::optional<WalkState> walk(const Word& w) const
    {
        std::optional<WalkState> s = initial_state();
        for (Symbol a : w.symbols) {
            s = step(*s, a);
            if (!s) return std::nullopt;
        }
        return s;
    }

    virtual bool membership(const Word& w) const { return walk(w).has_value(); }

    std::vector<Symbol> successors(const Word& w) const
    {
        std::vector<Symbol> out;
        const auto s = walk(w);
        if (!s) return out;
        for (int a = 0; a < alphabet_size(); ++a)
            if (step(*s, static_cast<Symbol>(a))) out.push_back(static_cast<Symbol>(a));
        return out;
    }

    // Longest word length for which the oracles are exact.  Unlimited for
    // finite-state variants; the z-prefix length for beta models.
    virtual std::size_t certified_depth() const { return SIZE_MAX; }
};

using ModelPtr = std::shared_ptr<const ShiftModel>;

// ---------------------------------------------------------------------------
// Vertex SFT: symbols are the matrix states, w admissible iff every
// transition A[w_i][w_{i+1}] = 1 and the final state has an infinite forward
// continuation.  States with no outgoing edges are trimmed iteratively at
// construction; a matrix that trims to nothing (e.g. nilpotent) is an error.

class SftModel final : public ShiftModel {
public:
    explicit SftModel(std::vector<std::vector<int>> matrix);

    int alphabet_size() const override { return n_; }
    std::string kind() const override { return "sft"; }

    WalkState initial_state() const override { return n_; }  // sentinel: no symbol read yet
    std::optional<WalkState> step(WalkState s, Symbol a) const override;

    const std::vector<std::vector<int>>& matrix() const { return a_; }
    // Effective matrix after trimming non-live states (rows/cols zeroed).
    const std::vector<std::vector<int>>& live_matrix() const { return live_a_; }
    bool live(int state) const { return live_[state] != 0; }
    bool irreducible() const;

private:
    int n_ = 0;
    std::vector<std::vector<int>> a_;
    std::vector<std::vector<int>> live_a_;
    std::vector<char> live_;
};

ModelPtr sft_from_matrix(std::vector<std::vector<int>> matrix);

// Edge-shift adapter: symbols are the edges of a multigraph given by a count
// matrix; returns the vertex SFT on edge symbols.
ModelPtr sft_edge_shift(const std::vector<std::vector<int>>& edge_counts);

// ---------------------------------------------------------------------------
// Sofic shift from a right-resolving-or-not labeled automaton.  Membership is
// "some path spells w", tracked through subset states (<= 32 automaton
// states).  Vertices with no outgoing edges are trimmed first.

struct LabeledEdge {
    int from;
    Symbol label;
    int to;
};

class SoficModel final : public ShiftModel {
public:
    SoficModel(int num_states, int alphabet, std::vector<LabeledEdge> edges);

    int alphabet_size() const override { return alphabet_; }
    std::string kind() const override { return "sofic"; }

    WalkState initial_state() const override { return full_mask_; }
    std::optional<WalkState> step(WalkState mask, Symbol a) const override;

    int num_states() const { return num_states_; }
    // Subset reached from a single automaton state by reading w; used by the
    // periodic-point decision procedure.
    std::uint32_t subset_step(std::uint32_t mask, Symbol a) const;

private:
    int num_states_ = 0;
    int alphabet_ = 0;
    std::uint32_t full_mask_ = 0;
    // transition[state][symbol] = bitmask of targets
    std::vector<std::vector<std::uint32_t>> transition_;
};

// ---------------------------------------------------------------------------
// S-gap shift over {0,1}: the 0-run between consecutive 1s must lie in S;
// truncated boundary runs only need to extend to some element of S.  S is a
// finite set, optionally together with arithmetic tails a + k*d (k >= 0),
// which covers the eventually-periodic case.

struct GapSet {
    std::vector<int> finite;  // sorted, distinct
    struct Tail {
        int start;
        int step;
    };
    std::vector<Tail> tails;

    bool contains(long g) const;
    bool unbounded() const { return !tails.empty(); }
    // largest element (only valid when bounded)
    int max_finite() const;
    // does S contain an element >= g?
    bool any_geq(long g) const;
    std::string to_string() const;
};

class SGapModel final : public ShiftModel {
public:
    explicit SGapModel(GapSet s);

    int alphabet_size() const override { return 2; }
    std::string kind() const override { return "sgap"; }

    // State encodes (seen a 1 yet?, current trailing 0-run).
    WalkState initial_state() const override { return encode(false, 0); }
    std::optional<WalkState> step(WalkState s, Symbol a) const override;

    const GapSet& gaps() const { return s_; }

private:
    static WalkState encode(bool seen_one, std::uint32_t run)
    {
        return (run << 1) | (seen_one ? 1u : 0u);
    }
    GapSet s_;
};

// ---------------------------------------------------------------------------
// A model wrapper with user-supplied oracles, for tests that need a
// deliberately unsound successor oracle.

class CustomModel final : public ShiftModel {
public:
    using StepFn = std::optional<WalkState> (*)(WalkState, Symbol);
    using MemberFn = bool (*)(const Word&);

    CustomModel(int alphabet, StepFn step, MemberFn member)
        : alphabet_(alphabet), step_(step), member_(member)
    {
    }

    int alphabet_size() const override { return alphabet_; }
    std::string kind() const override { return "custom"; }
    WalkState initial_state() const override { return 0; }
    std::optional<WalkState> step(WalkState s, Symbol a) const override { return step_(s, a); }
    bool membership(const Word& w) const override { return member_(w); }

private:
    int alphabet_;
    StepFn step_;
    MemberFn member_;
};

}  // namespace shiftlab
