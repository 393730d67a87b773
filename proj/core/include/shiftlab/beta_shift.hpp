// Beta-shifts presented by a finite certified prefix of z, the expansion of 1
// (quasi-greedy convention, so z is never eventually zero).  Two independent
// oracles are kept side by side on purpose:
//
//   * the lexicographic rule: w admissible iff every suffix of w is <= z;
//   * the countable-graph presentation truncated at a vertex cap: vertex v
//     carries edges labeled 0..z_{v+1}, the maximal edge advances to v+1 and
//     all others fall back to the base vertex 0.
//
// Queries beyond what the prefix certifies raise InsufficientDepthError;
// a silently wrong language would poison every downstream count.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/bigmath.hpp"
#include "shiftlab/shift_model.hpp"
#include "shiftlab/word.hpp"

namespace shiftlab {

struct BetaGraph {
    Word z;               // prefix of the expansion of 1
    std::size_t vertices; // vertices 0..vertices-1 have their edges defined

    // Follow an edge.  nullopt = no such edge; throws past the vertex cap.
    std::optional<std::uint32_t> edge(std::uint32_t vertex, Symbol label) const;

    // Vertex reached by reading w from the base vertex, or nullopt if w does
    // not label a path.
    std::optional<std::uint32_t> path_end(const Word& w) const;

    std::vector<Symbol> out_labels(std::uint32_t vertex) const;
};

BetaGraph beta_graph_build(const Word& z_prefix, std::size_t vertex_cap);

// Every suffix of w compares <= z in the prefix lexicographic pre-order.
// Requires |w| <= |z|.
bool beta_membership_lex(const Word& z_prefix, const Word& w);

// z must itself satisfy its own rule (z_{[j,.]} <= z for all j).
bool beta_z_self_admissible(const Word& z_prefix);

class BetaModel final : public ShiftModel {
public:
    explicit BetaModel(Word z_prefix);

    int alphabet_size() const override { return alphabet_; }
    std::string kind() const override { return "beta"; }

    // Walker state = current graph vertex.
    WalkState initial_state() const override { return 0; }
    std::optional<WalkState> step(WalkState vertex, Symbol a) const override;

    // Independent of the graph walker; cross-checked in tests.
    bool membership(const Word& w) const override;

    std::size_t certified_depth() const override { return z_.size(); }

    const Word& z() const { return z_; }
    const BetaGraph& graph() const { return graph_; }

private:
    Word z_;
    BetaGraph graph_;
    int alphabet_ = 0;
};

ModelPtr beta_from_z(const Word& z_prefix);

// Longest run of 0s inside the prefix: the shift has specification (for the
// depths the prefix certifies) only with gap size at least that long.
struct BetaSpecCriterion {
    int longest_zero_run = 0;
    bool has_spec_up_to_depth = true;  // a finite prefix always bounds its own runs
};

BetaSpecCriterion beta_spec_criterion(const Word& z_prefix);

// Derives the quasi-greedy expansion of 1 for an exact rational beta > 1.
// When the greedy expansion of 1 is finite (d_1..d_m, d_m != 0) the
// quasi-greedy completion (d_1..d_{m-1}(d_m - 1))^inf is returned.
Word beta_z_prefix_exact(const BigRat& beta, std::size_t digits);

// Same for a floating beta carried as midpoint +- radius.  Only digits whose
// value is certain across the whole interval are returned; the first
// uncertain digit stops the output.
struct CertifiedDigits {
    Word digits;
    bool truncated_by_uncertainty = false;
};

CertifiedDigits beta_z_prefix_interval(double beta_mid, double beta_rad, std::size_t max_digits);

}  // namespace shiftlab
