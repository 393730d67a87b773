#include "shiftlab/shift_model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace shiftlab {

SftModel::SftModel(std::vector<std::vector<int>> matrix) : a_(std::move(matrix))
{
    n_ = static_cast<int>(a_.size());
    if (n_ == 0) throw ConstructionError("sft: empty matrix");
    if (n_ > kMaxAlphabet) throw ConstructionError("sft: more than 32 states");
    for (const auto& row : a_) {
        if (static_cast<int>(row.size()) != n_) throw ConstructionError("sft: matrix not square");
        for (int x : row)
            if (x != 0 && x != 1) throw ConstructionError("sft: entries must be 0/1");
    }
    // Trim states with no infinite forward continuation.
    live_.assign(n_, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n_; ++i) {
            if (!live_[i]) continue;
            bool has_out = false;
            for (int j = 0; j < n_; ++j)
                if (a_[i][j] && live_[j]) { has_out = true; break; }
            if (!has_out) { live_[i] = 0; changed = true; }
        }
    }
    if (std::count(live_.begin(), live_.end(), 1) == 0)
        throw ConstructionError("sft: no state lies on an infinite path (matrix has no cycle)");
    live_a_.assign(n_, std::vector<int>(n_, 0));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (live_[i] && live_[j]) live_a_[i][j] = a_[i][j];
}

std::optional<WalkState> SftModel::step(WalkState s, Symbol a) const
{
    if (a >= n_ || !live_[a]) return std::nullopt;
    if (s != static_cast<WalkState>(n_) && !live_a_[s][a]) return std::nullopt;
    return static_cast<WalkState>(a);
}

bool SftModel::irreducible() const
{
    // strongly connected on live states
    std::vector<int> liveidx;
    for (int i = 0; i < n_; ++i)
        if (live_[i]) liveidx.push_back(i);
    auto reach_all = [&](const std::vector<std::vector<int>>& m) {
        for (int s : liveidx) {
            std::vector<char> seen(n_, 0);
            std::vector<int> stack{s};
            seen[s] = 1;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int v : liveidx)
                    if (m[u][v] && !seen[v]) { seen[v] = 1; stack.push_back(v); }
            }
            for (int v : liveidx)
                if (!seen[v]) return false;
        }
        return true;
    };
    return reach_all(live_a_);
}

ModelPtr sft_from_matrix(std::vector<std::vector<int>> matrix)
{
    return std::make_shared<SftModel>(std::move(matrix));
}

ModelPtr sft_edge_shift(const std::vector<std::vector<int>>& edge_counts)
{
    const int v = static_cast<int>(edge_counts.size());
    struct Edge { int from, to; };
    std::vector<Edge> edges;
    for (int i = 0; i < v; ++i) {
        if (static_cast<int>(edge_counts[i].size()) != v)
            throw ConstructionError("edge shift: count matrix not square");
        for (int j = 0; j < v; ++j)
            for (int k = 0; k < edge_counts[i][j]; ++k) edges.push_back({i, j});
    }
    const int e = static_cast<int>(edges.size());
    if (e == 0) throw ConstructionError("edge shift: graph has no edges");
    std::vector<std::vector<int>> m(e, std::vector<int>(e, 0));
    for (int x = 0; x < e; ++x)
        for (int y = 0; y < e; ++y)
            if (edges[x].to == edges[y].from) m[x][y] = 1;
    return sft_from_matrix(std::move(m));
}

SoficModel::SoficModel(int num_states, int alphabet, std::vector<LabeledEdge> edges)
    : num_states_(num_states), alphabet_(alphabet)
{
    if (num_states <= 0 || num_states > 32) throw ConstructionError("sofic: need 1..32 states");
    if (alphabet <= 0 || alphabet > kMaxAlphabet) throw ConstructionError("sofic: bad alphabet");
    transition_.assign(num_states, std::vector<std::uint32_t>(alphabet, 0));
    for (const LabeledEdge& e : edges) {
        if (e.from < 0 || e.from >= num_states || e.to < 0 || e.to >= num_states || e.label >= alphabet)
            throw ConstructionError("sofic: edge out of range");
        transition_[e.from][e.label] |= (1u << e.to);
    }
    // Trim states with no outgoing edges (iteratively), so every spelled word
    // extends forward and the language is the usual sofic language.
    std::vector<char> live(num_states, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int s = 0; s < num_states; ++s) {
            if (!live[s]) continue;
            bool out = false;
            for (int a = 0; a < alphabet && !out; ++a) {
                std::uint32_t t = transition_[s][a];
                while (t) {
                    int v = __builtin_ctz(t);
                    t &= t - 1;
                    if (live[v]) { out = true; break; }
                }
            }
            if (!out) { live[s] = 0; changed = true; }
        }
    }
    std::uint32_t live_mask = 0;
    for (int s = 0; s < num_states; ++s)
        if (live[s]) live_mask |= (1u << s);
    if (live_mask == 0) throw ConstructionError("sofic: automaton has no infinite path");
    for (int s = 0; s < num_states; ++s)
        for (int a = 0; a < alphabet; ++a) transition_[s][a] &= live_mask;
    full_mask_ = live_mask;
}

std::uint32_t SoficModel::subset_step(std::uint32_t mask, Symbol a) const
{
    std::uint32_t out = 0;
    while (mask) {
        int s = __builtin_ctz(mask);
        mask &= mask - 1;
        out |= transition_[s][a];
    }
    return out;
}

std::optional<WalkState> SoficModel::step(WalkState mask, Symbol a) const
{
    if (a >= alphabet_) return std::nullopt;
    const std::uint32_t out = subset_step(mask, a);
    if (out == 0) return std::nullopt;
    return out;
}

bool GapSet::contains(long g) const
{
    if (g < 0) return false;
    if (g <= (finite.empty() ? -1L : finite.back()) &&
        std::binary_search(finite.begin(), finite.end(), static_cast<int>(g)))
        return true;
    for (const Tail& t : tails)
        if (g >= t.start && (g - t.start) % t.step == 0) return true;
    return false;
}

int GapSet::max_finite() const
{
    if (unbounded()) throw std::logic_error("max of unbounded gap set");
    return finite.empty() ? -1 : finite.back();
}

bool GapSet::any_geq(long g) const
{
    if (unbounded()) return true;
    return !finite.empty() && finite.back() >= g;
}

std::string GapSet::to_string() const
{
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < finite.size(); ++i) os << (i ? "," : "") << finite[i];
    for (const Tail& t : tails) os << (finite.empty() && &t == &tails.front() ? "" : ",") << t.start << "+" << t.step << "k";
    os << "}";
    return os.str();
}

SGapModel::SGapModel(GapSet s) : s_(std::move(s))
{
    std::sort(s_.finite.begin(), s_.finite.end());
    s_.finite.erase(std::unique(s_.finite.begin(), s_.finite.end()), s_.finite.end());
    for (int g : s_.finite)
        if (g < 0) throw ConstructionError("sgap: negative gap");
    for (const GapSet::Tail& t : s_.tails)
        if (t.start < 0 || t.step <= 0) throw ConstructionError("sgap: bad tail");
    if (s_.finite.empty() && s_.tails.empty()) throw ConstructionError("sgap: S must be nonempty");
}

std::optional<WalkState> SGapModel::step(WalkState s, Symbol a) const
{
    const bool seen_one = (s & 1u) != 0;
    const std::uint32_t run = s >> 1;
    if (a == 0) {
        // a longer truncated run is fine as long as it can still extend to an
        // element of S
        if (!s_.any_geq(static_cast<long>(run) + 1)) return std::nullopt;
        return encode(seen_one, run + 1);
    }
    if (a != 1) return std::nullopt;
    if (seen_one && !s_.contains(run)) return std::nullopt;
    return encode(true, 0);
}

}  // namespace shiftlab
