#pragma once

// Largest A in F_q^n with no 3-AP {a, a+s, a+2s}, s != 0, s in S_1 x ... x S_n.

#include "slicerank/counting.hpp"
#include "slicerank/gf.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace slicerank {

struct DifferenceInstance {
    FieldPtr field;
    int n = 0;
    /// Sorted, duplicate-free, each containing 0.
    std::vector<std::vector<FieldElement>> sets;

    /// Average complement size (1/n) sum (q - |S_l|).
    Rational mu() const;
    /// 1/3 + mu / (3(q-1)).
    Rational alpha() const;
    bool feasible() const { return alpha() < Rational(1, 2); }
    bool full() const;
    /// Common |S| when all sets have the same size, else nullopt.
    std::optional<std::size_t> uniform_size() const;
    bool contains_difference(const Vector& s) const;
};

/// Validates and canonicalizes. Throws InvalidInput when some S_l lacks 0 or
/// sets.size() != n.
DifferenceInstance make_instance(FieldPtr field, int n, std::vector<std::vector<FieldElement>> sets);

/// S_l = the first `size` field elements in canonical order, for every l.
DifferenceInstance uniform_instance(FieldPtr field, int n, std::size_t size);

inline constexpr std::uint64_t kDefaultVertexGate = 19683; // 3^9

struct APHypergraph {
    FieldPtr field;
    int n = 0;
    std::uint32_t vertices = 0;
    /// Sorted vertex triples (point indices), sorted lexicographically.
    std::vector<std::array<std::uint32_t, 3>> edges;
    /// Difference sets the graph was built from; empty for hand-built graphs,
    /// which disables the hyperplane bounds.
    std::vector<std::vector<FieldElement>> sets;

    std::vector<std::size_t> degrees() const;
};

APHypergraph build_hypergraph(const DifferenceInstance& inst, std::uint64_t vertex_gate = kDefaultVertexGate);

enum class SearchStatus { exact, lower_bound };
std::string to_string(SearchStatus s);

enum class VertexOrder {
    degree_then_index,          // descending degree, ascending index on ties
    degree_then_reverse_index,  // descending degree, descending index on ties
};

struct SearchOptions {
    double time_budget_seconds = 60.0;
    VertexOrder order = VertexOrder::degree_then_index;
    unsigned workers = 1;
    /// Prune with hyperplane-coset capacities from recursive sub-searches.
    bool slice_bounds = true;
    /// Fix the origin (and a frame when every S_l = F_q) in the main search.
    bool symmetry = true;
};

struct SearchResult {
    std::vector<Vector> best_set;
    std::size_t size = 0;
    SearchStatus status = SearchStatus::exact;
    std::uint64_t nodes_explored = 0;
    double wall_time = 0.0;
    VertexOrder order = VertexOrder::degree_then_index;
    unsigned workers = 1;
    /// True when best_set is the first maximum set in the solver's vertex
    /// order: single-worker runs whose witness pass finished in budget.
    bool witness_canonical = true;
};

/// Branch and bound. Budget exhaustion yields status lower_bound with the
/// incumbent. The returned set is re-verified; InvariantViolation otherwise.
SearchResult max_independent_exact(const APHypergraph& H, const SearchOptions& opts = {});

/// Independence check against the hypergraph edges, for cross-checking.
bool is_independent(const APHypergraph& H, const std::vector<std::uint32_t>& vertices);

struct SetCheck {
    bool progression_free = true;
    /// (x, x+s, x+2s) when a progression was found.
    std::optional<std::array<Vector, 3>> progression;
};

/// Pairwise scan: for x != z in A, s = (z - x)/2; reports (x, x+s, z) when
/// s is an admissible difference and x+s is in A. Throws InvalidInput on
/// duplicates or wrong dimensions.
SetCheck check_set(const std::vector<Vector>& A, const DifferenceInstance& inst);

} // namespace slicerank
