#pragma once

// Bound reports: mu -> alpha -> Gamma -> bounds, with an optional exact search
// for the sandwich check.

#include "slicerank/counting.hpp"
#include "slicerank/gamma.hpp"
#include "slicerank/search.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slicerank {

struct SearchSummary {
    std::size_t size = 0;
    SearchStatus status = SearchStatus::exact;
    std::uint64_t nodes_explored = 0;
    double wall_time = 0.0;
    /// size <= bound_corollary (when feasible) and size <= bound_main2 (when S is full).
    bool sandwich_holds = true;
};

struct BoundReport {
    long long q = 0;
    int p = 0;
    int k = 0;
    int n = 0;
    std::optional<std::size_t> uniform_size;
    std::vector<std::vector<std::string>> sets;
    Rational mu;
    Rational alpha;
    bool feasible = false;
    std::optional<GammaResult> gamma;
    std::optional<double> epsilon;
    /// q^((1-eps) n) and its exponent (1-eps) n.
    std::optional<double> bound_theorem1;
    std::optional<double> bound_theorem1_log_q;
    /// Gamma^n.
    std::optional<double> bound_corollary;
    /// 3 * M(n, (q-1)n/3, q-1); applies to A only when S is full.
    CountValue bound_main2;
    bool main2_applies = false;
    std::optional<SearchSummary> search;
    std::optional<std::string> search_skipped;
};

struct ReportOptions {
    bool with_search = false;
    SearchOptions search;
    std::uint64_t vertex_gate = kDefaultVertexGate;
    double gamma_tol = kDefaultGammaTol;
};

BoundReport report(const DifferenceInstance& inst, const ReportOptions& opts = {});

/// Least uniform |S| with |S| > (q+1)/2.
long long feasibility_threshold(long long q);

struct TableRange {
    std::vector<long long> qs;
    std::vector<long long> sizes;
    std::vector<int> ns;
};

/// One report per (q, |S|, n) cell with 1 <= |S| <= q, sorted by (q, |S|, n).
/// Cells are computed concurrently.
std::vector<BoundReport> table(const TableRange& range, const ReportOptions& opts = {});

/// Stable column order; floats with 9 significant digits; empty fields for
/// quantities that do not apply.
std::string table_csv(const std::vector<BoundReport>& rows);

} // namespace slicerank
