#include "slicerank/report.hpp"

#include "slicerank/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <tuple>

namespace slicerank {

BoundReport report(const DifferenceInstance& inst, const ReportOptions& opts) {
    const Field& F = *inst.field;
    BoundReport r;
    r.q = F.q();
    r.p = F.p();
    r.k = F.k();
    r.n = inst.n;
    r.uniform_size = inst.uniform_size();
    for (const auto& s : inst.sets) {
        std::vector<std::string> names;
        for (auto x : s)
            names.push_back(F.to_string(x));
        r.sets.push_back(std::move(names));
    }
    r.mu = inst.mu();
    r.alpha = inst.alpha();
    r.feasible = r.alpha < Rational(1, 2);

    if (r.feasible) {
        const auto g = compute_gamma(r.alpha, static_cast<int>(r.q), opts.gamma_tol);
        const double eps = 1.0 - std::log(g.value) / std::log(static_cast<double>(r.q));
        r.gamma = g;
        r.epsilon = eps;
        r.bound_theorem1_log_q = (1.0 - eps) * r.n;
        r.bound_theorem1 = std::pow(static_cast<double>(r.q), *r.bound_theorem1_log_q);
        r.bound_corollary = std::pow(g.value, r.n);
    }
    r.bound_main2 = sumfree_bound(r.n, r.q, 3);
    r.main2_applies = inst.full();

    if (opts.with_search) {
        double points = std::pow(static_cast<double>(r.q), r.n);
        if (points > static_cast<double>(opts.vertex_gate)) {
            r.search_skipped = "q^n exceeds the search gate";
        } else {
            const auto H = build_hypergraph(inst, opts.vertex_gate);
            const auto res = max_independent_exact(H, opts.search);
            SearchSummary s;
            s.size = res.size;
            s.status = res.status;
            s.nodes_explored = res.nodes_explored;
            s.wall_time = res.wall_time;
            // Relative slack absorbs rounding in Gamma^n.
            if (r.bound_corollary)
                s.sandwich_holds = static_cast<double>(s.size) <= *r.bound_corollary * (1 + 1e-9 * r.n);
            if (r.main2_applies)
                s.sandwich_holds = s.sandwich_holds && CountValue(s.size) <= r.bound_main2;
            r.search = s;
        }
    }
    return r;
}

long long feasibility_threshold(long long q) {
    if (q < 3 || q % 2 == 0)
        throw InvalidInput("q must be an odd prime power");
    return (q + 1) / 2 + 1;
}

std::vector<BoundReport> table(const TableRange& range, const ReportOptions& opts) {
    std::vector<std::tuple<long long, long long, int>> cells;
    for (auto q : range.qs)
        for (auto s : range.sizes)
            for (auto n : range.ns)
                if (s >= 1 && s <= q)
                    cells.emplace_back(q, s, n);
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

    std::vector<std::future<BoundReport>> jobs;
    for (const auto& [q, s, n] : cells) {
        const auto field = Field::from_order(static_cast<std::uint32_t>(q));
        jobs.push_back(std::async(std::launch::async, [=, &opts] {
            return report(uniform_instance(field, n, static_cast<std::size_t>(s)), opts);
        }));
    }
    std::vector<BoundReport> out;
    for (auto& j : jobs)
        out.push_back(j.get());
    return out;
}

namespace {

std::string fmt9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string opt9(const std::optional<double>& x) { return x ? fmt9(*x) : std::string(); }

} // namespace

std::string table_csv(const std::vector<BoundReport>& rows) {
    std::ostringstream os;
    os << "q,S_size,n,mu,alpha,feasible,gamma_star,gamma,gamma_tolerance,epsilon,bound_theorem1,"
          "bound_corollary,bound_main2,main2_applies,search_size,search_status\n";
    for (const auto& r : rows) {
        os << r.q << ',' << (r.uniform_size ? std::to_string(*r.uniform_size) : std::string()) << ',' << r.n << ','
           << to_string(r.mu) << ',' << to_string(r.alpha) << ',' << (r.feasible ? "true" : "false") << ','
           << (r.gamma ? fmt9(r.gamma->gamma_star) : "") << ',' << (r.gamma ? fmt9(r.gamma->value) : "") << ','
           << (r.gamma ? fmt9(r.gamma->tolerance) : "") << ',' << opt9(r.epsilon) << ',' << opt9(r.bound_theorem1)
           << ',' << opt9(r.bound_corollary) << ',' << r.bound_main2.str() << ','
           << (r.main2_applies ? "true" : "false") << ',' << (r.search ? std::to_string(r.search->size) : "") << ','
           << (r.search ? to_string(r.search->status) : "") << '\n';
    }
    return os.str();
}

} // namespace slicerank
