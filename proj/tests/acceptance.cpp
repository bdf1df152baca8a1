// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Expected values come from the oracles in oracles.hpp or from
// closed forms, never from the library under test.

#include "oracles.hpp"
#include "slicerank/counting.hpp"
#include "slicerank/families.hpp"
#include "slicerank/gamma.hpp"
#include "slicerank/poly.hpp"
#include "slicerank/search.hpp"
#include "slicerank/tensor.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace slicerank;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.pass && secs > limit_seconds) {
        out.pass = false;
        out.detail = "took " + std::to_string(secs) + " s, limit " + std::to_string(limit_seconds) + " s";
    }
    if (!out.pass)
        ++failures;
    std::printf("%s  %2d  %-34s %8.3f s  %s\n", out.pass ? "PASS" : "FAIL", id, name, secs, out.detail.c_str());
    std::fflush(stdout);
}

double as_double(const CountValue& v) { return v.convert_to<double>(); }

std::vector<int> codes(const Vector& v) {
    std::vector<int> out;
    for (auto x : v)
        out.push_back(static_cast<int>(x.code));
    return out;
}

std::vector<std::vector<int>> to_ints(const std::vector<std::vector<FieldElement>>& sets) {
    std::vector<std::vector<int>> out;
    for (const auto& s : sets)
        out.push_back(codes(s));
    return out;
}

// All points of F^n in index order.
std::vector<Vector> points_of(const Field& F, int n) {
    std::vector<Vector> out;
    std::uint64_t V = 1;
    for (int l = 0; l < n; ++l)
        V *= F.q();
    for (std::uint64_t i = 0; i < V; ++i)
        out.push_back(point_from_index(F, i, n));
    return out;
}

SearchResult solve(const DifferenceInstance& inst, const SearchOptions& opts = {}) {
    return max_independent_exact(build_hypergraph(inst), opts);
}

Outcome gamma_anchor() {
    Outcome out;
    const double g = (std::sqrt(33.0) - 1) / 8;
    const double closed = std::pow(g, -2.0 / 3) * (1 + g + g * g);
    const auto r = compute_gamma(Rational(1, 3), 3);
    const double delta = std::abs(r.value - closed);
    out.require(delta <= 1e-9, "value differs from closed form by " + std::to_string(delta));
    out.require(r.value < 3, "Gamma not below 3");
    out.require(!r.boundary_anomaly, "boundary anomaly");
    std::ostringstream os;
    os.precision(12);
    os << "Gamma=" << r.value << " closed=" << closed << " |d|=" << delta;
    if (out.pass)
        out.detail = os.str();
    return out;
}

Outcome counting_equivalence() {
    Outcome out;
    int cases = 0;
    for (int n = 0; n <= 5; ++n)
        for (int a = 0; a <= 3; ++a)
            for (long long D = -1; D <= a * n + 1; ++D) {
                const auto dp = count_M(n, Rational(D), a);
                const auto ie = count_M_inclusion_exclusion(n, Rational(D), a);
                const CountValue brute = oracle::brute_force_M(n, D, a);
                const std::string at = "n=" + std::to_string(n) + " a=" + std::to_string(a) + " D=" + std::to_string(D);
                out.require(dp == brute, "dp disagrees with enumeration at " + at);
                out.require(ie == brute, "inclusion-exclusion disagrees at " + at);
                ++cases;
            }
    if (out.pass)
        out.detail = std::to_string(cases) + " (n, a, D) cases equal";
    return out;
}

Outcome counting_vs_gamma() {
    Outcome out;
    int cases = 0;
    double worst = 0;
    for (int m : {3, 5})
        for (int k = 2; k <= 9; ++k) {
            const Rational alpha(k, 20);
            const double G = compute_gamma(alpha, m).value;
            for (int n = 1; n <= 40; ++n) {
                const Rational D(floor_of(alpha * Rational(m - 1) * Rational(n)));
                const double lhs = as_double(count_M(n, D, m - 1));
                const double rhs = std::pow(G, n) * (1 + 1e-9 * n);
                out.require(lhs <= rhs, "M exceeds Gamma^n at m=" + std::to_string(m) + " alpha=" + to_string(alpha) +
                                            " n=" + std::to_string(n));
                worst = std::max(worst, lhs / std::pow(G, n));
                ++cases;
            }
        }
    if (out.pass)
        out.detail = std::to_string(cases) + " cases, max M/Gamma^n = " + std::to_string(worst);
    return out;
}

Outcome exponent_reduction() {
    Outcome out;
    std::mt19937 rng(2024);
    const std::uint32_t orders[] = {3, 5, 9};
    std::uint64_t evaluations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto F = Field::from_order(orders[trial % 3]);
        const int vars = 1 + static_cast<int>(rng() % 4);
        SparsePolynomial P(F, 1, vars);
        const int terms = 1 + static_cast<int>(rng() % 6);
        for (int t = 0; t < terms; ++t) {
            Exponents e(vars);
            for (auto& x : e)
                x = rng() % (3 * F->q() + 1);
            P.add_term(e, FieldElement{static_cast<std::uint32_t>(rng() % F->q())});
        }
        const auto R = reduce_exponents(P);
        out.require(R.max_variable_degree() < F->q(), "reduced polynomial keeps an exponent >= q");
        for (const auto& x : points_of(*F, vars)) {
            const std::vector<Vector> arg{x};
            // Direct evaluation by repeated multiplication, independent of pow.
            FieldElement direct = F->zero();
            for (const auto& [e, c] : P.terms()) {
                FieldElement term = c;
                for (int v = 0; v < vars; ++v)
                    for (std::uint32_t r = 0; r < e[v]; ++r)
                        term = F->mul(term, x[v]);
                direct = F->add(direct, term);
            }
            out.require(R.evaluate(arg) == direct, "reduced and original differ, trial " + std::to_string(trial));
            ++evaluations;
        }
        if (!out.pass)
            break;
    }
    if (out.pass)
        out.detail = "200 polynomials, " + std::to_string(evaluations) + " evaluations agree";
    return out;
}

Outcome indicators() {
    Outcome out;
    std::uint64_t checked = 0;
    for (auto [q, d, n] : {std::array<int, 3>{3, 3, 1}, {3, 3, 2}, {5, 3, 1}}) {
        auto F = Field::from_order(q);
        const auto f = build_f(F, n, d);
        const auto expanded = reduce_exponents(expand(f));
        const auto pts = points_of(*F, n);
        const std::size_t V = pts.size();
        std::vector<std::size_t> idx(d, 0);
        while (true) {
            std::vector<Vector> x;
            bool zero_sum = true;
            for (int l = 0; l < n; ++l) {
                int s = 0;
                for (int i = 0; i < d; ++i)
                    s += static_cast<int>(pts[idx[i]][l].code);
                zero_sum = zero_sum && s % q == 0;
            }
            for (auto j : idx)
                x.push_back(pts[j]);
            const auto want = zero_sum ? F->one() : F->zero();
            out.require(f.evaluate(x) == want, "f indicator wrong for q=" + std::to_string(q) + " n=" + std::to_string(n));
            out.require(expanded.evaluate(x) == want, "expanded f indicator wrong");
            ++checked;
            int i = d - 1;
            while (i >= 0 && ++idx[i] == V)
                idx[i--] = 0;
            if (i < 0)
                break;
        }
    }

    std::size_t tuples = 0;
    for (int q : {3, 5}) {
        auto F = Field::make(q, 1);
        std::vector<std::vector<FieldElement>> subsets;
        for (unsigned mask = 1; mask < (1u << q); mask += 2) {
            if (std::popcount(mask) < 2)
                continue;
            std::vector<FieldElement> S;
            for (int t = 0; t < q; ++t)
                if (mask >> t & 1)
                    S.push_back({static_cast<std::uint32_t>(t)});
            subsets.push_back(S);
        }
        const int inv2 = (q + 1) / 2;
        for (int n = 1; n <= 2; ++n) {
            const auto pts = points_of(*F, n);
            std::vector<std::size_t> pick(n, 0);
            while (true) {
                std::vector<std::vector<FieldElement>> sets;
                for (auto k : pick)
                    sets.push_back(subsets[k]);
                const auto allowed = to_ints(sets);
                const auto g = build_g(F, sets);
                for (const auto& x1 : pts)
                    for (const auto& x2 : pts)
                        for (const auto& x3 : pts) {
                            bool inside = true;
                            for (int l = 0; l < n; ++l) {
                                const int s = ((static_cast<int>(x3[l].code) - static_cast<int>(x1[l].code) + q) * inv2) % q;
                                inside = inside && std::find(allowed[l].begin(), allowed[l].end(), s) != allowed[l].end();
                            }
                            const std::vector<Vector> x{x1, x2, x3};
                            out.require(g.evaluate(x).is_zero() != inside,
                                        "g indicator wrong for q=" + std::to_string(q) + " n=" + std::to_string(n));
                            ++checked;
                        }
                ++tuples;
                int l = n - 1;
                while (l >= 0 && ++pick[l] == subsets.size())
                    pick[l--] = 0;
                if (l < 0 || !out.pass)
                    break;
            }
        }
    }
    if (out.pass)
        out.detail = std::to_string(tuples) + " S-tuples, " + std::to_string(checked) + " evaluations";
    return out;
}

Outcome cap_sets() {
    Outcome out;
    auto F3 = Field::make(3, 1);
    const double G = compute_gamma(Rational(1, 3), 3).value;
    const std::size_t expected[] = {2, 4, 9};
    std::string sizes;
    for (int n = 1; n <= 3; ++n) {
        const auto inst = uniform_instance(F3, n, 3);
        const auto r = solve(inst);
        out.require(r.status == SearchStatus::exact, "search not exact at n=" + std::to_string(n));
        out.require(check_set(r.best_set, inst).progression_free, "witness contains a progression");
        if (n <= 2) {
            const auto truth = static_cast<std::size_t>(oracle::brute_force_max_set(3, n, to_ints(inst.sets)));
            out.require(truth == expected[n - 1], "subset oracle disagrees with the known value");
            out.require(r.size == truth, "search disagrees with the subset oracle at n=" + std::to_string(n));
        } else {
            SearchOptions other;
            other.order = VertexOrder::degree_then_reverse_index;
            other.slice_bounds = false;
            other.symmetry = false;
            const auto r2 = solve(inst, other);
            out.require(r2.status == SearchStatus::exact, "second configuration not exact");
            out.require(r2.size == r.size, "solver configurations disagree at n=3");
            out.require(r.size == expected[2], "n=3 size is not 9");
        }
        out.require(static_cast<double>(r.size) <= std::pow(G, n), "size exceeds Gamma^n");
        out.require(CountValue(r.size) <= 3 * count_M(n, Rational(2 * n, 3), 2), "size exceeds 3 M(n, 2n/3, 2)");
        sizes += (sizes.empty() ? "" : ", ") + std::to_string(r.size);
    }
    if (out.pass)
        out.detail = "sizes " + sizes;
    return out;
}

Outcome restricted_sandwich() {
    Outcome out;
    auto F5 = Field::make(5, 1);
    const auto gr = compute_gamma(Rational(5, 12), 5);
    const double grid = oracle::grid_gamma(5.0 / 12, 5, 200000);
    out.require(std::abs(gr.value - grid) <= 1e-3, "Gamma_{5/12,5} disagrees with the grid oracle");
    out.require(std::abs(gr.value - 4.862) < 5e-4, "Gamma_{5/12,5} is not about 4.862");
    std::string sizes;
    for (int n = 1; n <= 2; ++n) {
        const auto inst = uniform_instance(F5, n, 4);
        out.require(inst.alpha() == Rational(5, 12), "alpha is not 5/12");
        const auto r = solve(inst);
        out.require(r.status == SearchStatus::exact, "search not exact");
        out.require(check_set(r.best_set, inst).progression_free, "witness contains a progression");
        out.require(static_cast<double>(r.size) <= std::floor(std::pow(gr.value, n)), "size exceeds floor(Gamma^n)");
        if (n == 1)
            out.require(r.size == static_cast<std::size_t>(oracle::brute_force_max_set(5, 1, to_ints(inst.sets))),
                        "search disagrees with the subset oracle");
        sizes += (sizes.empty() ? "" : ", ") + std::to_string(r.size) + " <= " +
                 std::to_string(static_cast<long long>(std::floor(std::pow(gr.value, n))));
    }
    if (out.pass)
        out.detail = "Gamma=" + std::to_string(gr.value) + " grid=" + std::to_string(grid) + "; " + sizes;
    return out;
}

Outcome family_pipeline() {
    Outcome out;
    auto F3 = Field::make(3, 1);
    int agreements = 0;
    for (std::vector<std::uint32_t> S : {std::vector<std::uint32_t>{0, 1}, std::vector<std::uint32_t>{0, 1, 2}}) {
        std::vector<FieldElement> set;
        for (auto c : S)
            set.push_back({c});
        const auto inst = make_instance(F3, 1, {set});
        const auto g = build_g(F3, inst.sets);
        for (unsigned mask = 0; mask < 8; ++mask) {
            std::vector<Vector> A;
            std::vector<std::vector<int>> A_ints;
            for (std::uint32_t t = 0; t < 3; ++t)
                if (mask >> t & 1) {
                    A.push_back(Vector{FieldElement{t}});
                    A_ints.push_back({static_cast<int>(t)});
                }
            const auto rep = verify_condition(from_progression_free(F3, A, 1), g);
            const bool verified = rep.status == VerifyStatus::verified;
            const bool free = check_set(A, inst).progression_free;
            const bool oracle_free = !oracle::has_restricted_ap(3, A_ints, to_ints(inst.sets));
            out.require(verified == free, "verify_condition and check_set disagree, mask " + std::to_string(mask));
            out.require(free == oracle_free, "check_set disagrees with the enumeration oracle");
            ++agreements;
        }
    }
    if (out.pass)
        out.detail = std::to_string(agreements) + " (A, S) pairs agree";
    return out;
}

Outcome tensor_powers() {
    Outcome out;
    auto F3 = Field::make(3, 1);
    const std::vector<std::vector<FieldElement>> sets{{F3->zero(), F3->one()}};
    const auto g = build_g(F3, sets);
    const auto base = from_progression_free(F3, {Vector{F3->zero()}, Vector{F3->one()}});
    out.require(base.size() == 2, "base family does not have N = 2");
    out.require(verify_condition(base, g).status == VerifyStatus::verified, "base family not verified");
    const long long deg_g = expand(g).degree();
    out.require(deg_g == g.degree(), "formal and expanded degree of g differ");
    std::string info;
    for (int k : {2, 3}) {
        const auto pw = tensor_power(base, g, k);
        const auto rep = verify_condition(pw.family, pw.g);
        out.require(pw.family.size() == (k == 2 ? 4u : 8u), "power has the wrong size");
        out.require(rep.status == VerifyStatus::verified, "power k=" + std::to_string(k) + " not verified");
        out.require(rep.tuples_checked <= 500000, "tuple count above the desk limit");
        const long long deg = expand(pw.g).degree();
        out.require(deg == k * deg_g, "deg gbar != k deg g for k=" + std::to_string(k));
        info += "k=" + std::to_string(k) + ": " + std::to_string(rep.tuples_checked) + " tuples, deg " + std::to_string(deg) + "; ";
    }
    if (out.pass)
        out.detail = "deg g=" + std::to_string(deg_g) + "; " + info.substr(0, info.size() - 2);
    return out;
}

Outcome tao_sandwich() {
    Outcome out;
    auto F3 = Field::make(3, 1);
    std::string info;
    for (int n = 1; n <= 2; ++n) {
        const auto inst = uniform_instance(F3, n, 3);
        const auto cap = solve(inst).best_set;
        const auto fam = from_progression_free(F3, cap);
        auto pf = build_f(F3, n, 3);
        pf *= build_g(F3, inst.sets);
        const auto P = reduce_exponents(expand(pf));
        const auto T = build_tensor(P, fam);
        const auto diag = is_diagonal(T);
        out.require(diag.diagonal, "tensor not diagonal at n=" + std::to_string(n));
        out.require(diagonal_nonzeros(T) == fam.size(), "a diagonal entry vanishes");
        const auto M = diagonal_projection(T);
        out.require(matrix_rank_gfq(M) == diagonal_nonzeros(M), "projection rank differs from nonzero count");
        const auto w = slice_rank_upper_bound(P);
        out.require(witness_reconstructs(P, w), "slice-rank witness does not reconstruct P");
        const auto cert = tao_bound_check(T, w);
        const CountValue cap_bound = 3 * count_M(n, Rational(floor_of(Rational(P.degree(), 3))), 2);
        out.require(cert.N <= cert.witness_total, "N exceeds the witness size");
        out.require(CountValue(cert.witness_total) <= cap_bound, "witness exceeds 3 M(n, floor(D/3), 2)");
        info += "n=" + std::to_string(n) + ": N=" + std::to_string(cert.N) + " <= " + std::to_string(cert.witness_total) +
                " <= " + cap_bound.str() + "; ";
    }
    if (out.pass)
        out.detail = info.substr(0, info.size() - 2);
    return out;
}

} // namespace

int main() {
    criterion(1, "gamma anchor (1/3, 3)", 1, gamma_anchor);
    criterion(2, "counting oracle equivalence", 10, counting_equivalence);
    criterion(3, "counting below Gamma^n", 30, counting_vs_gamma);
    criterion(4, "exponent reduction soundness", 60, exponent_reduction);
    criterion(5, "indicator polynomials", 60, indicators);
    criterion(6, "cap-set ground truth", 120, cap_sets);
    criterion(7, "restricted-difference sandwich", 120, restricted_sandwich);
    criterion(8, "family pipeline vs check_set", 60, family_pipeline);
    criterion(9, "tensor powers", 60, tensor_powers);
    criterion(10, "slice-rank sandwich", 60, tao_sandwich);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
