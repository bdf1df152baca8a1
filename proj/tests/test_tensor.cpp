#include "doctest.h"

#include "slicerank/errors.hpp"
#include "slicerank/tensor.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace slicerank;

namespace {

Tensor matrix(const FieldPtr& F, const std::vector<std::vector<std::uint32_t>>& rows) {
    Tensor T(F, 2, rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows.size(); ++c) {
            const std::size_t idx[] = {r, c};
            T.at(idx) = {rows[r][c]};
        }
    return T;
}

// Rank as log_q of the size of the row space, by enumerating all q^N
// combinations of rows.
std::size_t row_space_rank(const Field& F, const std::vector<Vector>& rows) {
    const std::size_t N = rows.size();
    std::set<Vector> span;
    std::vector<std::uint32_t> coef(N, 0);
    while (true) {
        Vector v(rows[0].size(), F.zero());
        for (std::size_t r = 0; r < N; ++r)
            v = add(F, v, scale(F, {coef[r]}, rows[r]));
        span.insert(v);
        std::size_t i = 0;
        while (i < N && ++coef[i] == F.q())
            coef[i++] = 0;
        if (i == N)
            break;
    }
    std::size_t rank = 0;
    for (std::size_t size = 1; size < span.size(); size *= F.q())
        ++rank;
    return rank;
}

} // namespace

TEST_CASE("diagonal checks") {
    auto F = Field::make(3, 1);
    CHECK(is_diagonal(matrix(F, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).diagonal);
    const auto ones = is_diagonal(matrix(F, {{1, 1}, {1, 1}}));
    CHECK_FALSE(ones.diagonal);
    REQUIRE(ones.violation);
    CHECK(*ones.violation == std::vector<std::size_t>{0, 1});
}

TEST_CASE("matrix rank over GF(q)") {
    auto F3 = Field::make(3, 1);
    CHECK(matrix_rank_gfq(matrix(F3, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})) == 4);
    CHECK(matrix_rank_gfq(matrix(F3, {{1, 0, 0}, {0, 2, 0}, {0, 0, 0}})) == 2);
    CHECK(matrix_rank_gfq(matrix(F3, {{1, 2}, {2, 1}})) == 1);
    CHECK_THROWS_AS(matrix_rank_gfq(Tensor(F3, 3, 2)), InvalidInput);

    auto F5 = Field::make(5, 1);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<std::uint32_t>> rows(6, std::vector<std::uint32_t>(6));
        // Low-rank structure on some trials.
        for (auto& r : rows)
            for (auto& x : r)
                x = rng() % 5;
        if (trial % 2)
            rows[5] = rows[0], rows[4] = rows[1];
        const auto T = matrix(F5, rows);
        const auto rank = matrix_rank_gfq(T);

        std::vector<Vector> vrows;
        for (const auto& r : rows) {
            Vector v;
            for (auto x : r)
                v.push_back({x});
            vrows.push_back(v);
        }
        CHECK(rank == row_space_rank(*F5, vrows));

        auto shuffled = rows;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(matrix_rank_gfq(matrix(F5, shuffled)) == rank);

        auto cols = rows;
        for (auto& r : cols)
            std::reverse(r.begin(), r.end());
        CHECK(matrix_rank_gfq(matrix(F5, cols)) == rank);

        auto scaled = rows;
        for (auto& x : scaled[2])
            x = F5->mul({x}, F5->from_int(3)).code;
        CHECK(matrix_rank_gfq(matrix(F5, scaled)) == rank);
    }
}

TEST_CASE("diagonal matrices: rank equals nonzero count") {
    std::mt19937 rng(17);
    for (int q : {3, 5, 9}) {
        auto F = Field::from_order(q);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t N = 1 + rng() % 7;
            Tensor T(F, 2, N);
            for (std::size_t j = 0; j < N; ++j) {
                const std::size_t idx[] = {j, j};
                T.at(idx) = {static_cast<std::uint32_t>(rng() % q)};
            }
            CHECK(matrix_rank_gfq(T) == diagonal_nonzeros(T));
        }
    }
}

TEST_CASE("evaluation tensors of cap families") {
    auto F = Field::make(3, 1);
    auto P = build_f(F, 1, 3);
    P *= build_g(F, {F->elements()});

    const auto single = from_progression_free(F, {{F->zero()}});
    const auto T1 = build_tensor(P, single);
    CHECK(T1.entry_count() == 1);
    CHECK_FALSE(T1.at_linear(0).is_zero());

    const auto cap = from_progression_free(F, {{F->zero()}, {F->one()}});
    const auto T = build_tensor(P, cap);
    CHECK(T.entry_count() == 8);
    CHECK(is_diagonal(T).diagonal);
    CHECK(diagonal_nonzeros(T) == 2);
    for (std::size_t lin = 0; lin < 8; ++lin) {
        const auto idx = T.unlinear(lin);
        const bool diag = idx[0] == idx[1] && idx[1] == idx[2];
        CHECK(T.at_linear(lin) == (diag ? F->one() : F->zero()));
    }

    const auto line = from_progression_free(F, {{F->zero()}, {F->one()}, {F->from_int(2)}});
    const auto bad = is_diagonal(build_tensor(P, line));
    CHECK_FALSE(bad.diagonal);
    CHECK(*bad.violation == std::vector<std::size_t>{0, 1, 2});

    // The sparse expansion gives the same tensor.
    CHECK(is_diagonal(build_tensor(reduce_exponents(expand(P)), cap)).diagonal);

    CHECK_THROWS_AS(build_tensor(build_f(F, 2, 3), cap), InvalidInput);
}

TEST_CASE("tensor gate") {
    auto F = Field::make(3, 1);
    CHECK_THROWS_AS(Tensor(F, 3, 216), GateExceeded);
    CHECK_NOTHROW(Tensor(F, 2, 3000));
}

TEST_CASE("Tao sandwich certificate") {
    auto F = Field::make(3, 1);
    for (int n = 1; n <= 2; ++n) {
        auto pf = build_f(F, n, 3);
        pf *= build_g(F, std::vector<std::vector<FieldElement>>(n, F->elements()));
        const auto P = reduce_exponents(expand(pf));
        const auto w = slice_rank_upper_bound(P);
        // Cap sets of sizes 2 and 4.
        std::vector<Vector> A = n == 1 ? std::vector<Vector>{{F->zero()}, {F->one()}}
                                       : std::vector<Vector>{{F->zero(), F->zero()},
                                                             {F->zero(), F->one()},
                                                             {F->one(), F->zero()},
                                                             {F->one(), F->one()}};
        const auto T = build_tensor(P, from_progression_free(F, A));
        const auto cert = tao_bound_check(T, w);
        CHECK(cert.N == A.size());
        CHECK(cert.N <= cert.witness_total);
        CHECK(cert.bound == 3 * count_M(n, Rational(cert.D, 3), 2));
        if (n == 1)
            CHECK(cert.bound == 3);
        if (n == 2)
            CHECK(cert.bound == 9);

        const auto M = diagonal_projection(T);
        CHECK(is_diagonal(M).diagonal);
        CHECK(matrix_rank_gfq(M) == diagonal_nonzeros(M));
        CHECK(matrix_rank_gfq(M) == A.size());
    }

    auto bad = Tensor(F, 3, 2);
    bad.at_linear(1) = F->one();
    SliceRankWitness w;
    w.d = 3;
    CHECK_THROWS_AS(tao_bound_check(bad, w), InvalidInput);
}

TEST_CASE("tensor diagonality agrees with verify_condition") {
    std::mt19937 rng(23);
    for (int q : {3, 5}) {
        auto F = Field::from_order(q);
        const int n = 1;
        for (int trial = 0; trial < 40; ++trial) {
            std::set<Vector> pts;
            const std::size_t size = 1 + rng() % q;
            while (pts.size() < size)
                pts.insert(Vector{FieldElement{static_cast<std::uint32_t>(rng() % q)}});
            std::vector<FieldElement> S{F->zero()};
            for (int t = 1; t < q; ++t)
                if (rng() % 2)
                    S.push_back({static_cast<std::uint32_t>(t)});
            const auto fam = from_progression_free(F, {pts.begin(), pts.end()});
            const auto g = build_g(F, {S});
            auto P = build_f(F, n, 3);
            P *= g;
            const auto T = build_tensor(P, fam);
            const bool tensor_ok = is_diagonal(T).diagonal && diagonal_nonzeros(T) == fam.size();
            CHECK(tensor_ok == verify_condition(fam, g).ok());
        }
    }
}
