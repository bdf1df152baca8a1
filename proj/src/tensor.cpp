#include "slicerank/tensor.hpp"

#include "slicerank/errors.hpp"

#include <utility>

namespace slicerank {

Tensor::Tensor(FieldPtr field, int d, std::size_t side) : field_(std::move(field)), d_(d), side_(side) {
    if (d < 1)
        throw InvalidInput("tensor order must be positive");
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) {
        count *= side;
        if (count > kTensorGate)
            throw GateExceeded("tensor has more than " + std::to_string(kTensorGate) + " entries");
    }
    entries_.assign(count, field_->zero());
}

std::size_t Tensor::linear(std::span<const std::size_t> index) const {
    std::size_t lin = 0;
    for (auto j : index)
        lin = lin * side_ + j;
    return lin;
}

std::vector<std::size_t> Tensor::unlinear(std::size_t i) const {
    std::vector<std::size_t> idx(d_);
    for (int a = d_ - 1; a >= 0; --a) {
        idx[a] = i % side_;
        i /= side_;
    }
    return idx;
}

DiagonalCheck is_diagonal(const Tensor& T) {
    for (std::size_t lin = 0; lin < T.entry_count(); ++lin) {
        if (T.at_linear(lin).is_zero())
            continue;
        auto idx = T.unlinear(lin);
        for (std::size_t a = 1; a < idx.size(); ++a)
            if (idx[a] != idx[0])
                return {false, std::move(idx)};
    }
    return {true, std::nullopt};
}

std::size_t diagonal_nonzeros(const Tensor& T) {
    std::size_t count = 0;
    std::vector<std::size_t> idx(T.order());
    for (std::size_t j = 0; j < T.side(); ++j) {
        std::fill(idx.begin(), idx.end(), j);
        if (!T(idx).is_zero())
            ++count;
    }
    return count;
}

std::size_t matrix_rank_gfq(const Tensor& T) {
    if (T.order() != 2)
        throw InvalidInput("matrix rank needs an order-2 tensor, got order " + std::to_string(T.order()));
    const Field& F = T.field();
    const std::size_t N = T.side();
    std::vector<std::vector<FieldElement>> rows(N, std::vector<FieldElement>(N));
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
            rows[r][c] = T.at_linear(r * N + c);

    std::size_t rank = 0;
    for (std::size_t col = 0; col < N && rank < N; ++col) {
        std::size_t pivot = rank;
        while (pivot < N && rows[pivot][col].is_zero())
            ++pivot;
        if (pivot == N)
            continue;
        std::swap(rows[rank], rows[pivot]);
        const auto inv = F.inv(rows[rank][col]);
        for (auto& x : rows[rank])
            x = F.mul(x, inv);
        for (std::size_t r = 0; r < N; ++r) {
            if (r == rank || rows[r][col].is_zero())
                continue;
            const auto factor = rows[r][col];
            for (std::size_t c = col; c < N; ++c)
                rows[r][c] = F.sub(rows[r][c], F.mul(factor, rows[rank][c]));
        }
        ++rank;
    }
    return rank;
}

Tensor diagonal_projection(const Tensor& T) {
    Tensor M(T.field_ptr(), 2, T.side());
    std::vector<std::size_t> idx(T.order());
    for (std::size_t j = 0; j < T.side(); ++j)
        for (std::size_t jp = 0; jp < T.side(); ++jp) {
            idx[0] = j;
            for (std::size_t a = 1; a < idx.size(); ++a)
                idx[a] = jp;
            const std::size_t ij[2] = {j, jp};
            M.at(ij) = T(idx);
        }
    return M;
}

TaoCertificate tao_bound_check(const Tensor& T, const SliceRankWitness& witness) {
    const auto diag = is_diagonal(T);
    if (!diag.diagonal)
        throw InvalidInput("tensor is not diagonal");
    if (diagonal_nonzeros(T) != T.side())
        throw InvalidInput("tensor has a zero diagonal entry");
    if (witness.d != T.order())
        throw InvalidInput("witness order differs from tensor order");

    TaoCertificate cert;
    cert.N = T.side();
    cert.d = T.order();
    cert.D = witness.degree;
    cert.bound = witness.bound;
    cert.diagonal = true;
    cert.witness_sizes = witness.witness_sizes;
    cert.witness_total = witness.total;
    if (!(cert.N <= cert.witness_total && CountValue(cert.witness_total) <= cert.bound))
        throw InvariantViolation("slice rank sandwich violated: N=" + std::to_string(cert.N) +
                                 " witness=" + std::to_string(cert.witness_total) + " bound=" + cert.bound.str());
    return cert;
}

} // namespace slicerank
