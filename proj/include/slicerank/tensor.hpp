#pragma once

// Dense evaluation tensors T(j_1, ..., j_d) = P(a_{1j_1}, ..., a_{dj_d}).

#include "slicerank/errors.hpp"
#include "slicerank/families.hpp"
#include "slicerank/gf.hpp"
#include "slicerank/poly.hpp"

#include <concepts>
#include <optional>
#include <span>
#include <vector>

namespace slicerank {

inline constexpr std::uint64_t kTensorGate = 10'000'000;

class Tensor {
public:
    Tensor(FieldPtr field, int d, std::size_t side);

    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    int order() const { return d_; }
    std::size_t side() const { return side_; }
    std::size_t entry_count() const { return entries_.size(); }

    FieldElement operator()(std::span<const std::size_t> index) const { return entries_[linear(index)]; }
    FieldElement& at(std::span<const std::size_t> index) { return entries_[linear(index)]; }
    FieldElement at_linear(std::size_t i) const { return entries_[i]; }
    FieldElement& at_linear(std::size_t i) { return entries_[i]; }

    /// Row-major (first index most significant).
    std::size_t linear(std::span<const std::size_t> index) const;
    std::vector<std::size_t> unlinear(std::size_t i) const;

private:
    FieldPtr field_;
    int d_;
    std::size_t side_;
    std::vector<FieldElement> entries_;
};

template <typename P>
concept Evaluable = requires(const P& p, std::span<const Vector> x) {
    { p.evaluate(x) } -> std::same_as<FieldElement>;
    { p.blocks() } -> std::convertible_to<int>;
    { p.coords() } -> std::convertible_to<int>;
};

/// Throws InvalidInput on a dimension mismatch and GateExceeded when N^d is
/// above kTensorGate.
template <Evaluable P>
Tensor build_tensor(const P& poly, const Family& fam);

struct DiagonalCheck {
    bool diagonal = true;
    std::optional<std::vector<std::size_t>> violation;
};

DiagonalCheck is_diagonal(const Tensor& T);

/// Number of nonzero entries on the main diagonal.
std::size_t diagonal_nonzeros(const Tensor& T);

/// Rank over GF(q) of an order-2 tensor. Throws InvalidInput for d != 2.
std::size_t matrix_rank_gfq(const Tensor& T);

/// Order-2 restriction M(j, j') = T(j, j', j', ..., j'). For a diagonal T this
/// is the diagonal matrix carrying T's diagonal.
Tensor diagonal_projection(const Tensor& T);

struct TaoCertificate {
    std::size_t N = 0;
    int d = 0;
    long long D = 0;
    CountValue bound;
    bool diagonal = true;
    std::vector<std::size_t> witness_sizes;
    std::size_t witness_total = 0;
};

/// Checks N <= witness size <= d*M(n, floor(D/d), q-1). Throws InvalidInput
/// unless T is diagonal with all diagonal entries nonzero, and
/// InvariantViolation if the sandwich fails.
TaoCertificate tao_bound_check(const Tensor& T, const SliceRankWitness& witness);

// ---------------------------------------------------------------------------

template <Evaluable P>
Tensor build_tensor(const P& poly, const Family& fam) {
    fam.validate();
    if (poly.blocks() != fam.d || poly.coords() != fam.n)
        throw InvalidInput("polynomial and family dimensions differ");
    const std::size_t N = fam.size();
    std::uint64_t count = 1;
    for (int i = 0; i < fam.d; ++i) {
        count *= N;
        if (count > kTensorGate)
            throw GateExceeded("tensor has more than " + std::to_string(kTensorGate) + " entries");
    }
    Tensor T(fam.field, fam.d, N);
    std::vector<Vector> point(fam.d);
    for (std::size_t lin = 0; lin < T.entry_count(); ++lin) {
        const auto idx = T.unlinear(lin);
        for (int i = 0; i < fam.d; ++i)
            point[i] = fam.members[i][idx[i]];
        T.at_linear(lin) = poly.evaluate(point);
    }
    return T;
}

} // namespace slicerank
