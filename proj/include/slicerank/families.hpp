#pragma once

// Families of d-tuples (a_{1j}, ..., a_{dj}), j = 1..N, of vectors in F_q^n,
// and the condition: a_{1j_1} + ... + a_{dj_d} = 0 and g(...) != 0 exactly on
// the diagonal j_1 = ... = j_d.

#include "slicerank/gf.hpp"
#include "slicerank/poly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace slicerank {

inline constexpr std::uint64_t kTupleGate = 10'000'000;

struct Family {
    FieldPtr field;
    int n = 0;
    int d = 0;
    /// members[i][j] = a_{i+1, j+1}.
    std::vector<std::vector<Vector>> members;

    std::size_t size() const { return members.empty() ? 0 : members[0].size(); }
    /// (a_{1j_1}, ..., a_{dj_d}).
    std::vector<Vector> tuple(std::span<const std::size_t> index) const;
    void validate() const;
};

/// a_{1j} = a_{3j} = a_j, a_{2j} = -2 a_j. Throws InvalidInput on duplicates.
/// dim is required only when points is empty (N = 0, vacuously verified).
Family from_progression_free(const FieldPtr& field, const std::vector<Vector>& points, int dim = 0);

enum class VerifyStatus { verified, violated, no_violation_in_samples };

enum class FailedClause {
    none,
    diagonal_sum,   // a diagonal tuple does not sum to zero
    diagonal_g,     // g vanishes on a diagonal tuple
    off_diagonal,   // an off-diagonal tuple sums to zero with g != 0
};

struct VerifyReport {
    VerifyStatus status = VerifyStatus::verified;
    FailedClause clause = FailedClause::none;
    std::vector<std::size_t> witness; // zero-based index tuple
    std::uint64_t tuples_checked = 0;

    bool ok() const { return status != VerifyStatus::violated; }
};

std::string to_string(VerifyStatus s);
std::string to_string(FailedClause c);

/// Exhaustive over all N^d tuples. g = nullopt means g = 1. The reported
/// witness is the lexicographically least violating tuple for any number of
/// workers. Throws GateExceeded above kTupleGate tuples.
VerifyReport verify_condition(const Family& fam, const std::optional<ProductForm>& g, unsigned workers = 1);

/// Checks all diagonal tuples plus `samples` random off-diagonal ones. Never
/// reports `verified`.
VerifyReport verify_condition_sampled(const Family& fam, const std::optional<ProductForm>& g,
                                      std::uint64_t samples, std::uint64_t seed);

struct PoweredFamily {
    Family family;
    ProductForm g;
};

/// The N^k-member family over F_q^{nk} of concatenations, in lexicographic
/// order of (j_1, ..., j_k), and gbar = prod_h g(shifted to coordinate block h).
PoweredFamily tensor_power(const Family& fam, const ProductForm& g, int k);

} // namespace slicerank
