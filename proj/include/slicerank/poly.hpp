#pragma once

// Sparse polynomials over GF(q) in d*n variables x_{i,l}, i in [d] (block),
// l in [n] (coordinate). Indices are zero-based in code and one-based in JSON.

#include "slicerank/counting.hpp"
#include "slicerank/gf.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

namespace slicerank {

struct VarIndex {
    int block = 0;
    int coord = 0;
};

/// Dense exponent vector of length d*n; variable (i, l) sits at i*n + l.
using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic: total degree first, then lexicographic in
/// (block, coord) order.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

struct Monomial {
    std::vector<std::pair<VarIndex, std::uint32_t>> exponents; // nonzero only
    FieldElement coefficient;
};

class SparsePolynomial {
public:
    using TermMap = std::map<Exponents, FieldElement, GradedLexLess>;

    SparsePolynomial(FieldPtr field, int d, int n);

    static SparsePolynomial constant(FieldPtr field, int d, int n, FieldElement c);
    static SparsePolynomial variable(FieldPtr field, int d, int n, VarIndex v);

    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    int blocks() const { return d_; }
    int coords() const { return n_; }

    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c * x^e, merging like terms and dropping zeros.
    void add_term(const Exponents& e, FieldElement c);

    /// Total degree; 0 for the zero polynomial.
    long long degree() const;
    std::uint32_t max_variable_degree() const;
    /// Sum of exponents of block i in e.
    long long block_degree(const Exponents& e, int block) const;

    std::vector<Monomial> monomials() const;

    /// points[i] is the value of block i (length n).
    FieldElement evaluate(std::span<const Vector> points) const;

    /// Re-embeds into dims (d, new_n), moving coordinate l to l + offset.
    SparsePolynomial shifted(int new_n, int offset) const;

    SparsePolynomial& operator+=(const SparsePolynomial& o);
    SparsePolynomial& operator-=(const SparsePolynomial& o);
    friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
    friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
    friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b);
    friend SparsePolynomial operator*(FieldElement c, const SparsePolynomial& a);

    bool operator==(const SparsePolynomial& o) const;

private:
    void check_compatible(const SparsePolynomial& o) const;

    FieldPtr field_;
    int d_;
    int n_;
    TermMap terms_;
};

/// A product of low-degree factors, evaluated lazily. The empty product is 1.
class ProductForm {
public:
    ProductForm(FieldPtr field, int d, int n);

    static ProductForm one(FieldPtr field, int d, int n) { return ProductForm(std::move(field), d, n); }

    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    int blocks() const { return d_; }
    int coords() const { return n_; }

    const std::vector<SparsePolynomial>& factors() const { return factors_; }
    void push_factor(SparsePolynomial f);

    /// Degree of the formal product (sum of factor degrees; exact over a field).
    long long degree() const;
    FieldElement evaluate(std::span<const Vector> points) const;
    /// Product of factor term counts, saturating at UINT64_MAX.
    std::uint64_t term_estimate() const;

    ProductForm& operator*=(const ProductForm& o);

private:
    FieldPtr field_;
    int d_;
    int n_;
    std::vector<SparsePolynomial> factors_;
};

/// f = prod_l (1 - (x_{1l} + ... + x_{dl})^{q-1}): the indicator of
/// x_1 + ... + x_d = 0.
ProductForm build_f(const FieldPtr& field, int n, int d);

/// g = prod_l prod_{t not in S_l} ((x_{3l} - x_{1l})/2 - t), d = 3.
/// Nonzero iff (x_3 - x_1)/2 lies in S_1 x ... x S_n. Each S_l must contain 0.
ProductForm build_g(const FieldPtr& field, const std::vector<std::vector<FieldElement>>& sets);

/// Replaces every exponent m >= q by m mod (q-1), or by q-1 when (q-1) | m.
/// The result agrees with p on every input.
SparsePolynomial reduce_exponents(const SparsePolynomial& p);

/// Multiplies out the product. Throws GateExceeded when term_estimate() is
/// above budget.
SparsePolynomial expand(const ProductForm& pf, std::uint64_t budget = 1'000'000);

/// Monomial-to-block assignment splitting P into slice-rank-one pieces.
struct SliceRankWitness {
    int d = 0;
    int n = 0;
    long long degree = 0; // D = deg P
    /// Block chosen for each term of P, in P's canonical term order.
    std::vector<int> assignment;
    /// Distinct block-i exponent patterns (length n) per block.
    std::vector<std::set<std::vector<std::uint32_t>>> patterns;
    std::vector<std::size_t> witness_sizes;
    std::size_t total = 0;
    /// d * M(n, floor(D/d), q-1).
    CountValue bound;
};

/// Assigns each monomial to the block of least block-degree (lowest index on
/// ties). Throws InvalidInput if some variable has degree >= q.
SliceRankWitness slice_rank_upper_bound(const SparsePolynomial& P);

/// Rebuilds P as sum over (block i, pattern) of x_i^pattern * rest and checks
/// that it equals P and that each rest avoids block i.
bool witness_reconstructs(const SparsePolynomial& P, const SliceRankWitness& w);

} // namespace slicerank
