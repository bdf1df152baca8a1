#pragma once

// Exact arithmetic in GF(q), q = p^k an odd prime power.
//
// Elements are small value types (FieldElement) holding their index in the
// canonical enumeration of the field; all arithmetic goes through the owning
// Field, which is immutable after construction and may be shared freely.
//
// Canonical order: lexicographic on the coefficient list (c_0, ..., c_{k-1})
// of the polynomial-basis representation c_0 + c_1 x + ... , low degree first.
// Hence code(c) = sum_i c_i p^(k-1-i) and code 0 is the additive identity.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slicerank {

struct FieldElement {
    std::uint32_t code = 0;

    constexpr bool is_zero() const { return code == 0; }
    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

using Vector = std::vector<FieldElement>;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
public:
    /// Builds GF(p^k) with the lexicographically least monic irreducible
    /// modulus of degree k. Throws InvalidInput for even or composite p and
    /// GateExceeded when q exceeds 2^16.
    static FieldPtr make(int p, int k);

    /// Same as make() after factoring q = p^k.
    static FieldPtr from_order(std::uint32_t q);

    int p() const { return p_; }
    int k() const { return k_; }
    std::uint32_t q() const { return q_; }

    /// Monic modulus, coefficients low degree first (length k+1).
    /// For k = 1 this is the placeholder x.
    const std::vector<int>& modulus() const { return modulus_; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return from_int(1); }

    /// Image of an integer in the prime subfield.
    FieldElement from_int(long long v) const;

    std::vector<int> coeffs(FieldElement x) const;
    FieldElement from_coeffs(std::span<const int> c) const;

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
    FieldElement neg(FieldElement a) const { return neg_[a.code]; }
    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement inv(FieldElement a) const;
    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
    FieldElement pow(FieldElement a, std::uint64_t e) const;
    /// x * 2^{-1}.
    FieldElement half(FieldElement a) const { return mul(a, inv_two_); }

    /// All q elements in canonical order; index 0 is zero.
    std::vector<FieldElement> elements() const;

    /// Digit string of coefficients, low degree first ("21" in GF(9) is 2 + x).
    /// Digits are base-36 characters; for p > 36 the coefficients are written
    /// in decimal separated by '.'.
    std::string to_string(FieldElement x) const;
    FieldElement parse(std::string_view s) const;

    /// Concatenation of the fixed-width element strings (p <= 36), or
    /// space-separated element strings (p > 36).
    std::string to_string(const Vector& v) const;
    Vector parse_vector(std::string_view s, std::size_t n) const;

    bool operator==(const Field& other) const { return p_ == other.p_ && k_ == other.k_; }

    Field(int p, int k, std::vector<int> modulus);

private:
    std::vector<int> poly_mulmod(const std::vector<int>& a, const std::vector<int>& b) const;
    FieldElement slow_mul(FieldElement a, FieldElement b) const;

    int p_;
    int k_;
    std::uint32_t q_;
    std::vector<int> modulus_;
    bool tabulated_ = false;
    std::vector<std::uint16_t> add_table_;
    std::vector<std::uint16_t> mul_table_;
    std::vector<FieldElement> neg_;
    std::vector<FieldElement> inv_;
    FieldElement inv_two_;
};

bool is_prime(long long n);

/// True when the monic polynomial f (low degree first) over Z_p has no monic
/// factor of degree 1..deg(f)/2.
bool is_irreducible(std::span<const int> f, int p);

// Coordinatewise vector arithmetic.
Vector add(const Field& F, const Vector& a, const Vector& b);
Vector sub(const Field& F, const Vector& a, const Vector& b);
Vector scale(const Field& F, FieldElement c, const Vector& a);
bool is_zero(const Vector& v);

/// Index of v in the lexicographic enumeration of F_q^n (first coordinate
/// most significant), and its inverse.
std::uint64_t point_index(const Field& F, const Vector& v);
Vector point_from_index(const Field& F, std::uint64_t index, std::size_t n);

} // namespace slicerank
