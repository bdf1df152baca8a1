#pragma once

// M(n, D, a): the number of integer vectors x in {0..a}^n with x_1+...+x_n <= D.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <string>

namespace slicerank {

using CountValue = boost::multiprecision::cpp_int;
using Rational = boost::rational<long long>;

/// Exact floor of a rational.
long long floor_of(const Rational& r);

/// "p/q" or "p" for integral values.
std::string to_string(const Rational& r);
/// Accepts "p/q", "p", or a finite decimal such as "0.25".
Rational parse_rational(const std::string& s);

/// Dynamic programming over (coordinate, partial sum). Only floor(D) matters;
/// negative D gives 0.
CountValue count_M(long long n, const Rational& D, long long a);

/// Independent route: sum_j (-1)^j C(n,j) C(floor(D) - j(a+1) + n, n).
CountValue count_M_inclusion_exclusion(long long n, const Rational& D, long long a);

/// d * M(n, (q-1)n/d, q-1), the multicolored sum-free bound.
CountValue sumfree_bound(long long n, long long q, long long d);

CountValue binomial(long long n, long long k);

} // namespace slicerank
