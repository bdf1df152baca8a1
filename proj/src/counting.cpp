#include "slicerank/counting.hpp"

#include "slicerank/errors.hpp"

#include <algorithm>
#include <vector>

namespace slicerank {

long long floor_of(const Rational& r) {
    const long long num = r.numerator();
    const long long den = r.denominator(); // always positive
    long long f = num / den;
    if (num % den != 0 && num < 0)
        --f;
    return f;
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s) {
    try {
        std::size_t used = 0;
        if (const auto slash = s.find('/'); slash != std::string::npos) {
            const long long num = std::stoll(s.substr(0, slash), &used);
            if (used != slash)
                throw InvalidInput("bad rational");
            const auto rest = s.substr(slash + 1);
            const long long den = std::stoll(rest, &used);
            if (used != rest.size() || den == 0)
                throw InvalidInput("bad rational");
            return Rational(num, den);
        }
        if (const auto dot = s.find('.'); dot != std::string::npos) {
            const auto frac = s.substr(dot + 1);
            if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos)
                throw InvalidInput("bad rational");
            long long den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i)
                den *= 10;
            const std::string whole = s.substr(0, dot);
            const bool negative = !whole.empty() && whole[0] == '-';
            const long long ip = (whole.empty() || whole == "-") ? 0 : std::stoll(whole, &used);
            const long long fp = frac.empty() ? 0 : std::stoll(frac);
            const long long num = negative ? ip * den - fp : ip * den + fp;
            return Rational(num, den);
        }
        const long long v = std::stoll(s, &used);
        if (used != s.size())
            throw InvalidInput("bad rational");
        return Rational(v);
    } catch (const std::logic_error&) {
        throw InvalidInput("cannot parse rational '" + s + "'");
    } catch (const InvalidInput&) {
        throw InvalidInput("cannot parse rational '" + s + "'");
    }
}

CountValue binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    CountValue r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

CountValue count_M(long long n, const Rational& D, long long a) {
    if (n < 0 || a < 0)
        throw InvalidInput("count_M requires n >= 0 and a >= 0");
    const long long cap = floor_of(D);
    if (cap < 0)
        return 0;
    const long long top = std::min(cap, a * n);

    // ways[s] = number of prefixes with coordinate sum exactly s.
    std::vector<CountValue> ways(top + 1, 0);
    ways[0] = 1;
    for (long long i = 0; i < n; ++i) {
        std::vector<CountValue> next(top + 1, 0);
        for (long long s = 0; s <= top; ++s) {
            if (ways[s] == 0)
                continue;
            for (long long x = 0; x <= a && s + x <= top; ++x)
                next[s + x] += ways[s];
        }
        ways.swap(next);
    }
    CountValue total = 0;
    for (const auto& w : ways)
        total += w;
    return total;
}

CountValue count_M_inclusion_exclusion(long long n, const Rational& D, long long a) {
    if (n < 0 || a < 0)
        throw InvalidInput("count_M requires n >= 0 and a >= 0");
    const long long cap = floor_of(D);
    CountValue total = 0;
    for (long long j = 0; j <= n; ++j) {
        const long long upper = cap - j * (a + 1) + n;
        if (upper < n)
            break;
        const CountValue term = binomial(n, j) * binomial(upper, n);
        if (j % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

CountValue sumfree_bound(long long n, long long q, long long d) {
    if (q < 3 || d < 2)
        throw InvalidInput("sumfree_bound requires q >= 3 and d >= 2");
    return CountValue(d) * count_M(n, Rational((q - 1) * n, d), q - 1);
}

} // namespace slicerank
