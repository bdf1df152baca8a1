#include "slicerank/gf.hpp"

#include "slicerank/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace slicerank {

namespace {

constexpr std::uint32_t kMaxOrder = 1u << 16;
constexpr std::uint32_t kTableOrder = 256;

int digit_value(char c) {
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'z')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'Z')
        return c - 'A' + 10;
    return -1;
}

char digit_char(int v) { return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10); }

// Remainder of a modulo the monic polynomial m over Z_p. Both low degree first.
std::vector<int> poly_rem(std::vector<int> a, std::span<const int> m, int p) {
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const int lead = a.back();
        if (lead != 0) {
            const std::size_t shift = a.size() - 1 - dm;
            for (std::size_t i = 0; i <= dm; ++i)
                a[shift + i] = ((a[shift + i] - lead * m[i]) % p + p) % p;
        }
        a.pop_back();
    }
    return a;
}

} // namespace

bool is_prime(long long n) {
    if (n < 2)
        return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

bool is_irreducible(std::span<const int> f, int p) {
    const int deg = static_cast<int>(f.size()) - 1;
    if (deg < 1 || f.back() != 1)
        return false;
    if (deg == 1)
        return true;
    for (int dg = 1; dg <= deg / 2; ++dg) {
        // Enumerate monic g of degree dg.
        std::vector<int> g(dg + 1, 0);
        g[dg] = 1;
        while (true) {
            auto r = poly_rem(std::vector<int>(f.begin(), f.end()), g, p);
            if (std::all_of(r.begin(), r.end(), [](int c) { return c == 0; }))
                return false;
            int i = 0;
            while (i < dg && ++g[i] == p)
                g[i++] = 0;
            if (i == dg)
                break;
        }
    }
    return true;
}

Field::Field(int p, int k, std::vector<int> modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus)) {
    for (int i = 0; i < k; ++i)
        q_ *= static_cast<std::uint32_t>(p);

    if (q_ <= kTableOrder) {
        add_table_.resize(std::size_t{q_} * q_);
        mul_table_.resize(std::size_t{q_} * q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            const auto ca = coeffs({a});
            for (std::uint32_t b = 0; b < q_; ++b) {
                auto cb = coeffs({b});
                for (int i = 0; i < k_; ++i)
                    cb[i] = (cb[i] + ca[i]) % p_;
                add_table_[a * q_ + b] = static_cast<std::uint16_t>(from_coeffs(cb).code);
                mul_table_[a * q_ + b] = static_cast<std::uint16_t>(slow_mul({a}, {b}).code);
            }
        }
        tabulated_ = true;
    }

    neg_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
        auto c = coeffs({a});
        for (auto& x : c)
            x = (p_ - x) % p_;
        neg_[a] = from_coeffs(c);
    }

    inv_.resize(q_);
    for (std::uint32_t a = 1; a < q_; ++a)
        inv_[a] = pow({a}, q_ - 2);
    inv_two_ = inv_[from_int(2).code];
}

FieldPtr Field::make(int p, int k) {
    if (p < 2 || !is_prime(p))
        throw InvalidInput("field characteristic " + std::to_string(p) + " is not prime");
    if (p == 2)
        throw InvalidInput("even characteristic is not supported (q must be odd)");
    if (k < 1)
        throw InvalidInput("field exponent must be positive");
    std::uint64_t q = 1;
    for (int i = 0; i < k; ++i) {
        q *= static_cast<std::uint64_t>(p);
        if (q > kMaxOrder)
            throw GateExceeded("field order exceeds 2^16");
    }

    if (k == 1)
        return std::make_shared<const Field>(p, 1, std::vector<int>{0, 1});

    // Lexicographically least monic irreducible, c_0 most significant.
    std::vector<int> low(k, 0);
    while (true) {
        std::vector<int> f(low);
        f.push_back(1);
        if (is_irreducible(f, p))
            return std::make_shared<const Field>(p, k, std::move(f));
        int i = k - 1;
        while (i >= 0 && ++low[i] == p)
            low[i--] = 0;
        if (i < 0)
            break;
    }
    throw InvariantViolation("no irreducible polynomial found");
}

FieldPtr Field::from_order(std::uint32_t q) {
    if (q < 3)
        throw InvalidInput("field order must be an odd prime power >= 3");
    std::uint32_t p = 2;
    while (q % p != 0)
        ++p;
    int k = 0;
    std::uint32_t r = q;
    while (r % p == 0) {
        r /= p;
        ++k;
    }
    if (r != 1)
        throw InvalidInput(std::to_string(q) + " is not a prime power");
    return make(static_cast<int>(p), k);
}

FieldElement Field::from_int(long long v) const {
    long long r = v % p_;
    if (r < 0)
        r += p_;
    std::vector<int> c(k_, 0);
    c[0] = static_cast<int>(r);
    return from_coeffs(c);
}

std::vector<int> Field::coeffs(FieldElement x) const {
    std::vector<int> c(k_);
    std::uint32_t code = x.code;
    for (int i = k_ - 1; i >= 0; --i) {
        c[i] = static_cast<int>(code % p_);
        code /= p_;
    }
    return c;
}

FieldElement Field::from_coeffs(std::span<const int> c) const {
    std::uint32_t code = 0;
    for (int i = 0; i < k_; ++i) {
        int v = i < static_cast<int>(c.size()) ? c[i] : 0;
        v = ((v % p_) + p_) % p_;
        code = code * p_ + static_cast<std::uint32_t>(v);
    }
    return {code};
}

std::vector<int> Field::poly_mulmod(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<int> prod(2 * k_ - 1, 0);
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    if (k_ == 1)
        return prod;
    return poly_rem(std::move(prod), modulus_, p_);
}

FieldElement Field::slow_mul(FieldElement a, FieldElement b) const {
    return from_coeffs(poly_mulmod(coeffs(a), coeffs(b)));
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
    if (tabulated_)
        return {add_table_[a.code * q_ + b.code]};
    auto ca = coeffs(a);
    const auto cb = coeffs(b);
    for (int i = 0; i < k_; ++i)
        ca[i] = (ca[i] + cb[i]) % p_;
    return from_coeffs(ca);
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
    if (tabulated_)
        return {mul_table_[a.code * q_ + b.code]};
    return slow_mul(a, b);
}

FieldElement Field::inv(FieldElement a) const {
    if (a.is_zero())
        throw DivisionByZero();
    return inv_[a.code];
}

FieldElement Field::pow(FieldElement a, std::uint64_t e) const {
    FieldElement result = one();
    FieldElement base = a;
    while (e > 0) {
        if (e & 1)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

std::vector<FieldElement> Field::elements() const {
    std::vector<FieldElement> out(q_);
    for (std::uint32_t i = 0; i < q_; ++i)
        out[i] = {i};
    return out;
}

std::string Field::to_string(FieldElement x) const {
    const auto c = coeffs(x);
    std::string s;
    if (p_ <= 36) {
        for (int v : c)
            s.push_back(digit_char(v));
        return s;
    }
    for (int i = 0; i < k_; ++i) {
        if (i)
            s.push_back('.');
        s += std::to_string(c[i]);
    }
    return s;
}

FieldElement Field::parse(std::string_view s) const {
    std::vector<int> c;
    if (p_ <= 36) {
        if (s.size() != static_cast<std::size_t>(k_))
            throw InvalidInput("element '" + std::string(s) + "' must have " + std::to_string(k_) + " digits");
        for (char ch : s) {
            const int v = digit_value(ch);
            if (v < 0 || v >= p_)
                throw InvalidInput("invalid digit in element '" + std::string(s) + "'");
            c.push_back(v);
        }
    } else {
        std::size_t start = 0;
        while (start <= s.size()) {
            const auto dot = s.find('.', start);
            const auto part = s.substr(start, dot == std::string_view::npos ? s.npos : dot - start);
            if (part.empty())
                throw InvalidInput("invalid element '" + std::string(s) + "'");
            int v = 0;
            for (char ch : part) {
                if (ch < '0' || ch > '9')
                    throw InvalidInput("invalid element '" + std::string(s) + "'");
                v = v * 10 + (ch - '0');
                if (v >= p_)
                    throw InvalidInput("coefficient out of range in '" + std::string(s) + "'");
            }
            c.push_back(v);
            if (dot == std::string_view::npos)
                break;
            start = dot + 1;
        }
        if (c.size() != static_cast<std::size_t>(k_))
            throw InvalidInput("element '" + std::string(s) + "' must have " + std::to_string(k_) + " coefficients");
    }
    return from_coeffs(c);
}

std::string Field::to_string(const Vector& v) const {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (p_ > 36 && i)
            s.push_back(' ');
        s += to_string(v[i]);
    }
    return s;
}

Vector Field::parse_vector(std::string_view s, std::size_t n) const {
    Vector v;
    if (p_ <= 36) {
        if (s.size() != n * static_cast<std::size_t>(k_))
            throw InvalidInput("vector '" + std::string(s) + "' must have " + std::to_string(n * k_) + " digits");
        for (std::size_t i = 0; i < n; ++i)
            v.push_back(parse(s.substr(i * k_, k_)));
        return v;
    }
    std::size_t start = 0;
    while (start < s.size()) {
        auto sp = s.find(' ', start);
        if (sp == std::string_view::npos)
            sp = s.size();
        if (sp > start)
            v.push_back(parse(s.substr(start, sp - start)));
        start = sp + 1;
    }
    if (v.size() != n)
        throw InvalidInput("vector '" + std::string(s) + "' has wrong length");
    return v;
}

Vector add(const Field& F, const Vector& a, const Vector& b) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = F.add(a[i], b[i]);
    return out;
}

Vector sub(const Field& F, const Vector& a, const Vector& b) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = F.sub(a[i], b[i]);
    return out;
}

Vector scale(const Field& F, FieldElement c, const Vector& a) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = F.mul(c, a[i]);
    return out;
}

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](FieldElement x) { return x.is_zero(); });
}

std::uint64_t point_index(const Field& F, const Vector& v) {
    std::uint64_t idx = 0;
    for (auto x : v)
        idx = idx * F.q() + x.code;
    return idx;
}

Vector point_from_index(const Field& F, std::uint64_t index, std::size_t n) {
    Vector v(n);
    for (std::size_t i = n; i-- > 0;) {
        v[i] = {static_cast<std::uint32_t>(index % F.q())};
        index /= F.q();
    }
    return v;
}

} // namespace slicerank
