#include "slicerank/poly.hpp"

#include "slicerank/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace slicerank {

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
    const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db)
        return da < db;
    return a < b;
}

SparsePolynomial::SparsePolynomial(FieldPtr field, int d, int n) : field_(std::move(field)), d_(d), n_(n) {
    if (d < 1 || n < 0)
        throw InvalidInput("polynomial dimensions must satisfy d >= 1, n >= 0");
}

SparsePolynomial SparsePolynomial::constant(FieldPtr field, int d, int n, FieldElement c) {
    SparsePolynomial p(std::move(field), d, n);
    p.add_term(Exponents(static_cast<std::size_t>(d) * n, 0), c);
    return p;
}

SparsePolynomial SparsePolynomial::variable(FieldPtr field, int d, int n, VarIndex v) {
    if (v.block < 0 || v.block >= d || v.coord < 0 || v.coord >= n)
        throw InvalidInput("variable index out of range");
    SparsePolynomial p(field, d, n);
    Exponents e(static_cast<std::size_t>(d) * n, 0);
    e[static_cast<std::size_t>(v.block) * n + v.coord] = 1;
    p.add_term(e, field->one());
    return p;
}

void SparsePolynomial::add_term(const Exponents& e, FieldElement c) {
    if (e.size() != static_cast<std::size_t>(d_) * n_)
        throw InvalidInput("exponent vector has wrong length");
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second = field_->add(it->second, c);
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

long long SparsePolynomial::degree() const {
    if (terms_.empty())
        return 0;
    // Graded order: the last key has the largest total degree.
    const auto& e = terms_.rbegin()->first;
    return std::accumulate(e.begin(), e.end(), 0LL);
}

std::uint32_t SparsePolynomial::max_variable_degree() const {
    std::uint32_t m = 0;
    for (const auto& [e, c] : terms_)
        for (auto x : e)
            m = std::max(m, x);
    return m;
}

long long SparsePolynomial::block_degree(const Exponents& e, int block) const {
    const auto first = e.begin() + static_cast<std::ptrdiff_t>(block) * n_;
    return std::accumulate(first, first + n_, 0LL);
}

std::vector<Monomial> SparsePolynomial::monomials() const {
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) {
        Monomial m;
        m.coefficient = c;
        for (int i = 0; i < d_; ++i)
            for (int l = 0; l < n_; ++l)
                if (auto x = e[static_cast<std::size_t>(i) * n_ + l])
                    m.exponents.push_back({{i, l}, x});
        out.push_back(std::move(m));
    }
    return out;
}

FieldElement SparsePolynomial::evaluate(std::span<const Vector> points) const {
    if (points.size() != static_cast<std::size_t>(d_))
        throw InvalidInput("evaluation point has wrong number of blocks");
    const Field& F = *field_;
    FieldElement sum = F.zero();
    for (const auto& [e, c] : terms_) {
        FieldElement t = c;
        for (int i = 0; i < d_ && !t.is_zero(); ++i)
            for (int l = 0; l < n_; ++l)
                if (auto x = e[static_cast<std::size_t>(i) * n_ + l])
                    t = F.mul(t, F.pow(points[i][l], x));
        sum = F.add(sum, t);
    }
    return sum;
}

SparsePolynomial SparsePolynomial::shifted(int new_n, int offset) const {
    if (offset < 0 || offset + n_ > new_n)
        throw InvalidInput("shift out of range");
    SparsePolynomial out(field_, d_, new_n);
    for (const auto& [e, c] : terms_) {
        Exponents s(static_cast<std::size_t>(d_) * new_n, 0);
        for (int i = 0; i < d_; ++i)
            for (int l = 0; l < n_; ++l)
                s[static_cast<std::size_t>(i) * new_n + l + offset] = e[static_cast<std::size_t>(i) * n_ + l];
        out.add_term(s, c);
    }
    return out;
}

void SparsePolynomial::check_compatible(const SparsePolynomial& o) const {
    if (d_ != o.d_ || n_ != o.n_ || !(*field_ == *o.field_))
        throw InvalidInput("polynomials live in different rings");
}

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

SparsePolynomial& SparsePolynomial::operator-=(const SparsePolynomial& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, field_->neg(c));
    return *this;
}

SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
    a.check_compatible(b);
    const Field& F = *a.field_;
    SparsePolynomial out(a.field_, a.d_, a.n_);
    Exponents e(a.terms_.empty() ? 0 : a.terms_.begin()->first.size());
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t v = 0; v < e.size(); ++v)
                e[v] = ea[v] + eb[v];
            out.add_term(e, F.mul(ca, cb));
        }
    return out;
}

SparsePolynomial operator*(FieldElement c, const SparsePolynomial& a) {
    SparsePolynomial out(a.field_, a.d_, a.n_);
    for (const auto& [e, x] : a.terms_)
        out.add_term(e, a.field_->mul(c, x));
    return out;
}

bool SparsePolynomial::operator==(const SparsePolynomial& o) const {
    return d_ == o.d_ && n_ == o.n_ && *field_ == *o.field_ && terms_ == o.terms_;
}

ProductForm::ProductForm(FieldPtr field, int d, int n) : field_(std::move(field)), d_(d), n_(n) {}

void ProductForm::push_factor(SparsePolynomial f) {
    if (f.blocks() != d_ || f.coords() != n_ || !(f.field() == *field_))
        throw InvalidInput("factor lives in a different ring");
    factors_.push_back(std::move(f));
}

long long ProductForm::degree() const {
    for (const auto& f : factors_)
        if (f.is_zero())
            return 0;
    long long d = 0;
    for (const auto& f : factors_)
        d += f.degree();
    return d;
}

FieldElement ProductForm::evaluate(std::span<const Vector> points) const {
    FieldElement v = field_->one();
    for (const auto& f : factors_) {
        v = field_->mul(v, f.evaluate(points));
        if (v.is_zero())
            break;
    }
    return v;
}

std::uint64_t ProductForm::term_estimate() const {
    std::uint64_t est = 1;
    for (const auto& f : factors_) {
        const std::uint64_t s = f.size();
        if (s == 0)
            return 0;
        if (est > std::numeric_limits<std::uint64_t>::max() / s)
            return std::numeric_limits<std::uint64_t>::max();
        est *= s;
    }
    return est;
}

ProductForm& ProductForm::operator*=(const ProductForm& o) {
    for (const auto& f : o.factors_)
        push_factor(f);
    return *this;
}

ProductForm build_f(const FieldPtr& field, int n, int d) {
    if (n < 1 || d < 2)
        throw InvalidInput("build_f requires n >= 1 and d >= 2");
    const Field& F = *field;
    ProductForm pf(field, d, n);
    for (int l = 0; l < n; ++l) {
        SparsePolynomial sum(field, d, n);
        for (int i = 0; i < d; ++i)
            sum += SparsePolynomial::variable(field, d, n, {i, l});
        auto power = SparsePolynomial::constant(field, d, n, F.one());
        for (std::uint32_t e = 0; e + 1 < F.q(); ++e)
            power = power * sum;
        pf.push_factor(SparsePolynomial::constant(field, d, n, F.one()) - power);
    }
    return pf;
}

ProductForm build_g(const FieldPtr& field, const std::vector<std::vector<FieldElement>>& sets) {
    const Field& F = *field;
    const int d = 3;
    const int n = static_cast<int>(sets.size());
    ProductForm pf(field, d, n);
    for (int l = 0; l < n; ++l) {
        std::vector<bool> in_set(F.q(), false);
        for (auto t : sets[l]) {
            if (t.code >= F.q())
                throw InvalidInput("set element outside the field");
            in_set[t.code] = true;
        }
        if (!in_set[0])
            throw InvalidInput("difference set S_" + std::to_string(l + 1) + " must contain 0");
        // (x_3 - x_1)/2
        const auto diff = F.half(F.one()) *
                          (SparsePolynomial::variable(field, d, n, {2, l}) -
                           SparsePolynomial::variable(field, d, n, {0, l}));
        auto factor = SparsePolynomial::constant(field, d, n, F.one());
        bool nontrivial = false;
        for (auto t : F.elements()) {
            if (in_set[t.code])
                continue;
            factor = factor * (diff - SparsePolynomial::constant(field, d, n, t));
            nontrivial = true;
        }
        if (nontrivial)
            pf.push_factor(std::move(factor));
    }
    return pf;
}

SparsePolynomial reduce_exponents(const SparsePolynomial& p) {
    const std::uint32_t q = p.field().q();
    SparsePolynomial out(p.field_ptr(), p.blocks(), p.coords());
    for (const auto& [e, c] : p.terms()) {
        Exponents r = e;
        for (auto& m : r) {
            if (m >= q) {
                const std::uint32_t rem = m % (q - 1);
                m = rem == 0 ? q - 1 : rem;
            }
        }
        out.add_term(r, c);
    }
    return out;
}

SparsePolynomial expand(const ProductForm& pf, std::uint64_t budget) {
    const auto est = pf.term_estimate();
    if (est > budget)
        throw GateExceeded("expansion needs up to " + std::to_string(est) + " terms, budget is " +
                           std::to_string(budget));
    auto out = SparsePolynomial::constant(pf.field_ptr(), pf.blocks(), pf.coords(), pf.field().one());
    for (const auto& f : pf.factors())
        out = out * f;
    return out;
}

SliceRankWitness slice_rank_upper_bound(const SparsePolynomial& P) {
    const auto q = P.field().q();
    if (P.max_variable_degree() >= q)
        throw InvalidInput("slice rank split needs per-variable degree <= q-1; reduce exponents first");

    SliceRankWitness w;
    w.d = P.blocks();
    w.n = P.coords();
    w.degree = P.degree();
    w.patterns.resize(w.d);
    for (const auto& [e, c] : P.terms()) {
        int best = 0;
        long long best_deg = P.block_degree(e, 0);
        for (int i = 1; i < w.d; ++i) {
            const auto bd = P.block_degree(e, i);
            if (bd < best_deg) {
                best = i;
                best_deg = bd;
            }
        }
        w.assignment.push_back(best);
        const auto first = e.begin() + static_cast<std::ptrdiff_t>(best) * w.n;
        w.patterns[best].insert(std::vector<std::uint32_t>(first, first + w.n));
    }
    for (const auto& s : w.patterns) {
        w.witness_sizes.push_back(s.size());
        w.total += s.size();
    }
    w.bound = CountValue(w.d) * count_M(w.n, Rational(w.degree, w.d), q - 1);
    return w;
}

bool witness_reconstructs(const SparsePolynomial& P, const SliceRankWitness& w) {
    if (w.assignment.size() != P.size())
        return false;
    const int d = P.blocks();
    const int n = P.coords();
    // (block, pattern) -> rest polynomial in the other blocks.
    std::map<std::pair<int, std::vector<std::uint32_t>>, SparsePolynomial> groups;
    std::size_t idx = 0;
    for (const auto& [e, c] : P.terms()) {
        const int b = w.assignment[idx++];
        const auto first = e.begin() + static_cast<std::ptrdiff_t>(b) * n;
        std::vector<std::uint32_t> pattern(first, first + n);
        if (b < 0 || b >= d || !w.patterns[b].count(pattern))
            return false;
        // The counting bound only covers patterns of degree <= D/d.
        if (static_cast<long long>(P.block_degree(e, b)) * d > P.degree())
            return false;
        Exponents rest = e;
        std::fill(rest.begin() + static_cast<std::ptrdiff_t>(b) * n, rest.begin() + static_cast<std::ptrdiff_t>(b + 1) * n, 0u);
        auto key = std::make_pair(b, std::move(pattern));
        auto it = groups.try_emplace(key, P.field_ptr(), d, n).first;
        it->second.add_term(rest, c);
    }
    std::size_t used = 0;
    SparsePolynomial sum(P.field_ptr(), d, n);
    for (const auto& [key, rest] : groups) {
        const auto& [b, pattern] = key;
        for (const auto& [e, c] : rest.terms())
            if (rest.block_degree(e, b) != 0)
                return false;
        Exponents mono(static_cast<std::size_t>(d) * n, 0);
        std::copy(pattern.begin(), pattern.end(), mono.begin() + static_cast<std::ptrdiff_t>(b) * n);
        SparsePolynomial x(P.field_ptr(), d, n);
        x.add_term(mono, P.field().one());
        sum += x * rest;
        ++used;
    }
    std::size_t listed = 0;
    for (int b = 0; b < d; ++b) {
        if (w.witness_sizes.size() != static_cast<std::size_t>(d) || w.witness_sizes[b] != w.patterns[b].size())
            return false;
        listed += w.patterns[b].size();
    }
    return used == w.total && listed == w.total && sum == P;
}

} // namespace slicerank
