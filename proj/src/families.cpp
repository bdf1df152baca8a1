#include "slicerank/families.hpp"

#include "slicerank/errors.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <thread>

namespace slicerank {

namespace {

constexpr std::uint64_t kPowerMemberGate = 1'000'000;

std::uint64_t tuple_count(std::size_t N, int d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) {
        count *= N;
        if (count > kTupleGate)
            throw GateExceeded("verification needs " + std::to_string(N) + "^" + std::to_string(d) +
                               " tuples, above the exhaustive gate; use sampling mode");
    }
    return count;
}

struct TupleChecker {
    const Family& fam;
    const std::optional<ProductForm>& g;
    std::vector<Vector> point;
    Vector sum;

    TupleChecker(const Family& f, const std::optional<ProductForm>& gg)
        : fam(f), g(gg), point(f.d), sum(f.n) {}

    FailedClause check(std::span<const std::size_t> idx) {
        const Field& F = *fam.field;
        bool diagonal = true;
        for (std::size_t a = 1; a < idx.size(); ++a)
            diagonal = diagonal && idx[a] == idx[0];

        std::fill(sum.begin(), sum.end(), F.zero());
        for (int i = 0; i < fam.d; ++i) {
            const auto& v = fam.members[i][idx[i]];
            for (int l = 0; l < fam.n; ++l)
                sum[l] = F.add(sum[l], v[l]);
        }
        const bool zero_sum = is_zero(sum);
        if (!diagonal && !zero_sum)
            return FailedClause::none;
        if (diagonal && !zero_sum)
            return FailedClause::diagonal_sum;

        bool g_nonzero = true;
        if (g) {
            for (int i = 0; i < fam.d; ++i)
                point[i] = fam.members[i][idx[i]];
            g_nonzero = !g->evaluate(point).is_zero();
        }
        if (diagonal)
            return g_nonzero ? FailedClause::none : FailedClause::diagonal_g;
        return g_nonzero ? FailedClause::off_diagonal : FailedClause::none;
    }
};

// Index tuples for linear positions in [begin, end), row-major.
struct Violation {
    std::uint64_t linear = 0;
    FailedClause clause = FailedClause::none;
};

std::optional<Violation> scan(const Family& fam, const std::optional<ProductForm>& g, std::uint64_t begin,
                              std::uint64_t end) {
    TupleChecker checker(fam, g);
    const std::size_t N = fam.size();
    std::vector<std::size_t> idx(fam.d);
    for (std::uint64_t lin = begin; lin < end; ++lin) {
        std::uint64_t r = lin;
        for (int a = fam.d - 1; a >= 0; --a) {
            idx[a] = r % N;
            r /= N;
        }
        if (auto c = checker.check(idx); c != FailedClause::none)
            return Violation{lin, c};
    }
    return std::nullopt;
}

void check_g(const Family& fam, const std::optional<ProductForm>& g) {
    if (g && (g->blocks() != fam.d || g->coords() != fam.n || !(g->field() == *fam.field)))
        throw InvalidInput("g does not match the family dimensions");
}

} // namespace

std::vector<Vector> Family::tuple(std::span<const std::size_t> index) const {
    std::vector<Vector> t(d);
    for (int i = 0; i < d; ++i)
        t[i] = members[i][index[i]];
    return t;
}

void Family::validate() const {
    if (!field)
        throw InvalidInput("family has no field");
    if (d < 1 || members.size() != static_cast<std::size_t>(d))
        throw InvalidInput("family must have d member lists");
    const std::size_t N = members[0].size();
    if (n < 1)
        throw InvalidInput("family dimension must be at least 1");
    for (const auto& block : members) {
        if (block.size() != N)
            throw InvalidInput("family blocks have different lengths");
        for (const auto& v : block) {
            if (v.size() != static_cast<std::size_t>(n))
                throw InvalidInput("family vector has wrong length");
            for (auto x : v)
                if (x.code >= field->q())
                    throw InvalidInput("family vector entry outside the field");
        }
    }
}

Family from_progression_free(const FieldPtr& field, const std::vector<Vector>& points, int dim) {
    if (points.empty() && dim < 1)
        throw InvalidInput("an empty point set needs an explicit dimension");
    const std::size_t n = points.empty() ? static_cast<std::size_t>(dim) : points[0].size();
    if (dim >= 1 && n != static_cast<std::size_t>(dim))
        throw InvalidInput("points do not have the stated dimension");
    std::set<Vector> seen;
    for (const auto& v : points) {
        if (v.size() != n)
            throw InvalidInput("points have different dimensions");
        if (!seen.insert(v).second)
            throw InvalidInput("duplicate point " + field->to_string(v));
    }
    const Field& F = *field;
    const auto minus_two = F.neg(F.from_int(2));
    Family fam{field, static_cast<int>(n), 3, {points, {}, points}};
    for (const auto& v : points)
        fam.members[1].push_back(scale(F, minus_two, v));
    fam.validate();
    return fam;
}

std::string to_string(VerifyStatus s) {
    switch (s) {
    case VerifyStatus::verified:
        return "verified";
    case VerifyStatus::violated:
        return "violated";
    case VerifyStatus::no_violation_in_samples:
        return "no-violation-in-samples";
    }
    return "?";
}

std::string to_string(FailedClause c) {
    switch (c) {
    case FailedClause::none:
        return "none";
    case FailedClause::diagonal_sum:
        return "diagonal-sum-nonzero";
    case FailedClause::diagonal_g:
        return "diagonal-g-zero";
    case FailedClause::off_diagonal:
        return "off-diagonal-solution";
    }
    return "?";
}

VerifyReport verify_condition(const Family& fam, const std::optional<ProductForm>& g, unsigned workers) {
    fam.validate();
    check_g(fam, g);
    const std::uint64_t total = tuple_count(fam.size(), fam.d);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(total, 256))));

    // Contiguous chunks in lexicographic order: the first chunk that reports a
    // violation holds the least one.
    std::vector<std::optional<Violation>> found(workers);
    if (workers == 1) {
        found[0] = scan(fam, g, 0, total);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t step = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t b = std::min(total, w * step);
            const std::uint64_t e = std::min(total, b + step);
            pool.emplace_back([&, w, b, e] { found[w] = scan(fam, g, b, e); });
        }
        for (auto& t : pool)
            t.join();
    }

    VerifyReport rep;
    rep.tuples_checked = total;
    for (const auto& v : found) {
        if (!v)
            continue;
        rep.status = VerifyStatus::violated;
        rep.clause = v->clause;
        rep.witness.resize(fam.d);
        std::uint64_t r = v->linear;
        for (int a = fam.d - 1; a >= 0; --a) {
            rep.witness[a] = r % fam.size();
            r /= fam.size();
        }
        break;
    }
    return rep;
}

VerifyReport verify_condition_sampled(const Family& fam, const std::optional<ProductForm>& g, std::uint64_t samples,
                                      std::uint64_t seed) {
    fam.validate();
    check_g(fam, g);
    TupleChecker checker(fam, g);
    VerifyReport rep;
    rep.status = VerifyStatus::no_violation_in_samples;
    std::vector<std::size_t> idx(fam.d);
    auto record = [&](FailedClause c) {
        rep.status = VerifyStatus::violated;
        rep.clause = c;
        rep.witness = idx;
    };
    for (std::size_t j = 0; j < fam.size(); ++j) {
        std::fill(idx.begin(), idx.end(), j);
        ++rep.tuples_checked;
        if (auto c = checker.check(idx); c != FailedClause::none) {
            record(c);
            return rep;
        }
    }
    if (fam.size() < 2)
        return rep;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, fam.size() - 1);
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (auto& j : idx)
            j = pick(rng);
        if (std::all_of(idx.begin(), idx.end(), [&](std::size_t j) { return j == idx[0]; }))
            continue;
        ++rep.tuples_checked;
        if (auto c = checker.check(idx); c != FailedClause::none) {
            record(c);
            return rep;
        }
    }
    return rep;
}

PoweredFamily tensor_power(const Family& fam, const ProductForm& g, int k) {
    fam.validate();
    if (k < 1)
        throw InvalidInput("power k must be positive");
    if (g.blocks() != fam.d || g.coords() != fam.n)
        throw InvalidInput("g does not match the family dimensions");
    const std::size_t N = fam.size();
    std::uint64_t members = 1;
    for (int h = 0; h < k; ++h) {
        members *= N;
        if (members > kPowerMemberGate)
            throw GateExceeded("tensor power has more than " + std::to_string(kPowerMemberGate) + " members");
    }

    const int nk = fam.n * k;
    Family out{fam.field, nk, fam.d, std::vector<std::vector<Vector>>(fam.d)};
    std::vector<std::size_t> js(k, 0);
    for (std::uint64_t m = 0; m < members; ++m) {
        std::uint64_t r = m;
        for (int h = k - 1; h >= 0; --h) {
            js[h] = r % N;
            r /= N;
        }
        for (int i = 0; i < fam.d; ++i) {
            Vector v;
            v.reserve(nk);
            for (int h = 0; h < k; ++h)
                v.insert(v.end(), fam.members[i][js[h]].begin(), fam.members[i][js[h]].end());
            out.members[i].push_back(std::move(v));
        }
    }

    ProductForm gbar(fam.field, fam.d, nk);
    for (int h = 0; h < k; ++h)
        for (const auto& f : g.factors())
            gbar.push_factor(f.shifted(nk, h * fam.n));
    return {std::move(out), std::move(gbar)};
}

} // namespace slicerank
