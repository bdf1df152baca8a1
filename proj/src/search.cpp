#include "slicerank/search.hpp"

#include "slicerank/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_set>

namespace slicerank {

Rational DifferenceInstance::mu() const {
    const long long q = field->q();
    long long total = 0;
    for (const auto& s : sets)
        total += q - static_cast<long long>(s.size());
    return Rational(total, n);
}

Rational DifferenceInstance::alpha() const {
    const long long q = field->q();
    return Rational(1, 3) + mu() / Rational(3 * (q - 1));
}

bool DifferenceInstance::full() const {
    return std::all_of(sets.begin(), sets.end(), [&](const auto& s) { return s.size() == field->q(); });
}

std::optional<std::size_t> DifferenceInstance::uniform_size() const {
    for (const auto& s : sets)
        if (s.size() != sets[0].size())
            return std::nullopt;
    return sets[0].size();
}

bool DifferenceInstance::contains_difference(const Vector& s) const {
    for (int l = 0; l < n; ++l)
        if (!std::binary_search(sets[l].begin(), sets[l].end(), s[l]))
            return false;
    return true;
}

DifferenceInstance make_instance(FieldPtr field, int n, std::vector<std::vector<FieldElement>> sets) {
    if (!field)
        throw InvalidInput("instance has no field");
    if (n < 1)
        throw InvalidInput("dimension n must be at least 1");
    if (sets.size() != static_cast<std::size_t>(n))
        throw InvalidInput("need exactly n = " + std::to_string(n) + " difference sets, got " +
                           std::to_string(sets.size()));
    for (std::size_t l = 0; l < sets.size(); ++l) {
        auto& s = sets[l];
        for (auto x : s)
            if (x.code >= field->q())
                throw InvalidInput("set element outside the field");
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty() || !s[0].is_zero())
            throw InvalidInput("difference set S_" + std::to_string(l + 1) + " must contain 0");
    }
    return {std::move(field), n, std::move(sets)};
}

DifferenceInstance uniform_instance(FieldPtr field, int n, std::size_t size) {
    if (size < 1 || size > field->q())
        throw InvalidInput("uniform set size must lie in [1, q]");
    auto elems = field->elements();
    elems.resize(size);
    return make_instance(std::move(field), n, std::vector<std::vector<FieldElement>>(std::max(n, 0), elems));
}

std::vector<std::size_t> APHypergraph::degrees() const {
    std::vector<std::size_t> deg(vertices, 0);
    for (const auto& e : edges)
        for (auto v : e)
            ++deg[v];
    return deg;
}

APHypergraph build_hypergraph(const DifferenceInstance& inst, std::uint64_t vertex_gate) {
    const Field& F = *inst.field;
    std::uint64_t V = 1;
    for (int l = 0; l < inst.n; ++l) {
        V *= F.q();
        if (V > vertex_gate)
            throw GateExceeded("q^n exceeds the hypergraph gate of " + std::to_string(vertex_gate) + " points");
    }

    // Admissible nonzero differences.
    std::vector<Vector> diffs;
    std::vector<std::size_t> pick(inst.n, 0);
    while (true) {
        Vector s(inst.n);
        for (int l = 0; l < inst.n; ++l)
            s[l] = inst.sets[l][pick[l]];
        if (!is_zero(s))
            diffs.push_back(std::move(s));
        int l = inst.n - 1;
        while (l >= 0 && ++pick[l] == inst.sets[l].size())
            pick[l--] = 0;
        if (l < 0)
            break;
    }

    std::unordered_set<std::uint64_t> keys;
    for (std::uint64_t a = 0; a < V; ++a) {
        const auto pa = point_from_index(F, a, inst.n);
        for (const auto& s : diffs) {
            const auto pb = add(F, pa, s);
            const auto pc = add(F, pb, s);
            std::array<std::uint64_t, 3> t{a, point_index(F, pb), point_index(F, pc)};
            std::sort(t.begin(), t.end());
            keys.insert((t[0] * V + t[1]) * V + t[2]);
        }
    }

    APHypergraph H;
    H.field = inst.field;
    H.n = inst.n;
    H.vertices = static_cast<std::uint32_t>(V);
    H.sets = inst.sets;
    H.edges.reserve(keys.size());
    for (auto key : keys) {
        const auto c = static_cast<std::uint32_t>(key % V);
        key /= V;
        const auto b = static_cast<std::uint32_t>(key % V);
        const auto a = static_cast<std::uint32_t>(key / V);
        if (a == b || b == c)
            throw InvariantViolation("degenerate progression in hypergraph");
        H.edges.push_back({a, b, c});
    }
    std::sort(H.edges.begin(), H.edges.end());
    return H;
}

std::string to_string(SearchStatus s) { return s == SearchStatus::exact ? "exact" : "lower-bound"; }

bool is_independent(const APHypergraph& H, const std::vector<std::uint32_t>& vertices) {
    std::vector<bool> in(H.vertices, false);
    for (auto v : vertices)
        in[v] = true;
    for (const auto& e : H.edges)
        if (in[e[0]] && in[e[1]] && in[e[2]])
            return false;
    return true;
}

namespace {

class Bits {
public:
    explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    std::size_t and_count(const Bits& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
        return c;
    }
    Bits& operator|=(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= o.words_[i];
        return *this;
    }
    /// Lowest set bit, or npos.
    std::size_t first() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i])
                return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
        return npos;
    }
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::vector<std::uint64_t> words_;
};

class Solver {
public:
    Solver(const APHypergraph& H, const SearchOptions& opts) : H_(H), opts_(opts), V_(H.vertices) {
        const auto deg = H.degrees();
        order_.resize(V_);
        std::iota(order_.begin(), order_.end(), 0u);
        const bool reverse = opts.order == VertexOrder::degree_then_reverse_index;
        std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (deg[a] != deg[b])
                return deg[a] > deg[b];
            return reverse ? a > b : a < b;
        });
        pos_.resize(V_);
        for (std::uint32_t i = 0; i < V_; ++i)
            pos_[order_[i]] = i;

        pairs_.resize(V_);
        edges_.reserve(H.edges.size());
        for (const auto& e : H.edges) {
            const std::array<std::uint32_t, 3> p{pos_[e[0]], pos_[e[1]], pos_[e[2]]};
            edges_.push_back(p);
            pairs_[p[0]].push_back({p[1], p[2]});
            pairs_[p[1]].push_back({p[0], p[2]});
            pairs_[p[2]].push_back({p[0], p[1]});
        }
        start_ = std::chrono::steady_clock::now();
        deadline_ = start_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(opts.time_budget_seconds));
        if (H_.n >= 2 && H_.sets.size() == static_cast<std::size_t>(H_.n) && (opts.slice_bounds || opts.symmetry))
            hyperplane_capacities();
        if (opts.slice_bounds)
            build_partitions();
    }

    SearchResult run() {
        greedy();
        if (hyperplane_best_.size() > best_.size()) {
            best_ = hyperplane_best_;
            best_size_ = best_.size();
        }
        const auto forced = symmetry_roots();
        search(forced);
        const bool exact = !timed_out_;
        const unsigned workers = std::max(1u, opts_.workers);
        bool canonical = workers == 1;
        if (canonical && (!forced.empty() || !hyperplane_best_.empty()))
            canonical = exact && canonical_pass();

        SearchResult r;
        std::vector<std::uint32_t> verts;
        for (auto p : best_)
            verts.push_back(order_[p]);
        std::sort(verts.begin(), verts.end());
        if (!is_independent(H_, verts))
            throw InvariantViolation("search produced a set containing a forbidden progression");
        for (auto v : verts)
            r.best_set.push_back(point_from_index(*H_.field, v, H_.n));
        r.size = verts.size();
        r.status = exact ? SearchStatus::exact : SearchStatus::lower_bound;
        r.nodes_explored = nodes_;
        r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        r.order = opts_.order;
        r.workers = workers;
        r.witness_canonical = canonical;
        return r;
    }

private:
    // Cosets of one hyperplane direction; each coset holds at most cap points
    // of an independent set.
    struct Partition {
        std::vector<Bits> blocks;
        std::size_t cap = 0;
    };

    struct Worker {
        explicit Worker(std::size_t V) : chosen(V), used(V) {}
        Bits chosen;
        Bits used;
        std::vector<std::uint32_t> stack;
        std::uint64_t nodes = 0;
    };

    bool full() const {
        return std::all_of(H_.sets.begin(), H_.sets.end(), [&](const auto& s) { return s.size() == H_.field->q(); });
    }

    std::uint32_t position_of(const Vector& v) const {
        return pos_[static_cast<std::uint32_t>(point_index(*H_.field, v))];
    }

    // A coordinate hyperplane x_l = c is the instance with coordinate l
    // dropped; its exact optimum caps every coset.
    void hyperplane_capacities() {
        const int n = H_.n;
        coord_cap_.assign(n, std::nullopt);
        for (int l = 0; l < n; ++l) {
            if (l > 0 && H_.sets[l] == H_.sets[l - 1]) {
                coord_cap_[l] = coord_cap_[l - 1];
                continue;
            }
            auto sets = H_.sets;
            sets.erase(sets.begin() + l);
            SearchOptions sub = opts_;
            sub.workers = 1;
            sub.time_budget_seconds = std::chrono::duration<double>(deadline_ - std::chrono::steady_clock::now()).count();
            if (sub.time_budget_seconds <= 0)
                return;
            const auto r = max_independent_exact(build_hypergraph(make_instance(H_.field, n - 1, sets)), sub);
            nodes_ += r.nodes_explored;
            if (r.status != SearchStatus::exact)
                continue;
            coord_cap_[l] = r.size;
            if (r.size > hyperplane_best_.size()) {
                hyperplane_best_.clear();
                for (const auto& v : r.best_set) {
                    Vector lifted = v;
                    lifted.insert(lifted.begin() + l, H_.field->zero());
                    hyperplane_best_.push_back(position_of(lifted));
                }
            }
        }
    }

    // Translations preserve the hypergraph, so every coset of a direction has
    // the same capacity. With every S_l = F_q all hyperplanes are isomorphic.
    void build_partitions() {
        const int n = H_.n;
        if (coord_cap_.empty())
            return;
        const Field& F = *H_.field;
        std::vector<Vector> points(V_);
        for (std::uint32_t v = 0; v < V_; ++v)
            points[v] = point_from_index(F, v, n);
        auto add_direction = [&](const Vector& u, std::size_t cap) {
            Partition part;
            part.cap = cap;
            part.blocks.assign(F.q(), Bits(V_));
            for (std::uint32_t v = 0; v < V_; ++v) {
                FieldElement dot = F.zero();
                for (int l = 0; l < n; ++l)
                    dot = F.add(dot, F.mul(u[l], points[v][l]));
                part.blocks[dot.code].set(pos_[v]);
            }
            partitions_.push_back(std::move(part));
        };

        // Popcounts per node stay bounded; beyond that keep coordinate cuts.
        const std::uint64_t directions = (static_cast<std::uint64_t>(V_) - 1) / (F.q() - 1);
        const std::uint64_t words = (V_ + 63) / 64;
        if (full() && coord_cap_[0] && directions * F.q() * words <= (1u << 15)) {
            for (std::uint32_t i = 1; i < V_; ++i) {
                const auto& u = points[i];
                const auto lead = std::find_if(u.begin(), u.end(), [](FieldElement x) { return !x.is_zero(); });
                if (*lead == F.one())
                    add_direction(u, *coord_cap_[0]);
            }
            return;
        }
        for (int l = 0; l < n; ++l)
            if (coord_cap_[l]) {
                Vector u(n, F.zero());
                u[l] = F.one();
                add_direction(u, *coord_cap_[l]);
            }
    }

    // Vertices some maximum set may be assumed to contain. Translations fix
    // the origin. With S full the affine group acts, and a set larger than
    // a hyperplane's optimum spans, so it maps onto one holding 0, e_1..e_n;
    // the hyperplane witness seeded into the incumbent covers the rest.
    std::vector<std::uint32_t> symmetry_roots() const {
        if (!opts_.symmetry || H_.sets.size() != static_cast<std::size_t>(H_.n))
            return {};
        const Field& F = *H_.field;
        const Vector origin(H_.n, F.zero());
        std::vector<std::uint32_t> roots{position_of(origin)};
        const bool hyperplane_known = H_.n == 1 || (!coord_cap_.empty() && coord_cap_[0]);
        if (full() && hyperplane_known) {
            for (int l = 0; l < H_.n; ++l) {
                Vector e = origin;
                e[l] = F.one();
                roots.push_back(position_of(e));
            }
        }
        return roots;
    }

    void greedy() {
        Bits chosen(V_);
        std::vector<std::uint32_t> set;
        for (std::uint32_t v = 0; v < V_; ++v) {
            bool ok = true;
            for (auto [x, y] : pairs_[v])
                if (chosen.test(x) && chosen.test(y)) {
                    ok = false;
                    break;
                }
            if (ok) {
                chosen.set(v);
                set.push_back(v);
            }
        }
        best_ = set;
        best_size_ = set.size();
    }

    // Adds v to the partial set and drops candidates it would complete.
    void choose(Worker& w, Bits& cand, std::uint32_t v) const {
        cand.reset(v);
        for (auto [x, y] : pairs_[v]) {
            if (w.chosen.test(x))
                cand.reset(y);
            if (w.chosen.test(y))
                cand.reset(x);
        }
        w.chosen.set(v);
        w.stack.push_back(v);
    }

    void search(const std::vector<std::uint32_t>& forced) {
        Worker root(V_);
        Bits cand(V_);
        for (std::uint32_t i = 0; i < V_; ++i)
            cand.set(i);
        for (auto v : forced)
            choose(root, cand, v);
        if (root.stack.size() != forced.size() || !std::all_of(forced.begin(), forced.end(), [&](auto v) { return root.chosen.test(v); }))
            throw InvariantViolation("symmetry roots are not independent");

        const unsigned workers = std::max(1u, opts_.workers);
        if (workers == 1) {
            expand(root, root.stack.size(), cand);
            nodes_ += root.nodes;
            return;
        }
        // Subproblem i: the first vertex chosen past the roots is position i.
        std::vector<std::uint32_t> firsts;
        for (std::uint32_t i = 0; i < V_; ++i)
            if (cand.test(i))
                firsts.push_back(i);
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                Worker w = root;
                w.nodes = 0;
                for (std::size_t k = next++; k < firsts.size() && !stop_; k = next++) {
                    const auto i = firsts[k];
                    Bits sub(V_);
                    for (std::size_t j = k; j < firsts.size(); ++j)
                        sub.set(firsts[j]);
                    if (forced.size() + (firsts.size() - k) <= best_size_.load())
                        continue;
                    choose(w, sub, i);
                    expand(w, w.stack.size(), sub);
                    w.stack.pop_back();
                    w.chosen.reset(i);
                }
                std::lock_guard lock(mutex_);
                nodes_ += w.nodes;
            });
        for (auto& t : pool)
            t.join();
    }

    // With the optimum known, the first set of that size in plain search
    // order is the lexicographically least one.
    bool canonical_pass() {
        const auto fallback = best_;
        const std::size_t opt = best_.size();
        best_.clear();
        best_size_ = opt - 1;
        target_ = opt;
        stop_ = false;
        Worker w(V_);
        Bits cand(V_);
        for (std::uint32_t i = 0; i < V_; ++i)
            cand.set(i);
        expand(w, 0, cand);
        nodes_ += w.nodes;
        if (best_.size() == opt)
            return true;
        best_ = fallback;
        best_size_ = opt;
        return false;
    }

    std::size_t slice_bound(const Bits& chosen, const Bits& cand, std::size_t limit) const {
        if (partitions_.empty())
            return limit;
        Bits live = cand;
        live |= chosen;
        std::size_t best = limit;
        for (const auto& part : partitions_) {
            std::size_t total = 0;
            for (const auto& block : part.blocks) {
                total += std::min(block.and_count(live), part.cap);
                if (total >= best)
                    break;
            }
            best = std::min(best, total);
        }
        return best;
    }

    // Candidates minus one per disjoint pair completing an edge with a chosen
    // vertex, minus one per disjoint edge lying inside the candidates.
    std::size_t bound(Worker& w, const Bits& cand, std::size_t cand_count) const {
        std::size_t saved = 0;
        std::vector<std::uint32_t> marked;
        for (auto c : w.stack)
            for (auto [x, y] : pairs_[c])
                if (cand.test(x) && cand.test(y) && !w.used.test(x) && !w.used.test(y)) {
                    w.used.set(x);
                    w.used.set(y);
                    marked.push_back(x);
                    marked.push_back(y);
                    ++saved;
                }
        for (const auto& e : edges_)
            if (cand.test(e[0]) && cand.test(e[1]) && cand.test(e[2]) && !w.used.test(e[0]) &&
                !w.used.test(e[1]) && !w.used.test(e[2])) {
                for (auto v : e) {
                    w.used.set(v);
                    marked.push_back(v);
                }
                ++saved;
            }
        for (auto v : marked)
            w.used.reset(v);
        return cand_count - saved;
    }

    void record(const Worker& w) {
        std::lock_guard lock(mutex_);
        if (w.stack.size() > best_size_.load()) {
            best_ = w.stack;
            best_size_ = w.stack.size();
            if (target_ != 0 && best_size_ >= target_)
                stop_ = true;
        }
    }

    void expand(Worker& w, std::size_t size, Bits cand) {
        if ((++w.nodes & 1023) == 0 && std::chrono::steady_clock::now() > deadline_) {
            timed_out_ = true;
            stop_ = true;
        }
        if (stop_)
            return;
        if (size > best_size_.load())
            record(w);
        while (!stop_) {
            const std::size_t count = cand.count();
            if (count == 0 || size + count <= best_size_.load())
                return;
            if (slice_bound(w.chosen, cand, size + count) <= best_size_.load())
                return;
            if (size + bound(w, cand, count) <= best_size_.load())
                return;
            const auto v = static_cast<std::uint32_t>(cand.first());
            cand.reset(v);
            Bits next = cand;
            choose(w, next, v);
            expand(w, size + 1, std::move(next));
            w.stack.pop_back();
            w.chosen.reset(v);
        }
    }

    const APHypergraph& H_;
    SearchOptions opts_;
    std::uint32_t V_;
    std::vector<std::uint32_t> order_;
    std::vector<std::uint32_t> pos_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pairs_;
    std::vector<std::array<std::uint32_t, 3>> edges_;
    std::vector<std::optional<std::size_t>> coord_cap_;
    std::vector<std::uint32_t> hyperplane_best_;
    std::vector<Partition> partitions_;
    std::chrono::steady_clock::time_point start_;
    std::chrono::steady_clock::time_point deadline_;

    std::mutex mutex_;
    std::vector<std::uint32_t> best_;
    std::atomic<std::size_t> best_size_{0};
    std::size_t target_ = 0;
    std::atomic<bool> stop_{false};
    std::atomic<bool> timed_out_{false};
    std::uint64_t nodes_ = 0;
};

} // namespace

SearchResult max_independent_exact(const APHypergraph& H, const SearchOptions& opts) {
    if (H.vertices == 0)
        return {};
    Solver solver(H, opts);
    return solver.run();
}

SetCheck check_set(const std::vector<Vector>& A, const DifferenceInstance& inst) {
    const Field& F = *inst.field;
    std::set<Vector> members;
    for (const auto& v : A) {
        if (v.size() != static_cast<std::size_t>(inst.n))
            throw InvalidInput("point has wrong dimension");
        if (!members.insert(v).second)
            throw InvalidInput("duplicate point " + F.to_string(v));
    }
    for (const auto& x : A)
        for (const auto& z : A) {
            if (x == z)
                continue;
            Vector s(inst.n);
            for (int l = 0; l < inst.n; ++l)
                s[l] = F.half(F.sub(z[l], x[l]));
            if (!inst.contains_difference(s))
                continue;
            auto y = add(F, x, s);
            if (members.count(y))
                return {false, std::array<Vector, 3>{x, std::move(y), z}};
        }
    return {};
}

} // namespace slicerank
