// Command-line front end. Exit codes: 0 success, 2 invalid input,
// 3 gate exceeded, 4 invariant violation.

#include "CLI11.hpp"
#include "slicerank/errors.hpp"
#include "slicerank/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace slicerank;

namespace {

constexpr int kInvalidInput = 2;
constexpr int kGateExceeded = 3;
constexpr int kInvariant = 4;

struct Globals {
    bool json_out = false;
    std::string out_file;
    std::uint64_t seed = 1;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

void emit(const Globals& g, const json& j, const std::string& text = {}) {
    std::ostringstream os;
    if (g.json_out || text.empty() && !j.is_object()) {
        os << j.dump(2) << '\n';
    } else if (!text.empty()) {
        os << text;
    } else {
        for (const auto& [key, value] : j.items())
            os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
    if (g.out_file.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream out(g.out_file);
        if (!out)
            throw InvalidInput("cannot write " + g.out_file);
        out << os.str();
    }
}

double parse_budget(const std::string& s) {
    if (s.empty())
        throw InvalidInput("empty budget");
    double scale = 1.0;
    std::string num = s;
    switch (s.back()) {
    case 's':
        num.pop_back();
        break;
    case 'm':
        scale = 60.0;
        num.pop_back();
        break;
    case 'h':
        scale = 3600.0;
        num.pop_back();
        break;
    default:
        break;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(num, &used);
        if (used != num.size() || v < 0)
            throw InvalidInput("bad budget");
        return v * scale;
    } catch (const std::logic_error&) {
        throw InvalidInput("cannot parse budget '" + s + "'");
    }
}

struct InstanceArgs {
    std::string file;
    long long q = 0;
    int n = 0;
    long long s = 0;

    void add_to(CLI::App* app) {
        app->add_option("--instance", file, "Instance JSON {p, k, n, sets}");
        app->add_option("--q", q, "Field order (with --n and --s for a uniform instance)");
        app->add_option("--n", n, "Dimension");
        app->add_option("--s", s, "Uniform |S|; S is the first |S| elements in canonical order");
    }

    DifferenceInstance get() const {
        if (!file.empty())
            return instance_from_json(read_json(file));
        if (q == 0 || n == 0 || s == 0)
            throw InvalidInput("give --instance FILE or all of --q, --n, --s");
        return uniform_instance(Field::from_order(static_cast<std::uint32_t>(q)), n, static_cast<std::size_t>(s));
    }
};

struct FamilyArgs {
    std::string family_file;
    std::string set_file;

    void add_to(CLI::App* app) {
        app->add_option("--family", family_file, "Family JSON {q, n, d, members}");
        app->add_option("--set", set_file, "Point set JSON {p, k, n, points}; family a, -2a, a");
    }

    Family get() const {
        if (!family_file.empty() == !set_file.empty())
            throw InvalidInput("give exactly one of --family or --set");
        if (!family_file.empty())
            return family_from_json(read_json(family_file));
        FieldPtr field;
        int n = 0;
        const auto pts = points_from_json(read_json(set_file), field, n);
        return from_progression_free(field, pts);
    }
};

std::optional<ProductForm> g_for(const Family& fam, const std::string& instance_file) {
    if (instance_file.empty())
        return std::nullopt;
    const auto inst = instance_from_json(read_json(instance_file));
    if (!(*inst.field == *fam.field) || inst.n != fam.n || fam.d != 3)
        throw InvalidInput("instance does not match the family (needs same field, same n, d = 3)");
    return build_g(inst.field, inst.sets);
}

json field_check(int p, int k, std::uint64_t seed) {
    const auto F = Field::make(p, k);
    const auto el = F->elements();
    const bool exhaustive = F->q() <= 81;
    std::mt19937_64 rng(seed);
    std::vector<FieldElement> as = el, bs = el;
    if (!exhaustive) {
        as.clear();
        bs.clear();
        std::uniform_int_distribution<std::uint32_t> pick(0, F->q() - 1);
        for (int i = 0; i < 200; ++i) {
            as.push_back({pick(rng)});
            bs.push_back({pick(rng)});
        }
    }
    std::uint64_t checks = 0;
    auto require = [&](bool ok, const char* what) {
        ++checks;
        if (!ok)
            throw InvariantViolation(std::string("field axiom failed: ") + what);
    };
    for (auto a : as) {
        require(F->pow(a, F->q()) == a, "x^q = x");
        require(F->add(F->half(a), F->half(a)) == a, "half");
        require(F->add(a, F->neg(a)).is_zero(), "negation");
        if (!a.is_zero())
            require(F->mul(a, F->inv(a)) == F->one(), "inverse");
        for (auto b : bs) {
            require(F->add(a, b) == F->add(b, a), "additive commutativity");
            require(F->mul(a, b) == F->mul(b, a), "multiplicative commutativity");
            for (auto c : exhaustive ? std::vector<FieldElement>{el[el.size() / 2]} : std::vector<FieldElement>{b})
                require(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)), "distributivity");
        }
    }
    json mod = json::array();
    for (int c : F->modulus())
        mod.push_back(c);
    return {{"p", F->p()},
            {"k", F->k()},
            {"q", F->q()},
            {"modulus", mod},
            {"irreducible", is_irreducible(F->modulus(), F->p())},
            {"mode", exhaustive ? "exhaustive" : "sampled"},
            {"checks", checks},
            {"ok", true}};
}

int run(int argc, char** argv) {
    CLI::App app{"Slice-rank bounds for progression-free sets with restricted differences"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json_out, "Machine-readable JSON output");
    app.add_option("--out", g.out_file, "Write output to FILE");
    app.add_option("--seed", g.seed, "Seed for sampling modes");

    // field-check
    int fp = 3, fk = 1;
    auto* field_cmd = app.add_subcommand("field-check", "Build GF(p^k) and check the field axioms");
    field_cmd->add_option("--p", fp)->required();
    field_cmd->add_option("--k", fk);

    // count
    long long cn = 0, ca = 0, cq = 0, cd = 0;
    std::string cD;
    std::string method = "both";
    auto* count_cmd = app.add_subcommand("count", "M(n, D, a), or the sum-free bound d*M(n,(q-1)n/d,q-1)");
    count_cmd->add_option("--n", cn)->required();
    count_cmd->add_option("--D", cD, "Cap, rational allowed (e.g. 4/3)");
    count_cmd->add_option("--a", ca, "Per-coordinate maximum");
    count_cmd->add_option("--q", cq, "Field order for the sum-free bound");
    count_cmd->add_option("--d", cd, "Number of colors for the sum-free bound");
    count_cmd->add_option("--method", method, "dp | ie | both")->check(CLI::IsMember({"dp", "ie", "both"}));

    // gamma
    std::string galpha;
    int gm = 3;
    double gtol = kDefaultGammaTol;
    auto* gamma_cmd = app.add_subcommand("gamma", "Gamma_{alpha,m} and 1 - log_m Gamma");
    gamma_cmd->add_option("--alpha", galpha, "Rational in (0, 1/2)")->required();
    gamma_cmd->add_option("--m", gm)->required();
    gamma_cmd->add_option("--tol", gtol, "Tolerance on the log-objective");

    // bound
    InstanceArgs binst;
    bool bsearch = false;
    std::string bbudget = "60s";
    unsigned bworkers = 1;
    auto* bound_cmd = app.add_subcommand("bound", "Bound report for an instance");
    binst.add_to(bound_cmd);
    bound_cmd->add_flag("--search", bsearch, "Run the exact search for the sandwich check");
    bound_cmd->add_option("--budget", bbudget, "Search time budget (e.g. 60s, 2m)");
    bound_cmd->add_option("--workers", bworkers);

    // table
    std::vector<long long> tq, ts;
    std::vector<int> tn;
    bool tsearch = false;
    std::string tbudget = "10s";
    auto* table_cmd = app.add_subcommand("table", "Reports over ranges of q, |S|, n (CSV, or JSON with --json)");
    table_cmd->add_option("--q", tq)->required()->delimiter(',');
    table_cmd->add_option("--s", ts)->required()->delimiter(',');
    table_cmd->add_option("--n", tn)->required()->delimiter(',');
    table_cmd->add_flag("--search", tsearch);
    table_cmd->add_option("--budget", tbudget);

    // search
    InstanceArgs sinst;
    std::string sbudget = "60s";
    unsigned sworkers = 1;
    std::string sorder = "index";
    auto* search_cmd = app.add_subcommand("search", "Exact largest progression-free set");
    sinst.add_to(search_cmd);
    search_cmd->add_option("--budget", sbudget);
    search_cmd->add_option("--workers", sworkers);
    search_cmd->add_option("--order", sorder, "index | reverse")->check(CLI::IsMember({"index", "reverse"}));

    // verify-family
    FamilyArgs vfam;
    std::string vinst;
    std::uint64_t vsamples = 0;
    unsigned vworkers = 1;
    auto* verify_cmd = app.add_subcommand("verify-family", "Check the diagonal-solution condition");
    vfam.add_to(verify_cmd);
    verify_cmd->add_option("--instance", vinst, "Instance whose sets define g (default g = 1)");
    verify_cmd->add_option("--sample", vsamples, "Sampling mode with this many random tuples");
    verify_cmd->add_option("--workers", vworkers);

    // power
    FamilyArgs pfam;
    std::string pinst;
    int pk = 2;
    bool pverify = false;
    auto* power_cmd = app.add_subcommand("power", "Tensor power of a family and its g");
    pfam.add_to(power_cmd);
    power_cmd->add_option("--instance", pinst, "Instance whose sets define g (default g = 1)");
    power_cmd->add_option("--k", pk)->required();
    power_cmd->add_flag("--verify", pverify, "Verify the powered family");

    // tensor-cert
    FamilyArgs tfam;
    std::string tinst;
    std::uint64_t tterms = 1'000'000;
    auto* cert_cmd = app.add_subcommand("tensor-cert", "Slice-rank sandwich certificate for P = f*g");
    tfam.add_to(cert_cmd);
    cert_cmd->add_option("--instance", tinst, "Instance whose sets define g (default g = 1)");
    cert_cmd->add_option("--max-terms", tterms, "Expansion term budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidInput;
    }

    if (*field_cmd) {
        emit(g, field_check(fp, fk, g.seed));
    } else if (*count_cmd) {
        json j;
        if (cq != 0) {
            if (cd == 0)
                throw InvalidInput("--q needs --d");
            j = {{"n", cn}, {"q", cq}, {"d", cd}, {"sumfree_bound", sumfree_bound(cn, cq, cd).str()}};
        } else {
            if (cD.empty())
                throw InvalidInput("give --D and --a, or --q and --d");
            const auto D = parse_rational(cD);
            j = {{"n", cn}, {"D", to_string(D)}, {"a", ca}};
            std::optional<CountValue> dp, ie;
            if (method != "ie")
                j["count_dp"] = (dp = count_M(cn, D, ca))->str();
            if (method != "dp")
                j["count_inclusion_exclusion"] = (ie = count_M_inclusion_exclusion(cn, D, ca))->str();
            if (dp && ie && *dp != *ie)
                throw InvariantViolation("count_M routes disagree");
            j["M"] = (dp ? *dp : *ie).str();
        }
        emit(g, j);
    } else if (*gamma_cmd) {
        const auto alpha = parse_rational(galpha);
        const auto r = compute_gamma(alpha, gm, gtol);
        auto j = gamma_to_json(r);
        j["epsilon"] = 1.0 - std::log(r.value) / std::log(static_cast<double>(gm));
        emit(g, j);
    } else if (*bound_cmd) {
        ReportOptions opts;
        opts.with_search = bsearch;
        opts.search.time_budget_seconds = parse_budget(bbudget);
        opts.search.workers = bworkers;
        const auto r = report(binst.get(), opts);
        emit(g, report_to_json(r));
        if (r.search && r.search->status == SearchStatus::exact && !r.search->sandwich_holds)
            throw InvariantViolation("search size exceeds a proven bound");
    } else if (*table_cmd) {
        ReportOptions opts;
        opts.with_search = tsearch;
        opts.search.time_budget_seconds = parse_budget(tbudget);
        const auto rows = table({tq, ts, tn}, opts);
        json j = json::array();
        for (const auto& r : rows)
            j.push_back(report_to_json(r));
        emit(g, j, g.json_out ? std::string() : table_csv(rows));
    } else if (*search_cmd) {
        const auto inst = sinst.get();
        SearchOptions opts;
        opts.time_budget_seconds = parse_budget(sbudget);
        opts.workers = sworkers;
        opts.order = sorder == "reverse" ? VertexOrder::degree_then_reverse_index : VertexOrder::degree_then_index;
        const auto r = max_independent_exact(build_hypergraph(inst), opts);
        emit(g, search_result_to_json(r, inst));
    } else if (*verify_cmd) {
        const auto fam = vfam.get();
        const auto gp = g_for(fam, vinst);
        const auto r = vsamples > 0 ? verify_condition_sampled(fam, gp, vsamples, g.seed)
                                    : verify_condition(fam, gp, vworkers);
        emit(g, verify_report_to_json(r, fam));
    } else if (*power_cmd) {
        const auto fam = pfam.get();
        const auto gp = g_for(fam, pinst);
        const auto gbase = gp ? *gp : ProductForm::one(fam.field, fam.d, fam.n);
        const auto powered = tensor_power(fam, gbase, pk);
        json j = {{"k", pk},
                  {"family", family_to_json(powered.family)},
                  {"g_degree", powered.g.degree()},
                  {"base_g_degree", gbase.degree()}};
        if (pverify)
            j["verification"] = verify_report_to_json(verify_condition(powered.family, powered.g), powered.family);
        emit(g, j);
    } else if (*cert_cmd) {
        const auto fam = tfam.get();
        auto pf = build_f(fam.field, fam.n, fam.d);
        if (const auto gp = g_for(fam, tinst))
            pf *= *gp;
        const auto P = reduce_exponents(expand(pf, tterms));
        const auto witness = slice_rank_upper_bound(P);
        const auto T = build_tensor(P, fam);
        const auto diag = is_diagonal(T);
        if (!diag.diagonal || diagonal_nonzeros(T) != T.side()) {
            json j = {{"N", T.side()}, {"d", T.order()}, {"diagonal", false}};
            if (diag.violation) {
                json v = json::array();
                for (auto x : *diag.violation)
                    v.push_back(x + 1);
                j["violation"] = v;
            }
            emit(g, j);
            return kInvalidInput;
        }
        emit(g, certificate_to_json(tao_bound_check(T, witness)));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const GateExceeded& e) {
        std::cerr << "gate exceeded: " << e.what() << '\n';
        return kGateExceeded;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kInvariant;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInvariant;
    }
}
