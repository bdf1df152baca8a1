#include "slicerank/io.hpp"

#include "slicerank/errors.hpp"

namespace slicerank {

namespace {

template <typename T>
T get_field(const json& j, const char* key) {
    if (!j.contains(key))
        throw InvalidInput(std::string("missing JSON field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidInput(std::string("JSON field '") + key + "' has the wrong type");
    }
}

Vector vector_from_json(const Field& F, const json& v, int n) {
    if (v.is_string())
        return F.parse_vector(v.get<std::string>(), static_cast<std::size_t>(n));
    if (v.is_array()) {
        Vector out;
        for (const auto& e : v) {
            if (!e.is_string())
                throw InvalidInput("vector entries must be element strings");
            out.push_back(F.parse(e.get<std::string>()));
        }
        if (out.size() != static_cast<std::size_t>(n))
            throw InvalidInput("vector has wrong length");
        return out;
    }
    throw InvalidInput("vector must be a string or an array of element strings");
}

} // namespace

FieldPtr field_from_json(const json& j) {
    if (j.contains("p"))
        return Field::make(get_field<int>(j, "p"), j.contains("k") ? get_field<int>(j, "k") : 1);
    return Field::from_order(get_field<std::uint32_t>(j, "q"));
}

DifferenceInstance instance_from_json(const json& j) {
    auto field = field_from_json(j);
    const int n = get_field<int>(j, "n");
    const auto raw = get_field<std::vector<std::vector<std::string>>>(j, "sets");
    if (raw.size() != 1 && raw.size() != static_cast<std::size_t>(n))
        throw InvalidInput("'sets' must hold one set or n sets");
    std::vector<std::vector<FieldElement>> sets;
    for (int l = 0; l < n; ++l) {
        std::vector<FieldElement> s;
        for (const auto& e : raw.size() == 1 ? raw[0] : raw[l])
            s.push_back(field->parse(e));
        sets.push_back(std::move(s));
    }
    return make_instance(std::move(field), n, std::move(sets));
}

json instance_to_json(const DifferenceInstance& inst) {
    json sets = json::array();
    for (const auto& s : inst.sets) {
        json one = json::array();
        for (auto x : s)
            one.push_back(inst.field->to_string(x));
        sets.push_back(one);
    }
    return {{"p", inst.field->p()}, {"k", inst.field->k()}, {"n", inst.n}, {"sets", sets}};
}

std::vector<Vector> points_from_json(const json& j, FieldPtr& field, int& n) {
    field = field_from_json(j);
    n = get_field<int>(j, "n");
    if (!j.contains("points") || !j["points"].is_array())
        throw InvalidInput("missing 'points' array");
    std::vector<Vector> out;
    for (const auto& v : j["points"])
        out.push_back(vector_from_json(*field, v, n));
    return out;
}

json points_to_json(const Field& F, int n, const std::vector<Vector>& points) {
    json pts = json::array();
    for (const auto& v : points)
        pts.push_back(F.to_string(v));
    return {{"p", F.p()}, {"k", F.k()}, {"n", n}, {"points", pts}};
}

Family family_from_json(const json& j) {
    Family fam;
    fam.field = field_from_json(j);
    fam.n = get_field<int>(j, "n");
    fam.d = get_field<int>(j, "d");
    if (fam.d < 1)
        throw InvalidInput("d must be positive");
    fam.members.assign(fam.d, {});
    if (!j.contains("members") || !j["members"].is_array())
        throw InvalidInput("missing 'members' array");
    for (const auto& m : j["members"]) {
        if (!m.is_array() || m.size() != static_cast<std::size_t>(fam.d))
            throw InvalidInput("each member must list d vectors");
        for (int i = 0; i < fam.d; ++i)
            fam.members[i].push_back(vector_from_json(*fam.field, m[i], fam.n));
    }
    fam.validate();
    return fam;
}

json family_to_json(const Family& fam) {
    json members = json::array();
    for (std::size_t j = 0; j < fam.size(); ++j) {
        json m = json::array();
        for (int i = 0; i < fam.d; ++i)
            m.push_back(fam.field->to_string(fam.members[i][j]));
        members.push_back(m);
    }
    return {{"q", fam.field->q()}, {"p", fam.field->p()}, {"k", fam.field->k()},
            {"n", fam.n},          {"d", fam.d},          {"members", members}};
}

json polynomial_to_json(const SparsePolynomial& P) {
    json terms = json::array();
    for (const auto& m : P.monomials()) {
        json exps = json::array();
        for (const auto& [v, e] : m.exponents)
            exps.push_back({v.block + 1, v.coord + 1, e});
        terms.push_back({{"exps", exps}, {"coeff", P.field().to_string(m.coefficient)}});
    }
    return {{"dims", {P.blocks(), P.coords()}}, {"q", P.field().q()}, {"terms", terms}};
}

SparsePolynomial polynomial_from_json(const json& j) {
    const auto field = field_from_json(j);
    const auto dims = get_field<std::vector<int>>(j, "dims");
    if (dims.size() != 2)
        throw InvalidInput("'dims' must be [d, n]");
    const int d = dims[0];
    const int n = dims[1];
    SparsePolynomial P(field, d, n);
    if (!j.contains("terms") || !j["terms"].is_array())
        throw InvalidInput("missing 'terms' array");
    for (const auto& t : j["terms"]) {
        Exponents e(static_cast<std::size_t>(d) * n, 0);
        for (const auto& x : get_field<std::vector<std::vector<long long>>>(t, "exps")) {
            if (x.size() != 3 || x[0] < 1 || x[0] > d || x[1] < 1 || x[1] > n || x[2] < 0)
                throw InvalidInput("bad exponent triple in polynomial");
            e[static_cast<std::size_t>(x[0] - 1) * n + (x[1] - 1)] += static_cast<std::uint32_t>(x[2]);
        }
        P.add_term(e, field->parse(get_field<std::string>(t, "coeff")));
    }
    return P;
}

json gamma_to_json(const GammaResult& g) {
    return {{"alpha", to_string(g.alpha)},  {"m", g.m},
            {"gamma_star", g.gamma_star},   {"value", g.value},
            {"tolerance", g.tolerance},     {"boundary_anomaly", g.boundary_anomaly}};
}

json report_to_json(const BoundReport& r) {
    json j = {{"q", r.q},
              {"p", r.p},
              {"k", r.k},
              {"n", r.n},
              {"sets", r.sets},
              {"mu", to_string(r.mu)},
              {"alpha", to_string(r.alpha)},
              {"feasible", r.feasible},
              {"bound_main2", r.bound_main2.str()},
              {"main2_applies", r.main2_applies}};
    if (r.uniform_size)
        j["S_size"] = *r.uniform_size;
    if (r.gamma) {
        j["gamma"] = gamma_to_json(*r.gamma);
        j["epsilon"] = *r.epsilon;
        j["bound_theorem1"] = *r.bound_theorem1;
        j["bound_theorem1_log_q"] = *r.bound_theorem1_log_q;
        j["bound_corollary"] = *r.bound_corollary;
    }
    if (r.search)
        j["search"] = {{"size", r.search->size},
                       {"status", to_string(r.search->status)},
                       {"nodes_explored", r.search->nodes_explored},
                       {"wall_time", r.search->wall_time},
                       {"sandwich_holds", r.search->sandwich_holds}};
    if (r.search_skipped)
        j["search_skipped"] = *r.search_skipped;
    return j;
}

json search_result_to_json(const SearchResult& r, const DifferenceInstance& inst) {
    json set = json::array();
    for (const auto& v : r.best_set)
        set.push_back(inst.field->to_string(v));
    return {{"instance", instance_to_json(inst)},
            {"best_set", set},
            {"size", r.size},
            {"status", to_string(r.status)},
            {"nodes_explored", r.nodes_explored},
            {"wall_time", r.wall_time},
            {"vertex_order", r.order == VertexOrder::degree_then_index ? "degree-index" : "degree-reverse-index"},
            {"workers", r.workers},
            {"witness_canonical", r.witness_canonical}};
}

json verify_report_to_json(const VerifyReport& r, const Family& fam) {
    json j = {{"status", to_string(r.status)},
              {"N", fam.size()},
              {"d", fam.d},
              {"tuples_checked", r.tuples_checked}};
    if (r.status == VerifyStatus::violated) {
        json w = json::array();
        json vecs = json::array();
        for (std::size_t i = 0; i < r.witness.size(); ++i) {
            w.push_back(r.witness[i] + 1);
            vecs.push_back(fam.field->to_string(fam.members[i][r.witness[i]]));
        }
        j["witness"] = w;
        j["witness_vectors"] = vecs;
        j["clause"] = to_string(r.clause);
    }
    return j;
}

json certificate_to_json(const TaoCertificate& c) {
    return {{"N", c.N},
            {"d", c.d},
            {"D", c.D},
            {"bound", c.bound.str()},
            {"diagonal", c.diagonal},
            {"witness_sizes", c.witness_sizes},
            {"witness_total", c.witness_total}};
}

} // namespace slicerank
