#pragma once

// JSON forms of instances, point sets, families, polynomials and reports.
// Field elements use their canonical digit strings; counts are decimal strings.

#include "slicerank/families.hpp"
#include "slicerank/poly.hpp"
#include "slicerank/report.hpp"
#include "slicerank/search.hpp"
#include "slicerank/tensor.hpp"

#include "json.hpp"

namespace slicerank {

using json = nlohmann::json;

FieldPtr field_from_json(const json& j);

/// {p, k, n, sets: [[element strings]]}; a single set is broadcast to all n
/// coordinates.
DifferenceInstance instance_from_json(const json& j);
json instance_to_json(const DifferenceInstance& inst);

/// {p, k, n, points: [vector strings]}.
std::vector<Vector> points_from_json(const json& j, FieldPtr& field, int& n);
json points_to_json(const Field& F, int n, const std::vector<Vector>& points);

/// {q, n, d, members: [[vector string per block]]}.
Family family_from_json(const json& j);
json family_to_json(const Family& fam);

/// {dims: [d, n], q, terms: [{exps: [[i, l, e], ...], coeff: "..."}]}, one-based.
json polynomial_to_json(const SparsePolynomial& P);
SparsePolynomial polynomial_from_json(const json& j);

json gamma_to_json(const GammaResult& g);
json report_to_json(const BoundReport& r);
json search_result_to_json(const SearchResult& r, const DifferenceInstance& inst);
json verify_report_to_json(const VerifyReport& r, const Family& fam);
json certificate_to_json(const TaoCertificate& c);

} // namespace slicerank
