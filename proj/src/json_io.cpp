#include "rigid/json_io.hpp"

#include "rigid/error.hpp"

#include <cmath>

namespace rigid::json_io {

namespace {

int int_field(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  require(v.is_number_integer(), std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

const json& array_field(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  require(v.is_array(), std::string("field '") + key + "' must be an array");
  return v;
}

double number(const json& v) {
  require(v.is_number(), "expected a number");
  const double d = v.get<double>();
  require(std::isfinite(d), "non-finite number");
  return d;
}

}  // namespace

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

json matrix_to_json(const Matrix& A) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < A.cols(); ++j) row.push_back(A(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  require(j.is_array() && !j.empty(), "matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  require(j[0].is_array() && !j[0].empty(), "matrix rows must be non-empty arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix A(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    require(row.is_array() && static_cast<Eigen::Index>(row.size()) == cols, "ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) A(r, c) = number(row[static_cast<std::size_t>(c)]);
  }
  return A;
}

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json subspace_to_json(const MatrixSubspace& V) {
  json gens = json::array();
  for (int i = 0; i < V.dim(); ++i) gens.push_back(matrix_to_json(V.basis_element(i)));
  return {{"n", V.n()}, {"m", V.m()}, {"generators", gens}};
}

MatrixSubspace subspace_from_json(const json& j, const Tolerances& tol) {
  const int n = int_field(j, "n"), m = int_field(j, "m");
  require(n >= 1 && m >= 1, "n and m must be positive");
  std::vector<Matrix> gens;
  for (const auto& g : array_field(j, "generators")) {
    Matrix G = matrix_from_json(g);
    require(G.rows() == m && G.cols() == n, "generator shape must be m x n");
    gens.push_back(std::move(G));
  }
  return make_subspace(n, m, gens, tol);
}

AugmentedSubspace augmented_from_json(const json& j, const Tolerances& tol) {
  const int n = int_field(j, "n"), m = int_field(j, "m");
  require(n >= 1 && m >= 1, "n and m must be positive");
  std::vector<std::pair<Matrix, Vector>> gens;
  for (const auto& g : array_field(j, "generators")) {
    require(g.is_object() && g.contains("matrix") && g.contains("vector"),
            "augmented generators need 'matrix' and 'vector'");
    Matrix L = matrix_from_json(g.at("matrix"));
    require(L.rows() == m && L.cols() == n, "generator matrix shape must be m x n");
    const json& y = g.at("vector");
    require(y.is_array() && static_cast<int>(y.size()) == m, "generator vector must have length m");
    Vector v(m);
    for (int a = 0; a < m; ++a) v[a] = number(y[static_cast<std::size_t>(a)]);
    gens.emplace_back(std::move(L), std::move(v));
  }
  return AugmentedSubspace::make(n, m, gens, tol);
}

json polymap_to_json(const PolyMap& F) {
  json terms = json::array();
  for (const auto& p : F.components()) {
    const auto basis = monomial_basis(F.n(), p.degree());
    for (std::size_t c = 0; c < basis.size(); ++c)
      for (int a = 0; a < F.m(); ++a) {
        const double v = p.coefficients()(a, static_cast<Eigen::Index>(c));
        if (v == 0.0) continue;
        terms.push_back({{"degree", p.degree()}, {"output", a + 1}, {"exponents", basis[c].exponents()}, {"value", v}});
      }
  }
  return {{"n", F.n()}, {"m", F.m()}, {"terms", terms}};
}

PolyMap polymap_from_json(const json& j) {
  const int n = int_field(j, "n"), m = int_field(j, "m");
  require(n >= 1 && m >= 1, "n and m must be positive");
  PolyMap F(n, m, 0);
  for (const auto& t : array_field(j, "terms")) {
    const int degree = int_field(t, "degree"), output = int_field(t, "output");
    require(output >= 1 && output <= m, "term output index must lie in 1..m");
    std::vector<int> exps;
    for (const auto& e : array_field(t, "exponents")) {
      require(e.is_number_integer() && e.get<int>() >= 0, "exponents must be non-negative integers");
      exps.push_back(e.get<int>());
    }
    require(static_cast<int>(exps.size()) == n, "exponent tuple must have length n");
    const MultiIndex beta(std::move(exps));
    require(beta.degree() == degree, "exponents do not sum to the stated degree");
    require(t.contains("value"), "term is missing 'value'");
    F.component_mut(degree).add_coeff(output - 1, beta, number(t.at("value")));
  }
  return F;
}

json tolerances_to_json(const Tolerances& t) {
  return {{"rank_rel", t.rank_rel},
          {"gs_drop", t.gs_drop},
          {"subspace_angle", t.subspace_angle},
          {"membership", t.membership},
          {"certificate", t.certificate},
          {"rank_one_ratio", t.rank_one_ratio},
          {"unit_norm", t.unit_norm},
          {"fd_step", t.fd_step},
          {"tangent_fd_step", t.tangent_fd_step},
          {"constraint_residual", t.constraint_residual}};
}

Tolerances tolerances_from_json(const json& j, Tolerances t) {
  require(j.is_object(), "tolerances must be an object");
  const std::pair<const char*, double*> fields[] = {
      {"rank_rel", &t.rank_rel},           {"gs_drop", &t.gs_drop},
      {"subspace_angle", &t.subspace_angle}, {"membership", &t.membership},
      {"certificate", &t.certificate},     {"rank_one_ratio", &t.rank_one_ratio},
      {"unit_norm", &t.unit_norm},         {"fd_step", &t.fd_step},
      {"tangent_fd_step", &t.tangent_fd_step}, {"constraint_residual", &t.constraint_residual}};
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& [name, slot] : fields)
      if (key == name) {
        const double v = number(value);
        require(v > 0.0, "tolerance '" + key + "' must be positive");
        *slot = v;
        known = true;
      }
    require(known, "unknown tolerance '" + key + "'");
  }
  return t;
}

json delta_to_json(const DeltaStatus& delta, const std::string& certified_by) {
  json j = {{"status", to_string(delta.kind)}};
  j["value"] = delta.kind == DeltaStatus::Kind::InfiniteCertified ? json(nullptr) : json(delta.value);
  if (!certified_by.empty()) j["witness"] = certified_by;
  return j;
}

json chain_to_json(const ChainReport& r, bool include_bases) {
  json j = {{"n", r.n},
            {"m", r.m},
            {"dim_v", r.dim_v},
            {"alpha", r.alpha},
            {"alpha_total", r.alpha_total},
            {"alpha_total_exact", r.alpha_total_exact()},
            {"delta", delta_to_json(r.delta)}};
  if (include_bases) {
    json bases = json::array();
    for (const auto& space : r.spaces) {
      json elems = json::array();
      for (const auto& p : space.elements()) elems.push_back(polymap_to_json(PolyMap(p)));
      bases.push_back({{"degree", space.degree}, {"dim", space.dim()}, {"elements", elems}});
    }
    j["bases"] = bases;
  }
  return j;
}

json rank_one_to_json(const RankOneWitness& w) {
  return {{"psi", vector_to_json(w.psi)}, {"w", vector_to_json(w.w)}, {"residual", w.residual}};
}

json complex_pair_to_json(const ComplexPairWitness& w) {
  const auto& r = w.residuals;
  return {{"A", matrix_to_json(w.A)},
          {"B", matrix_to_json(w.B)},
          {"P", matrix_to_json(w.P)},
          {"Q", matrix_to_json(w.Q)},
          {"residuals",
           {{"rank_a", r.rank_a},
            {"rank_b", r.rank_b},
            {"column_gap", r.column_gap},
            {"row_gap", r.row_gap},
            {"complex_structure", r.complex_structure},
            {"distance_a", r.distance_a},
            {"distance_b", r.distance_b},
            {"reconstruction", r.reconstruction}}}};
}

namespace {

json search_outcome(bool searched, bool found) {
  if (!searched) return "not_run";
  return found ? "certified" : "inconclusive";
}

}  // namespace

json classification_to_json(const Classification& c) {
  json j = {{"delta", delta_to_json(c.delta, c.certified_by)},
            {"alpha", c.chain.alpha},
            {"alpha_total", c.chain.alpha_total},
            {"chain_delta", delta_to_json(c.chain.delta)},
            {"rank_one_search", search_outcome(c.rank_one_searched, c.rank_one.has_value())},
            {"complex_pair_search", search_outcome(c.complex_pair_searched, c.complex_pair.has_value())}};
  j["rank_one"] = c.rank_one ? rank_one_to_json(*c.rank_one) : json(nullptr);
  j["complex_pair"] = c.complex_pair ? complex_pair_to_json(*c.complex_pair) : json(nullptr);
  return j;
}

json poly_basis_to_json(const PolyBasis& basis) {
  json elems = json::array();
  for (const auto& e : basis.elements) elems.push_back(polymap_to_json(e));
  return {{"n", basis.n}, {"m", basis.m}, {"size", basis.size()}, {"degrees", basis.degrees}, {"elements", elems}};
}

json verification_to_json(const VerificationReport& r) {
  return {{"max_residual", r.max_residual}, {"samples", r.samples}, {"radius", r.radius}, {"tol", r.tol},
          {"pass", r.pass}};
}

json manifold_to_json(const ManifoldReport& r) {
  json alphas = json::array(), deltas = json::array(), dims = json::array();
  for (const auto& s : r.samples) {
    alphas.push_back(s.alpha);
    deltas.push_back(delta_to_json(s.delta, s.certified_by));
    dims.push_back(s.tangent_dim);
  }
  json j = {{"family", r.family},
            {"n", r.n},
            {"m", r.m},
            {"samples", r.samples.size()},
            {"tangent_dims", dims},
            {"alpha_per_sample", alphas},
            {"delta_statuses", deltas},
            {"constant", r.constant},
            {"hypothesis_holds", r.hypothesis_holds}};
  j["k"] = r.k ? json(*r.k) : json(nullptr);
  return j;
}

json jet_to_json(const JetSpaceReport& r) {
  json j = {{"degree", r.degree}, {"consistent", r.consistent}, {"residual", r.residual}};
  j["dimension"] = r.consistent ? json(r.dimension) : json("empty");
  j["particular"] = r.particular ? polymap_to_json(*r.particular) : json(nullptr);
  json basis = json::array();
  for (const auto& u : r.basis) basis.push_back(polymap_to_json(u));
  j["basis"] = basis;
  return j;
}

}  // namespace rigid::json_io
