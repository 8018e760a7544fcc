#include "rigid/rigid.h"

#include "rigid/error.hpp"
#include "rigid/json_io.hpp"

#include <cstring>
#include <new>
#include <string>

struct rigid_config {
  rigid::Tolerances tol;
  rigid::SearchOptions search;
  int k_max = rigid::kDefaultKMax;
};

struct rigid_subspace {
  rigid::MatrixSubspace space;
};

struct rigid_family {
  rigid::ConstraintFamily family;
};

struct rigid_augmented {
  rigid::AugmentedSubspace space;
};

namespace {

using rigid::json_io::json;
namespace jio = rigid::json_io;

thread_local std::string last_error;

template <class F>
rigid_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return RIGID_OK;
  } catch (const rigid::InvalidArgument& e) {
    last_error = e.what();
    return RIGID_ERR_INVALID_ARGUMENT;
  } catch (const rigid::InconsistencyError& e) {
    last_error = e.what();
    return RIGID_ERR_INCONSISTENCY;
  } catch (const json::exception& e) {
    last_error = std::string("JSON error: ") + e.what();
    return RIGID_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RIGID_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RIGID_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return RIGID_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) { rigid::require(p != nullptr, std::string(what) + " is null"); }

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const rigid_config& effective(const rigid_config* cfg) {
  static const rigid_config defaults{};
  return cfg ? *cfg : defaults;
}

json config_json(const rigid_config& cfg) {
  return {{"k_max", cfg.k_max},
          {"seed", cfg.search.seed},
          {"restarts", cfg.search.restarts},
          {"tolerances", jio::tolerances_to_json(cfg.tol)}};
}

json subspace_summary(const rigid::MatrixSubspace& V) { return {{"n", V.n()}, {"m", V.m()}, {"dim", V.dim()}}; }

void emit(char** out, const char* command, const rigid_config& cfg, json input, json result) {
  need(out, "output pointer");
  const json report = {{"command", command}, {"config", config_json(cfg)}, {"input", std::move(input)},
                       {"result", std::move(result)}};
  *out = dup_string(report.dump(2) + "\n");
}

double* tolerance_slot(rigid::Tolerances& t, const std::string& name) {
  if (name == "rank_rel") return &t.rank_rel;
  if (name == "gs_drop") return &t.gs_drop;
  if (name == "subspace_angle") return &t.subspace_angle;
  if (name == "membership") return &t.membership;
  if (name == "certificate") return &t.certificate;
  if (name == "rank_one_ratio") return &t.rank_one_ratio;
  if (name == "unit_norm") return &t.unit_norm;
  if (name == "fd_step") return &t.fd_step;
  if (name == "tangent_fd_step") return &t.tangent_fd_step;
  if (name == "constraint_residual") return &t.constraint_residual;
  throw rigid::InvalidArgument("unknown tolerance '" + name + "'");
}

}  // namespace

extern "C" {

const char* rigid_version(void) { return "1.0.0"; }

const char* rigid_last_error(void) { return last_error.c_str(); }

void rigid_string_free(char* s) { delete[] s; }

rigid_status rigid_config_create(rigid_config** out) {
  return guarded([&] {
    need(out, "output pointer");
    *out = new rigid_config();
  });
}

void rigid_config_destroy(rigid_config* cfg) { delete cfg; }

rigid_status rigid_config_set_kmax(rigid_config* cfg, int k_max) {
  return guarded([&] {
    need(cfg, "config");
    rigid::require(k_max >= 1, "k_max must be at least 1");
    cfg->k_max = k_max;
  });
}

rigid_status rigid_config_set_seed(rigid_config* cfg, uint64_t seed) {
  return guarded([&] {
    need(cfg, "config");
    cfg->search.seed = seed;
  });
}

rigid_status rigid_config_set_restarts(rigid_config* cfg, int restarts) {
  return guarded([&] {
    need(cfg, "config");
    rigid::require(restarts >= 1, "restarts must be at least 1");
    cfg->search.restarts = restarts;
  });
}

rigid_status rigid_config_set_tolerance(rigid_config* cfg, const char* name, double value) {
  return guarded([&] {
    need(cfg, "config");
    need(name, "tolerance name");
    rigid::require(value > 0.0, "tolerances must be positive");
    *tolerance_slot(cfg->tol, name) = value;
  });
}

rigid_status rigid_config_get_tolerance(const rigid_config* cfg, const char* name, double* value) {
  return guarded([&] {
    need(cfg, "config");
    need(name, "tolerance name");
    need(value, "output pointer");
    rigid::Tolerances copy = cfg->tol;
    *value = *tolerance_slot(copy, name);
  });
}

rigid_status rigid_config_to_json(const rigid_config* cfg, char** out) {
  return guarded([&] {
    need(cfg, "config");
    need(out, "output pointer");
    *out = dup_string(config_json(*cfg).dump(2) + "\n");
  });
}

rigid_status rigid_subspace_from_json(const char* text, const rigid_config* cfg, rigid_subspace** out) {
  return guarded([&] {
    need(text, "input text");
    need(out, "output pointer");
    auto space = jio::subspace_from_json(jio::parse(text), effective(cfg).tol);
    *out = new rigid_subspace{std::move(space)};
  });
}

rigid_status rigid_subspace_to_json(const rigid_subspace* V, char** out) {
  return guarded([&] {
    need(V, "subspace");
    need(out, "output pointer");
    *out = dup_string(jio::subspace_to_json(V->space).dump(2) + "\n");
  });
}

rigid_status rigid_subspace_shape(const rigid_subspace* V, int* n, int* m, int* dim) {
  return guarded([&] {
    need(V, "subspace");
    if (n) *n = V->space.n();
    if (m) *m = V->space.m();
    if (dim) *dim = V->space.dim();
  });
}

void rigid_subspace_destroy(rigid_subspace* V) { delete V; }

rigid_status rigid_family_builtin(const char* name, int n, rigid_family** out) {
  return guarded([&] {
    need(name, "family name");
    need(out, "output pointer");
    *out = new rigid_family{rigid::builtin_family(name, n)};
  });
}

rigid_status rigid_family_linear(const char* name, const rigid_subspace* V, rigid_family** out) {
  return guarded([&] {
    need(name, "family name");
    need(V, "subspace");
    need(out, "output pointer");
    *out = new rigid_family{rigid::linear_family(name, V->space)};
  });
}

rigid_status rigid_family_tangent(const rigid_family* family, const rigid_config* cfg, rigid_subspace** out) {
  return guarded([&] {
    need(family, "family");
    need(out, "output pointer");
    const auto& f = family->family;
    *out = new rigid_subspace{rigid::tangent_space(f, f.base_point, rigid::Vector(), effective(cfg).tol)};
  });
}

void rigid_family_destroy(rigid_family* family) { delete family; }

rigid_status rigid_augmented_from_json(const char* text, const rigid_config* cfg, rigid_augmented** out) {
  return guarded([&] {
    need(text, "input text");
    need(out, "output pointer");
    *out = new rigid_augmented{jio::augmented_from_json(jio::parse(text), effective(cfg).tol)};
  });
}

void rigid_augmented_destroy(rigid_augmented* V) { delete V; }

rigid_status rigid_chain_report(const rigid_subspace* V, const rigid_config* cfg, int include_bases, char** out) {
  return guarded([&] {
    need(V, "subspace");
    const auto& c = effective(cfg);
    const auto report = rigid::chain(V->space, c.k_max, c.tol);
    emit(out, "chain", c, subspace_summary(V->space), jio::chain_to_json(report, include_bases != 0));
  });
}

rigid_status rigid_detect_report(const rigid_subspace* V, const rigid_config* cfg, char** out) {
  return guarded([&] {
    need(V, "subspace");
    const auto& c = effective(cfg);
    const auto r1 = rigid::find_rank_one(V->space, c.search, c.tol);
    const auto cp = rigid::find_complex_pair(V->space, c.search, c.tol);
    json result;
    result["rank_one"] = r1 ? jio::rank_one_to_json(*r1) : json(nullptr);
    result["rank_one_certified"] = r1 && rigid::verify_rank_one(V->space, *r1, c.tol);
    result["complex_pair"] = cp ? jio::complex_pair_to_json(*cp) : json(nullptr);
    result["complex_pair_certified"] = cp && rigid::verify_complex_pair(V->space, *cp, c.tol);
    const bool a = result["rank_one_certified"].get<bool>(), b = result["complex_pair_certified"].get<bool>();
    result["verdict"] = a && b ? "rank_one_and_complex_pair" : a ? "rank_one" : b ? "complex_pair" : "inconclusive";
    emit(out, "detect", c, subspace_summary(V->space), std::move(result));
  });
}

rigid_status rigid_classify_report(const rigid_subspace* V, const rigid_config* cfg, char** out) {
  return guarded([&] {
    need(V, "subspace");
    const auto& c = effective(cfg);
    const auto cls = rigid::classify_delta(V->space, c.k_max, c.search, c.tol);
    emit(out, "classify", c, subspace_summary(V->space), jio::classification_to_json(cls));
  });
}

rigid_status rigid_polysolve_report(const rigid_subspace* V, const rigid_config* cfg, char** out) {
  return guarded([&] {
    need(V, "subspace");
    const auto& c = effective(cfg);
    const auto report = rigid::chain(V->space, c.k_max, c.tol);
    json result = {{"chain", jio::chain_to_json(report, false)}};
    if (report.delta.is_finite()) {
      const auto basis = rigid::solution_basis(V->space, report);
      result["basis"] = jio::poly_basis_to_json(basis);
      result["reduced_basis"] = jio::poly_basis_to_json(rigid::reduced_basis(basis, c.tol));
    } else {
      result["basis"] = nullptr;
      result["reduced_basis"] = nullptr;
      result["reason"] = "chain did not terminate within k_max";
    }
    emit(out, "polysolve", c, subspace_summary(V->space), std::move(result));
  });
}

rigid_status rigid_verify_report(const rigid_subspace* V, const char* poly_json, int samples, double radius,
                                 double tol, const rigid_config* cfg, char** out) {
  return guarded([&] {
    need(V, "subspace");
    need(poly_json, "polynomial text");
    const auto& c = effective(cfg);
    const auto F = jio::polymap_from_json(jio::parse(poly_json));
    rigid::require(F.n() == V->space.n() && F.m() == V->space.m(), "polynomial and subspace shapes differ");
    const auto r = rigid::verify_membership(F, V->space, samples, radius, tol, c.search.seed);
    json input = subspace_summary(V->space);
    input["poly_max_degree"] = F.max_degree();
    emit(out, "verify", c, std::move(input), jio::verification_to_json(r));
  });
}

rigid_status rigid_manifold_report(const rigid_family* family, int samples, const rigid_config* cfg, char** out) {
  return guarded([&] {
    need(family, "family");
    const auto& c = effective(cfg);
    const auto& f = family->family;
    const auto r = rigid::sample_analysis(f, samples, c.k_max, c.search, c.tol);
    emit(out, "manifold", c, {{"family", f.name}, {"n", f.n}, {"m", f.m}, {"codim", f.codim}},
         jio::manifold_to_json(r));
  });
}

rigid_status rigid_jet_report(const rigid_augmented* V, const char* matrix_json, int degree, const rigid_config* cfg,
                              char** out) {
  return guarded([&] {
    need(V, "augmented subspace");
    need(matrix_json, "matrix text");
    const auto& c = effective(cfg);
    json mj = jio::parse(matrix_json);
    if (mj.is_object() && mj.contains("matrix")) mj = mj.at("matrix");
    const auto A = jio::matrix_from_json(mj);
    rigid::require(A.rows() == V->space.m() && A.cols() == V->space.n(), "matrix shape must be m x n");
    const auto r = rigid::augmented_jet_space(V->space, A, degree, c.tol);
    emit(out, "jet", c, {{"n", V->space.n()}, {"m", V->space.m()}, {"dim", V->space.dim()}, {"matrix", jio::matrix_to_json(A)}},
         jio::jet_to_json(r));
  });
}

rigid_status rigid_chain_alpha(const rigid_subspace* V, const rigid_config* cfg, int* alpha, size_t capacity,
                               size_t* length, rigid_delta_kind* delta_kind, int* delta_value) {
  return guarded([&] {
    need(V, "subspace");
    rigid::require(alpha != nullptr || capacity == 0, "alpha buffer is null");
    const auto& c = effective(cfg);
    const auto report = rigid::chain(V->space, c.k_max, c.tol);
    for (size_t i = 0; i < report.alpha.size() && i < capacity; ++i) alpha[i] = report.alpha[i];
    if (length) *length = report.alpha.size();
    if (delta_kind) {
      switch (report.delta.kind) {
        case rigid::DeltaStatus::Kind::Finite: *delta_kind = RIGID_DELTA_FINITE; break;
        case rigid::DeltaStatus::Kind::LowerBound: *delta_kind = RIGID_DELTA_LOWER_BOUND; break;
        case rigid::DeltaStatus::Kind::InfiniteCertified: *delta_kind = RIGID_DELTA_INFINITE; break;
      }
    }
    if (delta_value) *delta_value = report.delta.value;
  });
}

}  // extern "C"
