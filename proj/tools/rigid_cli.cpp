// rigid: command-line front end over the C API.
//
// Every subcommand produces one JSON report (or a table projection of it)
// and exits 0 on a completed analysis, 1 on invalid input, 2 on a
// numerical inconsistency or internal failure.

#include "rigid/rigid.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

struct Failure {
  int code;
  std::string message;
};

int exit_code(rigid_status s) {
  switch (s) {
    case RIGID_OK: return 0;
    case RIGID_ERR_INVALID_ARGUMENT: return 1;
    default: return 2;
  }
}

void check(rigid_status s, const std::string& context) {
  if (s != RIGID_OK) throw Failure{exit_code(s), context + ": " + rigid_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{1, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{1, "cannot write '" + path + "'"};
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using ConfigPtr = std::unique_ptr<rigid_config, Deleter<rigid_config, rigid_config_destroy>>;
using SubspacePtr = std::unique_ptr<rigid_subspace, Deleter<rigid_subspace, rigid_subspace_destroy>>;
using FamilyPtr = std::unique_ptr<rigid_family, Deleter<rigid_family, rigid_family_destroy>>;
using AugmentedPtr = std::unique_ptr<rigid_augmented, Deleter<rigid_augmented, rigid_augmented_destroy>>;

std::string take(char* s) {
  std::string out(s);
  rigid_string_free(s);
  return out;
}

struct Options {
  std::string input, poly, augmented, matrix, out, emit_tangent, family;
  std::string format = "json";
  std::vector<std::string> tolerances;
  int k_max = 8;
  std::uint64_t seed = 0;
  int restarts = 64;
  int samples = -1;
  int dim = 0;
  int degree = 6;
  double radius = 1.0;
  double tol = 1e-9;
};

ConfigPtr make_config(const Options& o) {
  rigid_config* raw = nullptr;
  check(rigid_config_create(&raw), "config");
  ConfigPtr cfg(raw);
  check(rigid_config_set_kmax(cfg.get(), o.k_max), "--kmax");
  check(rigid_config_set_seed(cfg.get(), o.seed), "--seed");
  check(rigid_config_set_restarts(cfg.get(), o.restarts), "--restarts");
  for (const auto& t : o.tolerances) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw Failure{1, "--tolerance expects name=value, got '" + t + "'"};
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(t.substr(eq + 1), &used);
      if (used != t.size() - eq - 1) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw Failure{1, "--tolerance value is not a number in '" + t + "'"};
    }
    check(rigid_config_set_tolerance(cfg.get(), t.substr(0, eq).c_str(), value), "--tolerance");
  }
  return cfg;
}

SubspacePtr load_subspace(const std::string& path, const rigid_config* cfg) {
  if (path.empty()) throw Failure{1, "--input is required"};
  const std::string text = read_file(path);
  rigid_subspace* raw = nullptr;
  check(rigid_subspace_from_json(text.c_str(), cfg, &raw), path);
  return SubspacePtr(raw);
}

// Table format: scalar leaves and short scalar arrays, one per line, keyed by path.
void flatten(const json& j, const std::string& path, std::ostringstream& os) {
  auto scalar_array = [](const json& a) {
    for (const auto& e : a)
      if (e.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, os);
  } else if (j.is_array() && !scalar_array(j)) {
    bool nested_scalar = true;
    for (const auto& e : j) nested_scalar = nested_scalar && e.is_array() && scalar_array(e);
    if (nested_scalar && j.size() <= 32) {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
    } else {
      os << path << "  [" << j.size() << " entries]\n";
    }
  } else {
    os << path << "  " << j.dump() << "\n";
  }
}

std::string render(const std::string& report, const std::string& format) {
  if (format == "json") return report;
  std::ostringstream os;
  flatten(json::parse(report), "", os);
  return os.str();
}

std::string run(const std::string& command, const Options& o) {
  const ConfigPtr cfg = make_config(o);
  char* out = nullptr;
  if (command == "chain") {
    auto V = load_subspace(o.input, cfg.get());
    check(rigid_chain_report(V.get(), cfg.get(), 1, &out), command);
  } else if (command == "detect") {
    auto V = load_subspace(o.input, cfg.get());
    check(rigid_detect_report(V.get(), cfg.get(), &out), command);
  } else if (command == "classify") {
    auto V = load_subspace(o.input, cfg.get());
    check(rigid_classify_report(V.get(), cfg.get(), &out), command);
  } else if (command == "polysolve") {
    auto V = load_subspace(o.input, cfg.get());
    check(rigid_polysolve_report(V.get(), cfg.get(), &out), command);
  } else if (command == "verify") {
    auto V = load_subspace(o.input, cfg.get());
    if (o.poly.empty()) throw Failure{1, "--poly is required"};
    const std::string poly = read_file(o.poly);
    check(rigid_verify_report(V.get(), poly.c_str(), o.samples < 0 ? 100 : o.samples, o.radius, o.tol, cfg.get(), &out),
          command);
  } else if (command == "manifold") {
    if (o.family.empty()) throw Failure{1, "--family is required"};
    rigid_family* raw = nullptr;
    if (o.family == "linear") {
      auto V = load_subspace(o.input, cfg.get());
      check(rigid_family_linear("linear", V.get(), &raw), command);
    } else {
      check(rigid_family_builtin(o.family.c_str(), o.dim, &raw), command);
    }
    FamilyPtr family(raw);
    if (!o.emit_tangent.empty()) {
      rigid_subspace* tangent = nullptr;
      check(rigid_family_tangent(family.get(), cfg.get(), &tangent), "--emit-tangent");
      SubspacePtr T(tangent);
      char* text = nullptr;
      check(rigid_subspace_to_json(T.get(), &text), "--emit-tangent");
      write_text(o.emit_tangent, take(text));
    }
    check(rigid_manifold_report(family.get(), o.samples < 0 ? 20 : o.samples, cfg.get(), &out), command);
  } else if (command == "jet") {
    if (o.augmented.empty()) throw Failure{1, "--input-augmented is required"};
    if (o.matrix.empty()) throw Failure{1, "--matrix is required"};
    const std::string aug_text = read_file(o.augmented), matrix_text = read_file(o.matrix);
    rigid_augmented* raw = nullptr;
    check(rigid_augmented_from_json(aug_text.c_str(), cfg.get(), &raw), o.augmented);
    AugmentedPtr V(raw);
    check(rigid_jet_report(V.get(), matrix_text.c_str(), o.degree, cfg.get(), &out), command);
  }
  return render(take(out), o.format);
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "Report path (default: stdout)");
  sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "table"}));
  sub->add_option("--tolerance", o.tolerances, "Tolerance override name=value (repeatable)");
  sub->add_option("--kmax", o.k_max, "Highest prolongation degree")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "Search seed");
  sub->add_option("--restarts", o.restarts, "Restarts per obstruction search")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prolongation invariants and rigidity analysis for Jacobian constraints"};
  app.require_subcommand(1);
  Options o;

  auto* chain = app.add_subcommand("chain", "Prolongation chain of a subspace");
  auto* detect = app.add_subcommand("detect", "Search for rank-one and complex-pair obstructions");
  auto* classify = app.add_subcommand("classify", "Classify the degree bound of a subspace");
  auto* polysolve = app.add_subcommand("polysolve", "Polynomial solution basis");
  auto* verify = app.add_subcommand("verify", "Check a polynomial map against a subspace");
  auto* manifold = app.add_subcommand("manifold", "Sampled analysis of a constraint family");
  auto* jet = app.add_subcommand("jet", "Truncated jet space of an augmented constraint");
  for (auto* sub : {chain, detect, classify, polysolve, verify, manifold, jet}) add_common(sub, o);
  for (auto* sub : {chain, detect, classify, polysolve, verify})
    sub->add_option("--input", o.input, "Subspace file")->required();

  verify->add_option("--poly", o.poly, "Polynomial file")->required();
  verify->add_option("--samples", o.samples, "Sample count")->check(CLI::PositiveNumber);
  verify->add_option("--radius", o.radius, "Sampling radius")->check(CLI::PositiveNumber);
  verify->add_option("--tol", o.tol, "Membership tolerance")->check(CLI::PositiveNumber);

  manifold->add_option("--family", o.family, "conformal, isometry, quaternion, holomorphic or linear")->required();
  manifold->add_option("--dim", o.dim, "Domain dimension n");
  manifold->add_option("--samples", o.samples, "Sample count")->check(CLI::PositiveNumber);
  manifold->add_option("--input", o.input, "Subspace file for --family linear");
  manifold->add_option("--emit-tangent", o.emit_tangent, "Write the tangent space at the base point");

  jet->add_option("--input-augmented", o.augmented, "Augmented subspace file")->required();
  jet->add_option("--matrix", o.matrix, "Matrix file (m x n row-major)")->required();
  jet->add_option("--degree", o.degree, "Jet degree")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const std::string report = run(command, o);
    write_text(o.out, report);
  } catch (const Failure& f) {
    std::cerr << "rigid " << command << ": " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "rigid " << command << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}
