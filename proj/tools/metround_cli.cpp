// Copyright 2026 The metround Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// metround: batch analysis of finite metric spaces.
//
// Every analysis subcommand reads one distance matrix (JSON or CSV, "-" for
// standard input) and prints a JSON report. `generate` prints a matrix
// document that the analysis subcommands accept unchanged.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "metround/metround.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitAnalysis = 3;
constexpr int kExitUsage = 4;

/// Raised anywhere below main; carries the exit code and the error object.
struct Failure {
  int exit_code;
  Json error;
};

[[noreturn]] void fail_input(const std::string& kind, const std::string& message) {
  throw Failure{kExitInvalidInput, Json{{"error", kind}, {"message", message}}};
}

[[noreturn]] void fail_status(mr_status status) {
  mr_error_info info;
  mr_last_error(&info);
  Json err{{"error", mr_status_name(status)}, {"message", info.message}};
  if (info.index_count) {
    Json idx = Json::array();
    for (size_t k = 0; k < info.index_count; ++k) idx.push_back(info.indices[k]);
    err["indices"] = idx;
  }
  if (std::isfinite(info.value)) err["value"] = info.value;

  int code = kExitAnalysis;
  switch (status) {
    case MR_ERR_NOT_SQUARE:
    case MR_ERR_TOO_FEW_POINTS:
    case MR_ERR_NON_FINITE_ENTRY:
    case MR_ERR_ASYMMETRIC_ENTRY:
    case MR_ERR_NONZERO_DIAGONAL:
    case MR_ERR_NONPOSITIVE_OFF_DIAGONAL:
    case MR_ERR_TRIANGLE_VIOLATION:
    case MR_ERR_DISCONNECTED_TREE:
    case MR_ERR_CYCLE_DETECTED:
      code = kExitInvalidInput;
      break;
    case MR_ERR_INVALID_ARGUMENT:
    case MR_ERR_PARAM_OUT_OF_RANGE:
    case MR_ERR_TARGET_OUT_OF_RANGE:
      code = kExitUsage;
      break;
    default:
      break;
  }
  throw Failure{code, err};
}

void check(mr_status s) {
  if (s != MR_OK) fail_status(s);
}

// ---- JSON output with fixed 17 significant digits ------------------------

void emit(std::ostream& os, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        emit(os, it.value(), depth + 1);
      }
      os << '\n' << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line (matrix rows, index lists).
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        os << '[';
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) os << ", ";
          emit(os, j[k], depth + 1);
        }
        os << ']';
        return;
      }
      os << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) os << ",\n";
        os << pad;
        emit(os, j[k], depth + 1);
      }
      os << '\n' << close_pad << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isnan(v)) {
        os << "\"nan\"";
      } else if (std::isinf(v)) {
        os << (v > 0 ? "\"infinite\"" : "\"-infinite\"");
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
      }
      return;
    }
    default:
      os << j.dump();
  }
}

std::string render(const Json& j) {
  std::ostringstream os;
  emit(os, j, 0);
  os << '\n';
  return os.str();
}

// ---- input documents ------------------------------------------------------

struct InputDocument {
  std::vector<double> matrix;  // row-major
  std::size_t side = 0;
  std::optional<std::vector<std::string>> labels;
  std::string source;
};

std::string read_source(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_input("InputUnreadable", "cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

bool parse_number(const std::string& token, double& out) {
  std::size_t b = token.find_first_not_of(" \t\r");
  std::size_t e = token.find_last_not_of(" \t\r");
  if (b == std::string::npos) return false;
  const std::string t = token.substr(b, e - b + 1);
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\"");
  std::size_t e = s.find_last_not_of(" \t\r\"");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

InputDocument parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) fail_input("NotSquare", "empty CSV input");

  InputDocument doc;
  double probe = 0.0;
  bool header = false;
  for (const auto& c : rows.front()) header = header || !parse_number(c, probe);
  if (header) {
    doc.labels.emplace();
    for (const auto& c : rows.front()) doc.labels->push_back(trim(c));
    rows.erase(rows.begin());
  }
  doc.side = rows.size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != doc.side)
      fail_input("NotSquare", "CSV row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                                  " entries, expected " + std::to_string(doc.side));
    for (const auto& c : rows[r]) {
      double v = 0.0;
      if (!parse_number(c, v)) fail_input("ParseError", "non-numeric CSV entry '" + trim(c) + "'");
      doc.matrix.push_back(v);
    }
  }
  if (doc.labels && doc.labels->size() != doc.side) fail_input("NotSquare", "CSV header does not match row count");
  return doc;
}

InputDocument parse_json_doc(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    fail_input("ParseError", e.what());
  }
  const Json* m = &j;
  InputDocument doc;
  if (j.is_object()) {
    if (!j.contains("matrix")) fail_input("ParseError", "JSON input needs a \"matrix\" field");
    m = &j["matrix"];
    if (j.contains("labels") && !j["labels"].is_null()) {
      doc.labels.emplace();
      for (const auto& l : j["labels"]) doc.labels->push_back(l.is_string() ? l.get<std::string>() : l.dump());
    }
  }
  if (!m->is_array()) fail_input("ParseError", "\"matrix\" must be an array of rows");
  doc.side = m->size();
  for (std::size_t r = 0; r < m->size(); ++r) {
    const auto& row = (*m)[r];
    if (!row.is_array() || row.size() != doc.side)
      fail_input("NotSquare", "matrix row " + std::to_string(r) + " does not have " + std::to_string(doc.side) +
                                  " entries");
    for (const auto& v : row) {
      if (!v.is_number()) fail_input("ParseError", "non-numeric matrix entry in row " + std::to_string(r));
      doc.matrix.push_back(v.get<double>());
    }
  }
  if (doc.labels && doc.labels->size() != doc.side) fail_input("NotSquare", "label count does not match matrix");
  return doc;
}

InputDocument load_document(const std::string& path) {
  const std::string text = read_source(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  InputDocument doc = (first != std::string::npos && (text[first] == '{' || text[first] == '['))
                          ? parse_json_doc(text)
                          : parse_csv(text);
  doc.source = path;
  return doc;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Failure{kExitAnalysis, Json{{"error", "Internal"}, {"message", "digest failed"}}};
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

/// Digest of the matrix values only, in a canonical 17-digit rendering.
std::string matrix_digest(const std::vector<double>& m, std::size_t side) {
  std::string canon = std::to_string(side) + "\n";
  char buf[40];
  for (std::size_t k = 0; k < m.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", m[k]);
    canon += buf;
    canon += (k + 1) % side == 0 ? '\n' : ',';
  }
  return "sha256:" + sha256_hex(canon);
}

// ---- handles ---------------------------------------------------------------

struct SpaceDeleter {
  void operator()(mr_space* s) const { mr_space_destroy(s); }
};
using SpacePtr = std::unique_ptr<mr_space, SpaceDeleter>;

struct ConfigDeleter {
  void operator()(mr_config* c) const { mr_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<mr_config, ConfigDeleter>;

/// Optional relative tolerance override from METROUND_DEFAULT_TOL.
std::optional<double> env_tolerance() {
  const char* v = std::getenv("METROUND_DEFAULT_TOL");
  if (!v || !*v) return std::nullopt;
  double t = 0.0;
  if (!parse_number(v, t) || !(t >= 0.0))
    throw Failure{kExitUsage, Json{{"error", "InvalidArgument"}, {"message", "METROUND_DEFAULT_TOL must be >= 0"}}};
  return t;
}

double max_abs(const std::vector<double>& m) {
  double out = 0.0;
  for (double v : m) out = std::max(out, std::abs(v));
  return out;
}

struct Loaded {
  InputDocument doc;
  SpacePtr space;
};

Loaded load_space(const std::string& path) {
  Loaded l{load_document(path), nullptr};
  if (l.doc.side == 0) fail_input("TooFewPoints", "empty matrix");
  std::vector<const char*> names;
  if (l.doc.labels)
    for (const auto& s : *l.doc.labels) names.push_back(s.c_str());
  double tol = -1.0;
  if (auto rel = env_tolerance()) tol = *rel * max_abs(l.doc.matrix);
  mr_space* s = nullptr;
  check(mr_space_create(l.doc.matrix.data(), l.doc.side, l.doc.labels ? names.data() : nullptr, tol, &s));
  l.space.reset(s);
  return l;
}

Json index_list(const size_t* idx, std::size_t n) {
  Json a = Json::array();
  for (std::size_t k = 0; k < n; ++k) a.push_back(idx[k]);
  return a;
}

Json labels_of(const mr_space* s, const size_t* idx, std::size_t n) {
  Json a = Json::array();
  for (std::size_t k = 0; k < n; ++k) a.push_back(mr_space_label(s, idx[k]));
  return a;
}

Json side_json(const mr_config* c, int side, const mr_space* s) {
  Json out = Json::array();
  for (std::size_t k = 0; k < mr_config_side_size(c, side); ++k) {
    size_t point = 0;
    double weight = 0.0;
    mr_config_entry(c, side, k, &point, &weight);
    out.push_back(Json{{"index", point}, {"label", mr_space_label(s, point)}, {"weight", weight}});
  }
  return out;
}

Json matrix_json(const mr_space* s) {
  const std::size_t n = mr_space_size(s);
  std::vector<double> m(n * n);
  mr_space_copy_matrix(s, m.data());
  Json rows = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(m[i * n + j]);
    rows.push_back(row);
  }
  return rows;
}

Json all_labels(const mr_space* s) {
  Json a = Json::array();
  for (std::size_t i = 0; i < mr_space_size(s); ++i) a.push_back(mr_space_label(s, i));
  return a;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitUsage, Json{{"error", "OutputUnwritable"}, {"message", "cannot write " + path}}};
  out << text;
}

// ---- subcommands -----------------------------------------------------------

Json cmd_validate(const Loaded& l) {
  return Json{{"valid", true}, {"points", mr_space_size(l.space.get())}, {"labels", all_labels(l.space.get())}};
}

Json cmd_classify(const Loaded& l) {
  double tol = -1.0;
  if (auto rel = env_tolerance()) tol = *rel * max_abs(l.doc.matrix);
  mr_classification c;
  check(mr_classify(l.space.get(), tol, &c));
  Json r{{"is_ultrametric", bool(c.is_ultrametric)}, {"is_additive", bool(c.is_additive)}};
  const mr_space* s = l.space.get();
  r["ultra_witness"] = c.has_ultra_witness ? index_list(c.ultra_witness, 3) : Json(nullptr);
  if (c.has_ultra_witness) r["ultra_witness_labels"] = labels_of(s, c.ultra_witness, 3);
  r["additive_witness"] = c.has_additive_witness ? index_list(c.additive_witness, 4) : Json(nullptr);
  if (c.has_additive_witness) r["additive_witness_labels"] = labels_of(s, c.additive_witness, 4);
  r["tol"] = c.tol;
  return r;
}

const char* status_name(mr_negtype_state s) {
  switch (s) {
    case MR_STRICT: return "strict";
    case MR_BOUNDARY: return "boundary";
    case MR_FAILS: return "fails";
  }
  return "unknown";
}

Json cmd_negtype(const Loaded& l, double p, std::size_t base) {
  const std::size_t n = mr_space_size(l.space.get());
  std::vector<double> cert(n - 1);
  mr_negtype_result r;
  check(mr_negtype_status(l.space.get(), p, -1.0, base, &r, cert.data()));
  Json out{{"p", r.p},
           {"base", base},
           {"status", status_name(r.status)},
           {"min_eigenvalue", r.min_eigenvalue},
           {"tolerance", r.tolerance}};
  out["certificate"] = r.has_certificate ? Json(cert) : Json(nullptr);
  double value = 0.0;
  double rcond = 0.0;
  const mr_status s = mr_sanchez_invariant(l.space.get(), p, &value, &rcond);
  if (s == MR_OK)
    out["sanchez_invariant"] = Json{{"value", value}, {"rcond", rcond}};
  else if (s == MR_ERR_SINGULAR)
    out["sanchez_invariant"] = Json{{"singular", true}, {"rcond", rcond}};
  else
    fail_status(s);
  return out;
}

Json cmd_genround(const Loaded& l, double pmax, double tol) {
  mr_genround_options o;
  mr_genround_default_options(&o);
  o.p_max = pmax;
  o.bis_tol = tol;
  mr_genround_result r;
  check(mr_generalized_roundness(l.space.get(), &o, &r));
  if (r.infinite) return Json{{"value", "infinite"}, {"method", "ultrametric-shortcut"}};
  Json out{{"value", r.value}, {"bracket", Json::array({r.lo, r.hi})}, {"method", "spectral-bisection"}};
  Json methods = Json::array({"spectral-bisection"});
  if (r.methods & MR_METHOD_SANCHEZ_ROOT) methods.push_back("sanchez-root");
  out["methods"] = methods;
  out["sanchez_root"] = r.has_sanchez_root ? Json(r.sanchez_root) : Json(nullptr);
  return out;
}

Json cmd_roundness(const Loaded& l, std::optional<double> p, bool profile, double grid_max, double step) {
  const mr_space* s = l.space.get();
  if (p) {
    mr_roundness_check c;
    check(mr_roundness_check_exponent(s, *p, -1.0, &c));
    Json out{{"p", c.p}, {"holds", bool(c.holds)}, {"tol", c.tol}};
    out["witness"] = c.has_witness ? index_list(c.witness, 4) : Json(nullptr);
    out["margin"] = c.has_witness ? Json(c.margin) : Json(nullptr);
    return out;
  }
  (void)profile;
  int infinite = 0;
  check(mr_is_infinite_roundness(s, &infinite));
  if (infinite) return Json{{"global_lower", "infinite"}, {"method", "ultrametric-shortcut"}};
  mr_profile_options o;
  mr_profile_default_options(&o);
  o.p_grid_max = grid_max;
  o.grid_step = step;
  mr_profile* raw = nullptr;
  check(mr_roundness_profile(s, &o, &raw));
  std::unique_ptr<mr_profile, void (*)(mr_profile*)> prof(raw, mr_profile_destroy);
  size_t quad[4];
  mr_profile_binding(prof.get(), quad);
  return Json{{"global_lower", mr_profile_global_lower(prof.get())},
              {"binding_quadruple", index_list(quad, 4)},
              {"quadruples", mr_profile_record_count(prof.get())},
              {"grid_max", grid_max},
              {"grid_step", step},
              {"grid_points", mr_profile_grid_size(prof.get())}};
}

Json cmd_embed(const Loaded& l, double p, std::size_t base, const std::string& out_path) {
  mr_embedding* raw = nullptr;
  check(mr_embed_euclidean(l.space.get(), p, base, -1.0, -1.0, &raw));
  std::unique_ptr<mr_embedding, void (*)(mr_embedding*)> e(raw, mr_embedding_destroy);
  const std::size_t rows = mr_embedding_rows(e.get());
  const std::size_t rank = mr_embedding_rank(e.get());
  std::vector<double> c(rows * rank);
  mr_embedding_copy_coords(e.get(), c.data());
  Json coords = Json::array();
  for (std::size_t i = 0; i < rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < rank; ++j) row.push_back(c[i * rank + j]);
    coords.push_back(row);
  }
  Json out{{"p", p}, {"base", base}, {"rank", rank}, {"residual", mr_embedding_residual(e.get())}};
  if (out_path.empty()) {
    out["coords"] = coords;
  } else {
    write_file(out_path, render(Json{{"p", p}, {"labels", all_labels(l.space.get())}, {"coords", coords}}));
    out["coords_file"] = out_path;
  }
  return out;
}

Json cmd_polygonal(const Loaded& l) {
  mr_config* raw = nullptr;
  check(mr_find_polygonal_equality(l.space.get(), -1.0, &raw));
  ConfigPtr c(raw);
  if (!c) return Json{{"equality", nullptr}, {"reason", "ultrametric"}};
  return Json{{"p", mr_config_p(c.get())},
              {"a_side", side_json(c.get(), 0, l.space.get())},
              {"b_side", side_json(c.get(), 1, l.space.get())},
              {"residual", mr_config_value(c.get())},
              {"tolerance", mr_config_aux(c.get())}};
}

Json load_tree_spec(const std::string& path, SpacePtr& out) {
  Json spec;
  try {
    spec = Json::parse(read_source(path));
  } catch (const Failure&) {
    throw;
  } catch (const std::exception& e) {
    fail_input("ParseError", e.what());
  }
  if (!spec.is_object() || !spec.contains("vertices") || !spec.contains("edges"))
    fail_input("ParseError", "tree spec needs \"vertices\" and \"edges\"");
  std::vector<size_t> us, vs, subset;
  std::vector<double> lens;
  try {
    const auto nv = spec["vertices"].get<long long>();
    if (nv < 0) fail_input("ParseError", "vertex count must be nonnegative");
    for (const auto& e : spec["edges"]) {
      if (!e.is_array() || e.size() != 3) fail_input("ParseError", "each edge is [u, v, length]");
      const auto u = e[0].get<long long>();
      const auto v = e[1].get<long long>();
      if (u < 0 || v < 0) fail_input("ParseError", "edge endpoints must be nonnegative");
      us.push_back(static_cast<size_t>(u));
      vs.push_back(static_cast<size_t>(v));
      lens.push_back(e[2].get<double>());
    }
    const bool has_subset = spec.contains("subset") && !spec["subset"].is_null();
    if (has_subset)
      for (const auto& v : spec["subset"]) {
        const auto x = v.get<long long>();
        if (x < 0) fail_input("ParseError", "subset entries must be nonnegative");
        subset.push_back(static_cast<size_t>(x));
      }
    mr_space* s = nullptr;
    check(mr_tree_path_metric(static_cast<size_t>(nv), us.data(), vs.data(), lens.data(), us.size(),
                              has_subset ? subset.data() : nullptr, subset.size(), &s));
    out.reset(s);
  } catch (const nlohmann::json::exception& e) {
    fail_input("ParseError", e.what());
  }
  return Json{{"kind", "tree"}, {"spec", path}, {"vertices", spec["vertices"]}, {"edges", us.size()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Roundness, negative type and embedding analysis of finite metric spaces", "metround"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mr_version()));

  std::string file;
  double p_value = 0.0;
  std::size_t base = 0;
  double pmax = 64.0;
  double bis_tol = 1e-9;
  double roundness_p = 0.0;
  bool profile = false;
  double grid_max = 32.0;
  double grid_step = 0.01;
  double embed_p = 2.0;
  std::string out_path;

  auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "Matrix file (JSON or CSV), - for stdin")->required(); };

  auto* validate = app.add_subcommand("validate", "Check that the input is a metric");
  add_file(validate);
  auto* classify = app.add_subcommand("classify", "Ultrametric and four-point tests");
  add_file(classify);
  auto* negtype = app.add_subcommand("negtype", "p-negative type status and Sanchez invariant");
  add_file(negtype);
  negtype->add_option("--p", p_value, "Exponent")->required()->check(CLI::NonNegativeNumber);
  negtype->add_option("--base", base, "Base point index");
  auto* genround = app.add_subcommand("genround", "Generalized roundness");
  add_file(genround);
  genround->add_option("--pmax", pmax, "Cap of the doubling search")->check(CLI::PositiveNumber);
  genround->add_option("--tol", bis_tol, "Bisection width")->check(CLI::PositiveNumber);
  auto* roundness = app.add_subcommand("roundness", "Roundness exponent check or profile");
  add_file(roundness);
  auto* rp = roundness->add_option("--p", roundness_p, "Exponent to check");
  auto* rprof = roundness->add_flag("--profile", profile, "Scan exponents from 1 upwards");
  rp->excludes(rprof);
  roundness->add_option("--grid-max", grid_max, "Largest grid exponent")->needs(rprof);
  roundness->add_option("--step", grid_step, "Grid step")->needs(rprof)->check(CLI::PositiveNumber);
  auto* embed = app.add_subcommand("embed", "Minimal-dimension Euclidean embedding of d^{p/2}");
  add_file(embed);
  embed->add_option("--p", embed_p, "Negative type exponent in [0, 2]");
  embed->add_option("--base", base, "Base point index");
  embed->add_option("--out", out_path, "Write coordinates here instead of the report");
  auto* polygonal = app.add_subcommand("polygonal", "Polygonal equality at the supremal exponent");
  add_file(polygonal);

  auto* generate = app.add_subcommand("generate", "Generate a metric space with known properties");
  generate->require_subcommand(1);
  generate->add_option("--out", out_path, "Write the matrix document here instead of stdout");
  double lbk_b = 0.0;
  long lbk_k = 0;
  double target = 0.0;
  std::size_t um_n = 0;
  std::uint64_t seed = 0;
  std::string tree_spec;
  auto* g_lbk = generate->add_subcommand("lbk", "Star leaf metric L_{b,k}");
  g_lbk->add_option("--b", lbk_b)->required();
  g_lbk->add_option("--k", lbk_k)->required();
  auto* g_target = generate->add_subcommand("lbk-target", "L_{b,k} with a prescribed generalized roundness");
  g_target->add_option("--gr", target)->required();
  auto* g_ultra = generate->add_subcommand("ultrametric", "Random dendrogram ultrametric");
  g_ultra->add_option("--n", um_n)->required();
  g_ultra->add_option("--seed", seed)->required();
  auto* g_tree = generate->add_subcommand("tree", "Path metric of a weighted tree");
  g_tree->add_option("--spec", tree_spec, "Tree spec JSON file")->required();
  for (auto* g : {g_lbk, g_target, g_ultra, g_tree}) g->add_option("--out", out_path, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << render(Json{{"error", "UsageError"}, {"message", e.what()}});
    return kExitUsage;
  }
  if (roundness->parsed() && !rp->count() && !profile) {
    std::cerr << render(Json{{"error", "UsageError"}, {"message", "roundness needs --p or --profile"}});
    return kExitUsage;
  }

  Json args = Json::array();
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);

  try {
    Json report{{"tool", "metround"}, {"tool_version", mr_version()}};
    if (generate->parsed()) {
      SpacePtr space;
      Json gen;
      if (g_lbk->parsed()) {
        mr_space* s = nullptr;
        check(mr_make_lbk(lbk_b, lbk_k, &s));
        space.reset(s);
        const double z = 2.0 * lbk_b / (lbk_b + 1.0);
        const double kd = static_cast<double>(lbk_k);
        gen = Json{{"kind", "lbk"}, {"b", lbk_b}, {"k", lbk_k}, {"z", z},
                   {"closed_form_gr", std::log(2.0 * kd / (kd - 1.0)) / std::log(z)}};
      } else if (g_target->parsed()) {
        mr_lbk_params prm;
        check(mr_lbk_for_target(target, &prm));
        mr_space* s = nullptr;
        check(mr_make_lbk(prm.b, prm.k, &s));
        space.reset(s);
        gen = Json{{"kind", "lbk-target"}, {"target", target}, {"b", prm.b}, {"k", prm.k}, {"z", prm.z},
                   {"closed_form_gr", prm.closed_form_gr}};
      } else if (g_ultra->parsed()) {
        mr_space* s = nullptr;
        check(mr_random_ultrametric(um_n, seed, 1.0, 2.0, &s));
        space.reset(s);
        gen = Json{{"kind", "ultrametric"}, {"n", um_n}, {"height_range", Json::array({1.0, 2.0})}};
      } else {
        gen = load_tree_spec(tree_spec, space);
      }
      const std::size_t n = mr_space_size(space.get());
      std::vector<double> m(n * n);
      mr_space_copy_matrix(space.get(), m.data());

      Json doc = report;
      doc["command"] = "generate";
      doc["argv"] = args;
      doc["generator"] = gen;
      if (g_ultra->parsed()) doc["seed"] = seed;
      doc["labels"] = all_labels(space.get());
      doc["matrix"] = matrix_json(space.get());
      if (out_path.empty()) {
        std::cout << render(doc);
      } else {
        write_file(out_path, render(doc));
        report["command"] = "generate";
        report["argv"] = args;
        if (g_ultra->parsed()) report["seed"] = seed;
        report["results"] = Json{{"generator", gen}, {"points", n}, {"digest", matrix_digest(m, n)}, {"out", out_path}};
        std::cout << render(report);
      }
      return kExitOk;
    }

    const Loaded loaded = load_space(file);
    const auto* sub = app.get_subcommands().front();
    report["command"] = sub->get_name();
    report["argv"] = args;
    report["input"] = Json{{"source", loaded.doc.source},
                           {"digest", matrix_digest(loaded.doc.matrix, loaded.doc.side)},
                           {"points", loaded.doc.side}};
    Json results;
    if (validate->parsed())
      results = cmd_validate(loaded);
    else if (classify->parsed())
      results = cmd_classify(loaded);
    else if (negtype->parsed())
      results = cmd_negtype(loaded, p_value, base);
    else if (genround->parsed())
      results = cmd_genround(loaded, pmax, bis_tol);
    else if (roundness->parsed())
      results = cmd_roundness(loaded, rp->count() ? std::optional<double>(roundness_p) : std::nullopt, profile,
                              grid_max, grid_step);
    else if (embed->parsed())
      results = cmd_embed(loaded, embed_p, base, out_path);
    else
      results = cmd_polygonal(loaded);
    report["results"] = results;
    std::cout << render(report);
    return kExitOk;
  } catch (const Failure& f) {
    std::cerr << render(f.error);
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << render(Json{{"error", "Internal"}, {"message", e.what()}});
    return kExitAnalysis;
  }
}
