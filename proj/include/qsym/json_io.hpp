#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qsym/coaction.hpp"
#include "qsym/filtration.hpp"
#include "qsym/poly_text.hpp"

namespace qsym {

/// Ordered JSON keeps object fields in insertion order, which together with
/// exact rational strings makes every emitted document byte-stable and every
/// serialize/parse pair an identity.
using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Scalars, coordinate vectors, matrices
// ---------------------------------------------------------------------------

/// {"re": "p/q", "im": "p/q"} with exact rational strings.
inline Json scalar_to_json(const Scalar& z) {
  Json j = Json::object();
  j["re"] = rational_to_string(z.re);
  j["im"] = rational_to_string(z.im);
  return j;
}

inline Scalar scalar_from_json(const Json& j) {
  return Scalar(rational_from_string(j.at("re").get<std::string>()),
                rational_from_string(j.at("im").get<std::string>()));
}

inline Json coords_to_json(const Coords& c) {
  Json j = Json::array();
  for (const Scalar& z : c) j.push_back(scalar_to_json(z));
  return j;
}

inline Coords coords_from_json(const Json& j) {
  Coords c;
  c.reserve(j.size());
  for (const Json& e : j) c.push_back(scalar_from_json(e));
  return c;
}

/// Products that fall outside the truncated basis serialize as null.
inline Json maybe_coords_to_json(const MaybeCoords& mc) {
  if (!mc) return nullptr;
  return coords_to_json(*mc);
}

inline MaybeCoords maybe_coords_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return coords_from_json(j);
}

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j) {
  size_t rows = j.size();
  size_t cols = rows == 0 ? 0 : j.at(0).size();
  Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    const Json& row = j.at(r);
    if (row.size() != cols)
      throw std::invalid_argument("matrix rows have unequal lengths");
    for (size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(row.at(c));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Algebra slice and filtration spec (filtration.json)
// ---------------------------------------------------------------------------

inline Json algebra_to_json(const AlgebraData& a) {
  Json j = Json::object();
  j["dim"] = a.dim;
  Json sc = Json::array();
  for (const auto& row : a.struct_consts) {
    Json jr = Json::array();
    for (const MaybeCoords& mc : row) jr.push_back(maybe_coords_to_json(mc));
    sc.push_back(std::move(jr));
  }
  j["struct_consts"] = std::move(sc);
  j["star_matrix"] = matrix_to_json(a.star_matrix);
  j["unit_vector"] = coords_to_json(a.unit_vector);
  j["trace_vector"] = coords_to_json(a.trace_vector);
  j["pair_trace"] = a.pair_trace ? matrix_to_json(*a.pair_trace) : Json(nullptr);
  return j;
}

inline AlgebraData algebra_from_json(const Json& j) {
  AlgebraData a;
  a.dim = j.at("dim").get<size_t>();
  for (const Json& jr : j.at("struct_consts")) {
    std::vector<MaybeCoords> row;
    for (const Json& e : jr) row.push_back(maybe_coords_from_json(e));
    a.struct_consts.push_back(std::move(row));
  }
  a.star_matrix = matrix_from_json(j.at("star_matrix"));
  a.unit_vector = coords_from_json(j.at("unit_vector"));
  a.trace_vector = coords_from_json(j.at("trace_vector"));
  const Json& pt = j.at("pair_trace");
  if (!pt.is_null()) a.pair_trace = matrix_from_json(pt);
  return a;
}

inline Json filtration_to_json(const FiltrationSpec& s) {
  Json j = Json::object();
  j["name"] = s.name;
  j["algebra"] = algebra_to_json(s.algebra);
  j["module_dim"] = s.module_dim;
  Json blocks = Json::array();
  for (const auto& b : s.blocks) blocks.push_back(b);
  j["blocks"] = std::move(blocks);
  Json inner = Json::array();
  for (const auto& row : s.inner_tensor) {
    Json jr = Json::array();
    for (const Coords& c : row) jr.push_back(coords_to_json(c));
    inner.push_back(std::move(jr));
  }
  j["inner_tensor"] = std::move(inner);
  Json action = Json::array();
  for (const auto& row : s.action_tensor) {
    Json jr = Json::array();
    for (const MaybeCoords& mc : row) jr.push_back(maybe_coords_to_json(mc));
    action.push_back(std::move(jr));
  }
  j["action_tensor"] = std::move(action);
  j["j_matrix"] = matrix_to_json(s.j_matrix);
  j["xi0"] = coords_to_json(s.xi0);
  return j;
}

inline FiltrationSpec filtration_from_json(const Json& j) {
  FiltrationSpec s;
  s.name = j.at("name").get<std::string>();
  s.algebra = algebra_from_json(j.at("algebra"));
  s.module_dim = j.at("module_dim").get<size_t>();
  for (const Json& b : j.at("blocks")) s.blocks.push_back(b.get<std::vector<size_t>>());
  for (const Json& jr : j.at("inner_tensor")) {
    std::vector<Coords> row;
    for (const Json& e : jr) row.push_back(coords_from_json(e));
    s.inner_tensor.push_back(std::move(row));
  }
  for (const Json& jr : j.at("action_tensor")) {
    std::vector<MaybeCoords> row;
    for (const Json& e : jr) row.push_back(maybe_coords_from_json(e));
    s.action_tensor.push_back(std::move(row));
  }
  s.j_matrix = matrix_from_json(j.at("j_matrix"));
  s.xi0 = coords_from_json(j.at("xi0"));
  return s;
}

// ---------------------------------------------------------------------------
// Presentations and certificates (certificate.json)
// ---------------------------------------------------------------------------

inline Json presentation_to_json(const Presentation& p) {
  Json j = Json::object();
  j["name"] = p.name;
  Json fams = Json::array();
  for (const GeneratorFamily& f : p.families) {
    Json jf = Json::object();
    jf["name"] = f.name;
    jf["block"] = f.block == kNoBlock ? Json(nullptr) : Json(f.block);
    jf["rows"] = f.rows;
    jf["cols"] = f.cols;
    fams.push_back(std::move(jf));
  }
  j["families"] = std::move(fams);
  Json rels = Json::array();
  for (const NcPoly& r : p.relations) rels.push_back(poly_to_string(r));
  j["relations"] = std::move(rels);
  Json comul = Json::object();
  for (const auto& [g, v] : p.comul) comul[generator_to_string(g)] = poly_to_string(v);
  j["comul"] = std::move(comul);
  Json counit = Json::object();
  for (const auto& [g, v] : p.counit) counit[generator_to_string(g)] = scalar_to_json(v);
  j["counit"] = std::move(counit);
  Json antipode = Json::object();
  for (const auto& [g, v] : p.antipode) antipode[generator_to_string(g)] = poly_to_string(v);
  j["antipode"] = std::move(antipode);
  return j;
}

inline Presentation presentation_from_json(const Json& j) {
  Presentation p;
  p.name = j.at("name").get<std::string>();
  for (const Json& jf : j.at("families")) {
    GeneratorFamily f;
    f.name = jf.at("name").get<std::string>();
    const Json& blk = jf.at("block");
    f.block = blk.is_null() ? kNoBlock : blk.get<int>();
    f.rows = jf.at("rows").get<int>();
    f.cols = jf.at("cols").get<int>();
    p.families.push_back(std::move(f));
  }
  for (const Json& r : j.at("relations"))
    p.relations.push_back(poly_from_string(r.get<std::string>()));
  for (const auto& [k, v] : j.at("comul").items())
    p.comul[generator_from_string(k)] = poly_from_string(v.get<std::string>());
  for (const auto& [k, v] : j.at("counit").items())
    p.counit[generator_from_string(k)] = scalar_from_json(v);
  for (const auto& [k, v] : j.at("antipode").items())
    p.antipode[generator_from_string(k)] = poly_from_string(v.get<std::string>());
  return p;
}

inline Json completion_config_to_json(const CompletionConfig& c) {
  Json j = Json::object();
  j["max_degree"] = c.max_degree;
  j["max_steps"] = c.max_steps;
  j["max_rules"] = c.max_rules;
  return j;
}

inline CompletionConfig completion_config_from_json(const Json& j) {
  CompletionConfig c;
  c.max_degree = j.at("max_degree").get<size_t>();
  c.max_steps = j.at("max_steps").get<size_t>();
  c.max_rules = j.at("max_rules").get<size_t>();
  return c;
}

inline Json certificate_to_json(const CoactionCertificate& c) {
  Json j = Json::object();
  j["target"] = presentation_to_json(c.target);
  Json alpha = Json::array();
  for (const auto& row : c.alpha_matrix) {
    Json jr = Json::array();
    for (const NcPoly& p : row) jr.push_back(poly_to_string(p));
    alpha.push_back(std::move(jr));
  }
  j["alpha_matrix"] = std::move(alpha);
  Json beta = Json::array();
  for (const auto& blk : c.beta_blocks) {
    Json jb = Json::array();
    for (const auto& row : blk) {
      Json jr = Json::array();
      for (const NcPoly& p : row) jr.push_back(poly_to_string(p));
      jb.push_back(std::move(jr));
    }
    beta.push_back(std::move(jb));
  }
  j["beta_blocks"] = std::move(beta);
  j["rewrite_cfg"] = completion_config_to_json(c.rewrite_cfg);
  return j;
}

inline CoactionCertificate certificate_from_json(const Json& j) {
  CoactionCertificate c;
  c.target = presentation_from_json(j.at("target"));
  for (const Json& jr : j.at("alpha_matrix")) {
    std::vector<NcPoly> row;
    for (const Json& e : jr) row.push_back(poly_from_string(e.get<std::string>()));
    c.alpha_matrix.push_back(std::move(row));
  }
  for (const Json& jb : j.at("beta_blocks")) {
    std::vector<std::vector<NcPoly>> blk;
    for (const Json& jr : jb) {
      std::vector<NcPoly> row;
      for (const Json& e : jr) row.push_back(poly_from_string(e.get<std::string>()));
      blk.push_back(std::move(row));
    }
    c.beta_blocks.push_back(std::move(blk));
  }
  c.rewrite_cfg = completion_config_from_json(j.at("rewrite_cfg"));
  return c;
}

// ---------------------------------------------------------------------------
// Reports (emit-only; consumed by humans and the CLI exit-code logic)
// ---------------------------------------------------------------------------

inline Json validation_report_to_json(const ValidationReport& r) {
  Json j = Json::object();
  j["ok"] = r.ok();
  Json entries = Json::array();
  for (const CheckEntry& e : r.entries) {
    Json je = Json::object();
    je["name"] = e.name;
    je["pass"] = e.pass;
    je["witness"] = e.witness;
    je["skipped"] = e.skipped;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline Json axiom_report_to_json(const AxiomReport& r) {
  Json j = Json::object();
  j["all_proven"] = r.all_proven();
  j["any_refuted"] = r.any_refuted();
  j["completion"] = to_string(r.completion);
  j["tensor_completion"] = to_string(r.tensor_completion);
  Json checks = Json::array();
  for (const AxiomCheck& c : r.checks) {
    Json jc = Json::object();
    jc["key"] = c.key;
    jc["status"] = to_string(c.status);
    jc["witness"] = c.witness;
    jc["instances"] = c.instances;
    jc["skipped"] = c.skipped;
    jc["trace_digest"] = c.trace_digest;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  return j;
}

// ---------------------------------------------------------------------------
// File helpers
// ---------------------------------------------------------------------------

/// Canonical on-disk form: two-space indent plus trailing newline.
inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << dump_json(j);
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return Json::parse(in);  // throws nlohmann parse_error with byte position
}

}  // namespace qsym
