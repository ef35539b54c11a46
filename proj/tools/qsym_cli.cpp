// qsym: batch front-end for the filtration/coaction workbench.
//
// Commands
//   validate SPEC            check the filtration axioms of a spec
//   present  SPEC            emit the universal symmetry presentation
//   verify   SPEC CERT       symbolic verification of a coaction certificate
//   falsify  SPEC CERT       verification plus numeric refutation at
//                            classical points
//   catalog list             enumerate built-in objects
//
// SPEC and CERT are JSON file paths or catalog URIs (catalog:NAME?k=v&...).
//
// Exit codes (frozen): 0 all checks passed; 1 a check failed or was refuted
// numerically; 2 malformed input (JSON parse error, wrong shapes, bad URI or
// flags); 3 verification ended with inconclusive checks only.

#include <cstdint>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsym/catalog.hpp"
#include "qsym/json_io.hpp"
#include "qsym/universal.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitInconclusive = 3;

struct Options {
  int degree = 0;  // 0 = keep the certificate's own completion degree
  double tolerance = 1e-9;
  std::uint64_t seed = 20260816;
  std::string report_path;  // empty = stdout
  std::string format = "json";
};

// ---------------------------------------------------------------------------
// catalog: URIs
// ---------------------------------------------------------------------------

struct CatalogUri {
  std::string name;
  std::map<std::string, std::string> params;

  std::string param(const std::string& key, const std::string& fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

bool is_catalog_uri(const std::string& s) { return s.rfind("catalog:", 0) == 0; }

CatalogUri parse_catalog_uri(const std::string& s) {
  CatalogUri uri;
  std::string rest = s.substr(std::string("catalog:").size());
  size_t q = rest.find('?');
  uri.name = rest.substr(0, q);
  if (uri.name.empty()) throw std::invalid_argument("catalog URI has no object name: " + s);
  if (q != std::string::npos) {
    std::string query = rest.substr(q + 1);
    std::istringstream in(query);
    std::string pair;
    while (std::getline(in, pair, '&')) {
      if (pair.empty()) continue;
      size_t eq = pair.find('=');
      if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("catalog URI parameter is not key=value: " + pair);
      uri.params[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
  }
  return uri;
}

int int_param(const CatalogUri& uri, const std::string& key, int fallback) {
  auto it = uri.params.find(key);
  if (it == uri.params.end()) return fallback;
  size_t used = 0;
  int v = std::stoi(it->second, &used);
  if (used != it->second.size())
    throw std::invalid_argument("catalog parameter " + key + " is not an integer: " + it->second);
  return v;
}

/// "I3" -> 3x3 identity; otherwise semicolon-separated rows of
/// comma-separated exact scalars, e.g. "3/5,-4/5;4/5,3/5".
qsym::Matrix matrix_param(const std::string& text) {
  if (!text.empty() && text[0] == 'I') {
    int d = std::stoi(text.substr(1));
    if (d <= 0) throw std::invalid_argument("identity size must be positive: " + text);
    return qsym::Matrix::identity(static_cast<size_t>(d));
  }
  std::vector<std::vector<qsym::Scalar>> rows;
  std::istringstream in(text);
  std::string row;
  while (std::getline(in, row, ';')) {
    std::vector<qsym::Scalar> entries;
    std::istringstream rin(row);
    std::string cell;
    while (std::getline(rin, cell, ',')) entries.push_back(qsym::scalar_from_string(cell));
    if (entries.empty()) throw std::invalid_argument("matrix parameter has an empty row: " + text);
    rows.push_back(std::move(entries));
  }
  if (rows.empty()) throw std::invalid_argument("matrix parameter is empty");
  qsym::Matrix m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::invalid_argument("matrix parameter rows have unequal lengths: " + text);
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

qsym::FiltrationSpec spec_from_uri(const CatalogUri& uri) {
  if (uri.name == "two_point") return qsym::two_point_model().spec;
  if (uri.name == "segments") {
    qsym::SegmentsParams pr{int_param(uri, "d", 2), int_param(uri, "N", 2)};
    return qsym::segments_model(pr).spec;
  }
  if (uri.name == "free_orthogonal")
    return qsym::free_orthogonal_model(matrix_param(uri.param("P", "I2"))).spec;
  throw std::invalid_argument("unknown catalog object: " + uri.name);
}

qsym::CoactionCertificate cert_from_uri(const CatalogUri& uri) {
  std::string which = uri.param("cert", "default");
  if (uri.name == "two_point") {
    if (which != "default")
      throw std::invalid_argument("two_point has only cert=default, got " + which);
    return qsym::two_point_model().certificate;
  }
  if (uri.name == "free_orthogonal") {
    if (which != "default")
      throw std::invalid_argument("free_orthogonal has only cert=default, got " + which);
    return qsym::free_orthogonal_model(matrix_param(uri.param("P", "I2"))).certificate;
  }
  if (uri.name == "segments") {
    qsym::SegmentsParams pr{int_param(uri, "d", 2), int_param(uri, "N", 2)};
    qsym::SegmentsModel model = qsym::segments_model(pr);
    if (which == "default" || which == "hyper") return model.hyper;
    if (which == "quotient") return model.quotient;
    if (which == "permutation") return model.permutation;
    throw std::invalid_argument("segments certificates are hyper|quotient|permutation, got " +
                                which);
  }
  throw std::invalid_argument("unknown catalog object: " + uri.name);
}

qsym::FiltrationSpec load_spec(const std::string& selector) {
  if (is_catalog_uri(selector)) return spec_from_uri(parse_catalog_uri(selector));
  return qsym::filtration_from_json(qsym::read_json_file(selector));
}

qsym::CoactionCertificate load_cert(const std::string& selector) {
  if (is_catalog_uri(selector)) return cert_from_uri(parse_catalog_uri(selector));
  return qsym::certificate_from_json(qsym::read_json_file(selector));
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

void emit(const Options& opt, const std::string& content) {
  if (opt.report_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(opt.report_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report path: " + opt.report_path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + opt.report_path);
}

std::string presentation_text(const qsym::Presentation& p) {
  std::ostringstream os;
  os << "presentation " << p.name << "\n";
  for (const qsym::GeneratorFamily& f : p.families) {
    os << "family " << f.name;
    if (f.block != qsym::kNoBlock) os << " block " << f.block;
    os << " size " << f.rows << "x" << f.cols << "\n";
  }
  for (const qsym::NcPoly& r : p.relations) os << "relation " << qsym::poly_to_string(r) << "\n";
  for (const auto& [g, v] : p.comul)
    os << "comul " << qsym::generator_to_string(g) << " -> " << qsym::poly_to_string(v) << "\n";
  for (const auto& [g, v] : p.counit)
    os << "counit " << qsym::generator_to_string(g) << " -> " << qsym::scalar_to_string(v) << "\n";
  for (const auto& [g, v] : p.antipode)
    os << "antipode " << qsym::generator_to_string(g) << " -> " << qsym::poly_to_string(v)
       << "\n";
  return os.str();
}

int exit_from(const qsym::AxiomReport& rep) {
  if (rep.any_refuted()) return kExitFail;
  if (rep.all_proven()) return kExitPass;
  return kExitInconclusive;
}

// ---------------------------------------------------------------------------
// Classical points for `falsify`: per-family candidate matrices, combined as
// a (capped) cartesian product, then filtered so every kept point satisfies
// the target relations. Only points that are characters of the target can
// soundly refute ideal membership.
// ---------------------------------------------------------------------------

struct Candidate {
  std::string label;
  qsym::CMat matrix;
};

std::vector<Candidate> family_candidates(const qsym::GeneratorFamily& f, std::uint64_t seed) {
  std::vector<Candidate> out;
  if (f.rows != f.cols) return out;  // only square families evaluate as characters
  size_t d = static_cast<size_t>(f.rows);
  auto take = [&](std::vector<qsym::ClassicalPoint> pts) {
    for (qsym::ClassicalPoint& pt : pts)
      out.push_back({pt.label, pt.matrix_for(f.name, f.block)});
  };
  if (d <= 3) {
    take(qsym::signed_permutation_points(f.name, d, f.block));
    if (d == 2) {
      // An exactly rational rotation (and its transpose) separates identities
      // of the continuous orthogonal group from those of signed permutations.
      qsym::CMat rot(2, 2);
      rot(0, 0) = 0.6;
      rot(0, 1) = -0.8;
      rot(1, 0) = 0.8;
      rot(1, 1) = 0.6;
      out.push_back({"rotation(3-4-5)", rot});
      out.push_back({"rotation(3-4-5)t", rot.transpose()});
    }
  } else {
    take(qsym::random_unitary_points(f.name, d, 16, seed, f.block));
  }
  return out;
}

std::vector<qsym::ClassicalPoint> target_points(const qsym::Presentation& target, double tol,
                                                std::uint64_t seed) {
  constexpr size_t kMaxCombos = 4096;
  std::vector<std::vector<Candidate>> cands;
  for (const qsym::GeneratorFamily& f : target.families) {
    std::vector<Candidate> c = family_candidates(f, seed);
    if (c.empty()) return {};  // a family no candidate covers: no usable points
    cands.push_back(std::move(c));
  }
  if (cands.empty()) return {};

  size_t total = 1;
  for (const auto& c : cands) total = std::min(kMaxCombos, total * c.size());

  std::vector<qsym::ClassicalPoint> out;
  for (size_t idx = 0; idx < total; ++idx) {
    qsym::ClassicalPoint pt;
    size_t rem = idx;
    std::string label;
    for (size_t fi = 0; fi < cands.size(); ++fi) {
      const Candidate& c = cands[fi][rem % cands[fi].size()];
      rem /= cands[fi].size();
      const qsym::GeneratorFamily& f = target.families[fi];
      if (!label.empty()) label += ";";
      label += f.name;
      if (f.block != qsym::kNoBlock) label += "[" + std::to_string(f.block) + "]";
      label += "=" + c.label;
      pt.set(f.name, c.matrix, f.block);
    }
    pt.label = label;
    bool satisfies = true;
    for (const qsym::NcPoly& r : target.relations) {
      if (std::abs(qsym::eval_at_point(r, pt)) > tol) {
        satisfies = false;
        break;
      }
    }
    if (satisfies) out.push_back(std::move(pt));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_validate(const Options& opt, const std::string& spec_sel) {
  qsym::FiltrationSpec spec = load_spec(spec_sel);
  qsym::ValidationReport rep = qsym::validate(spec);
  emit(opt, opt.format == "json" ? qsym::dump_json(qsym::validation_report_to_json(rep))
                                 : rep.to_string());
  return rep.ok() ? kExitPass : kExitFail;
}

int cmd_present(const Options& opt, const std::string& spec_sel) {
  qsym::FiltrationSpec spec = load_spec(spec_sel);
  qsym::ValidationReport vrep = qsym::validate(spec);
  if (!vrep.ok()) {
    emit(opt, opt.format == "json" ? qsym::dump_json(qsym::validation_report_to_json(vrep))
                                   : vrep.to_string());
    return kExitFail;
  }
  qsym::Presentation p = qsym::universal_presentation(spec);
  emit(opt, opt.format == "json" ? qsym::dump_json(qsym::presentation_to_json(p))
                                 : presentation_text(p));
  return kExitPass;
}

int run_verification(const Options& opt, const std::string& spec_sel, const std::string& cert_sel,
                     bool numeric) {
  qsym::FiltrationSpec spec = load_spec(spec_sel);
  qsym::CoactionCertificate cert = load_cert(cert_sel);
  if (opt.degree > 0) cert.rewrite_cfg.max_degree = static_cast<size_t>(opt.degree);
  std::vector<qsym::ClassicalPoint> points;
  if (numeric) points = target_points(cert.target, opt.tolerance, opt.seed);
  qsym::AxiomReport rep = qsym::verify_certificate(spec, cert, points, opt.tolerance);
  emit(opt, opt.format == "json" ? qsym::dump_json(qsym::axiom_report_to_json(rep))
                                 : rep.to_string());
  return exit_from(rep);
}

int cmd_catalog_list(const Options& opt) {
  struct Row {
    const char* uri;
    const char* params;
    const char* certs;
  };
  const Row rows[] = {
      {"catalog:two_point", "none", "default"},
      {"catalog:free_orthogonal?P=I2", "P = I<d> or rows 'a,b;c,d' (exact scalars)", "default"},
      {"catalog:segments?d=2&N=2", "d >= 2 segments, truncation N >= 1",
       "hyper | quotient | permutation"},
  };
  if (opt.format == "json") {
    qsym::Json j = qsym::Json::array();
    for (const Row& r : rows) {
      qsym::Json e = qsym::Json::object();
      e["uri"] = r.uri;
      e["params"] = r.params;
      e["certificates"] = r.certs;
      j.push_back(std::move(e));
    }
    emit(opt, qsym::dump_json(j));
  } else {
    std::ostringstream os;
    for (const Row& r : rows)
      os << r.uri << "\n  params: " << r.params << "\n  certificates: " << r.certs << "\n";
    emit(opt, os.str());
  }
  return kExitPass;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--degree", opt.degree, "completion degree cap override (>= 2)")
      ->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--tolerance", opt.tolerance, "numeric tolerance (default 1e-9)");
  cmd->add_option("--seed", opt.seed, "seed for random classical points (default 20260816)");
  cmd->add_option("--report", opt.report_path, "write output to this path instead of stdout");
  cmd->add_option("--format", opt.format, "output format (default json)")
      ->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for Hilbert-module filtrations and their quantum symmetries"};
  app.require_subcommand(1);

  Options opt;
  std::string spec_sel, cert_sel;

  CLI::App* validate = app.add_subcommand("validate", "check the filtration axioms of a spec");
  validate->add_option("spec", spec_sel, "spec JSON path or catalog URI")->required();
  add_common(validate, opt);

  CLI::App* present =
      app.add_subcommand("present", "emit the universal symmetry presentation of a spec");
  present->add_option("spec", spec_sel, "spec JSON path or catalog URI")->required();
  add_common(present, opt);

  CLI::App* verify = app.add_subcommand("verify", "symbolically verify a coaction certificate");
  verify->add_option("spec", spec_sel, "spec JSON path or catalog URI")->required();
  verify->add_option("certificate", cert_sel, "certificate JSON path or catalog URI")->required();
  add_common(verify, opt);

  CLI::App* falsify =
      app.add_subcommand("falsify", "verify and numerically refute at classical points");
  falsify->add_option("spec", spec_sel, "spec JSON path or catalog URI")->required();
  falsify->add_option("certificate", cert_sel, "certificate JSON path or catalog URI")->required();
  add_common(falsify, opt);

  CLI::App* catalog = app.add_subcommand("catalog", "built-in object registry");
  catalog->require_subcommand(1);
  CLI::App* list = catalog->add_subcommand("list", "enumerate built-in objects");
  add_common(list, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (validate->parsed()) return cmd_validate(opt, spec_sel);
    if (present->parsed()) return cmd_present(opt, spec_sel);
    if (verify->parsed()) return run_verification(opt, spec_sel, cert_sel, false);
    if (falsify->parsed()) return run_verification(opt, spec_sel, cert_sel, true);
    if (list->parsed()) return cmd_catalog_list(opt);
  } catch (const qsym::Json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;  // unreachable: a subcommand is required
}
