#pragma once

// Command dispatch for the executable. run_command is the entire surface, so
// tests can drive commands in process; main() only forwards argv. Json output
// is schema-stable and byte-identical across runs on the same inputs. Exit
// codes are a fixed contract: 0 success, 1 semantic failure, 2 input error,
// 3 exhausted budget.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "globrep/checks.hpp"
#include "globrep/io.hpp"

namespace globrep {

enum ExitCode : int { exit_ok = 0, exit_semantic = 1, exit_input = 2, exit_budget = 3 };

namespace cli_detail {

inline long long parse_ll(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw input_error(what + ": not an integer: '" + s + "'");
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trimmed(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

// The family argument is an inline descriptor `kind:p:bound`, the unbounded
// chain form `kind:p`, or a path to a json file holding a family descriptor,
// a custom table, or a whole workspace.
struct FamilySource {
  bool unbounded = false;
  std::string kind;  // unbounded form only
  long long p = 0;
};

struct Workspace {
  WorkspaceConfig cfg;
  FamilySource src;
  FamilyPtr fam;  // null in the unbounded regime
  std::vector<std::pair<std::string, Rep>> objects;
};

inline bool looks_inline(const std::string& arg) {
  return arg.find(':') != std::string::npos && arg.find('/') == std::string::npos &&
         arg.find(".json") == std::string::npos;
}

inline Json inline_family_json(const std::string& arg, FamilySource& src) {
  std::vector<std::string> parts = split(arg, ':');
  const std::string& kind = parts[0];
  if (parts.size() == 2) {
    if (kind != "cyclic_p" && kind != "elementary_abelian")
      throw input_error("family: only cyclic_p and elementary_abelian admit the unbounded form kind:p");
    src.unbounded = true;
    src.kind = kind;
    src.p = parse_ll(parts[1], "family");
    Json j;
    j["kind"] = kind;
    j["p"] = src.p;
    return j;
  }
  if (parts.size() != 3) throw input_error("family: expected kind:p:bound or kind:p, got '" + arg + "'");
  Json j;
  j["kind"] = kind;
  j["p"] = parse_ll(parts[1], "family");
  long long bound = parse_ll(parts[2], "family");
  if (kind == "cyclic_p")
    j["max_exponent"] = bound;
  else if (kind == "elementary_abelian")
    j["max_rank"] = bound;
  else if (kind == "abelian_p")
    j["order_bound"] = bound;
  else
    throw input_error("family: unknown builtin kind '" + kind + "'");
  return j;
}

// Detects the unbounded regime in a family json block: a chain kind whose
// bound field is absent.
inline bool json_family_unbounded(const Json& j, FamilySource& src) {
  if (!j.is_object() || !j.contains("kind")) return false;
  std::string kind = j["kind"].get<std::string>();
  if (kind == "cyclic_p" && !j.contains("max_exponent")) {
    src = {true, kind, j.at("p").get<long long>()};
    return true;
  }
  if (kind == "elementary_abelian" && !j.contains("max_rank")) {
    src = {true, kind, j.at("p").get<long long>()};
    return true;
  }
  return false;
}

// Resolves the whole workspace up front: the family, then every named object
// in listed order, so a dangling reference fails before any computation.
inline Workspace load_workspace(const std::string& family_arg, const std::string& format_flag, int truncation_flag) {
  Workspace ws;
  if (family_arg.empty()) throw input_error("no family given; pass --family");
  if (looks_inline(family_arg)) {
    ws.cfg.family = inline_family_json(family_arg, ws.src);
  } else {
    Json j = read_json_file(family_arg);
    if (j.contains("family"))
      ws.cfg = config_from_json(j);
    else
      ws.cfg.family = j;
  }
  if (!format_flag.empty()) {
    if (format_flag != "text" && format_flag != "json") throw input_error("format must be text or json");
    ws.cfg.format = format_flag;
  }
  if (truncation_flag >= 0) ws.cfg.budgets.truncation = truncation_flag;

  Json fam_json = ws.cfg.family;
  if (fam_json.contains("file")) fam_json = read_json_file(fam_json["file"].get<std::string>());
  if (!ws.src.unbounded && !json_family_unbounded(fam_json, ws.src)) ws.fam = family_from_json(fam_json);

  if (ws.src.unbounded && !ws.cfg.objects.empty())
    throw input_error("named objects need a bounded family window; write kind:p:bound");
  for (const auto& [name, expr] : ws.cfg.objects) {
    ObjectResolver resolve = [&ws](const std::string& kind, const std::string& ref) -> Rep {
      if (kind == "file") return rep_from_json(read_json_file(ref), ws.fam);
      for (const auto& [n, r] : ws.objects)
        if (n == ref) return r;
      throw input_error("unknown object name: " + ref);
    };
    ws.objects.emplace_back(name, parse_object_expression(expr, ws.fam, resolve));
  }
  return ws;
}

inline FamilyPtr bounded_family(const Workspace& ws, const std::string& command) {
  if (!ws.fam) throw input_error(command + " needs a bounded family window; write kind:p:bound");
  return ws.fam;
}

inline Rep resolve_object(const Workspace& ws, const std::string& expr, const std::string& command) {
  if (expr.empty()) throw input_error(command + " needs --object");
  ObjectResolver resolve = [&ws](const std::string& kind, const std::string& ref) -> Rep {
    if (kind == "file") return rep_from_json(read_json_file(ref), ws.fam);
    for (const auto& [n, r] : ws.objects)
      if (n == ref) return r;
    throw input_error("unknown object name: " + ref);
  };
  return parse_object_expression(expr, ws.fam, resolve);
}

// The ideal argument is a json file path, `gen:` followed by one object
// expression, `none` for the zero ideal, or a comma-separated class list.
inline IdealSpec parse_ideal_arg(const Workspace& ws, const std::string& arg) {
  if (arg.empty()) throw input_error("member needs --ideal");
  if (arg.rfind("gen:", 0) == 0)
    return ideal_from_objects(ws.fam, {resolve_object(ws, arg.substr(4), "ideal")});
  if (arg.find(".json") != std::string::npos || arg.find('/') != std::string::npos)
    return ideal_from_json(read_json_file(arg), ws.fam);
  if (arg == "none") return ideal_from_support(ws.fam, {});
  std::set<int> support;
  for (const std::string& part : split(arg, ','))
    support.insert(detail::class_index(*ws.fam, trimmed(part), "ideal"));
  return ideal_from_support(ws.fam, support);
}

inline Json dims_json(const GroupFamily& fam, const std::vector<int>& dims) {
  Json j;
  for (int g = 0; g < fam.n(); ++g) j[fam.label(g)] = dims[g];
  return j;
}

inline Json labels_json(const GroupFamily& fam, const std::set<int>& classes) {
  Json j = Json::array();
  for (int g : classes) j.push_back(fam.label(g));
  return j;
}

inline std::string labels_line(const GroupFamily& fam, const std::set<int>& classes) {
  std::string out;
  for (int g : classes) out += (out.empty() ? "" : " ") + fam.label(g);
  return out.empty() ? "(empty)" : out;
}

struct CommandIO {
  std::string format;
  std::string out_path;
  std::ostream* out;
};

// The json payload always goes to --out; stdout carries the payload in json
// mode and the renderer's text otherwise.
template <class Renderer>
inline void emit(const Json& payload, const CommandIO& io, Renderer&& render_text) {
  std::string bytes = payload.dump(2) + "\n";
  if (io.format == "json")
    *io.out << bytes;
  else
    render_text(*io.out);
  if (!io.out_path.empty()) {
    std::ofstream f(io.out_path, std::ios::binary);
    if (!f) throw input_error("cannot write file: " + io.out_path);
    f << bytes;
  }
}

// ---------------------------------------------------------------------------
// Commands

inline int cmd_validate(const Workspace& ws, const CommandIO& io) {
  FamilyPtr fam = bounded_family(ws, "validate");
  FamilyValidationReport famrep = validate_family(*fam);
  Json j;
  j["command"] = "validate";
  j["family"] = {{"ok", famrep.ok},
                 {"errors", famrep.errors},
                 {"associativity_checked", famrep.associativity_checked},
                 {"exhaustive", famrep.exhaustive_associativity}};
  bool all_ok = famrep.ok;
  Json objs = Json::object();
  for (const auto& [name, x] : ws.objects) {
    RepValidationReport r = validate_rep(x);
    objs[name] = {{"ok", r.ok}, {"errors", r.errors}};
    all_ok &= r.ok;
  }
  j["objects"] = std::move(objs);
  j["ok"] = all_ok;
  emit(j, io, [&](std::ostream& out) {
    out << "family: " << (famrep.ok ? "ok" : "FAIL") << " (" << famrep.associativity_checked
        << " composable triples)\n";
    for (const std::string& e : famrep.errors) out << "  " << e << "\n";
    for (const auto& [name, x] : ws.objects) {
      RepValidationReport r = validate_rep(x);
      out << "object " << name << ": " << (r.ok ? "ok" : "FAIL") << "\n";
      for (const std::string& e : r.errors) out << "  " << e << "\n";
    }
    out << "result: " << (all_ok ? "pass" : "fail") << "\n";
  });
  return all_ok ? exit_ok : exit_semantic;
}

inline int cmd_support(const Workspace& ws, const std::string& object_expr, const CommandIO& io) {
  FamilyPtr fam = bounded_family(ws, "support");
  Rep x = resolve_object(ws, object_expr, "support");
  std::set<int> supp = support(x);
  Json j;
  j["command"] = "support";
  j["object"] = object_expr;
  j["dims"] = dims_json(*fam, x.dims);
  j["support"] = labels_json(*fam, supp);
  emit(j, io, [&](std::ostream& out) {
    out << "object: " << object_expr << "\n";
    out << "dims:";
    for (int g = 0; g < fam->n(); ++g) out << " " << fam->label(g) << "=" << x.dims[g];
    out << "\nsupport: " << labels_line(*fam, supp) << "\n";
  });
  return exit_ok;
}

inline int cmd_member(const Workspace& ws, const std::string& object_expr, const std::string& ideal_arg,
                      const CommandIO& io) {
  FamilyPtr fam = bounded_family(ws, "member");
  Rep x = resolve_object(ws, object_expr, "member");
  IdealSpec ideal = parse_ideal_arg(ws, ideal_arg);
  MembershipCertificate cert = serre_member_certified(x, ideal);
  Json j;
  j["command"] = "member";
  j["object"] = object_expr;
  j["report"] = membership_to_json(cert, x, ideal);
  emit(j, io, [&](std::ostream& out) {
    out << "object: " << object_expr << "\n";
    out << "ideal support: " << labels_line(*fam, ideal.support) << "\n";
    if (cert.member)
      out << "member: yes (verified certificate, filtration length " << cert.filtration.steps.size() << ")\n";
    else
      out << "member: no (support leaks at " << labels_line(*fam, cert.offending) << ")\n";
  });
  return cert.member ? exit_ok : exit_semantic;
}

inline int cmd_decompose(const Workspace& ws, const std::string& object_expr, const CommandIO& io) {
  FamilyPtr fam = bounded_family(ws, "decompose");
  Rep x = resolve_object(ws, object_expr, "decompose");
  FiltrationCertificate cert = decompose_chi(x);
  std::string why;
  bool verified = verify_filtration(cert, &why);
  Json j;
  j["command"] = "decompose";
  j["object"] = object_expr;
  j["certificate"] = filtration_to_json(cert);
  emit(j, io, [&](std::ostream& out) {
    out << "object: " << object_expr << "\n";
    out << "steps: " << cert.steps.size() << "\n";
    for (size_t i = 0; i < cert.steps.size(); ++i) {
      const FiltStep& s = cert.steps[i];
      out << "  " << i + 1 << ": class " << fam->label(s.cls) << ", piece dim " << s.piece.dims[s.cls] << ", "
          << (ses_is_exact(s.mono, s.epi) ? "exact" : "NOT EXACT") << "\n";
    }
    out << "verified: " << (verified ? "yes" : "no" + (why.empty() ? "" : " (" + why + ")")) << "\n";
  });
  return verified ? exit_ok : exit_semantic;
}

inline int cmd_spectrum(const Workspace& ws, int budget, const CommandIO& io) {
  if (ws.src.unbounded) {
    long long index_bound = budget < 0 ? 32 : budget;
    NStableSpectrumReport model = spc_n_stable(ws.src.kind, ws.src.p, index_bound);
    int levels = std::max(2, ws.cfg.budgets.truncation);
    FamilyPtr window = n_stable_window(ws.src.kind, ws.src.p, levels);
    std::vector<NamedObject> pool = {named_unit(), named_zero()};
    for (int i = 0; i < window->n(); ++i) {
      pool.push_back(named_chi(i));
      pool.push_back(named_gamma(i));
      pool.push_back(named_e(i));
    }
    PInfinityReport pinf = verify_p_infinity(window, pool);
    Json j;
    j["command"] = "spectrum";
    j["regime"] = "extended-naturals";
    j["model"] = nstable_report_to_json(model);
    j["infinity_point"] = {{"proper", pinf.proper},
                           {"absorbs", pinf.absorbs},
                           {"prime_on_pool", pinf.prime_on_pool},
                           {"separated_from_levels", pinf.separated_from_levels},
                           {"finite_members_certified", pinf.finite_members_certified},
                           {"annihilation_witnessed", pinf.annihilation_witnessed},
                           {"window_levels", levels},
                           {"notes", pinf.notes}};
    bool ok = model.ok() && pinf.ok();
    j["ok"] = ok;
    emit(j, io, [&](std::ostream& out) {
      out << "regime: extended naturals (one closed point per level plus a point at infinity)\n";
      out << "kind: " << ws.src.kind << ", p=" << ws.src.p << ", levels up to " << index_bound << "\n";
      out << "loci checked: " << model.sets_checked << "\n";
      out << "closed dichotomy: " << (model.closed_dichotomy ? "yes" : "NO") << ", unions: "
          << (model.unions_representable ? "yes" : "NO")
          << ", intersections: " << (model.intersections_representable ? "yes" : "NO") << "\n";
      out << "level points closed: " << (model.level_points_closed ? "yes" : "NO") << "\n";
      out << "infinity point: " << (pinf.ok() ? "proper prime, separated from every level" : "FAILED") << "\n";
      out << "result: " << (ok ? "pass" : "fail") << "\n";
    });
    return ok ? exit_ok : exit_semantic;
  }

  FamilyPtr fam = bounded_family(ws, "spectrum");
  SpectrumReport rep = spectrum_discrete(fam);
  Json j;
  j["command"] = "spectrum";
  j["regime"] = "discrete";
  j["report"] = spectrum_report_to_json(rep);
  bool exhausted = false;
  std::string exhausted_why;
  try {
    IdealLattice lat = enumerate_serre_ideals(fam, budget < 0 ? 12 : budget);
    j["lattice"] = {{"ideals", lat.ideals.size()}, {"primes", lat.prime_count}};
  } catch (const budget_error& e) {
    exhausted = true;
    exhausted_why = e.what();
    j["lattice"] = {{"exhausted", true}, {"why", exhausted_why}};
  }
  bool ok = rep.all_points_prime && rep.no_other_primes;
  j["ok"] = ok && !exhausted;
  emit(j, io, [&](std::ostream& out) {
    out << "regime: discrete\n";
    out << "points:";
    for (const SpcPoint& p : rep.points) out << " P_" << p.label;
    out << " (" << rep.points.size() << " closed points)\n";
    if (j["lattice"].contains("ideals"))
      out << "ideals: " << j["lattice"]["ideals"].get<size_t>() << ", primes: " << j["lattice"]["primes"].get<int>()
          << "\n";
    else
      out << "lattice: enumeration budget exhausted (" << exhausted_why << ")\n";
    out << "every point prime: " << (rep.all_points_prime ? "yes" : "NO") << ", no other primes: "
        << (rep.no_other_primes ? "yes" : "NO") << "\n";
    out << "result: " << (ok ? (exhausted ? "partial" : "pass") : "fail") << "\n";
  });
  if (exhausted) return exit_budget;
  return ok ? exit_ok : exit_semantic;
}

inline int cmd_kan(const Workspace& ws, const std::string& object_expr, const CommandIO& io) {
  FamilyPtr fam = bounded_family(ws, "kan");
  long long threshold = ws.cfg.budgets.truncation;
  Rep y = object_expr.empty() ? unit_rep(fam) : resolve_object(ws, object_expr, "kan");

  std::set<int> open;
  for (int g = 0; g < fam->n(); ++g)
    if (fam->order(g) > threshold) open.insert(g);
  if (open.empty() || static_cast<int>(open.size()) == fam->n())
    throw input_error("kan: the order threshold " + std::to_string(threshold) +
                      " does not split this family; adjust --truncation");

  auto [sub, inc] = truncate_order_le(fam, threshold);
  Rep x = restrict_rep(inc, y);
  LeftKanResult lk = left_kan(inc, x);
  RightKanResult rk = right_kan(inc, x);
  bool left_recovers = is_isomorphic(restrict_rep(inc, lk.rep), x).has_value();
  bool right_recovers = is_isomorphic(restrict_rep(inc, rk.rep), x).has_value();
  GlueResult glue = glue_ses(y, open);
  bool glue_exact = ses_is_exact(glue.into, glue.onto);
  AdjunctionReport adj = adjunction_check(inc, x, y);
  bool ok = left_recovers && right_recovers && glue_exact && adj.ok;

  Json j;
  j["command"] = "kan";
  j["object"] = object_expr.empty() ? "unit" : object_expr;
  j["threshold"] = threshold;
  std::set<int> down;
  for (int g = 0; g < fam->n(); ++g)
    if (!open.count(g)) down.insert(g);
  j["sub_classes"] = labels_json(*fam, down);
  j["restriction_dims"] = dims_json(*sub, x.dims);
  j["left_extension_dims"] = dims_json(*fam, lk.rep.dims);
  j["right_extension_dims"] = dims_json(*fam, rk.rep.dims);
  j["left_recovers"] = left_recovers;
  j["right_recovers"] = right_recovers;
  j["glue_exact"] = glue_exact;
  j["adjunction"] = {{"ok", adj.ok},
                     {"left_hom_dim", adj.left_hom_dim},
                     {"right_hom_dim", adj.right_hom_dim},
                     {"errors", adj.errors}};
  j["ok"] = ok;
  emit(j, io, [&](std::ostream& out) {
    out << "object: " << (object_expr.empty() ? "unit" : object_expr) << "\n";
    out << "down-closed part (order <= " << threshold << "): " << labels_line(*fam, down) << "\n";
    out << "restriction dims:";
    for (int g = 0; g < sub->n(); ++g) out << " " << sub->label(g) << "=" << x.dims[g];
    out << "\nleft extension dims:";
    for (int g = 0; g < fam->n(); ++g) out << " " << fam->label(g) << "=" << lk.rep.dims[g];
    out << "\nright extension dims:";
    for (int g = 0; g < fam->n(); ++g) out << " " << fam->label(g) << "=" << rk.rep.dims[g];
    out << "\nrestriction recovers: left " << (left_recovers ? "yes" : "NO") << ", right "
        << (right_recovers ? "yes" : "NO") << "\n";
    out << "glue sequence exact: " << (glue_exact ? "yes" : "NO") << "\n";
    out << "adjunction: " << (adj.ok ? "ok" : "FAIL") << " (hom dims " << adj.left_hom_dim << ", "
        << adj.right_hom_dim << ")\n";
    out << "result: " << (ok ? "pass" : "fail") << "\n";
  });
  return ok ? exit_ok : exit_semantic;
}

inline int cmd_check(const std::vector<std::string>& suites, int budget, int truncation, const CommandIO& io) {
  CheckOptions opt;
  opt.scale = budget < 0 ? 1 : std::max(1, budget);
  opt.truncation = std::max(2, truncation < 0 ? 4 : truncation);
  CheckSummary sum = run_checks(opt, suites);
  Json j;
  j["command"] = "check";
  j["scale"] = opt.scale;
  j["truncation"] = opt.truncation;
  Json results = Json::array();
  for (const CheckResult& r : sum.results)
    results.push_back(
        {{"suite", r.suite}, {"id", r.id}, {"what", r.what}, {"pass", r.pass}, {"detail", r.detail}});
  j["results"] = std::move(results);
  j["passed"] = sum.passed;
  j["failed"] = sum.failed;
  j["ok"] = sum.ok();
  emit(j, io, [&](std::ostream& out) {
    for (const CheckResult& r : sum.results) {
      out << (r.pass ? "[pass] " : "[FAIL] ") << r.id;
      if (!r.detail.empty()) out << ": " << r.detail;
      out << "\n";
    }
    out << "passed " << sum.passed << ", failed " << sum.failed << "\n";
  });
  return sum.ok() ? exit_ok : exit_semantic;
}

inline int cmd_report(const Workspace& ws, int budget, const CommandIO& io) {
  FamilyPtr fam = bounded_family(ws, "report");
  FamilyValidationReport famrep = validate_family(*fam);
  SpectrumReport spc = spectrum_discrete(fam);
  Json j;
  j["command"] = "report";
  j["family"] = family_to_json(*fam);
  j["validation"] = {{"ok", famrep.ok},
                     {"errors", famrep.errors},
                     {"associativity_checked", famrep.associativity_checked}};
  Json objs = Json::object();
  bool objects_ok = true;
  for (const auto& [name, x] : ws.objects) {
    RepValidationReport r = validate_rep(x);
    objects_ok &= r.ok;
    objs[name] = {{"ok", r.ok}, {"dims", dims_json(*fam, x.dims)}, {"support", labels_json(*fam, support(x))}};
  }
  j["objects"] = std::move(objs);
  bool exhausted = false;
  try {
    IdealLattice lat = enumerate_serre_ideals(fam, budget < 0 ? 12 : budget);
    j["lattice"] = {{"ideals", lat.ideals.size()}, {"primes", lat.prime_count}};
  } catch (const budget_error& e) {
    exhausted = true;
    j["lattice"] = {{"exhausted", true}, {"why", std::string(e.what())}};
  }
  j["spectrum"] = spectrum_report_to_json(spc);
  bool ok = famrep.ok && objects_ok && spc.all_points_prime && spc.no_other_primes;
  j["ok"] = ok && !exhausted;
  emit(j, io, [&](std::ostream& out) {
    out << "classes: " << fam->n() << " (";
    for (int g = 0; g < fam->n(); ++g) out << (g ? " " : "") << fam->label(g);
    out << ")\n";
    out << "family laws: " << (famrep.ok ? "ok" : "FAIL") << "\n";
    for (const auto& [name, x] : ws.objects) {
      out << "object " << name << ": dims";
      for (int g = 0; g < fam->n(); ++g) out << " " << x.dims[g];
      out << ", support " << labels_line(*fam, support(x)) << "\n";
    }
    if (j["lattice"].contains("ideals"))
      out << "ideals: " << j["lattice"]["ideals"].get<size_t>() << ", primes: " << j["lattice"]["primes"].get<int>()
          << "\n";
    else
      out << "lattice: enumeration budget exhausted\n";
    out << "spectrum: " << spc.points.size() << " closed points, discrete\n";
    out << "result: " << (ok ? (exhausted ? "partial" : "pass") : "fail") << "\n";
  });
  if (exhausted) return exit_budget;
  return ok ? exit_ok : exit_semantic;
}

}  // namespace cli_detail

// ---------------------------------------------------------------------------
// Dispatch

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"computer algebra for finitely generated global representations"};
  app.require_subcommand(1);

  std::string family_arg, object_arg, ideal_arg, format_arg, out_path;
  int truncation = -1, budget = -1;
  std::vector<std::string> suites;

  auto add_common = [&](CLI::App* cmd, bool with_object, bool with_ideal) {
    cmd->add_option("--family", family_arg, "builtin descriptor kind:p:bound, unbounded kind:p, or a json path");
    if (with_object) cmd->add_option("--object", object_arg, "object expression or rep:NAME / file:PATH");
    if (with_ideal) cmd->add_option("--ideal", ideal_arg, "json path, class list, gen:EXPR, or none");
    cmd->add_option("--truncation", truncation, "order threshold / window level count");
    cmd->add_option("--format", format_arg, "text or json")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--budget", budget, "enumeration and sampling budget");
    cmd->add_option("--out", out_path, "also write the json payload to this path");
  };

  CLI::App* validate = app.add_subcommand("validate", "check the family and every named object against the laws");
  add_common(validate, false, false);
  CLI::App* support_cmd = app.add_subcommand("support", "classes where an object is nonzero");
  add_common(support_cmd, true, false);
  CLI::App* member = app.add_subcommand("member", "decide ideal membership with a replayable certificate");
  add_common(member, true, true);
  CLI::App* decompose = app.add_subcommand("decompose", "filter an object into single-class pieces");
  add_common(decompose, true, false);
  CLI::App* spectrum = app.add_subcommand("spectrum", "classify the prime ideals of the family");
  add_common(spectrum, false, false);
  CLI::App* kan = app.add_subcommand("kan", "restriction and both extensions along an order threshold");
  add_common(kan, true, false);
  CLI::App* check = app.add_subcommand("check", "run the named property suites, or all of them");
  add_common(check, false, false);
  check->add_option("suites", suites, "suite names (family, rep, kan, serre, spectrum)");
  CLI::App* report = app.add_subcommand("report", "one-stop workspace report");
  add_common(report, false, false);

  try {
    std::vector<const char*> argv;
    argv.push_back("globrep");
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_input;
  }

  try {
    std::string format;
    cli_detail::Workspace ws;
    if (!check->parsed()) {
      ws = cli_detail::load_workspace(family_arg, format_arg, truncation);
      format = ws.cfg.format;
    } else {
      format = format_arg.empty() ? "text" : format_arg;
    }
    cli_detail::CommandIO io{format, out_path, &out};
    if (validate->parsed()) return cli_detail::cmd_validate(ws, io);
    if (support_cmd->parsed()) return cli_detail::cmd_support(ws, object_arg, io);
    if (member->parsed()) return cli_detail::cmd_member(ws, object_arg, ideal_arg, io);
    if (decompose->parsed()) return cli_detail::cmd_decompose(ws, object_arg, io);
    if (spectrum->parsed()) return cli_detail::cmd_spectrum(ws, budget, io);
    if (kan->parsed()) return cli_detail::cmd_kan(ws, object_arg, io);
    if (check->parsed()) return cli_detail::cmd_check(suites, budget, truncation, io);
    if (report->parsed()) return cli_detail::cmd_report(ws, budget, io);
    err << "input error: no command\n";
    return exit_input;
  } catch (const budget_error& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return exit_budget;
  } catch (const input_error& e) {
    err << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_semantic;
  }
}

}  // namespace globrep
