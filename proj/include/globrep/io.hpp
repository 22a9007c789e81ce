#pragma once

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "family.hpp"
#include "rep.hpp"
#include "serre.hpp"
#include "spectrum.hpp"

namespace globrep {

// Insertion-ordered json keeps emission deterministic: identical values
// serialize to identical bytes.
using Json = nlohmann::ordered_json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw input_error(path + ": " + e.what());
  }
  return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write " + path);
  out << text;
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw input_error(where + ": missing field '" + key + "'");
  return *it;
}

inline int class_index(const GroupFamily& fam, const std::string& label, const std::string& where) {
  int g = fam.class_by_label(label);
  if (g < 0) throw input_error(where + ": unknown class label '" + label + "'");
  return g;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Matrices: arrays of rows, entries as exact "p/q" strings

inline Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rational_to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat mat_from_json(const Json& j, int rows, int cols, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw input_error(where + ": expected " + std::to_string(rows) + " rows");
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw input_error(where + ": expected " + std::to_string(cols) + " columns in row " + std::to_string(i));
    for (int c = 0; c < cols; ++c) {
      try {
        m(i, c) = parse_rational(row[c].get<std::string>());
      } catch (const std::exception&) {
        throw input_error(where + ": bad rational at (" + std::to_string(i) + "," + std::to_string(c) + ")");
      }
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Families: builtin descriptors or fully explicit custom tables

inline Json family_to_json(const GroupFamily& fam) {
  Json j;
  switch (fam.kind) {
    case FamilyKind::cyclic_p:
      j["kind"] = "cyclic_p";
      j["p"] = fam.p;
      j["max_exponent"] = fam.bound;
      return j;
    case FamilyKind::elementary_abelian:
      j["kind"] = "elementary_abelian";
      j["p"] = fam.p;
      j["max_rank"] = fam.bound;
      return j;
    case FamilyKind::abelian_p:
      j["kind"] = "abelian_p";
      j["p"] = fam.p;
      j["order_bound"] = fam.bound;
      return j;
    case FamilyKind::abelian_list: {
      j["kind"] = "abelian_list";
      Json groups = Json::array();
      for (int g = 0; g < fam.n(); ++g) groups.push_back(fam.cls(g).group->factors);
      j["groups"] = std::move(groups);
      return j;
    }
    case FamilyKind::custom: {
      j["kind"] = "custom";
      Json objects = Json::array();
      for (int g = 0; g < fam.n(); ++g) objects.push_back({{"label", fam.label(g)}, {"order", fam.order(g)}});
      j["objects"] = std::move(objects);
      Json homs = Json::array();
      for (int s = 0; s < fam.n(); ++s)
        for (int d = 0; d < fam.n(); ++d) {
          if (fam.hom_count(s, d) == 0) continue;
          Json labels = Json::array();
          for (const HomClass& h : fam.homs(s, d)) labels.push_back(h.label);
          homs.push_back({{"src", fam.label(s)}, {"dst", fam.label(d)}, {"classes", std::move(labels)}});
        }
      j["homs"] = std::move(homs);
      Json identity;
      for (int g = 0; g < fam.n(); ++g) identity[fam.label(g)] = fam.homs(g, g)[fam.identity_class(g)].label;
      j["identity"] = std::move(identity);
      Json compose = Json::array();
      for (int s = 0; s < fam.n(); ++s)
        for (int m = 0; m < fam.n(); ++m)
          for (int d = 0; d < fam.n(); ++d)
            for (int a = 0; a < fam.hom_count(m, d); ++a)
              for (int b = 0; b < fam.hom_count(s, m); ++b)
                compose.push_back({{"src", fam.label(s)},
                                   {"mid", fam.label(m)},
                                   {"dst", fam.label(d)},
                                   {"alpha", fam.homs(m, d)[a].label},
                                   {"beta", fam.homs(s, m)[b].label},
                                   {"result", fam.homs(s, d)[fam.compose(s, m, d, a, b)].label}});
      j["compose"] = std::move(compose);
      return j;
    }
  }
  throw internal_error("unreachable");
}

inline FamilyPtr family_from_json(const Json& j) {
  std::string where = "family";
  std::string kind = detail::field(j, "kind", where).get<std::string>();
  if (kind == "cyclic_p")
    return build_cyclic_p(detail::field(j, "p", where).get<long long>(),
                          detail::field(j, "max_exponent", where).get<long long>());
  if (kind == "elementary_abelian")
    return build_elementary_abelian(detail::field(j, "p", where).get<long long>(),
                                    detail::field(j, "max_rank", where).get<long long>());
  if (kind == "abelian_p")
    return build_abelian_p(detail::field(j, "p", where).get<long long>(),
                           detail::field(j, "order_bound", where).get<long long>());
  if (kind == "abelian_list") {
    std::vector<AbelianGroup> groups;
    for (const Json& g : detail::field(j, "groups", where))
      groups.push_back({g.get<std::vector<long long>>()});
    return build_abelian_list(std::move(groups));
  }
  if (kind == "custom") {
    CustomTable t;
    for (const Json& o : detail::field(j, "objects", where))
      t.objects.push_back({detail::field(o, "label", where).get<std::string>(),
                           detail::field(o, "order", where).get<long long>()});
    for (const Json& h : detail::field(j, "homs", where)) {
      auto key = std::make_pair(detail::field(h, "src", where).get<std::string>(),
                                detail::field(h, "dst", where).get<std::string>());
      t.homs[key] = detail::field(h, "classes", where).get<std::vector<std::string>>();
    }
    for (auto it = detail::field(j, "identity", where).begin(); it != detail::field(j, "identity", where).end(); ++it)
      t.identity[it.key()] = it.value().get<std::string>();
    for (const Json& c : detail::field(j, "compose", where)) {
      auto triple = std::make_tuple(detail::field(c, "src", where).get<std::string>(),
                                    detail::field(c, "mid", where).get<std::string>(),
                                    detail::field(c, "dst", where).get<std::string>());
      auto ab = std::make_pair(detail::field(c, "alpha", where).get<std::string>(),
                               detail::field(c, "beta", where).get<std::string>());
      if (t.compose[triple].count(ab)) throw input_error(where + ": duplicate composition entry");
      t.compose[triple][ab] = detail::field(c, "result", where).get<std::string>();
    }
    return FamilyBuilder::custom(t);
  }
  throw input_error(where + ": unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Objects: dims by class label, transitions by hom-class label

// Core payload without the family, for nesting inside larger files.
inline Json rep_core_to_json(const Rep& x) {
  const GroupFamily& fam = *x.fam;
  Json j;
  Json dims;
  for (int g = 0; g < fam.n(); ++g) dims[fam.label(g)] = x.dims[g];
  j["dims"] = std::move(dims);
  Json transitions = Json::array();
  for (int s = 0; s < fam.n(); ++s)
    for (int d = 0; d < fam.n(); ++d) {
      if (fam.hom_count(s, d) == 0 || x.dims[s] == 0 || x.dims[d] == 0) continue;
      Json by;
      for (int k = 0; k < fam.hom_count(s, d); ++k) by[fam.homs(s, d)[k].label] = mat_to_json(x.t(s, d, k));
      transitions.push_back({{"src", fam.label(s)}, {"dst", fam.label(d)}, {"by", std::move(by)}});
    }
  j["transitions"] = std::move(transitions);
  return j;
}

inline Rep rep_core_from_json(const Json& j, FamilyPtr fam, const std::string& where = "object") {
  const Json& dims = detail::field(j, "dims", where);
  std::vector<int> d(fam->n(), 0);
  for (auto it = dims.begin(); it != dims.end(); ++it) {
    int g = detail::class_index(*fam, it.key(), where);
    long long v = it.value().get<long long>();
    if (v < 0) throw input_error(where + ": negative dimension at " + it.key());
    d[g] = static_cast<int>(v);
  }
  Rep x = make_rep(fam, d);
  for (const Json& block : detail::field(j, "transitions", where)) {
    int s = detail::class_index(*fam, detail::field(block, "src", where).get<std::string>(), where);
    int dd = detail::class_index(*fam, detail::field(block, "dst", where).get<std::string>(), where);
    const Json& by = detail::field(block, "by", where);
    for (auto it = by.begin(); it != by.end(); ++it) {
      int k = fam->hom_by_label(s, dd, it.key());
      if (k < 0)
        throw input_error(where + ": unknown hom label '" + it.key() + "' on " + fam->label(s) + "->" +
                          fam->label(dd));
      x.t(s, dd, k) = mat_from_json(it.value(), x.dims[s], x.dims[dd],
                                    where + ": transition " + fam->label(s) + "->" + fam->label(dd));
    }
  }
  return x;
}

inline Json rep_to_json(const Rep& x) {
  Json j;
  j["family"] = family_to_json(*x.fam);
  Json core = rep_core_to_json(x);
  j["dims"] = std::move(core["dims"]);
  j["transitions"] = std::move(core["transitions"]);
  return j;
}

// When a family is supplied, an embedded family descriptor must match it.
inline Rep rep_from_json(const Json& j, FamilyPtr fam = nullptr) {
  if (j.contains("family")) {
    FamilyPtr embedded = family_from_json(j["family"]);
    if (fam && family_to_json(*fam) != family_to_json(*embedded))
      throw input_error("object: embedded family differs from the workspace family");
    if (!fam) fam = embedded;
  }
  if (!fam) throw input_error("object: no family given or embedded");
  return rep_core_from_json(j, fam);
}

// Morphism components, positional by class index; shapes come from context.
inline Json morphism_components_to_json(const RepMorphism& f) {
  Json comps = Json::array();
  for (const Mat& m : f.comp) comps.push_back(mat_to_json(m));
  return comps;
}

inline RepMorphism morphism_from_json(const Json& j, Rep src, Rep tgt, const std::string& where = "morphism") {
  if (!j.is_array() || static_cast<int>(j.size()) != src.fam->n())
    throw input_error(where + ": expected one component per class");
  RepMorphism f{std::move(src), std::move(tgt), {}};
  for (int g = 0; g < f.src.fam->n(); ++g)
    f.comp.push_back(mat_from_json(j[g], f.tgt.dims[g], f.src.dims[g], where + " component " + std::to_string(g)));
  return f;
}

// ---------------------------------------------------------------------------
// Ideals

inline Json ideal_to_json(const IdealSpec& ideal) {
  Json j;
  Json supp = Json::array();
  for (int g : ideal.support) supp.push_back(ideal.fam->label(g));
  j["support"] = std::move(supp);
  Json gens = Json::array();
  for (size_t i = 0; i < ideal.generator_supports.size(); ++i) {
    Json gs = Json::array();
    for (int g : ideal.generator_supports[i]) gs.push_back(ideal.fam->label(g));
    gens.push_back({{"name", i < ideal.generator_names.size() ? ideal.generator_names[i] : ""},
                    {"support", std::move(gs)}});
  }
  j["generators"] = std::move(gens);
  return j;
}

inline IdealSpec ideal_from_json(const Json& j, FamilyPtr fam) {
  std::string where = "ideal";
  IdealSpec ideal{fam, {}, {}, {}};
  for (const Json& l : detail::field(j, "support", where))
    ideal.support.insert(detail::class_index(*fam, l.get<std::string>(), where));
  for (const Json& g : detail::field(j, "generators", where)) {
    std::set<int> supp;
    for (const Json& l : detail::field(g, "support", where))
      supp.insert(detail::class_index(*fam, l.get<std::string>(), where));
    ideal.generator_supports.push_back(std::move(supp));
    ideal.generator_names.push_back(detail::field(g, "name", where).get<std::string>());
  }
  return ideal;
}

// ---------------------------------------------------------------------------
// Certificates: ordered steps with dims, matrices, and per-step status

inline Json filtration_to_json(const FiltrationCertificate& cert) {
  const GroupFamily& fam = *cert.object.fam;
  Json j;
  j["family"] = family_to_json(fam);
  j["object"] = rep_core_to_json(cert.object);
  Json stripped = Json::array();
  for (int g : cert.stripped_classes) stripped.push_back(fam.label(g));
  j["stripped"] = std::move(stripped);
  Json steps = Json::array();
  for (const FiltStep& step : cert.steps) {
    Json s;
    s["class"] = fam.label(step.cls);
    s["piece_is_sub"] = step.piece_is_sub;
    s["before"] = rep_core_to_json(step.before);
    s["after"] = rep_core_to_json(step.after);
    s["piece"] = rep_core_to_json(step.piece);
    s["mono"] = morphism_components_to_json(step.mono);
    s["epi"] = morphism_components_to_json(step.epi);
    s["named"] = rep_core_to_json(step.named);
    s["witness"] = morphism_components_to_json(step.witness);
    s["exact"] = ses_is_exact(step.mono, step.epi);
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  std::string why;
  j["verified"] = verify_filtration(cert, &why);
  j["why"] = why;
  return j;
}

inline FiltrationCertificate filtration_from_json(const Json& j, FamilyPtr fam = nullptr) {
  std::string where = "certificate";
  if (j.contains("family")) {
    FamilyPtr embedded = family_from_json(j["family"]);
    if (fam && family_to_json(*fam) != family_to_json(*embedded))
      throw input_error(where + ": embedded family differs from the workspace family");
    if (!fam) fam = embedded;
  }
  if (!fam) throw input_error(where + ": no family given or embedded");
  FiltrationCertificate cert;
  cert.object = rep_core_from_json(detail::field(j, "object", where), fam, where + " object");
  for (const Json& l : detail::field(j, "stripped", where))
    cert.stripped_classes.push_back(detail::class_index(*fam, l.get<std::string>(), where));
  for (const Json& s : detail::field(j, "steps", where)) {
    FiltStep step;
    step.cls = detail::class_index(*fam, detail::field(s, "class", where).get<std::string>(), where);
    step.piece_is_sub = detail::field(s, "piece_is_sub", where).get<bool>();
    step.before = rep_core_from_json(detail::field(s, "before", where), fam, where + " before");
    step.after = rep_core_from_json(detail::field(s, "after", where), fam, where + " after");
    step.piece = rep_core_from_json(detail::field(s, "piece", where), fam, where + " piece");
    step.named = rep_core_from_json(detail::field(s, "named", where), fam, where + " named");
    if (step.piece_is_sub) {
      step.mono = morphism_from_json(detail::field(s, "mono", where), step.piece, step.before, where + " mono");
      step.epi = morphism_from_json(detail::field(s, "epi", where), step.before, step.after, where + " epi");
    } else {
      step.mono = morphism_from_json(detail::field(s, "mono", where), step.after, step.before, where + " mono");
      step.epi = morphism_from_json(detail::field(s, "epi", where), step.before, step.piece, where + " epi");
    }
    step.witness = morphism_from_json(detail::field(s, "witness", where), step.piece, step.named, where + " witness");
    cert.steps.push_back(std::move(step));
  }
  return cert;
}

inline Json membership_to_json(const MembershipCertificate& cert, const Rep& x, const IdealSpec& ideal) {
  Json j;
  j["family"] = family_to_json(*x.fam);
  j["ideal"] = ideal_to_json(ideal);
  j["member"] = cert.member;
  Json off = Json::array();
  for (int g : cert.offending) off.push_back(x.fam->label(g));
  j["offending"] = std::move(off);
  if (cert.member) {
    Json filt = filtration_to_json(cert.filtration);
    filt.erase("family");
    j["filtration"] = std::move(filt);
    j["generator_for_step"] = cert.generator_for_step;
  }
  std::string why;
  j["verified"] = verify_membership(cert, x, ideal, &why);
  j["why"] = why;
  return j;
}

inline MembershipCertificate membership_from_json(const Json& j, FamilyPtr fam) {
  std::string where = "certificate";
  MembershipCertificate cert;
  cert.member = detail::field(j, "member", where).get<bool>();
  for (const Json& l : detail::field(j, "offending", where))
    cert.offending.insert(detail::class_index(*fam, l.get<std::string>(), where));
  if (cert.member) {
    cert.filtration = filtration_from_json(detail::field(j, "filtration", where), fam);
    cert.generator_for_step = detail::field(j, "generator_for_step", where).get<std::vector<int>>();
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Spectrum reports

inline Json spectrum_report_to_json(const SpectrumReport& rep) {
  Json j;
  j["family"] = family_to_json(*rep.fam);
  Json points = Json::array();
  for (const SpcPoint& p : rep.points)
    points.push_back({{"class", p.label}, {"prime", ideal_to_json(p.prime)}});
  j["points"] = std::move(points);
  j["ideal_count"] = rep.ideal_count;
  j["all_points_prime"] = rep.all_points_prime;
  j["lattice_scanned"] = rep.lattice_scanned;
  j["no_other_primes"] = rep.no_other_primes;
  j["realization_checked"] = rep.realization_checked;
  j["subsets_realized"] = rep.subsets_realized;
  j["discrete"] = true;
  return j;
}

inline SpectrumReport spectrum_report_from_json(const Json& j) {
  std::string where = "spectrum";
  SpectrumReport rep;
  rep.fam = family_from_json(detail::field(j, "family", where));
  for (const Json& p : detail::field(j, "points", where)) {
    SpcPoint pt;
    pt.label = detail::field(p, "class", where).get<std::string>();
    pt.cls = detail::class_index(*rep.fam, pt.label, where);
    pt.prime = ideal_from_json(detail::field(p, "prime", where), rep.fam);
    rep.points.push_back(std::move(pt));
  }
  rep.ideal_count = detail::field(j, "ideal_count", where).get<unsigned long long>();
  rep.all_points_prime = detail::field(j, "all_points_prime", where).get<bool>();
  rep.lattice_scanned = detail::field(j, "lattice_scanned", where).get<bool>();
  rep.no_other_primes = detail::field(j, "no_other_primes", where).get<bool>();
  rep.realization_checked = detail::field(j, "realization_checked", where).get<bool>();
  rep.subsets_realized = detail::field(j, "subsets_realized", where).get<bool>();
  return rep;
}

inline Json nstable_report_to_json(const NStableSpectrumReport& rep) {
  Json j;
  j["kind"] = rep.kind;
  j["p"] = rep.p;
  j["index_bound"] = rep.index_bound;
  j["sets_checked"] = rep.sets_checked;
  j["closed_dichotomy"] = rep.closed_dichotomy;
  j["unions_representable"] = rep.unions_representable;
  j["intersections_representable"] = rep.intersections_representable;
  j["level_points_closed"] = rep.level_points_closed;
  j["infinity_point_closed"] = rep.infinity_point_closed;
  j["notes"] = rep.notes;
  j["discrete"] = false;
  j["model"] = "one-point compactification of the naturals";
  return j;
}

inline NStableSpectrumReport nstable_report_from_json(const Json& j) {
  std::string where = "spectrum";
  NStableSpectrumReport rep;
  rep.kind = detail::field(j, "kind", where).get<std::string>();
  rep.p = detail::field(j, "p", where).get<long long>();
  rep.index_bound = detail::field(j, "index_bound", where).get<long long>();
  rep.sets_checked = detail::field(j, "sets_checked", where).get<int>();
  rep.closed_dichotomy = detail::field(j, "closed_dichotomy", where).get<bool>();
  rep.unions_representable = detail::field(j, "unions_representable", where).get<bool>();
  rep.intersections_representable = detail::field(j, "intersections_representable", where).get<bool>();
  rep.level_points_closed = detail::field(j, "level_points_closed", where).get<bool>();
  rep.infinity_point_closed = detail::field(j, "infinity_point_closed", where).get<bool>();
  rep.notes = detail::field(j, "notes", where).get<std::vector<std::string>>();
  return rep;
}

// ---------------------------------------------------------------------------
// Object expressions

// Grammar: unit | zero | e:LABEL | chi:LABEL | gamma:INDEX | rep:NAME |
// file:PATH | tensor(expr,expr) | dsum(expr,expr). Labels refer to family
// classes; rep and file are resolved by the caller-supplied resolver.
using ObjectResolver = std::function<Rep(const std::string& kind, const std::string& name)>;

namespace detail {

struct ExprParser {
  const std::string& text;
  size_t pos = 0;
  FamilyPtr fam;
  const ObjectResolver& resolve;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw input_error("expression '" + text + "' at position " + std::to_string(pos) + ": " + msg);
  }

  std::string token() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' && text[pos] != ',') ++pos;
    std::string t = text.substr(start, pos - start);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    if (t.empty()) fail("expected a term");
    return t;
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  Rep parse() {
    std::string t = token();
    if (t == "tensor" || t == "dsum") {
      expect('(');
      Rep a = parse();
      expect(',');
      Rep b = parse();
      expect(')');
      return t == "tensor" ? tensor(a, b) : dsum(a, b);
    }
    if (t == "unit") return unit_rep(fam);
    if (t == "zero") return zero_rep(fam);
    auto colon = t.find(':');
    if (colon == std::string::npos) fail("unknown term '" + t + "'");
    std::string head = t.substr(0, colon), arg = t.substr(colon + 1);
    if (arg.empty()) fail("empty argument in '" + t + "'");
    if (head == "e") return representable_rep(fam, class_index(*fam, arg, "expression"));
    if (head == "chi") {
      int g = class_index(*fam, arg, "expression");
      return chi_rep(fam, g, trivial_out_rep(fam, g)).rep;
    }
    if (head == "gamma") {
      try {
        size_t used = 0;
        int i = std::stoi(arg, &used);
        if (used != arg.size()) throw std::invalid_argument(arg);
        return gamma_rep(fam, i);
      } catch (const input_error&) {
        throw;
      } catch (const std::exception&) {
        fail("bad level index '" + arg + "'");
      }
    }
    if (head == "rep" || head == "file") return resolve(head, arg);
    fail("unknown term '" + t + "'");
  }
};

}  // namespace detail

inline Rep parse_object_expression(const std::string& text, FamilyPtr fam, const ObjectResolver& resolve) {
  detail::ExprParser p{text, 0, fam, resolve};
  Rep x = p.parse();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return x;
}

// ---------------------------------------------------------------------------
// Workspace configuration

struct WorkspaceBudgets {
  int closure_depth = 4;
  int enumeration_guard = 12;
  int truncation = 4;
};

struct WorkspaceConfig {
  Json family;  // builtin descriptor, custom table, or {"file": path}
  std::vector<std::pair<std::string, std::string>> objects;  // name -> expression
  std::string format = "text";
  WorkspaceBudgets budgets;
};

inline Json config_to_json(const WorkspaceConfig& cfg) {
  Json j;
  j["family"] = cfg.family;
  Json objs;
  for (const auto& [name, expr] : cfg.objects) objs[name] = expr;
  j["objects"] = std::move(objs);
  j["format"] = cfg.format;
  j["budgets"] = {{"closure_depth", cfg.budgets.closure_depth},
                  {"enumeration_guard", cfg.budgets.enumeration_guard},
                  {"truncation", cfg.budgets.truncation}};
  return j;
}

inline WorkspaceConfig config_from_json(const Json& j) {
  std::string where = "config";
  WorkspaceConfig cfg;
  cfg.family = detail::field(j, "family", where);
  if (j.contains("objects"))
    for (auto it = j["objects"].begin(); it != j["objects"].end(); ++it)
      cfg.objects.emplace_back(it.key(), it.value().get<std::string>());
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  if (cfg.format != "text" && cfg.format != "json") throw input_error(where + ": format must be text or json");
  if (j.contains("budgets")) {
    const Json& b = j["budgets"];
    if (b.contains("closure_depth")) cfg.budgets.closure_depth = b["closure_depth"].get<int>();
    if (b.contains("enumeration_guard")) cfg.budgets.enumeration_guard = b["enumeration_guard"].get<int>();
    if (b.contains("truncation")) cfg.budgets.truncation = b["truncation"].get<int>();
    if (cfg.budgets.closure_depth < 0 || cfg.budgets.enumeration_guard < 0 || cfg.budgets.truncation < 0)
      throw input_error(where + ": budgets must be nonnegative");
  }
  return cfg;
}

}  // namespace globrep
