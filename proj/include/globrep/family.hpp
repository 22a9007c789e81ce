#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "abelian.hpp"
#include "util.hpp"

namespace globrep {

enum class FamilyKind { cyclic_p, elementary_abelian, abelian_p, abelian_list, custom };

inline std::string family_kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::cyclic_p: return "cyclic_p";
    case FamilyKind::elementary_abelian: return "elementary_abelian";
    case FamilyKind::abelian_p: return "abelian_p";
    case FamilyKind::abelian_list: return "abelian_list";
    case FamilyKind::custom: return "custom";
  }
  return "?";
}

struct HomClass {
  std::string label;
  HomMat mat;  // empty for custom families
};

// A finite family of group classes with the surjection-class hom sets between
// them. Classes are sorted by (order, label); hom classes per pair are sorted
// by label. For families with abelian payloads composition is computed from
// the matrices; custom families carry an explicit table.
class GroupFamily {
 public:
  struct ClassInfo {
    std::string label;
    long long order = 1;
    std::optional<AbelianGroup> group;
  };

  FamilyKind kind = FamilyKind::custom;
  long long p = 0;      // prime parameter for builtin kinds
  long long bound = 0;  // max exponent / max rank / order bound

  int n() const { return static_cast<int>(classes_.size()); }
  const ClassInfo& cls(int i) const { return classes_[i]; }
  const std::string& label(int i) const { return classes_[i].label; }
  long long order(int i) const { return classes_[i].order; }
  const std::vector<HomClass>& homs(int src, int dst) const {
    return homs_[static_cast<size_t>(src) * n() + dst];
  }
  int hom_count(int src, int dst) const { return static_cast<int>(homs(src, dst).size()); }
  int identity_class(int g) const { return identity_[g]; }
  bool has_groups() const { return has_groups_; }
  bool custom_composition() const { return custom_comp_table_.has_value(); }

  long long max_order() const {
    long long m = 1;
    for (const auto& c : classes_) m = std::max(m, c.order);
    return m;
  }

  int class_by_label(const std::string& l) const {
    for (int i = 0; i < n(); ++i)
      if (classes_[i].label == l) return i;
    return -1;
  }

  // Composite of beta: src -> mid followed by alpha: mid -> dst.
  int compose(int src, int mid, int dst, int alpha, int beta) const {
    if (custom_comp_table_) {
      auto it = custom_comp_table_->find(key(src, mid, dst, alpha, beta));
      if (it == custom_comp_table_->end()) throw internal_error("composition missing from custom table");
      return it->second;
    }
    const AbelianGroup& s = *classes_[src].group;
    const AbelianGroup& m = *classes_[mid].group;
    const AbelianGroup& d = *classes_[dst].group;
    HomMat prod = hom_compose(s, m, d, homs(mid, dst)[alpha].mat, homs(src, mid)[beta].mat);
    return hom_by_mat(src, dst, prod);
  }

  int hom_by_mat(int src, int dst, const HomMat& m) const {
    const auto& idx = hom_index_[static_cast<size_t>(src) * n() + dst];
    auto it = idx.find(m);
    if (it == idx.end()) throw internal_error("hom matrix not found; family tables inconsistent");
    return it->second;
  }

  int hom_by_label(int src, int dst, const std::string& l) const {
    const auto& hs = homs(src, dst);
    for (int k = 0; k < static_cast<int>(hs.size()); ++k)
      if (hs[k].label == l) return k;
    return -1;
  }

  friend class FamilyBuilder;

 private:
  static std::tuple<int, int, int, int, int> key(int s, int m, int d, int a, int b) {
    return {s, m, d, a, b};
  }

  std::vector<ClassInfo> classes_;
  std::vector<std::vector<HomClass>> homs_;
  std::vector<std::map<HomMat, int>> hom_index_;
  std::vector<int> identity_;
  std::optional<std::map<std::tuple<int, int, int, int, int>, int>> custom_comp_table_;
  bool has_groups_ = false;
};

using FamilyPtr = std::shared_ptr<const GroupFamily>;

// Explicit input for a custom family. Everything is label-addressed; the
// builder sorts, indexes, and validates exhaustively.
struct CustomTable {
  struct Obj {
    std::string label;
    long long order = 1;
  };
  std::vector<Obj> objects;
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> homs;
  std::map<std::string, std::string> identity;  // object -> hom label in homs(obj,obj)
  // (src, mid, dst) -> (alpha: mid->dst, beta: src->mid) -> composite label
  std::map<std::tuple<std::string, std::string, std::string>,
           std::map<std::pair<std::string, std::string>, std::string>>
      compose;
};

class FamilyBuilder {
 public:
  // Family whose classes are the given abelian groups (full subcategory of
  // all finite abelian groups). Groups must be valid, distinct types.
  static FamilyPtr abelian(std::vector<AbelianGroup> groups, FamilyKind kind, long long p,
                           long long bound, long long hom_budget = (1LL << 22)) {
    for (const auto& g : groups)
      if (!g.is_valid()) throw input_error("invalid invariant factors: " + g.label());
    std::sort(groups.begin(), groups.end(), [](const AbelianGroup& a, const AbelianGroup& b) {
      return std::make_pair(a.order(), a.label()) < std::make_pair(b.order(), b.label());
    });
    for (size_t i = 0; i + 1 < groups.size(); ++i)
      if (groups[i] == groups[i + 1]) throw input_error("duplicate class: " + groups[i].label());

    auto fam = std::make_shared<GroupFamily>();
    fam->kind = kind;
    fam->p = p;
    fam->bound = bound;
    fam->has_groups_ = true;
    for (const auto& g : groups) fam->classes_.push_back({g.label(), g.order(), g});
    int n = fam->n();
    fam->homs_.resize(static_cast<size_t>(n) * n);
    fam->hom_index_.resize(static_cast<size_t>(n) * n);
    for (int s = 0; s < n; ++s)
      for (int d = 0; d < n; ++d) {
        const AbelianGroup& src = *fam->classes_[s].group;
        const AbelianGroup& dst = *fam->classes_[d].group;
        if (src.order() % dst.order() != 0) continue;  // no surjection possible
        auto mats = enumerate_surjective_homs(src, dst, hom_budget);
        auto& out = fam->homs_[static_cast<size_t>(s) * n + d];
        auto& idx = fam->hom_index_[static_cast<size_t>(s) * n + d];
        for (const auto& m : mats) {
          idx[m] = static_cast<int>(out.size());
          out.push_back({hom_mat_label(src, dst, m), m});
        }
      }
    fam->identity_.resize(n);
    for (int g = 0; g < n; ++g) fam->identity_[g] = fam->hom_by_mat(g, g, identity_hom(*fam->classes_[g].group));
    return fam;
  }

  static FamilyPtr custom(const CustomTable& t) {
    auto fam = std::make_shared<GroupFamily>();
    fam->kind = FamilyKind::custom;
    fam->has_groups_ = false;
    std::vector<CustomTable::Obj> objs = t.objects;
    std::sort(objs.begin(), objs.end(), [](const auto& a, const auto& b) {
      return std::make_pair(a.order, a.label) < std::make_pair(b.order, b.label);
    });
    for (size_t i = 0; i + 1 < objs.size(); ++i)
      if (objs[i].label == objs[i + 1].label) throw input_error("duplicate object label " + objs[i].label);
    for (const auto& o : objs) fam->classes_.push_back({o.label, o.order, std::nullopt});
    int n = fam->n();
    fam->homs_.resize(static_cast<size_t>(n) * n);
    fam->hom_index_.resize(static_cast<size_t>(n) * n);
    for (const auto& [pair, labels] : t.homs) {
      int s = fam->class_by_label(pair.first), d = fam->class_by_label(pair.second);
      if (s < 0 || d < 0) throw input_error("hom table references unknown object " + pair.first + "/" + pair.second);
      std::vector<std::string> sorted = labels;
      std::sort(sorted.begin(), sorted.end());
      for (size_t i = 0; i + 1 < sorted.size(); ++i)
        if (sorted[i] == sorted[i + 1])
          throw input_error("duplicate hom label " + sorted[i] + " on " + pair.first + "->" + pair.second);
      for (const auto& l : sorted) fam->homs_[static_cast<size_t>(s) * n + d].push_back({l, {}});
    }
    fam->custom_comp_table_.emplace();
    for (const auto& [triple, table] : t.compose) {
      int s = fam->class_by_label(std::get<0>(triple));
      int m = fam->class_by_label(std::get<1>(triple));
      int d = fam->class_by_label(std::get<2>(triple));
      if (s < 0 || m < 0 || d < 0) throw input_error("composition table references unknown object");
      for (const auto& [ab, res] : table) {
        int a = fam->hom_by_label(m, d, ab.first);
        int b = fam->hom_by_label(s, m, ab.second);
        int r = fam->hom_by_label(s, d, res);
        if (a < 0 || b < 0 || r < 0)
          throw input_error("composition entry references unknown hom (" + ab.first + "," + ab.second + ")");
        (*fam->custom_comp_table_)[GroupFamily::key(s, m, d, a, b)] = r;
      }
    }
    fam->identity_.assign(n, -1);
    for (const auto& [obj, hom] : t.identity) {
      int g = fam->class_by_label(obj);
      if (g < 0) throw input_error("identity table references unknown object " + obj);
      int k = fam->hom_by_label(g, g, hom);
      if (k < 0) throw input_error("identity hom " + hom + " missing on " + obj);
      fam->identity_[g] = k;
    }
    for (int g = 0; g < n; ++g)
      if (fam->identity_[g] < 0) throw input_error("no identity hom declared for " + fam->label(g));
    // Totality of the composition table.
    for (int s = 0; s < n; ++s)
      for (int m = 0; m < n; ++m)
        for (int d = 0; d < n; ++d)
          for (int a = 0; a < fam->hom_count(m, d); ++a)
            for (int b = 0; b < fam->hom_count(s, m); ++b)
              if (!fam->custom_comp_table_->count(GroupFamily::key(s, m, d, a, b)))
                throw input_error("composition table is not total at " + fam->label(s) + "->" + fam->label(m) +
                                  "->" + fam->label(d));
    return fam;
  }
};

inline FamilyPtr build_cyclic_p(long long p, long long max_exponent) {
  if (p < 2 || max_exponent < 0) throw input_error("cyclic_p requires p >= 2 and max_exponent >= 0");
  std::vector<AbelianGroup> gs;
  long long q = 1;
  for (long long k = 0; k <= max_exponent; ++k) {
    gs.push_back(k == 0 ? AbelianGroup{} : AbelianGroup{{q}});
    if (k < max_exponent) q *= p;
  }
  return FamilyBuilder::abelian(std::move(gs), FamilyKind::cyclic_p, p, max_exponent);
}

inline FamilyPtr build_elementary_abelian(long long p, long long max_rank) {
  if (p < 2 || max_rank < 0) throw input_error("elementary_abelian requires p >= 2 and max_rank >= 0");
  std::vector<AbelianGroup> gs;
  for (long long r = 0; r <= max_rank; ++r) gs.push_back(AbelianGroup{std::vector<long long>(r, p)});
  return FamilyBuilder::abelian(std::move(gs), FamilyKind::elementary_abelian, p, max_rank);
}

namespace detail {
inline void partitions_of(int a, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (a == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(a, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_of(a - part, part, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

// All abelian p-groups of order <= order_bound.
inline FamilyPtr build_abelian_p(long long p, long long order_bound) {
  if (p < 2 || order_bound < 1) throw input_error("abelian_p requires p >= 2 and order_bound >= 1");
  std::vector<AbelianGroup> gs{AbelianGroup{}};
  long long q = p;
  for (int a = 1; q <= order_bound; ++a, q *= p) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    detail::partitions_of(a, a, cur, parts);
    for (const auto& lambda : parts) {
      std::vector<long long> factors;
      for (auto it = lambda.rbegin(); it != lambda.rend(); ++it) {
        long long f = 1;
        for (int e = 0; e < *it; ++e) f *= p;
        factors.push_back(f);
      }
      std::sort(factors.begin(), factors.end());
      gs.push_back(AbelianGroup{factors});
    }
    if (q > order_bound / p && q * p > order_bound) break;
  }
  return FamilyBuilder::abelian(std::move(gs), FamilyKind::abelian_p, p, order_bound);
}

inline FamilyPtr build_abelian_list(std::vector<AbelianGroup> groups) {
  return FamilyBuilder::abelian(std::move(groups), FamilyKind::abelian_list, 0, 0);
}

// ---------------------------------------------------------------------------
// Structural predicates and truncation

struct FamilyValidationReport {
  bool ok = true;
  std::vector<std::string> errors;
  bool exhaustive_associativity = true;
  unsigned long long associativity_checked = 0;

  void fail(std::string msg) {
    ok = false;
    if (errors.size() < 50) errors.push_back(std::move(msg));
  }
};

// Checks category laws (identities, closure, associativity) and, when abelian
// payloads are present, that the hom tables are exactly the surjective
// homomorphisms sorted canonically. Associativity is budget-capped; the
// report says whether coverage was exhaustive.
inline FamilyValidationReport validate_family(const GroupFamily& fam,
                                              unsigned long long assoc_budget = 20'000'000ULL) {
  FamilyValidationReport rep;
  int n = fam.n();
  for (int i = 0; i + 1 < n; ++i) {
    auto ka = std::make_pair(fam.order(i), fam.label(i));
    auto kb = std::make_pair(fam.order(i + 1), fam.label(i + 1));
    if (!(ka < kb)) rep.fail("classes not sorted/unique at " + fam.label(i));
  }
  if (fam.has_groups()) {
    for (int s = 0; s < n; ++s)
      for (int d = 0; d < n; ++d) {
        const auto& hs = fam.homs(s, d);
        const AbelianGroup& src = *fam.cls(s).group;
        const AbelianGroup& dst = *fam.cls(d).group;
        auto expect = enumerate_surjective_homs(src, dst);
        if (expect.size() != hs.size()) {
          rep.fail("hom table size mismatch " + fam.label(s) + "->" + fam.label(d));
          continue;
        }
        for (size_t k = 0; k < hs.size(); ++k)
          if (hs[k].mat != expect[k] || hs[k].label != hom_mat_label(src, dst, expect[k]))
            rep.fail("hom class out of canonical order at " + fam.label(s) + "->" + fam.label(d));
      }
  }
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d) {
      const auto& hs = fam.homs(s, d);
      for (size_t k = 0; k + 1 < hs.size(); ++k)
        if (!(hs[k].label < hs[k + 1].label)) rep.fail("hom labels not sorted at " + fam.label(s) + "->" + fam.label(d));
      if (s != d && fam.order(s) == fam.order(d) && !hs.empty())
        rep.fail("surjection between distinct same-order classes " + fam.label(s) + "->" + fam.label(d));
      if (fam.order(s) % fam.order(d) != 0 && !hs.empty())
        rep.fail("surjection onto a non-dividing order " + fam.label(s) + "->" + fam.label(d));
    }
  // Identity laws.
  for (int g = 0; g < n; ++g) {
    int e = fam.identity_class(g);
    if (e < 0 || e >= fam.hom_count(g, g)) {
      rep.fail("missing identity at " + fam.label(g));
      continue;
    }
    for (int d = 0; d < n; ++d)
      for (int a = 0; a < fam.hom_count(g, d); ++a)
        if (fam.compose(g, g, d, a, e) != a) rep.fail("right identity law fails at " + fam.label(g));
    for (int s = 0; s < n; ++s)
      for (int b = 0; b < fam.hom_count(s, g); ++b)
        if (fam.compose(s, g, g, e, b) != b) rep.fail("left identity law fails into " + fam.label(g));
    // Endo classes are surjections of a finite object onto itself, hence
    // invertible: each must have a two-sided inverse.
    for (int a = 0; a < fam.hom_count(g, g); ++a) {
      bool invertible = false;
      for (int b = 0; b < fam.hom_count(g, g) && !invertible; ++b)
        invertible = fam.compose(g, g, g, a, b) == e && fam.compose(g, g, g, b, a) == e;
      if (!invertible) rep.fail("non-invertible endo class at " + fam.label(g));
    }
  }
  // Closure: memoize every composite once; the table then makes exhaustive
  // associativity cheap (index lookups instead of matrix products).
  auto tbl = [&](int s, int m, int d) -> std::vector<int> {
    std::vector<int> t(static_cast<size_t>(fam.hom_count(m, d)) * fam.hom_count(s, m), -1);
    for (int a = 0; a < fam.hom_count(m, d); ++a)
      for (int b = 0; b < fam.hom_count(s, m); ++b) {
        int r;
        try {
          r = fam.compose(s, m, d, a, b);
        } catch (const internal_error& e) {
          rep.fail(std::string("composition not closed: ") + e.what());
          continue;
        }
        if (r < 0 || r >= fam.hom_count(s, d)) {
          rep.fail("composition index out of range");
          continue;
        }
        t[static_cast<size_t>(a) * fam.hom_count(s, m) + b] = r;
      }
    return t;
  };
  std::map<std::tuple<int, int, int>, std::vector<int>> memo;
  auto table = [&](int s, int m, int d) -> const std::vector<int>& {
    auto it = memo.find({s, m, d});
    if (it == memo.end()) it = memo.emplace(std::make_tuple(s, m, d), tbl(s, m, d)).first;
    return it->second;
  };
  // Associativity over paths s -> m -> d -> e.
  unsigned long long checked = 0;
  bool exhausted = false;
  for (int s = 0; s < n && !exhausted; ++s)
    for (int m = 0; m < n && !exhausted; ++m)
      for (int d = 0; d < n && !exhausted; ++d)
        for (int e = 0; e < n && !exhausted; ++e) {
          int nc = fam.hom_count(d, e), na = fam.hom_count(m, d), nb = fam.hom_count(s, m);
          if (nc == 0 || na == 0 || nb == 0) continue;
          const auto& t_mde = table(m, d, e);
          const auto& t_smd = table(s, m, d);
          const auto& t_sme = table(s, m, e);
          const auto& t_sde = table(s, d, e);
          for (int c = 0; c < nc && !exhausted; ++c)
            for (int a = 0; a < na && !exhausted; ++a) {
              int ca = t_mde[static_cast<size_t>(c) * na + a];
              for (int b = 0; b < nb; ++b) {
                if (checked >= assoc_budget) {
                  exhausted = true;
                  break;
                }
                ++checked;
                int left = ca < 0 ? -1 : t_sme[static_cast<size_t>(ca) * nb + b];
                int ab = t_smd[static_cast<size_t>(a) * nb + b];
                int right = ab < 0 ? -1 : t_sde[static_cast<size_t>(c) * fam.hom_count(s, d) + ab];
                if (left != right || left < 0)
                  rep.fail("associativity fails on a path " + fam.label(s) + "->" + fam.label(m) + "->" +
                           fam.label(d) + "->" + fam.label(e));
              }
            }
        }
  rep.exhaustive_associativity = !exhausted;
  rep.associativity_checked = checked;
  return rep;
}

// Upward closure: classes admitting a surjection onto some member of the set.
inline std::set<int> up_closure(const GroupFamily& fam, const std::set<int>& s) {
  std::set<int> out;
  for (int i = 0; i < fam.n(); ++i)
    for (int h : s)
      if (fam.hom_count(i, h) > 0) {
        out.insert(i);
        break;
      }
  return out;
}

inline bool is_up_closed(const GroupFamily& fam, const std::set<int>& s) { return up_closure(fam, s) == s; }

inline bool is_down_closed(const GroupFamily& fam, const std::set<int>& s) {
  for (int g : s)
    for (int d = 0; d < fam.n(); ++d)
      if (!s.count(d) && fam.hom_count(g, d) > 0) return false;
  return true;
}

// Full-subcategory inclusion produced by truncate_*. Hom classes of the sub
// family are copied from the ambient family, so a sub hom class index is
// also the ambient index under object_map.
struct Inclusion {
  FamilyPtr sub, ambient;
  std::vector<int> object_map;  // sub class -> ambient class
  bool up_closed = false, down_closed = false;

  int ambient_class(int sub_cls) const { return object_map[sub_cls]; }
};

inline std::pair<FamilyPtr, Inclusion> truncate_subset(FamilyPtr fam, const std::set<int>& keep) {
  for (int i : keep)
    if (i < 0 || i >= fam->n()) throw input_error("truncation class index out of range");
  std::vector<int> object_map(keep.begin(), keep.end());  // ascending: preserves (order,label) sort
  FamilyKind kind = fam->has_groups() ? FamilyKind::abelian_list : FamilyKind::custom;
  long long p = 0, bound = 0;
  if (static_cast<int>(keep.size()) == fam->n()) kind = fam->kind, p = fam->p, bound = fam->bound;
  if (fam->has_groups()) {
    std::vector<AbelianGroup> gs;
    for (int i : object_map) gs.push_back(*fam->cls(i).group);
    auto rebuilt = FamilyBuilder::abelian(std::move(gs), kind, p, bound);
    Inclusion inc{rebuilt, fam, object_map};
    inc.up_closed = is_up_closed(*fam, keep);
    inc.down_closed = is_down_closed(*fam, keep);
    return {rebuilt, inc};
  }
  // Custom: filter the table.
  CustomTable t;
  for (int i : object_map) t.objects.push_back({fam->label(i), fam->order(i)});
  for (int s : object_map)
    for (int d : object_map) {
      std::vector<std::string> labels;
      for (const auto& h : fam->homs(s, d)) labels.push_back(h.label);
      if (!labels.empty()) t.homs[{fam->label(s), fam->label(d)}] = labels;
    }
  for (int g : object_map) t.identity[fam->label(g)] = fam->homs(g, g)[fam->identity_class(g)].label;
  for (int s : object_map)
    for (int m : object_map)
      for (int d : object_map)
        for (int a = 0; a < fam->hom_count(m, d); ++a)
          for (int b = 0; b < fam->hom_count(s, m); ++b) {
            int r = fam->compose(s, m, d, a, b);
            t.compose[{fam->label(s), fam->label(m), fam->label(d)}][{fam->homs(m, d)[a].label,
                                                                      fam->homs(s, m)[b].label}] =
                fam->homs(s, d)[r].label;
          }
  auto rebuilt = FamilyBuilder::custom(t);
  Inclusion inc{rebuilt, fam, object_map};
  inc.up_closed = is_up_closed(*fam, keep);
  inc.down_closed = is_down_closed(*fam, keep);
  return {rebuilt, inc};
}

inline std::pair<FamilyPtr, Inclusion> truncate_order_le(FamilyPtr fam, long long bound) {
  std::set<int> keep;
  for (int i = 0; i < fam->n(); ++i)
    if (fam->order(i) <= bound) keep.insert(i);
  return truncate_subset(fam, keep);
}

inline std::pair<FamilyPtr, Inclusion> truncate_order_gt(FamilyPtr fam, long long bound) {
  std::set<int> keep;
  for (int i = 0; i < fam->n(); ++i)
    if (fam->order(i) > bound) keep.insert(i);
  return truncate_subset(fam, keep);
}

struct NStableReport {
  bool totally_ordered = false;
  std::vector<int> indexing;  // class index by level, ascending order
  std::string witness;        // an incomparable pair when not totally ordered
};

// Total order check: classes are a chain under "admits a surjection onto".
inline NStableReport check_n_stable(const GroupFamily& fam) {
  NStableReport rep;
  for (int i = 0; i < fam.n(); ++i) rep.indexing.push_back(i);  // classes already sorted by (order, label)
  for (int i = 0; i < fam.n(); ++i)
    for (int j = i + 1; j < fam.n(); ++j)
      if (fam.hom_count(j, i) == 0) {
        rep.witness = "no surjection " + fam.label(j) + " -> " + fam.label(i);
        return rep;
      }
  rep.totally_ordered = true;
  return rep;
}

// Widely-closed test for a class subset: for every span G <- H -> K with all
// three classes in the subset, the image of the combined map H -> G x K must
// be isomorphic to a member of the subset. Requires abelian payloads.
inline bool is_widely_closed(const GroupFamily& fam, const std::set<int>& sub, std::string* witness = nullptr) {
  if (!fam.has_groups()) throw input_error("is_widely_closed requires abelian class payloads");
  std::set<AbelianGroup> present;
  for (int i : sub) present.insert(*fam.cls(i).group);
  for (int hi : sub) {
    const AbelianGroup& h = *fam.cls(hi).group;
    for (int gi : sub)
      for (int ki : sub) {
        const AbelianGroup& g = *fam.cls(gi).group;
        const AbelianGroup& k = *fam.cls(ki).group;
        std::vector<long long> prod = g.factors;
        prod.insert(prod.end(), k.factors.begin(), k.factors.end());
        for (const auto& phi : fam.homs(hi, gi))
          for (const auto& psi : fam.homs(hi, ki)) {
            // Generators of the image: combined columns of the two matrices.
            std::vector<Elem> gens;
            for (int col = 0; col < h.rank(); ++col) {
              Elem v(prod.size(), 0);
              for (int j = 0; j < g.rank(); ++j) v[j] = phi.mat[static_cast<size_t>(j) * h.rank() + col];
              for (int j = 0; j < k.rank(); ++j)
                v[g.rank() + j] = psi.mat[static_cast<size_t>(j) * h.rank() + col];
              gens.push_back(std::move(v));
            }
            AbelianGroup type = subgroup_type(prod, subgroup_closure(prod, gens));
            if (!present.count(type)) {
              if (witness)
                *witness = "span " + g.label() + " <- " + h.label() + " -> " + k.label() +
                           " has image of type " + type.label() + " outside the subset";
              return false;
            }
          }
      }
  }
  return true;
}

}  // namespace globrep
