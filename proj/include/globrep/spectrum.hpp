#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "family.hpp"
#include "rep.hpp"
#include "serre.hpp"

namespace globrep {

// ---------------------------------------------------------------------------
// Discrete spectrum of a finite family

// The prime attached to a class: everything supported away from it.
inline IdealSpec group_prime(FamilyPtr fam, int cls) {
  if (cls < 0 || cls >= fam->n()) throw input_error("prime class out of range");
  IdealSpec spec{fam, {}, {}, {}};
  for (int i = 0; i < fam->n(); ++i)
    if (i != cls) {
      spec.support.insert(i);
      spec.generator_supports.push_back({i});
      spec.generator_names.push_back("chi:" + fam->label(i));
    }
  return spec;
}

struct SubsetPrimality {
  bool proper = false;
  bool prime = false;
  bool exhaustive = false;  // every support pair was scanned
  // Violating pair of supports when not prime: meet inside, neither inside.
  std::optional<std::pair<std::set<int>, std::set<int>>> witness;
};

namespace detail {

inline std::set<int> mask_to_set(unsigned mask, int n) {
  std::set<int> s;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) s.insert(i);
  return s;
}

}  // namespace detail

// Replay of primality for the ideal of objects supported inside s. Since
// every subset is the support of an object, the tensor-prime condition is a
// pure lattice statement: the complement must be a single class. Claimed
// primes are re-verified by scanning all support pairs when the family is
// small enough; refutations always carry a checked witness pair.
inline SubsetPrimality subset_primality(const GroupFamily& fam, const std::set<int>& s, int pair_scan_guard = 10) {
  int n = fam.n();
  if (n > 31) throw budget_error("subset primality needs at most 31 classes");
  unsigned full = n == 31 ? 0x7fffffffu : (1u << n) - 1;
  unsigned sm = 0;
  for (int i : s) sm |= 1u << i;
  SubsetPrimality out;
  out.proper = sm != full;
  unsigned excluded = full & ~sm;
  int excount = __builtin_popcount(excluded);
  if (excount == 1) {
    out.prime = true;
    if (n <= pair_scan_guard) {
      out.exhaustive = true;
      for (unsigned a = 0; a <= full && out.prime; ++a)
        for (unsigned b = 0; b <= full; ++b)
          if ((a & b & excluded) == 0 && (a & excluded) && (b & excluded)) {
            out.prime = false;
            out.exhaustive = false;
            out.witness = {detail::mask_to_set(a, n), detail::mask_to_set(b, n)};
            break;
          }
    }
    return out;
  }
  out.prime = false;
  if (excount >= 2) {
    int g = -1, h = -1;
    for (int i = 0; i < n && h < 0; ++i)
      if (excluded & (1u << i)) (g < 0 ? g : h) = i;
    unsigned a = sm | (1u << g), b = sm | (1u << h);
    if ((a & b) == sm && (a & ~sm) && (b & ~sm)) out.witness = {detail::mask_to_set(a, n), detail::mask_to_set(b, n)};
  }
  return out;
}

struct SpcPoint {
  int cls = 0;
  std::string label;
  IdealSpec prime;
};

struct SpectrumReport {
  FamilyPtr fam;
  std::vector<SpcPoint> points;
  unsigned long long ideal_count = 0;  // support subsets
  bool all_points_prime = false;
  bool lattice_scanned = false;  // every subset classified
  bool no_other_primes = false;
  bool realization_checked = false;  // subsets realized as supports of chi sums
  bool subsets_realized = false;
};

// One point per class; for small families the full support lattice is
// classified and every subset is realized concretely as the support of a
// direct sum of squashed pieces.
inline SpectrumReport spectrum_discrete(FamilyPtr fam, int subset_guard = 10, int realize_guard = 8) {
  int n = fam->n();
  if (n > 31) throw budget_error("spectrum enumeration needs at most 31 classes");
  SpectrumReport rep;
  rep.fam = fam;
  rep.ideal_count = 1ull << n;
  rep.all_points_prime = true;
  for (int g = 0; g < n; ++g) {
    SpcPoint pt{g, fam->label(g), group_prime(fam, g)};
    rep.all_points_prime &= subset_primality(*fam, pt.prime.support, subset_guard).prime;
    rep.points.push_back(std::move(pt));
  }
  if (n <= subset_guard) {
    rep.lattice_scanned = true;
    rep.no_other_primes = true;
    unsigned full = (1u << n) - 1;
    for (unsigned mask = 0; mask <= full; ++mask) {
      std::set<int> s = detail::mask_to_set(mask, n);
      bool should_be_prime = __builtin_popcount(full & ~mask) == 1;
      SubsetPrimality p = subset_primality(*fam, s, subset_guard);
      if (p.prime != should_be_prime) rep.no_other_primes = false;
      if (!p.prime && p.proper && !p.witness) rep.no_other_primes = false;
    }
  }
  if (n <= realize_guard) {
    rep.realization_checked = true;
    rep.subsets_realized = true;
    std::vector<Rep> chi;
    for (int g = 0; g < n; ++g) chi.push_back(chi_rep(fam, g, trivial_out_rep(fam, g)).rep);
    for (unsigned mask = 0; mask + 1 <= (1u << n); ++mask) {
      Rep acc = zero_rep(fam);
      for (int g = 0; g < n; ++g)
        if (mask & (1u << g)) acc = dsum(acc, chi[g]);
      rep.subsets_realized &= support(acc) == detail::mask_to_set(mask, n);
    }
  }
  return rep;
}

// Passing to the quotient by the prime at a class is evaluation there,
// remembered with its endo action.
inline OutRep quotient_by_group_prime(const Rep& x, int cls) { return out_rep_of(x, cls); }

// The full ideal lattice: one ideal per support subset, ordered by bitmask,
// with its primality verdict. Capped hard because the lattice is exponential.
struct IdealLattice {
  std::vector<IdealSpec> ideals;
  std::vector<SubsetPrimality> primality;
  int prime_count = 0;
};

inline IdealLattice enumerate_serre_ideals(FamilyPtr fam, int guard = 12) {
  int n = fam->n();
  if (n > guard || n > 20) throw budget_error("ideal lattice enumeration guard exceeded");
  IdealLattice lat;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::set<int> s = detail::mask_to_set(mask, n);
    lat.primality.push_back(subset_primality(*fam, s, guard));
    lat.ideals.push_back(ideal_from_support(fam, std::move(s)));
    if (lat.primality.back().prime) ++lat.prime_count;
  }
  return lat;
}

// ---------------------------------------------------------------------------
// Eventually constant subsets of the naturals

// Either a finite set or the complement of one; `part` stores the finite
// side. This is closed under the support algebra of the symbolic objects.
struct NSet {
  bool cofinite = false;
  std::set<long long> part;

  bool contains(long long m) const { return cofinite ? !part.count(m) : part.count(m) > 0; }
  bool is_finite() const { return !cofinite; }
  bool empty() const { return !cofinite && part.empty(); }
  bool operator==(const NSet& o) const = default;
};

inline NSet nset_finite(std::set<long long> s) { return {false, std::move(s)}; }
inline NSet nset_cofinite(std::set<long long> missing) { return {true, std::move(missing)}; }

inline NSet nset_union(const NSet& a, const NSet& b) {
  if (a.cofinite && b.cofinite) {
    std::set<long long> out;
    for (long long x : a.part)
      if (b.part.count(x)) out.insert(x);
    return nset_cofinite(std::move(out));
  }
  if (a.cofinite || b.cofinite) {
    const NSet& co = a.cofinite ? a : b;
    const NSet& fin = a.cofinite ? b : a;
    std::set<long long> out;
    for (long long x : co.part)
      if (!fin.part.count(x)) out.insert(x);
    return nset_cofinite(std::move(out));
  }
  std::set<long long> out = a.part;
  out.insert(b.part.begin(), b.part.end());
  return nset_finite(std::move(out));
}

inline NSet nset_intersect(const NSet& a, const NSet& b) {
  if (!a.cofinite && !b.cofinite) {
    std::set<long long> out;
    for (long long x : a.part)
      if (b.part.count(x)) out.insert(x);
    return nset_finite(std::move(out));
  }
  if (!a.cofinite || !b.cofinite) {
    const NSet& fin = a.cofinite ? b : a;
    const NSet& co = a.cofinite ? a : b;
    std::set<long long> out;
    for (long long x : fin.part)
      if (!co.part.count(x)) out.insert(x);
    return nset_finite(std::move(out));
  }
  std::set<long long> out = a.part;
  out.insert(b.part.begin(), b.part.end());
  return nset_cofinite(std::move(out));
}

inline bool nset_subset(const NSet& a, const NSet& b) {
  if (!a.cofinite) {
    for (long long x : a.part)
      if (!b.contains(x)) return false;
    return true;
  }
  if (!b.cofinite) return false;
  for (long long x : b.part)
    if (a.contains(x)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Symbolic objects over an unbounded totally ordered family

struct NamedObject {
  enum class Kind { unit, zero, chi, gamma, e, tensor, dsum } kind = Kind::unit;
  long long index = 0;
  std::vector<NamedObject> children;
};

inline NamedObject named_unit() { return {NamedObject::Kind::unit, 0, {}}; }
inline NamedObject named_zero() { return {NamedObject::Kind::zero, 0, {}}; }
inline NamedObject named_chi(long long i) {
  if (i < 0) throw input_error("negative level");
  return {NamedObject::Kind::chi, i, {}};
}
inline NamedObject named_gamma(long long i) {
  if (i < 0) throw input_error("negative level");
  return {NamedObject::Kind::gamma, i, {}};
}
inline NamedObject named_e(long long i) {
  if (i < 0) throw input_error("negative level");
  return {NamedObject::Kind::e, i, {}};
}
inline NamedObject named_tensor(NamedObject a, NamedObject b) {
  return {NamedObject::Kind::tensor, 0, {std::move(a), std::move(b)}};
}
inline NamedObject named_dsum(NamedObject a, NamedObject b) {
  return {NamedObject::Kind::dsum, 0, {std::move(a), std::move(b)}};
}

inline std::string named_to_string(const NamedObject& x) {
  switch (x.kind) {
    case NamedObject::Kind::unit: return "unit";
    case NamedObject::Kind::zero: return "zero";
    case NamedObject::Kind::chi: return "chi:" + std::to_string(x.index);
    case NamedObject::Kind::gamma: return "gamma:" + std::to_string(x.index);
    case NamedObject::Kind::e: return "e:" + std::to_string(x.index);
    case NamedObject::Kind::tensor:
      return "tensor(" + named_to_string(x.children[0]) + "," + named_to_string(x.children[1]) + ")";
    case NamedObject::Kind::dsum:
      return "dsum(" + named_to_string(x.children[0]) + "," + named_to_string(x.children[1]) + ")";
  }
  throw internal_error("unreachable");
}

// Support over all levels at once, exact for every window.
inline NSet window_support(const NamedObject& x) {
  switch (x.kind) {
    case NamedObject::Kind::unit: return nset_cofinite({});
    case NamedObject::Kind::zero: return nset_finite({});
    case NamedObject::Kind::chi: return nset_finite({x.index});
    case NamedObject::Kind::gamma: return nset_cofinite({x.index});
    case NamedObject::Kind::e: {
      std::set<long long> below;
      for (long long i = 0; i < x.index; ++i) below.insert(i);
      return nset_cofinite(std::move(below));
    }
    case NamedObject::Kind::tensor: return nset_intersect(window_support(x.children[0]), window_support(x.children[1]));
    case NamedObject::Kind::dsum: return nset_union(window_support(x.children[0]), window_support(x.children[1]));
  }
  throw internal_error("unreachable");
}

// Concrete object on a finite totally ordered window. Levels at or beyond
// the window vanish for chi and e, while gamma degenerates to the unit.
inline Rep materialize(const NamedObject& x, FamilyPtr fam) {
  auto st = check_n_stable(*fam);
  if (!st.totally_ordered) throw input_error("materialization needs a totally ordered family: " + st.witness);
  int n = fam->n();
  switch (x.kind) {
    case NamedObject::Kind::unit: return unit_rep(fam);
    case NamedObject::Kind::zero: return zero_rep(fam);
    case NamedObject::Kind::chi:
      if (x.index >= n) return zero_rep(fam);
      return chi_rep(fam, static_cast<int>(x.index), trivial_out_rep(fam, static_cast<int>(x.index))).rep;
    case NamedObject::Kind::gamma:
      if (x.index >= n) return unit_rep(fam);
      return gamma_rep(fam, static_cast<int>(x.index));
    case NamedObject::Kind::e:
      if (x.index >= n) return zero_rep(fam);
      return representable_rep(fam, static_cast<int>(x.index));
    case NamedObject::Kind::tensor: return tensor(materialize(x.children[0], fam), materialize(x.children[1], fam));
    case NamedObject::Kind::dsum: return dsum(materialize(x.children[0], fam), materialize(x.children[1], fam));
  }
  throw internal_error("unreachable");
}

// ---------------------------------------------------------------------------
// The extended-naturals spectrum model

// A point is either a finite level or the point at infinity.
struct NStarPoint {
  bool at_infinity = false;
  long long n = 0;

  std::string label() const { return at_infinity ? std::string("P_inf") : "P_" + std::to_string(n); }
  bool operator==(const NStarPoint& o) const = default;
};

// Ideal of symbolic objects: supports must stay inside `allowed`, and
// cofinite supports are admitted only when the point at infinity is.
struct NStarIdeal {
  NSet allowed = nset_cofinite({});
  bool allow_infinity = true;
};

inline NStarIdeal nstar_prime_at(long long n) { return {nset_cofinite({n}), true}; }
inline NStarIdeal nstar_prime_at_infinity() { return {nset_cofinite({}), false}; }

inline bool nstar_member(const NamedObject& x, const NStarIdeal& ideal) {
  NSet s = window_support(x);
  if (!nset_subset(s, ideal.allowed)) return false;
  return s.is_finite() || ideal.allow_infinity;
}

// Points of N* excluded by the ideal; empty means the ideal is everything.
struct NStarExclusions {
  bool infinity_excluded = false;
  bool finitely_many_naturals = true;  // false when the allowed set is finite
  std::set<long long> naturals;        // meaningful only when finitely many
};

inline NStarExclusions nstar_exclusions(const NStarIdeal& ideal) {
  NStarExclusions out;
  out.infinity_excluded = !ideal.allow_infinity;
  if (ideal.allowed.cofinite) {
    out.naturals = ideal.allowed.part;
  } else {
    out.finitely_many_naturals = false;
    // Representative excluded levels: the two smallest outside the finite set.
    long long probe = 0;
    while (out.naturals.size() < 2) {
      if (!ideal.allowed.part.count(probe)) out.naturals.insert(probe);
      ++probe;
    }
  }
  return out;
}

// Primality replay in the symbolic model with a concrete violating pair for
// every refutation: two squashed pieces at distinct excluded levels tensor to
// zero, and a level paired with infinity is witnessed by chi against gamma.
struct NStarPrimality {
  bool proper = false;
  bool prime = false;
  std::optional<std::pair<NamedObject, NamedObject>> witness;
  bool witness_checked = false;
};

inline NStarPrimality nstar_primality(const NStarIdeal& ideal) {
  NStarPrimality out;
  NStarExclusions ex = nstar_exclusions(ideal);
  int count = (ex.infinity_excluded ? 1 : 0) +
              (ex.finitely_many_naturals ? static_cast<int>(ex.naturals.size()) : 2);
  out.proper = count > 0;
  out.prime = count == 1;
  if (out.prime || !out.proper) return out;
  if (ex.naturals.size() >= 2) {
    long long a = *ex.naturals.begin();
    long long b = *std::next(ex.naturals.begin());
    out.witness = {named_chi(a), named_chi(b)};
  } else {
    long long a = *ex.naturals.begin();
    out.witness = {named_chi(a), named_gamma(a)};
  }
  const auto& [x, y] = *out.witness;
  out.witness_checked = !nstar_member(x, ideal) && !nstar_member(y, ideal) &&
                        nstar_member(named_tensor(x, y), ideal);
  return out;
}

// Closed sets of the spectrum: finite sets of levels, or any set containing
// the point at infinity (stored as an eventually constant set of levels).
struct NStarClosed {
  bool with_infinity = false;
  NSet levels;

  bool valid() const { return with_infinity || levels.is_finite(); }
  bool contains(const NStarPoint& p) const { return p.at_infinity ? with_infinity : levels.contains(p.n); }
  bool operator==(const NStarClosed& o) const = default;
};

inline NStarClosed nstar_whole_space() { return {true, nset_cofinite({})}; }
inline NStarClosed nstar_closed_union(const NStarClosed& a, const NStarClosed& b) {
  return {a.with_infinity || b.with_infinity, nset_union(a.levels, b.levels)};
}
inline NStarClosed nstar_closed_intersect(const NStarClosed& a, const NStarClosed& b) {
  return {a.with_infinity && b.with_infinity, nset_intersect(a.levels, b.levels)};
}

// Locus of one object: the points whose prime excludes it. A level lies in
// it iff it carries support; infinity does iff the support is cofinite.
inline NStarClosed support_locus(const NamedObject& x) {
  NSet s = window_support(x);
  return {s.cofinite, s};
}

// Vanishing locus of a list: the primes disjoint from it, the intersection
// of the member loci. The empty list gives the whole space. Always closed.
inline NStarClosed zariski_closed(const std::vector<NamedObject>& objs) {
  NStarClosed acc = nstar_whole_space();
  for (const NamedObject& x : objs) acc = nstar_closed_intersect(acc, support_locus(x));
  return acc;
}

// Pairwise sums realize the union of two vanishing loci as a single locus;
// supports of sums are unions, and the distributive law does the rest.
inline std::vector<NamedObject> pairwise_sums(const std::vector<NamedObject>& a, const std::vector<NamedObject>& b) {
  std::vector<NamedObject> out;
  for (const NamedObject& x : a)
    for (const NamedObject& y : b) out.push_back(named_dsum(x, y));
  return out;
}

// Window translation of a symbolic ideal for concrete cross-checks.
inline IdealSpec window_ideal(const NStarIdeal& ideal, FamilyPtr fam) {
  std::set<int> s;
  for (int i = 0; i < fam->n(); ++i)
    if (ideal.allowed.contains(i)) s.insert(i);
  return ideal_from_support(fam, s);
}

// ---------------------------------------------------------------------------
// The extended-naturals model as a spectrum report

// Window family of a given number of levels for an unbounded totally ordered
// builtin kind.
inline FamilyPtr n_stable_window(const std::string& kind, long long p, int levels) {
  if (levels < 1) throw input_error("window needs at least one level");
  if (kind == "cyclic_p") return build_cyclic_p(p, levels - 1);
  if (kind == "elementary_abelian") return build_elementary_abelian(p, levels - 1);
  throw input_error("not an unbounded totally ordered builtin kind: " + kind);
}

struct NStableSpectrumReport {
  std::string kind;
  long long p = 0;
  long long index_bound = 0;
  int sets_checked = 0;
  bool closed_dichotomy = true;          // every locus is finite without infinity or contains it
  bool unions_representable = true;      // pairwise sums realize binary unions of loci
  bool intersections_representable = true;  // list concatenation realizes binary intersections
  bool level_points_closed = true;       // the locus of the squashed piece at n is exactly P_n
  bool infinity_point_closed = true;     // the singleton at infinity satisfies the dichotomy
  std::vector<std::string> notes;

  bool ok() const {
    return closed_dichotomy && unions_representable && intersections_representable && level_points_closed &&
           infinity_point_closed;
  }
};

// Classifies the vanishing loci of a generating family of object lists with
// levels up to the bound: each is closed for the one-point-compactification
// dichotomy, binary unions and intersections stay representable loci, and
// every level point is closed. The point at infinity is closed but is not
// the locus of any finite object list, since loci containing it have
// cofinitely many levels.
inline NStableSpectrumReport spc_n_stable(const std::string& kind, long long p = 2, long long index_bound = 64) {
  if (kind != "cyclic_p" && kind != "elementary_abelian")
    throw input_error("not an unbounded totally ordered builtin kind: " + kind);
  NStableSpectrumReport rep;
  rep.kind = kind;
  rep.p = p;
  rep.index_bound = index_bound;

  std::vector<std::vector<NamedObject>> gens;
  gens.push_back({});
  gens.push_back({named_unit()});
  for (long long i = 0; i <= index_bound; ++i) {
    gens.push_back({named_chi(i)});
    gens.push_back({named_gamma(i)});
  }
  for (long long i = 0; i <= index_bound; i += 7)
    for (long long j = i + 1; j <= index_bound; j += 11) {
      gens.push_back({named_tensor(named_gamma(i), named_gamma(j))});
      gens.push_back({named_dsum(named_chi(i), named_chi(j))});
      gens.push_back({named_chi(i), named_gamma(j)});
      gens.push_back({named_chi(i), named_chi(j)});
    }

  std::vector<NStarClosed> loci;
  for (const auto& s : gens) loci.push_back(zariski_closed(s));
  rep.sets_checked = static_cast<int>(loci.size());
  for (size_t k = 0; k < loci.size(); ++k)
    if (!loci[k].valid()) {
      rep.closed_dichotomy = false;
      rep.notes.push_back("locus " + std::to_string(k) + " breaks the closed dichotomy");
    }

  for (size_t k1 = 0; k1 < loci.size(); k1 += 5)
    for (size_t k2 = 0; k2 < loci.size(); k2 += 7) {
      NStarClosed u = nstar_closed_union(loci[k1], loci[k2]);
      if (!u.valid() || zariski_closed(pairwise_sums(gens[k1], gens[k2])) != u) {
        rep.unions_representable = false;
        rep.notes.push_back("union of loci " + std::to_string(k1) + ", " + std::to_string(k2) + " not realized");
      }
      NStarClosed i = nstar_closed_intersect(loci[k1], loci[k2]);
      std::vector<NamedObject> both = gens[k1];
      both.insert(both.end(), gens[k2].begin(), gens[k2].end());
      if (!i.valid() || zariski_closed(both) != i) {
        rep.intersections_representable = false;
        rep.notes.push_back("intersection of loci " + std::to_string(k1) + ", " + std::to_string(k2) + " not realized");
      }
    }

  for (long long n = 0; n <= index_bound; ++n)
    if (zariski_closed({named_chi(n)}) != NStarClosed{false, nset_finite({n})}) {
      rep.level_points_closed = false;
      rep.notes.push_back("level point " + std::to_string(n) + " is not the locus of its squashed piece");
    }
  NStarClosed inf_point{true, nset_finite({})};
  rep.infinity_point_closed = inf_point.valid() && inf_point.contains({true, 0}) && !inf_point.contains({false, 0});
  return rep;
}

// ---------------------------------------------------------------------------
// The prime at infinity, replayed three ways

struct PInfinityReport {
  bool proper = false;           // the unit lies outside
  bool absorbs = false;          // sums and tensor products stay inside
  bool prime_on_pool = false;    // no violating pair in the pool
  bool separated_from_levels = false;  // differs from every finite-level prime in the window
  bool finite_members_certified = false;  // filtration certificates for finitely supported members
  bool annihilation_witnessed = false;    // the level hole tensors its squashed piece to zero
  std::vector<std::string> notes;

  bool ok() const {
    return proper && absorbs && prime_on_pool && separated_from_levels && finite_members_certified &&
           annihilation_witnessed;
  }
};

inline PInfinityReport verify_p_infinity(FamilyPtr window, const std::vector<NamedObject>& pool) {
  NStarIdeal pinf = nstar_prime_at_infinity();
  PInfinityReport rep;
  rep.proper = !nstar_member(named_unit(), pinf);
  if (!rep.proper) rep.notes.push_back("the unit was admitted");

  rep.absorbs = true;
  for (const NamedObject& x : pool) {
    if (!nstar_member(x, pinf)) continue;
    for (const NamedObject& y : pool) {
      if (!nstar_member(named_tensor(x, y), pinf)) {
        rep.absorbs = false;
        rep.notes.push_back("tensor absorption fails on " + named_to_string(x) + ", " + named_to_string(y));
      }
      if (nstar_member(y, pinf) && !nstar_member(named_dsum(x, y), pinf)) {
        rep.absorbs = false;
        rep.notes.push_back("sum closure fails on " + named_to_string(x) + ", " + named_to_string(y));
      }
    }
  }

  rep.prime_on_pool = true;
  for (const NamedObject& x : pool)
    for (const NamedObject& y : pool)
      if (nstar_member(named_tensor(x, y), pinf) && !nstar_member(x, pinf) && !nstar_member(y, pinf)) {
        rep.prime_on_pool = false;
        rep.notes.push_back("violating pair " + named_to_string(x) + ", " + named_to_string(y));
      }

  rep.separated_from_levels = true;
  for (int n = 0; n < window->n(); ++n) {
    NStarIdeal pn = nstar_prime_at(n);
    bool chi_side = nstar_member(named_chi(n), pinf) && !nstar_member(named_chi(n), pn);
    bool gamma_side = !nstar_member(named_gamma(n), pinf) && nstar_member(named_gamma(n), pn);
    if (!chi_side || !gamma_side) {
      rep.separated_from_levels = false;
      rep.notes.push_back("level " + std::to_string(n) + " not separated");
    }
  }

  // Finitely supported members carry a checked filtration into pieces each
  // concentrated at one level, so they lie in the ideal the squashed pieces
  // generate.
  rep.finite_members_certified = true;
  for (const NamedObject& x : pool) {
    if (!window_support(x).is_finite()) continue;
    Rep y = materialize(x, window);
    FiltrationCertificate cert = gamma_filtration(y);
    std::string why;
    bool good = verify_filtration(cert, &why);
    for (const FiltStep& step : cert.steps) good &= support(step.piece).size() == 1;
    if (!good) {
      rep.finite_members_certified = false;
      rep.notes.push_back("no certificate for " + named_to_string(x) + (why.empty() ? "" : ": " + why));
    }
  }

  // The hole at a level tensors the piece squashed there to zero, while the
  // hole itself stays outside: anything prime below this ideal must contain
  // every squashed piece, which makes the ideal minimal.
  rep.annihilation_witnessed = true;
  for (int i = 0; i < window->n(); ++i) {
    Rep z = tensor(materialize(named_gamma(i), window), materialize(named_chi(i), window));
    bool zero = support(z).empty();
    if (!zero || nstar_member(named_gamma(i), pinf)) {
      rep.annihilation_witnessed = false;
      rep.notes.push_back("annihilation fails at level " + std::to_string(i));
    }
  }
  return rep;
}

}  // namespace globrep
