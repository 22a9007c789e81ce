#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "family.hpp"
#include "rep.hpp"

namespace globrep {

// ---------------------------------------------------------------------------
// Ideals described by their squashed-generator supports

// A thick tensor ideal is determined by which classes its squashed pieces can
// live on, so the descriptor stores the union of generator supports.
struct IdealSpec {
  FamilyPtr fam;
  std::set<int> support;
  std::vector<std::set<int>> generator_supports;
  std::vector<std::string> generator_names;
};

inline IdealSpec ideal_from_support(FamilyPtr fam, std::set<int> support) {
  for (int g : support)
    if (g < 0 || g >= fam->n()) throw input_error("ideal support class out of range");
  IdealSpec spec{fam, support, {}, {}};
  spec.generator_supports.push_back(spec.support);
  spec.generator_names.push_back("support");
  return spec;
}

inline IdealSpec ideal_from_objects(FamilyPtr fam, const std::vector<Rep>& gens,
                                    std::vector<std::string> names = {}) {
  IdealSpec spec{fam, {}, {}, {}};
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].fam != fam) throw input_error("ideal generator over a different family");
    std::set<int> s = support(gens[i]);
    spec.support.insert(s.begin(), s.end());
    spec.generator_supports.push_back(std::move(s));
    spec.generator_names.push_back(i < names.size() ? names[i] : "generator " + std::to_string(i));
  }
  return spec;
}

inline bool serre_member(const Rep& x, const IdealSpec& ideal) {
  for (int g : support(x))
    if (!ideal.support.count(g)) return false;
  return true;
}

// Support of the ideal enlarged by everything above it of order exceeding n.
// Classes above an order->n class have order > n themselves, so no further
// closure is needed.
inline std::set<int> plus_support(const GroupFamily& fam, const std::set<int>& supp, long long n) {
  std::set<int> s = supp;
  for (int g : up_closure(fam, supp))
    if (fam.order(g) > n) s.insert(g);
  return s;
}

inline bool serre_plus_member(const Rep& x, const IdealSpec& ideal, long long n) {
  std::set<int> s = plus_support(*x.fam, ideal.support, n);
  for (int g : support(x))
    if (!s.count(g)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Squash filtrations

// One step of a filtration whose graded pieces are concentrated on a single
// class. piece_is_sub selects the wiring: piece -> before -> after when true
// (descending mode), after -> before -> piece when false (hole mode).
struct FiltStep {
  int cls = 0;
  bool piece_is_sub = true;
  Rep before, after, piece;
  RepMorphism mono, epi;
  Rep named;             // the piece in its induced presentation
  RepMorphism witness;   // isomorphism piece -> named
};

struct FiltrationCertificate {
  Rep object;
  std::vector<FiltStep> steps;
  std::vector<int> stripped_classes;
};

namespace detail {

inline Rep concentrated_copy(const Rep& w, int g) {
  std::vector<int> dims(w.fam->n(), 0);
  dims[g] = w.dims[g];
  Rep piece = make_rep(w.fam, dims);
  for (int k = 0; k < w.fam->hom_count(g, g); ++k) piece.t(g, g, k) = w.t(g, g, k);
  return piece;
}

inline FiltStep finish_step(Rep w, Rep piece, int g) {
  FiltStep step;
  step.cls = g;
  step.before = std::move(w);
  step.piece = std::move(piece);
  ChiData named = chi_rep(step.before.fam, g, out_rep_of(step.before, g));
  auto witness = is_isomorphic(step.piece, named.rep);
  if (!witness) throw internal_error("squashed piece does not match its induced presentation");
  step.named = std::move(named.rep);
  step.witness = std::move(*witness);
  return step;
}

}  // namespace detail

// Filtration stripping the maximal support class first. The piece at a
// maximal class is a subobject: nothing above it survives, so the
// identity-at-g inclusion is natural. Successive quotients leave the other
// values untouched, which makes every piece carry the original value of x.
inline FiltrationCertificate decompose_chi(const Rep& x) {
  FiltrationCertificate cert;
  cert.object = x;
  Rep w = x;
  while (!support(w).empty()) {
    int g = *support(w).rbegin();
    FiltStep step = detail::finish_step(w, detail::concentrated_copy(w, g), g);
    step.piece_is_sub = true;
    step.mono = RepMorphism{step.piece, w, {}};
    for (int h = 0; h < w.fam->n(); ++h)
      step.mono.comp.push_back(h == g ? Mat::identity(w.dims[g]) : Mat(w.dims[h], 0));
    QuotObject q = cokernel(step.mono);
    step.epi = q.proj;
    step.after = q.obj;
    w = step.after;
    cert.stripped_classes.push_back(g);
    cert.steps.push_back(std::move(step));
  }
  return cert;
}

// Filtration stripping the minimal level first, for totally ordered families.
// The piece at the minimal support level is a quotient: nothing below it is
// nonzero, so the identity-at-m projection is natural. The kernels are the
// levelwise truncations of x.
inline FiltrationCertificate gamma_filtration(const Rep& x) {
  auto st = check_n_stable(*x.fam);
  if (!st.totally_ordered) throw input_error("level filtration requires a totally ordered family: " + st.witness);
  FiltrationCertificate cert;
  cert.object = x;
  Rep w = x;
  while (!support(w).empty()) {
    int m = *support(w).begin();
    FiltStep step = detail::finish_step(w, detail::concentrated_copy(w, m), m);
    step.piece_is_sub = false;
    step.epi = RepMorphism{w, step.piece, {}};
    for (int h = 0; h < w.fam->n(); ++h)
      step.epi.comp.push_back(h == m ? Mat::identity(w.dims[m]) : Mat(0, w.dims[h]));
    SubObject k = kernel(step.epi);
    step.mono = k.inc;
    step.after = k.obj;
    w = step.after;
    cert.stripped_classes.push_back(m);
    cert.steps.push_back(std::move(step));
  }
  return cert;
}

// Exact re-verification of a filtration certificate: chain wiring, exactness
// of every step, and the isomorphism of each piece with its induced
// presentation.
inline bool verify_filtration(const FiltrationCertificate& cert, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  Rep cur = cert.object;
  if (cert.steps.size() != cert.stripped_classes.size()) return fail("class list does not match the steps");
  for (size_t i = 0; i < cert.steps.size(); ++i) {
    const FiltStep& s = cert.steps[i];
    std::string at = "step " + std::to_string(i) + ": ";
    if (!(s.before == cur)) return fail(at + "chain break");
    if (s.cls != cert.stripped_classes[i]) return fail(at + "class mismatch");
    for (int h = 0; h < cur.fam->n(); ++h)
      if (h != s.cls && s.piece.dims[h] != 0) return fail(at + "piece not concentrated");
    const Rep& sub = s.piece_is_sub ? s.piece : s.after;
    const Rep& quot = s.piece_is_sub ? s.after : s.piece;
    if (!(s.mono.src == sub) || !(s.mono.tgt == s.before)) return fail(at + "mono wiring");
    if (!(s.epi.src == s.before) || !(s.epi.tgt == quot)) return fail(at + "epi wiring");
    if (!validate_rep(s.piece).ok || !validate_rep(s.after).ok || !validate_rep(s.named).ok)
      return fail(at + "invalid object");
    if (!validate_morphism(s.mono).ok || !validate_morphism(s.epi).ok) return fail(at + "invalid morphism");
    if (!ses_is_exact(s.mono, s.epi)) return fail(at + "not exact");
    if (!(s.witness.src == s.piece) || !(s.witness.tgt == s.named)) return fail(at + "witness wiring");
    if (!validate_morphism(s.witness).ok || !invert_iso(s.witness).has_value())
      return fail(at + "witness is not an isomorphism");
    cur = s.after;
  }
  for (int d : cur.dims)
    if (d != 0) return fail("filtration does not terminate at zero");
  return true;
}

// ---------------------------------------------------------------------------
// Certified membership

struct MembershipCertificate {
  bool member = false;
  std::set<int> offending;              // support classes outside the ideal, when not a member
  FiltrationCertificate filtration;     // squash filtration of x, when a member
  std::vector<int> generator_for_step;  // generator whose support covers each stripped class
};

inline MembershipCertificate serre_member_certified(const Rep& x, const IdealSpec& ideal) {
  MembershipCertificate cert;
  for (int g : support(x))
    if (!ideal.support.count(g)) cert.offending.insert(g);
  cert.member = cert.offending.empty();
  if (!cert.member) return cert;
  cert.filtration = decompose_chi(x);
  for (int cls : cert.filtration.stripped_classes) {
    int found = -1;
    for (size_t i = 0; i < ideal.generator_supports.size() && found < 0; ++i)
      if (ideal.generator_supports[i].count(cls)) found = static_cast<int>(i);
    cert.generator_for_step.push_back(found);
  }
  return cert;
}

inline bool verify_membership(const MembershipCertificate& cert, const Rep& x, const IdealSpec& ideal,
                              std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!cert.member) {
    if (cert.offending.empty()) return fail("refutation lists no offending class");
    for (int g : cert.offending) {
      if (x.dims[g] == 0) return fail("offending class is not in the support");
      if (ideal.support.count(g)) return fail("offending class lies in the ideal support");
    }
    return true;
  }
  if (!(cert.filtration.object == x)) return fail("certificate is for a different object");
  if (!verify_filtration(cert.filtration, why)) return false;
  if (cert.generator_for_step.size() != cert.filtration.stripped_classes.size())
    return fail("generator list does not match the filtration");
  for (size_t i = 0; i < cert.generator_for_step.size(); ++i) {
    int cls = cert.filtration.stripped_classes[i];
    int gen = cert.generator_for_step[i];
    if (gen < 0 || gen >= static_cast<int>(ideal.generator_supports.size()))
      return fail("generator index out of range");
    if (!ideal.generator_supports[gen].count(cls)) return fail("cited generator does not cover the class");
  }
  return true;
}

// ---------------------------------------------------------------------------
// Brute-force ideal closure (independent oracle)

// Sound under-approximation of the ideal generated by `generators`: the
// certified list grows by tensoring with pool objects, and a query succeeds
// only via verified closure rules (isomorphism, subobject, quotient, or an
// extension split whose two ends succeed recursively). Deterministic seeds
// keep runs reproducible; a positive answer is always exact, a negative one
// only means no derivation was found.
struct BruteForceClosure {
  FamilyPtr fam;
  std::vector<Rep> certified;
  std::vector<std::string> provenance;
  int ext_depth = 4;

  bool contains(const Rep& x) const { return contains_depth(x, ext_depth); }

 private:
  bool contains_depth(const Rep& x, int depth) const {
    bool zero = true;
    for (int d : x.dims) zero &= d == 0;
    if (zero) return true;
    for (const Rep& c : certified) {
      if (x.dims == c.dims && is_isomorphic(x, c).has_value()) return true;
      if (find_mono(x, c).has_value()) return true;
      if (find_epi(c, x).has_value()) return true;
    }
    if (depth <= 0) return false;
    int g = *support(x).rbegin();
    Rep piece = detail::concentrated_copy(x, g);
    RepMorphism mono{piece, x, {}};
    for (int h = 0; h < x.fam->n(); ++h)
      mono.comp.push_back(h == g ? Mat::identity(x.dims[g]) : Mat(x.dims[h], 0));
    Rep rest = cokernel(mono).obj;
    bool progress = false;
    for (int d : rest.dims) progress |= d != 0;
    if (!progress) return false;
    return contains_depth(piece, depth - 1) && contains_depth(rest, depth - 1);
  }
};

inline BruteForceClosure brute_force_closure(FamilyPtr fam, const std::vector<Rep>& generators,
                                             const std::vector<Rep>& pool, int tensor_rounds = 2,
                                             int ext_depth = 4, int dim_cap = 24) {
  BruteForceClosure out;
  out.fam = fam;
  out.ext_depth = ext_depth;
  auto push_unique = [&](Rep r, std::string how) {
    bool zero = true;
    for (int d : r.dims) zero &= d == 0;
    if (zero) return;
    for (int d : r.dims)
      if (d > dim_cap) return;
    for (const Rep& c : out.certified)
      if (c.dims == r.dims && is_isomorphic(c, r).has_value()) return;
    out.certified.push_back(std::move(r));
    out.provenance.push_back(std::move(how));
  };
  for (size_t i = 0; i < generators.size(); ++i) push_unique(generators[i], "generator " + std::to_string(i));
  for (int round = 0; round < tensor_rounds; ++round) {
    size_t snapshot = out.certified.size();
    for (size_t i = 0; i < snapshot; ++i)
      for (size_t j = 0; j < pool.size(); ++j)
        push_unique(tensor(out.certified[i], pool[j]),
                    "round " + std::to_string(round) + ": " + out.provenance[i] + " (x) pool " + std::to_string(j));
  }
  return out;
}

}  // namespace globrep
