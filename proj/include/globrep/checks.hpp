#pragma once

// Named property checks behind the `check` command. Every check is a
// self-contained decision procedure with fixed seeds, so two runs over the
// same options produce the same results in the same order. `detail` carries
// instance counts on success and a concrete witness on failure.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "globrep/family.hpp"
#include "globrep/kan.hpp"
#include "globrep/rep.hpp"
#include "globrep/serre.hpp"
#include "globrep/spectrum.hpp"

namespace globrep {

struct CheckResult {
  std::string suite, id, what;
  bool pass = false;
  std::string detail;
};

struct CheckOptions {
  int scale = 1;       // multiplies randomized instance counts
  int truncation = 4;  // window level count for symbolic cross-checks
};

struct CheckSummary {
  std::vector<CheckResult> results;
  int passed = 0, failed = 0;

  bool ok() const { return failed == 0; }
};

namespace detail {

class CheckRun {
 public:
  CheckRun(std::string suite, CheckSummary& out) : suite_(std::move(suite)), out_(&out) {}

  // fn(note) decides one property; a thrown exception counts as a failure.
  template <class F>
  void run(const std::string& id, const std::string& what, F&& fn) {
    CheckResult r{suite_, id, what, false, {}};
    try {
      r.pass = fn(r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    ++(r.pass ? out_->passed : out_->failed);
    out_->results.push_back(std::move(r));
  }

 private:
  std::string suite_;
  CheckSummary* out_;
};

// Random invertible matrix from elementary row operations, so twisted
// objects stay exact.
inline Mat sample_invertible(int n, Rng& rng) {
  Mat q = Mat::identity(n);
  for (int step = 0; step < 2 * n + 2 && n > 0; ++step) {
    int i = static_cast<int>(rng.below(static_cast<unsigned>(n)));
    int j = static_cast<int>(rng.below(static_cast<unsigned>(n)));
    switch (rng.below(3)) {
      case 0:
        if (i != j) {
          Rational lam(rng.range(-2, 2));
          for (int c = 0; c < n; ++c) q(i, c) += lam * q(j, c);
        }
        break;
      case 1:
        for (int c = 0; c < n; ++c) std::swap(q(i, c), q(j, c));
        break;
      default: {
        Rational s(rng.range(1, 3), rng.range(1, 2));
        if (rng.below(2)) s = -s;
        for (int c = 0; c < n; ++c) q(i, c) *= s;
        break;
      }
    }
  }
  return q;
}

inline Rep twist_basis(const Rep& x, Rng& rng) {
  int n = x.fam->n();
  std::vector<Mat> q(n), qinv(n);
  for (int g = 0; g < n; ++g) {
    q[g] = sample_invertible(x.dims[g], rng);
    qinv[g] = *solve_matrix(q[g], Mat::identity(x.dims[g]));
  }
  Rep y = make_rep(x.fam, x.dims);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d)
      for (int k = 0; k < x.fam->hom_count(s, d); ++k) y.t(s, d, k) = mul(q[s], mul(x.t(s, d, k), qinv[d]));
  return y;
}

// Direct sum of standard pieces under a random change of basis; oversized
// draws are retried so hom-space systems stay cheap.
inline Rep sample_rep(FamilyPtr fam, Rng& rng, int max_pieces = 3, int dim_cap = 8) {
  bool ordered = check_n_stable(*fam).totally_ordered;
  for (int attempt = 0; attempt < 50; ++attempt) {
    Rep acc = zero_rep(fam);
    int pieces = 1 + static_cast<int>(rng.below(static_cast<unsigned>(max_pieces)));
    for (int p = 0; p < pieces; ++p) {
      int g = static_cast<int>(rng.below(static_cast<unsigned>(fam->n())));
      switch (rng.below(ordered ? 4u : 3u)) {
        case 0: acc = dsum(acc, unit_rep(fam)); break;
        case 1: acc = dsum(acc, representable_rep(fam, g)); break;
        case 2: acc = dsum(acc, chi_rep(fam, g, trivial_out_rep(fam, g)).rep); break;
        default: acc = dsum(acc, gamma_rep(fam, g)); break;
      }
    }
    int top = 0;
    for (int d : acc.dims) top = std::max(top, d);
    if (top > dim_cap) continue;
    return twist_basis(acc, rng);
  }
  return unit_rep(fam);
}

inline std::vector<Rep> chi_e_catalog(FamilyPtr fam) {
  std::vector<Rep> out;
  for (int g = 0; g < fam->n(); ++g) {
    out.push_back(chi_rep(fam, g, trivial_out_rep(fam, g)).rep);
    out.push_back(representable_rep(fam, g));
  }
  return out;
}

inline std::string dims_str(const std::vector<int>& dims) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ")";
  return os.str();
}

inline std::string set_str(const std::set<int>& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int i : s) os << (first ? "" : ",") << i, first = false;
  os << "}";
  return os.str();
}

inline std::set<int> random_subset(int n, Rng& rng) {
  std::set<int> s;
  for (int i = 0; i < n; ++i)
    if (rng.below(2)) s.insert(i);
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suite: group families

inline void check_family_suite(const CheckOptions& opt, CheckSummary& out) {
  (void)opt;
  detail::CheckRun run("family", out);

  run.run("family.builtin-tables-lawful", "builtin composition tables satisfy the identity and associativity laws",
          [](std::string& note) {
            std::vector<std::pair<std::string, FamilyPtr>> fams = {
                {"cyclic_p(2,2)", build_cyclic_p(2, 2)},
                {"cyclic_p(3,1)", build_cyclic_p(3, 1)},
                {"elementary_abelian(2,2)", build_elementary_abelian(2, 2)},
                {"abelian_p(2,4)", build_abelian_p(2, 4)}};
            unsigned long long triples = 0;
            for (const auto& [name, f] : fams) {
              FamilyValidationReport r = validate_family(*f);
              if (!r.ok) {
                note = name + ": " + r.errors.front();
                return false;
              }
              triples += r.associativity_checked;
            }
            note = std::to_string(fams.size()) + " families, " + std::to_string(triples) + " composable triples";
            return true;
          });

  run.run("family.endo-counts-match-formulas",
          "self-map class counts equal the closed-form automorphism counts of cyclic and elementary abelian groups",
          [](std::string& note) {
            FamilyPtr cyc = build_cyclic_p(2, 3);
            for (int k = 0; k <= 3; ++k) {
              long long expect = k == 0 ? 1 : (1LL << k) - (1LL << (k - 1));
              if (cyc->hom_count(k, k) != expect) {
                note = "cyclic level " + std::to_string(k) + ": " + std::to_string(cyc->hom_count(k, k)) +
                       " self maps, expected " + std::to_string(expect);
                return false;
              }
            }
            FamilyPtr ela = build_elementary_abelian(2, 2);
            for (int r = 0; r <= 2; ++r) {
              long long expect = 1;
              for (int i = 0; i < r; ++i) expect *= (1LL << r) - (1LL << i);
              if (ela->hom_count(r, r) != expect) {
                note = "rank " + std::to_string(r) + ": " + std::to_string(ela->hom_count(r, r)) +
                       " self maps, expected " + std::to_string(expect);
                return false;
              }
            }
            note = "7 classes";
            return true;
          });

  run.run("family.surjections-point-down",
          "a hom class exists exactly when a surjection does: divisible order for cyclic, rank drop for "
          "elementary abelian",
          [](std::string& note) {
            FamilyPtr cyc = build_cyclic_p(2, 3);
            for (int s = 0; s < cyc->n(); ++s)
              for (int d = 0; d < cyc->n(); ++d) {
                bool expect = cyc->order(s) % cyc->order(d) == 0;
                if ((cyc->hom_count(s, d) > 0) != expect) {
                  note = "cyclic " + cyc->label(s) + " -> " + cyc->label(d);
                  return false;
                }
              }
            FamilyPtr ela = build_elementary_abelian(2, 2);
            for (int s = 0; s < ela->n(); ++s)
              for (int d = 0; d < ela->n(); ++d)
                if ((ela->hom_count(s, d) > 0) != (s >= d)) {
                  note = "elementary abelian " + ela->label(s) + " -> " + ela->label(d);
                  return false;
                }
            note = "25 ordered pairs";
            return true;
          });

  run.run("family.total-order-detection",
          "chain families index as a total order and the branching family reports an incomparable pair",
          [](std::string& note) {
            NStableReport cyc = check_n_stable(*build_cyclic_p(2, 4));
            NStableReport ela = check_n_stable(*build_elementary_abelian(2, 3));
            if (!cyc.totally_ordered || !ela.totally_ordered) {
              note = "a chain family failed to order";
              return false;
            }
            for (size_t i = 1; i < cyc.indexing.size(); ++i)
              if (cyc.indexing[i - 1] + 1 != cyc.indexing[i]) {
                note = "cyclic indexing is not ascending";
                return false;
              }
            NStableReport branch = check_n_stable(*build_abelian_p(2, 4));
            if (branch.totally_ordered || branch.witness.empty()) {
              note = "the branching family was not refuted with a witness";
              return false;
            }
            note = "witness: " + branch.witness;
            return true;
          });

  run.run("family.truncation-closure-flags",
          "order-threshold truncations carry the expected closure flags and class counts",
          [](std::string& note) {
            int checked = 0;
            for (FamilyPtr fam : {build_cyclic_p(2, 3), build_abelian_p(2, 4)})
              for (long long bound : {1LL, 2LL, 4LL}) {
                auto [lo, lo_inc] = truncate_order_le(fam, bound);
                auto [hi, hi_inc] = truncate_order_gt(fam, bound);
                if (!lo_inc.down_closed || !hi_inc.up_closed) {
                  note = "closure flag missing at bound " + std::to_string(bound);
                  return false;
                }
                if (lo->n() + hi->n() != fam->n()) {
                  note = "split class counts do not add up at bound " + std::to_string(bound);
                  return false;
                }
                checked += 2;
              }
            note = std::to_string(checked) + " truncations";
            return true;
          });
}

// ---------------------------------------------------------------------------
// Suite: objects and supports

inline void check_rep_suite(const CheckOptions& opt, CheckSummary& out) {
  detail::CheckRun run("rep", out);
  std::vector<std::pair<std::string, FamilyPtr>> fams = {{"cyclic_p(2,2)", build_cyclic_p(2, 2)},
                                                         {"elementary_abelian(2,2)", build_elementary_abelian(2, 2)},
                                                         {"abelian_p(2,4)", build_abelian_p(2, 4)}};

  run.run("rep.random-objects-lawful", "randomly twisted sums of standard pieces satisfy the functor laws",
          [&](std::string& note) {
            Rng rng(0xC0FFEE01);
            int count = 0;
            for (const auto& [name, fam] : fams)
              for (int i = 0; i < 6 * opt.scale; ++i) {
                Rep x = detail::sample_rep(fam, rng);
                RepValidationReport r = validate_rep(x);
                if (!r.ok) {
                  note = name + ": " + r.errors.front();
                  return false;
                }
                ++count;
              }
            note = std::to_string(count) + " objects";
            return true;
          });

  run.run("rep.unit-is-tensor-identity", "tensoring with the one-dimensional constant object changes nothing",
          [&](std::string& note) {
            Rng rng(0xC0FFEE02);
            int count = 0;
            for (const auto& [name, fam] : fams)
              for (int i = 0; i < 4 * opt.scale; ++i) {
                Rep x = detail::sample_rep(fam, rng);
                Rep l = tensor(unit_rep(fam), x), r = tensor(x, unit_rep(fam));
                if (l.dims != x.dims || l.tr != x.tr || r.dims != x.dims || r.tr != x.tr) {
                  note = name + ": unit tensor altered an object with dims " + detail::dims_str(x.dims);
                  return false;
                }
                ++count;
              }
            note = std::to_string(count) + " objects";
            return true;
          });

  run.run("rep.support-algebra", "supports send sums to unions and tensor products to intersections",
          [&](std::string& note) {
            Rng rng(0xC0FFEE03);
            int count = 0;
            for (const auto& [name, fam] : fams) {
              std::set<int> all;
              for (int g = 0; g < fam->n(); ++g) all.insert(g);
              if (support(unit_rep(fam)) != all) {
                note = name + ": the unit is not supported everywhere";
                return false;
              }
              for (int i = 0; i < 5 * opt.scale; ++i) {
                Rep x = detail::sample_rep(fam, rng), y = detail::sample_rep(fam, rng);
                std::set<int> sx = support(x), sy = support(y);
                std::set<int> un, in;
                std::set_union(sx.begin(), sx.end(), sy.begin(), sy.end(), std::inserter(un, un.end()));
                std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(), std::inserter(in, in.end()));
                if (support(dsum(x, y)) != un || support(tensor(x, y)) != in) {
                  note = name + ": " + detail::set_str(sx) + " vs " + detail::set_str(sy);
                  return false;
                }
                ++count;
              }
            }
            note = std::to_string(count) + " pairs";
            return true;
          });

  run.run("rep.ses-support-additivity",
          "a short exact sequence is pointwise exact and the middle support is the union of the ends",
          [&](std::string& note) {
            Rng rng(0xC0FFEE04);
            int count = 0;
            for (const auto& [name, fam] : fams)
              for (int i = 0; i < 5 * opt.scale; ++i) {
                Rep x = detail::sample_rep(fam, rng);
                std::vector<std::pair<int, std::vector<Rational>>> gens;
                for (int g = 0; g < fam->n(); ++g) {
                  if (x.dims[g] == 0 || rng.below(2)) continue;
                  std::vector<Rational> v(x.dims[g]);
                  for (auto& e : v) e = Rational(rng.range(-2, 2));
                  gens.push_back({g, std::move(v)});
                }
                SubObject sub = subrep_generated(x, gens);
                QuotObject quot = cokernel(sub.inc);
                if (!ses_is_exact(sub.inc, quot.proj)) {
                  note = name + ": generated subobject sequence is not exact";
                  return false;
                }
                std::set<int> ends = support(sub.obj);
                for (int g : support(quot.obj)) ends.insert(g);
                if (support(x) != ends) {
                  note = name + ": middle " + detail::set_str(support(x)) + " vs ends " + detail::set_str(ends);
                  return false;
                }
                ++count;
              }
            note = std::to_string(count) + " sequences";
            return true;
          });

  run.run("rep.twisted-pieces-keep-support",
          "projective and squashed pieces built on a larger coefficient object keep the support of the trivial one",
          [&](std::string& note) {
            int count = 0;
            for (const auto& [name, fam] : fams)
              for (int g = 0; g < fam->n(); ++g) {
                OutRep reg = regular_out_rep(fam, g);
                if (support(e_rep_data(fam, g, reg).rep) != support(representable_rep(fam, g))) {
                  note = name + ": projective piece at " + fam->label(g);
                  return false;
                }
                if (support(chi_rep(fam, g, reg).rep) != support(chi_rep(fam, g, trivial_out_rep(fam, g)).rep)) {
                  note = name + ": squashed piece at " + fam->label(g);
                  return false;
                }
                count += 2;
              }
            note = std::to_string(count) + " pieces";
            return true;
          });

  run.run("rep.tensor-preserves-monos", "tensoring a pointwise injection with any object stays pointwise injective",
          [&](std::string& note) {
            Rng rng(0xC0FFEE05);
            int count = 0;
            for (const auto& [name, fam] : fams)
              for (int i = 0; i < 5 * opt.scale; ++i) {
                Rep x = detail::sample_rep(fam, rng), y = detail::sample_rep(fam, rng);
                std::vector<std::pair<int, std::vector<Rational>>> gens;
                for (int g = 0; g < fam->n(); ++g) {
                  if (x.dims[g] == 0 || rng.below(2)) continue;
                  std::vector<Rational> v(x.dims[g]);
                  for (auto& e : v) e = Rational(rng.range(-2, 2));
                  gens.push_back({g, std::move(v)});
                }
                RepMorphism m = subrep_generated(x, gens).inc;
                if (!is_pointwise_mono(tensor_morphism(m, identity_morphism(y)))) {
                  note = name + ": a tensored injection dropped rank";
                  return false;
                }
                ++count;
              }
            note = std::to_string(count) + " injections";
            return true;
          });

  run.run("rep.evaluation-functor", "evaluating at a class yields lawful self-map actions of the right dimension",
          [&](std::string& note) {
            Rng rng(0xC0FFEE06);
            int count = 0;
            for (const auto& [name, fam] : fams)
              for (int g = 0; g < fam->n(); ++g) {
                OutRep ev = out_rep_of(representable_rep(fam, g), g);
                if (!validate_out_rep(ev).ok || ev.dim != fam->hom_count(g, g)) {
                  note = name + ": the representable object evaluates wrongly at " + fam->label(g);
                  return false;
                }
                OutRep rnd = out_rep_of(detail::sample_rep(fam, rng), g);
                if (!validate_out_rep(rnd).ok) {
                  note = name + ": evaluation broke the action laws at " + fam->label(g);
                  return false;
                }
                count += 2;
              }
            note = std::to_string(count) + " evaluations";
            return true;
          });

  run.run("rep.holes-eventually-injective",
          "objects with one squashed level report the least level past which transitions inject",
          [&](std::string& note) {
            FamilyPtr fam = build_cyclic_p(2, 4);
            for (int i = 1; i < fam->n(); ++i) {
              TorsionFreeReport r = check_eventually_torsion_free(gamma_rep(fam, i));
              if (!r.certified_window || r.r != i - 1) {
                note = "hole at " + std::to_string(i) + " reported bound " + std::to_string(r.r);
                return false;
              }
            }
            TorsionFreeReport u = check_eventually_torsion_free(unit_rep(fam));
            if (u.r != 0) {
              note = "the constant object is not injective from the start";
              return false;
            }
            note = std::to_string(fam->n()) + " objects";
            return true;
          });
}

// ---------------------------------------------------------------------------
// Suite: restriction and its adjoints

inline void check_kan_suite(const CheckOptions& opt, CheckSummary& out) {
  detail::CheckRun run("kan", out);
  std::vector<std::pair<std::string, FamilyPtr>> fams = {{"cyclic_p(2,2)", build_cyclic_p(2, 2)},
                                                         {"abelian_p(2,4)", build_abelian_p(2, 4)}};

  run.run("kan.extension-by-zero-fast-path",
          "left extension along up-closed parts and right extension along down-closed parts equal extension by zero",
          [&](std::string& note) {
            Rng rng(0x4A4E01);
            int count = 0;
            for (const auto& [name, fam] : fams)
              for (long long bound : {1LL, 2LL}) {
                auto [hi, hi_inc] = truncate_order_gt(fam, bound);
                auto [lo, lo_inc] = truncate_order_le(fam, bound);
                for (int i = 0; i < 2 * opt.scale; ++i) {
                  Rep xh = detail::sample_rep(hi, rng, 2, 5);
                  if (!is_isomorphic(left_kan(hi_inc, xh).rep, extend_by_zero(hi_inc, xh))) {
                    note = name + ": left extension differs from zero extension above order " + std::to_string(bound);
                    return false;
                  }
                  Rep xl = detail::sample_rep(lo, rng, 2, 5);
                  if (!is_isomorphic(right_kan(lo_inc, xl).rep, extend_by_zero(lo_inc, xl))) {
                    note = name + ": right extension differs from zero extension up to order " + std::to_string(bound);
                    return false;
                  }
                  count += 2;
                }
              }
            note = std::to_string(count) + " objects";
            return true;
          });

  run.run("kan.restriction-recovers-extensions", "restricting either extension returns the original object",
          [&](std::string& note) {
            Rng rng(0x4A4E02);
            int count = 0;
            for (const auto& [name, fam] : fams)
              for (long long bound : {1LL, 2LL}) {
                auto [sub, inc] = truncate_order_le(fam, bound);
                for (int i = 0; i < 2 * opt.scale; ++i) {
                  Rep x = detail::sample_rep(sub, rng, 2, 5);
                  if (!is_isomorphic(restrict_rep(inc, left_kan(inc, x).rep), x) ||
                      !is_isomorphic(restrict_rep(inc, right_kan(inc, x).rep), x)) {
                    note = name + ": restriction lost the object at bound " + std::to_string(bound);
                    return false;
                  }
                  ++count;
                }
              }
            note = std::to_string(count) + " objects";
            return true;
          });

  run.run("kan.adjunction-dimensions-and-triangles",
          "hom-space dimensions match across both adjunctions and all four triangle identities hold",
          [&](std::string& note) {
            Rng rng(0x4A4E03);
            int count = 0;
            for (const auto& [name, fam] : fams)
              for (long long bound : {2LL}) {
                auto [sub, inc] = truncate_order_le(fam, bound);
                for (int i = 0; i < 2 * opt.scale; ++i) {
                  Rep x = detail::sample_rep(sub, rng, 2, 4);
                  Rep y = detail::sample_rep(fam, rng, 2, 4);
                  AdjunctionReport r = adjunction_check(inc, x, y);
                  if (!r.ok) {
                    note = name + ": " + r.errors.front();
                    return false;
                  }
                  ++count;
                }
              }
            note = std::to_string(count) + " pairs";
            return true;
          });

  run.run("kan.representable-hom-dimension",
          "maps out of the representable at a class form a space of dimension the value there",
          [&](std::string& note) {
            Rng rng(0x4A4E04);
            int count = 0;
            for (const auto& [name, fam] : fams)
              for (int i = 0; i < 3 * opt.scale; ++i) {
                Rep x = detail::sample_rep(fam, rng, 2, 5);
                for (int g = 0; g < fam->n(); ++g) {
                  if (static_cast<int>(hom_space(representable_rep(fam, g), x).size()) != x.dims[g]) {
                    note = name + ": mismatch at " + fam->label(g) + " for dims " + detail::dims_str(x.dims);
                    return false;
                  }
                  ++count;
                }
              }
            note = std::to_string(count) + " hom spaces";
            return true;
          });

  run.run("kan.gluing-sequence-exact",
          "splitting an object along any order threshold yields a pointwise exact sequence with complementary "
          "supports",
          [&](std::string& note) {
            Rng rng(0x4A4E05);
            int count = 0;
            for (const auto& [name, fam] : fams)
              for (long long bound : {1LL, 2LL, 4LL}) {
                std::set<int> open;
                for (int g = 0; g < fam->n(); ++g)
                  if (fam->order(g) > bound) open.insert(g);
                for (int i = 0; i < 2 * opt.scale; ++i) {
                  Rep y = detail::sample_rep(fam, rng, 2, 5);
                  GlueResult glue = glue_ses(y, open);
                  if (!ses_is_exact(glue.into, glue.onto)) {
                    note = name + ": split at order " + std::to_string(bound) + " is not exact";
                    return false;
                  }
                  for (int g = 0; g < fam->n(); ++g)
                    if (glue.sub_obj.dims[g] + glue.quot_obj.dims[g] != y.dims[g]) {
                      note = name + ": split dims do not add up at " + fam->label(g);
                      return false;
                    }
                  ++count;
                }
              }
            note = std::to_string(count) + " splits";
            return true;
          });

  run.run("kan.right-extension-preserves-monos",
          "the right extension along a down-closed part keeps pointwise injections injective",
          [&](std::string& note) {
            Rng rng(0x4A4E06);
            int count = 0;
            for (const auto& [name, fam] : fams) {
              auto [sub, inc] = truncate_order_le(fam, 2);
              for (int i = 0; i < 2 * opt.scale; ++i) {
                Rep x = detail::sample_rep(sub, rng, 2, 4);
                std::vector<std::pair<int, std::vector<Rational>>> gens;
                for (int g = 0; g < sub->n(); ++g) {
                  if (x.dims[g] == 0 || rng.below(2)) continue;
                  std::vector<Rational> v(x.dims[g]);
                  for (auto& e : v) e = Rational(rng.range(-2, 2));
                  gens.push_back({g, std::move(v)});
                }
                SubObject s = subrep_generated(x, gens);
                RightKanResult ra = right_kan(inc, s.obj), rb = right_kan(inc, x);
                if (!is_pointwise_mono(right_kan_transport(ra, rb, s.inc))) {
                  note = name + ": a transported injection dropped rank";
                  return false;
                }
                ++count;
              }
            }
            note = std::to_string(count) + " injections";
            return true;
          });

  run.run("kan.oplax-comparison-restricts-to-iso",
          "the comparison from the extension of a tensor to the tensor of extensions is invertible over the part",
          [&](std::string& note) {
            Rng rng(0x4A4E07);
            FamilyPtr fam = build_cyclic_p(2, 2);
            auto [sub, inc] = truncate_order_le(fam, 2);
            int count = 0;
            for (int i = 0; i < 2 * opt.scale; ++i) {
              Rep x = detail::sample_rep(sub, rng, 1, 3);
              Rep y = detail::sample_rep(sub, rng, 1, 3);
              OplaxReport r = oplax_comparison(inc, x, y);
              if (!r.restricts_to_iso) {
                note = "kernel dims " + detail::dims_str(r.kernel_sub_dims) + ", cokernel dims " +
                       detail::dims_str(r.cokernel_sub_dims);
                return false;
              }
              ++count;
            }
            note = std::to_string(count) + " pairs";
            return true;
          });
}

// ---------------------------------------------------------------------------
// Suite: ideal membership and certificates

inline void check_serre_suite(const CheckOptions& opt, CheckSummary& out) {
  detail::CheckRun run("serre", out);
  std::vector<std::pair<std::string, FamilyPtr>> fams = {{"cyclic_p(2,2)", build_cyclic_p(2, 2)},
                                                         {"elementary_abelian(2,2)", build_elementary_abelian(2, 2)},
                                                         {"abelian_p(2,4)", build_abelian_p(2, 4)}};

  run.run("serre.membership-vs-closure-oracle",
          "every object the independent closure oracle certifies is accepted by the support criterion",
          [&](std::string& note) {
            int agreed = 0;
            for (const auto& [name, fam] : fams) {
              if (fam->n() > 3) continue;
              std::vector<Rep> catalog = detail::chi_e_catalog(fam);
              for (const Rep& gen : catalog) {
                IdealSpec ideal = ideal_from_objects(fam, {gen});
                BruteForceClosure closure = brute_force_closure(fam, {gen}, catalog, 2, 3, 18);
                for (const Rep& x : catalog) {
                  bool certified = closure.contains(x);
                  bool member = serre_member(x, ideal);
                  if (certified && !member) {
                    note = name + ": the oracle certified an object the criterion rejects, support " +
                           detail::set_str(support(x));
                    return false;
                  }
                  agreed += certified == member;
                }
              }
            }
            note = std::to_string(agreed) + " agreements, no unsound acceptance";
            return true;
          });

  run.run("serre.squash-filtrations-verify",
          "every random object filters into single-class pieces matching its support and dimensions",
          [&](std::string& note) {
            Rng rng(0x5E44E01);
            int count = 0;
            for (const auto& [name, fam] : fams)
              for (int i = 0; i < 6 * opt.scale; ++i) {
                Rep x = detail::sample_rep(fam, rng);
                FiltrationCertificate cert = decompose_chi(x);
                std::string why;
                if (!verify_filtration(cert, &why)) {
                  note = name + ": " + why;
                  return false;
                }
                std::vector<int> piece_dims(fam->n(), 0);
                for (const FiltStep& s : cert.steps) piece_dims[s.cls] += s.piece.dims[s.cls];
                if (piece_dims != x.dims) {
                  note = name + ": pieces total " + detail::dims_str(piece_dims) + " against dims " +
                         detail::dims_str(x.dims);
                  return false;
                }
                ++count;
              }
            note = std::to_string(count) + " filtrations";
            return true;
          });

  run.run("serre.membership-certificates-verify",
          "membership answers come with certificates that replay, for both verdicts",
          [&](std::string& note) {
            Rng rng(0x5E44E02);
            int members = 0, rejections = 0;
            for (const auto& [name, fam] : fams)
              for (int i = 0; i < 6 * opt.scale; ++i) {
                Rep x = detail::sample_rep(fam, rng);
                IdealSpec ideal = ideal_from_support(fam, detail::random_subset(fam->n(), rng));
                MembershipCertificate cert = serre_member_certified(x, ideal);
                std::string why;
                if (cert.member != serre_member(x, ideal) || !verify_membership(cert, x, ideal, &why)) {
                  note = name + ": " + (why.empty() ? "verdicts disagree" : why);
                  return false;
                }
                ++(cert.member ? members : rejections);
              }
            note = std::to_string(members) + " memberships, " + std::to_string(rejections) + " rejections";
            return true;
          });

  run.run("serre.hole-annihilates-its-level",
          "the object with a hole at a level tensors the squashed piece there to zero",
          [&](std::string& note) {
            FamilyPtr fam = build_cyclic_p(2, 3);
            for (int i = 1; i < fam->n(); ++i) {
              Rep z = tensor(gamma_rep(fam, i), chi_rep(fam, i, trivial_out_rep(fam, i)).rep);
              if (!support(z).empty()) {
                note = "level " + std::to_string(i) + " leaves support " + detail::set_str(support(z));
                return false;
              }
            }
            note = std::to_string(fam->n() - 1) + " levels";
            return true;
          });

  run.run("serre.radical-by-squares", "an object and its tensor square lie in exactly the same ideals",
          [&](std::string& note) {
            Rng rng(0x5E44E03);
            int count = 0;
            for (const auto& [name, fam] : fams)
              for (int i = 0; i < 5 * opt.scale; ++i) {
                Rep x = detail::sample_rep(fam, rng, 2, 6);
                IdealSpec ideal = ideal_from_support(fam, detail::random_subset(fam->n(), rng));
                if (serre_member(x, ideal) != serre_member(tensor(x, x), ideal)) {
                  note = name + ": square membership differs on support " + detail::set_str(support(x));
                  return false;
                }
                ++count;
              }
            note = std::to_string(count) + " squares";
            return true;
          });

  run.run("serre.enlarged-membership-monotone",
          "support containment forces membership in the enlarged ideal at every order threshold",
          [&](std::string& note) {
            Rng rng(0x5E44E04);
            int count = 0;
            for (const auto& [name, fam] : fams) {
              long long max_order = 0;
              for (int g = 0; g < fam->n(); ++g) max_order = std::max(max_order, fam->order(g));
              for (int i = 0; i < 5 * opt.scale; ++i) {
                Rep y = detail::sample_rep(fam, rng, 2, 5);
                Rep x = tensor(y, detail::sample_rep(fam, rng, 2, 4));
                IdealSpec ideal = ideal_from_objects(fam, {y});
                for (long long n = 0; n <= max_order; ++n)
                  if (!serre_plus_member(x, ideal, n)) {
                    note = name + ": rejected at threshold " + std::to_string(n) + " despite support containment";
                    return false;
                  }
                ++count;
              }
            }
            note = std::to_string(count) + " pairs across all thresholds";
            return true;
          });
}

// ---------------------------------------------------------------------------
// Suite: the spectrum in both regimes

inline void check_spectrum_suite(const CheckOptions& opt, CheckSummary& out) {
  detail::CheckRun run("spectrum", out);

  run.run("spectrum.lattice-counts",
          "three-class families carry exactly eight ideals of which exactly the three class primes are prime",
          [](std::string& note) {
            for (FamilyPtr fam : {build_cyclic_p(2, 2), build_cyclic_p(3, 2), build_elementary_abelian(2, 2)}) {
              IdealLattice lat = enumerate_serre_ideals(fam);
              if (lat.ideals.size() != 8 || lat.prime_count != 3) {
                note = std::to_string(lat.ideals.size()) + " ideals, " + std::to_string(lat.prime_count) + " primes";
                return false;
              }
              for (size_t i = 0; i < lat.ideals.size(); ++i)
                if (lat.primality[i].prime != (lat.ideals[i].support.size() == 2)) {
                  note = "a prime is not a class prime";
                  return false;
                }
            }
            note = "3 families";
            return true;
          });

  run.run("spectrum.discrete-space",
          "the discrete spectrum report lists one closed point per class and refutes everything else",
          [](std::string& note) {
            for (FamilyPtr fam : {build_cyclic_p(2, 2), build_abelian_p(2, 4)}) {
              SpectrumReport rep = spectrum_discrete(fam);
              if (static_cast<int>(rep.points.size()) != fam->n() || !rep.all_points_prime || !rep.no_other_primes ||
                  !rep.realization_checked) {
                note = std::to_string(rep.points.size()) + " points over " + std::to_string(fam->n()) + " classes";
                return false;
              }
            }
            note = "2 families";
            return true;
          });

  run.run("spectrum.evaluation-collapses-its-prime",
          "evaluation at a class kills exactly the members of that class prime",
          [&](std::string& note) {
            Rng rng(0x59EC01);
            FamilyPtr fam = build_elementary_abelian(2, 2);
            int count = 0;
            for (int g = 0; g < fam->n(); ++g) {
              IdealSpec prime = group_prime(fam, g);
              for (int i = 0; i < 4 * opt.scale; ++i) {
                Rep x = detail::sample_rep(fam, rng, 2, 6);
                bool killed = quotient_by_group_prime(x, g).dim == 0;
                if (killed != serre_member(x, prime)) {
                  note = "class " + fam->label(g) + ", support " + detail::set_str(support(x));
                  return false;
                }
                ++count;
              }
            }
            note = std::to_string(count) + " evaluations";
            return true;
          });

  run.run("spectrum.extended-model-both-kinds",
          "both unbounded chain kinds classify their vanishing loci as the one-point compactification",
          [](std::string& note) {
            NStableSpectrumReport cyc = spc_n_stable("cyclic_p", 2, 32);
            NStableSpectrumReport ela = spc_n_stable("elementary_abelian", 3, 24);
            if (!cyc.ok() || !ela.ok()) {
              note = cyc.notes.empty() ? (ela.notes.empty() ? "report flag down" : ela.notes.front())
                                       : cyc.notes.front();
              return false;
            }
            note = std::to_string(cyc.sets_checked + ela.sets_checked) + " loci";
            return true;
          });

  run.run("spectrum.extended-prime-uniqueness",
          "over the extended naturals an ideal is prime exactly when it excludes a single point, with checked "
          "witnesses otherwise",
          [](std::string& note) {
            std::vector<std::set<long long>> parts = {{}};
            for (long long a = 0; a < 6; ++a) {
              size_t snapshot = parts.size();
              for (size_t i = 0; i < snapshot; ++i)
                if (parts[i].size() < 3 && (parts[i].empty() || *parts[i].rbegin() < a)) {
                  std::set<long long> next = parts[i];
                  next.insert(a);
                  parts.push_back(std::move(next));
                }
            }
            int checked = 0;
            for (const std::set<long long>& part : parts)
              for (bool cofinite : {false, true})
                for (bool allow_inf : {false, true}) {
                  NStarIdeal ideal{cofinite ? nset_cofinite(part) : nset_finite(part), allow_inf};
                  NStarPrimality pr = nstar_primality(ideal);
                  bool expect_prime = (cofinite && part.size() == 1 && allow_inf) ||
                                      (cofinite && part.empty() && !allow_inf);
                  bool expect_proper = !(cofinite && part.empty() && allow_inf);
                  if (pr.prime != expect_prime || pr.proper != expect_proper) {
                    note = "misclassified a descriptor with " + std::to_string(part.size()) + " exclusions";
                    return false;
                  }
                  if (pr.proper && !pr.prime && (!pr.witness || !pr.witness_checked)) {
                    note = "a refutation lacks a checked witness";
                    return false;
                  }
                  ++checked;
                }
            note = std::to_string(checked) + " descriptors";
            return true;
          });

  run.run("spectrum.infinity-point-verified",
          "the ideal of finitely supported objects is proper, absorbing, prime, and separated from every level",
          [&](std::string& note) {
            FamilyPtr window = n_stable_window("cyclic_p", 2, std::max(2, opt.truncation));
            std::vector<NamedObject> pool = {named_unit(), named_zero()};
            for (int i = 0; i < window->n(); ++i) {
              pool.push_back(named_chi(i));
              pool.push_back(named_gamma(i));
              pool.push_back(named_e(i));
            }
            pool.push_back(named_dsum(named_chi(0), named_chi(1)));
            pool.push_back(named_tensor(named_gamma(0), named_gamma(1)));
            PInfinityReport rep = verify_p_infinity(window, pool);
            if (!rep.ok()) {
              note = rep.notes.empty() ? "report flag down" : rep.notes.front();
              return false;
            }
            note = std::to_string(pool.size()) + " pool objects";
            return true;
          });

  run.run("spectrum.symbolic-membership-sound",
          "symbolic membership over the extended naturals implies concrete membership on every window",
          [&](std::string& note) {
            FamilyPtr window = n_stable_window("cyclic_p", 2, std::max(2, opt.truncation));
            std::vector<NamedObject> pool = {named_unit(), named_zero()};
            for (int i = 0; i < window->n(); ++i) {
              pool.push_back(named_chi(i));
              pool.push_back(named_gamma(i));
              pool.push_back(named_e(i));
            }
            pool.push_back(named_tensor(named_chi(1), named_gamma(1)));
            pool.push_back(named_dsum(named_chi(0), named_gamma(0)));
            std::vector<NStarIdeal> ideals = {nstar_prime_at_infinity(), nstar_prime_at(0), nstar_prime_at(1),
                                              {nset_finite({0, 1}), true}, {nset_cofinite({1}), false}};
            int count = 0;
            for (const NStarIdeal& ideal : ideals) {
              IdealSpec concrete = window_ideal(ideal, window);
              for (const NamedObject& x : pool) {
                if (nstar_member(x, ideal) && !serre_member(materialize(x, window), concrete)) {
                  note = named_to_string(x) + " admitted symbolically but rejected on the window";
                  return false;
                }
                ++count;
              }
            }
            note = std::to_string(count) + " membership queries";
            return true;
          });
}

// ---------------------------------------------------------------------------
// Registry

inline const std::vector<std::pair<std::string, void (*)(const CheckOptions&, CheckSummary&)>>& check_suites() {
  static const std::vector<std::pair<std::string, void (*)(const CheckOptions&, CheckSummary&)>> table = {
      {"family", &check_family_suite}, {"rep", &check_rep_suite},           {"kan", &check_kan_suite},
      {"serre", &check_serre_suite},   {"spectrum", &check_spectrum_suite},
  };
  return table;
}

inline std::vector<std::string> check_suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : check_suites()) out.push_back(name);
  return out;
}

// Runs the named suites, or all of them for an empty list, in registry order.
inline CheckSummary run_checks(const CheckOptions& opt = {}, const std::vector<std::string>& suites = {}) {
  for (const std::string& s : suites)
    if (std::find_if(check_suites().begin(), check_suites().end(), [&](const auto& e) { return e.first == s; }) ==
        check_suites().end())
      throw input_error("unknown check suite: " + s);
  CheckSummary out;
  for (const auto& [name, fn] : check_suites()) {
    bool wanted = suites.empty() || std::find(suites.begin(), suites.end(), name) != suites.end();
    if (wanted) fn(opt, out);
  }
  return out;
}

}  // namespace globrep
