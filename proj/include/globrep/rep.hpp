#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "family.hpp"
#include "matrix.hpp"

namespace globrep {

// Contravariant functor on a family: a value space per class and a linear map
// per hom class. For alpha in homs(s,d) (a surjection class s -> d) the
// transition tr[s][d][k] maps the d-value into the s-value, so its shape is
// dims[s] x dims[d]. Functor law: X(alpha o beta) = X(beta) * X(alpha).
struct Rep {
  FamilyPtr fam;
  std::vector<int> dims;
  std::vector<std::vector<std::vector<Mat>>> tr;

  int dim(int cls) const { return dims[cls]; }
  const Mat& t(int src, int dst, int k) const { return tr[src][dst][k]; }
  Mat& t(int src, int dst, int k) { return tr[src][dst][k]; }

  bool operator==(const Rep& o) const { return fam == o.fam && dims == o.dims && tr == o.tr; }
};

// Zero-initialized shell with identity transitions preinstalled.
inline Rep make_rep(FamilyPtr fam, std::vector<int> dims) {
  int n = fam->n();
  if (static_cast<int>(dims.size()) != n) throw internal_error("make_rep dims size");
  Rep x;
  x.fam = fam;
  x.dims = std::move(dims);
  x.tr.resize(n);
  for (int s = 0; s < n; ++s) {
    x.tr[s].resize(n);
    for (int d = 0; d < n; ++d) {
      x.tr[s][d].assign(fam->hom_count(s, d), Mat(x.dims[s], x.dims[d]));
    }
    x.tr[s][s][fam->identity_class(s)] = Mat::identity(x.dims[s]);
  }
  return x;
}

inline Rep zero_rep(FamilyPtr fam) { return make_rep(fam, std::vector<int>(fam->n(), 0)); }

inline Rep unit_rep(FamilyPtr fam) {
  Rep x = make_rep(fam, std::vector<int>(fam->n(), 1));
  for (int s = 0; s < fam->n(); ++s)
    for (int d = 0; d < fam->n(); ++d)
      for (int k = 0; k < fam->hom_count(s, d); ++k) x.t(s, d, k) = Mat::identity(1);
  return x;
}

inline std::set<int> support(const Rep& x) {
  std::set<int> s;
  for (int i = 0; i < x.fam->n(); ++i)
    if (x.dims[i] > 0) s.insert(i);
  return s;
}

struct RepValidationReport {
  bool ok = true;
  std::vector<std::string> errors;
  unsigned long long pairs_checked = 0;

  void fail(std::string msg) {
    ok = false;
    if (errors.size() < 20) errors.push_back(std::move(msg));
  }
};

// Shape, identity, and functor-law checks over every composable pair.
inline RepValidationReport validate_rep(const Rep& x) {
  RepValidationReport rep;
  const GroupFamily& fam = *x.fam;
  int n = fam.n();
  if (static_cast<int>(x.dims.size()) != n || static_cast<int>(x.tr.size()) != n) {
    rep.fail("dims/transition table size mismatch");
    return rep;
  }
  for (int i = 0; i < n; ++i)
    if (x.dims[i] < 0) rep.fail("negative dimension at " + fam.label(i));
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d) {
      if (static_cast<int>(x.tr[s][d].size()) != fam.hom_count(s, d)) {
        rep.fail("transition count mismatch at " + fam.label(s) + "->" + fam.label(d));
        continue;
      }
      for (int k = 0; k < fam.hom_count(s, d); ++k) {
        const Mat& m = x.t(s, d, k);
        if (m.rows() != x.dims[s] || m.cols() != x.dims[d])
          rep.fail("transition shape mismatch at " + fam.label(s) + "->" + fam.label(d));
      }
    }
  if (!rep.ok) return rep;
  for (int g = 0; g < n; ++g)
    if (x.t(g, g, fam.identity_class(g)) != Mat::identity(x.dims[g]))
      rep.fail("identity transition is not the identity at " + fam.label(g));
  // X(alpha o beta) = X(beta) X(alpha) for beta: s -> m, alpha: m -> d.
  for (int s = 0; s < n; ++s)
    for (int m = 0; m < n; ++m)
      for (int d = 0; d < n; ++d)
        for (int a = 0; a < fam.hom_count(m, d); ++a)
          for (int b = 0; b < fam.hom_count(s, m); ++b) {
            ++rep.pairs_checked;
            int ab = fam.compose(s, m, d, a, b);
            if (x.t(s, d, ab) != mul(x.t(s, m, b), x.t(m, d, a))) {
              rep.fail("functor law fails on " + fam.label(s) + "->" + fam.label(m) + "->" + fam.label(d));
              if (!rep.ok && rep.errors.size() >= 20) return rep;
            }
          }
  return rep;
}

// Natural transformation: one component matrix per class, tgt(G) <- src(G).
struct RepMorphism {
  Rep src, tgt;
  std::vector<Mat> comp;  // comp[G]: tgt.dims[G] x src.dims[G]

  const Mat& at(int cls) const { return comp[cls]; }
};

inline RepValidationReport validate_morphism(const RepMorphism& f) {
  RepValidationReport rep;
  const GroupFamily& fam = *f.src.fam;
  if (f.src.fam != f.tgt.fam) {
    rep.fail("source and target over different families");
    return rep;
  }
  int n = fam.n();
  if (static_cast<int>(f.comp.size()) != n) {
    rep.fail("component count mismatch");
    return rep;
  }
  for (int g = 0; g < n; ++g)
    if (f.comp[g].rows() != f.tgt.dims[g] || f.comp[g].cols() != f.src.dims[g])
      rep.fail("component shape mismatch at " + fam.label(g));
  if (!rep.ok) return rep;
  // Naturality: f_s X(alpha) = Y(alpha) f_d for alpha in homs(s,d).
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d)
      for (int k = 0; k < fam.hom_count(s, d); ++k) {
        ++rep.pairs_checked;
        if (mul(f.comp[s], f.src.t(s, d, k)) != mul(f.tgt.t(s, d, k), f.comp[d]))
          rep.fail("naturality fails at " + fam.label(s) + "->" + fam.label(d));
      }
  return rep;
}

inline RepMorphism identity_morphism(const Rep& x) {
  RepMorphism f{x, x, {}};
  for (int g = 0; g < x.fam->n(); ++g) f.comp.push_back(Mat::identity(x.dims[g]));
  return f;
}

inline RepMorphism zero_morphism(const Rep& x, const Rep& y) {
  RepMorphism f{x, y, {}};
  for (int g = 0; g < x.fam->n(); ++g) f.comp.push_back(Mat(y.dims[g], x.dims[g]));
  return f;
}

inline RepMorphism compose_morphisms(const RepMorphism& g, const RepMorphism& f) {
  if (!(g.src == f.tgt)) throw internal_error("compose_morphisms: middle object mismatch");
  RepMorphism h{f.src, g.tgt, {}};
  for (int c = 0; c < f.src.fam->n(); ++c) h.comp.push_back(mul(g.comp[c], f.comp[c]));
  return h;
}

inline bool is_pointwise_mono(const RepMorphism& f) {
  for (const Mat& m : f.comp)
    if (!full_column_rank(m)) return false;
  return true;
}

inline bool is_pointwise_epi(const RepMorphism& f) {
  for (const Mat& m : f.comp)
    if (!full_row_rank(m)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Tensor and direct sum

inline Rep tensor(const Rep& x, const Rep& y) {
  if (x.fam != y.fam) throw internal_error("tensor over different families");
  Rep z;
  z.fam = x.fam;
  int n = x.fam->n();
  for (int i = 0; i < n; ++i) z.dims.push_back(x.dims[i] * y.dims[i]);
  z.tr.resize(n);
  for (int s = 0; s < n; ++s) {
    z.tr[s].resize(n);
    for (int d = 0; d < n; ++d)
      for (int k = 0; k < x.fam->hom_count(s, d); ++k) z.tr[s][d].push_back(kron(x.t(s, d, k), y.t(s, d, k)));
  }
  return z;
}

inline Rep dsum(const Rep& x, const Rep& y) {
  if (x.fam != y.fam) throw internal_error("dsum over different families");
  Rep z;
  z.fam = x.fam;
  int n = x.fam->n();
  for (int i = 0; i < n; ++i) z.dims.push_back(x.dims[i] + y.dims[i]);
  z.tr.resize(n);
  for (int s = 0; s < n; ++s) {
    z.tr[s].resize(n);
    for (int d = 0; d < n; ++d)
      for (int k = 0; k < x.fam->hom_count(s, d); ++k)
        z.tr[s][d].push_back(direct_sum(x.t(s, d, k), y.t(s, d, k)));
  }
  return z;
}

inline RepMorphism tensor_morphism(const RepMorphism& f, const RepMorphism& g) {
  RepMorphism h{tensor(f.src, g.src), tensor(f.tgt, g.tgt), {}};
  for (int c = 0; c < f.src.fam->n(); ++c) h.comp.push_back(kron(f.comp[c], g.comp[c]));
  return h;
}

inline RepMorphism dsum_morphism(const RepMorphism& f, const RepMorphism& g) {
  RepMorphism h{dsum(f.src, g.src), dsum(f.tgt, g.tgt), {}};
  for (int c = 0; c < f.src.fam->n(); ++c) h.comp.push_back(direct_sum(f.comp[c], g.comp[c]));
  return h;
}

// ---------------------------------------------------------------------------
// Kernel, cokernel, image

struct SubObject {
  Rep obj;
  RepMorphism inc;  // obj -> ambient, pointwise injective
};

struct QuotObject {
  Rep obj;
  RepMorphism proj;  // ambient -> obj, pointwise surjective
};

struct ImageFactorization {
  Rep obj;
  RepMorphism mono;  // obj -> target
  RepMorphism epi;   // source -> obj; mono o epi = f
};

namespace detail {

// Induced transitions on pointwise subspaces: solve inc_s C = X(alpha) inc_d.
// Consistency is exactly closure of the subspaces under transitions.
inline Rep sub_transitions(const Rep& x, const std::vector<Mat>& inc_cols, const char* what) {
  int n = x.fam->n();
  std::vector<int> dims;
  for (int g = 0; g < n; ++g) dims.push_back(inc_cols[g].cols());
  Rep s = make_rep(x.fam, dims);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < x.fam->hom_count(a, b); ++k) {
        auto c = solve_matrix(inc_cols[a], mul(x.t(a, b, k), inc_cols[b]));
        if (!c) throw internal_error(std::string(what) + ": subspace family is not transition-closed");
        s.t(a, b, k) = *c;
      }
  return s;
}

}  // namespace detail

inline SubObject kernel(const RepMorphism& f) {
  int n = f.src.fam->n();
  std::vector<Mat> cols(n);
  for (int g = 0; g < n; ++g) cols[g] = transpose(kernel_basis(f.comp[g]).basis);
  Rep k = detail::sub_transitions(f.src, cols, "kernel");
  return {k, RepMorphism{k, f.src, cols}};
}

inline QuotObject cokernel(const RepMorphism& f) {
  int n = f.src.fam->n();
  const Rep& y = f.tgt;
  std::vector<Mat> proj(n), rinv(n);
  std::vector<int> dims(n);
  for (int g = 0; g < n; ++g) {
    proj[g] = quotient_map(y.dims[g], image_basis(f.comp[g]));
    dims[g] = proj[g].rows();
    rinv[g] = right_inverse(proj[g]);
  }
  Rep q = make_rep(y.fam, dims);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < y.fam->hom_count(a, b); ++k)
        q.t(a, b, k) = mul(proj[a], mul(y.t(a, b, k), rinv[b]));
  return {q, RepMorphism{y, q, proj}};
}

inline ImageFactorization image(const RepMorphism& f) {
  int n = f.src.fam->n();
  std::vector<Mat> cols(n), epi(n);
  for (int g = 0; g < n; ++g) {
    cols[g] = transpose(image_basis(f.comp[g]).basis);
    auto e = solve_matrix(cols[g], f.comp[g]);
    if (!e) throw internal_error("image: factorization failed");
    epi[g] = *e;
  }
  Rep im = detail::sub_transitions(f.tgt, cols, "image");
  return {im, RepMorphism{im, f.tgt, cols}, RepMorphism{f.src, im, epi}};
}

// Pointwise exactness of a composable pair (f then g): im f = ker g, with f
// mono and g epi. Callers validate naturality separately.
inline bool ses_is_exact(const RepMorphism& f, const RepMorphism& g) {
  if (!(f.tgt == g.src)) return false;
  for (int c = 0; c < f.src.fam->n(); ++c) {
    if (!full_column_rank(f.comp[c])) return false;
    if (!full_row_rank(g.comp[c])) return false;
    if (image_basis(f.comp[c]) != kernel_basis(g.comp[c])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Generated subfunctor

// Smallest subfunctor containing the given elements (each a vector in the
// value space of its class): at H, the span of X(alpha) v over all
// alpha in homs(H, G_v); the identity hom puts v itself at its own class.
inline SubObject subrep_generated(const Rep& x, const std::vector<std::pair<int, std::vector<Rational>>>& gens) {
  int n = x.fam->n();
  for (const auto& [cls, v] : gens)
    if (static_cast<int>(v.size()) != x.dims[cls]) throw input_error("generator has wrong dimension");
  std::vector<Mat> cols(n);
  for (int h = 0; h < n; ++h) {
    Mat rows(0, x.dims[h]);
    for (const auto& [cls, v] : gens)
      for (int k = 0; k < x.fam->hom_count(h, cls); ++k) {
        const Mat& t = x.t(h, cls, k);
        Mat rv(1, x.dims[h]);
        for (int r = 0; r < t.rows(); ++r) {
          Rational acc = 0;
          for (int c = 0; c < t.cols(); ++c) acc += t(r, c) * v[c];
          rv(0, r) = acc;
        }
        rows = vstack(rows, rv);
      }
    cols[h] = transpose(rref(rows).R);
  }
  Rep s = detail::sub_transitions(x, cols, "subrep_generated");
  return {s, RepMorphism{s, x, cols}};
}

// ---------------------------------------------------------------------------
// Hom spaces and isomorphism search

// Basis of natural transformations x -> y, found as the kernel of the linear
// system collecting every naturality square. Variable order (class, row, col)
// makes the returned basis deterministic.
inline std::vector<RepMorphism> hom_space(const Rep& x, const Rep& y) {
  if (x.fam != y.fam) throw internal_error("hom_space over different families");
  int n = x.fam->n();
  std::vector<int> offset(n + 1, 0);
  for (int g = 0; g < n; ++g) offset[g + 1] = offset[g] + y.dims[g] * x.dims[g];
  int vars = offset[n];
  // Count equation rows.
  long long rows = 0;
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d) rows += static_cast<long long>(x.fam->hom_count(s, d)) * y.dims[s] * x.dims[d];
  Mat sys(static_cast<int>(rows), vars);
  int row = 0;
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d)
      for (int k = 0; k < x.fam->hom_count(s, d); ++k) {
        const Mat& xa = x.t(s, d, k);
        const Mat& ya = y.t(s, d, k);
        // f_s X(alpha) - Y(alpha) f_d = 0, entry (r, c).
        for (int r = 0; r < y.dims[s]; ++r)
          for (int c = 0; c < x.dims[d]; ++c) {
            for (int t = 0; t < x.dims[s]; ++t)
              if (xa(t, c) != 0) sys(row, offset[s] + r * x.dims[s] + t) += xa(t, c);
            for (int u = 0; u < y.dims[d]; ++u)
              if (ya(r, u) != 0) sys(row, offset[d] + u * x.dims[d] + c) -= ya(r, u);
            ++row;
          }
      }
  Subspace ker = kernel_basis(sys);
  std::vector<RepMorphism> basis;
  for (int i = 0; i < ker.dim(); ++i) {
    RepMorphism f{x, y, {}};
    for (int g = 0; g < n; ++g) {
      Mat m(y.dims[g], x.dims[g]);
      for (int r = 0; r < y.dims[g]; ++r)
        for (int c = 0; c < x.dims[g]; ++c) m(r, c) = ker.basis(i, offset[g] + r * x.dims[g] + c);
      f.comp.push_back(std::move(m));
    }
    basis.push_back(std::move(f));
  }
  return basis;
}

inline RepMorphism morphism_combination(const std::vector<RepMorphism>& basis,
                                        const std::vector<Rational>& coeff) {
  RepMorphism f = zero_morphism(basis.at(0).src, basis.at(0).tgt);
  for (size_t i = 0; i < basis.size(); ++i) {
    if (coeff[i] == 0) continue;
    for (size_t g = 0; g < f.comp.size(); ++g) f.comp[g] = add(f.comp[g], scale(coeff[i], basis[i].comp[g]));
  }
  return f;
}

inline std::optional<RepMorphism> invert_iso(const RepMorphism& f) {
  RepMorphism inv{f.tgt, f.src, {}};
  for (const Mat& m : f.comp) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve_matrix(m, Mat::identity(m.rows()));
    if (!x || mul(m, *x) != Mat::identity(m.rows())) return std::nullopt;
    inv.comp.push_back(*x);
  }
  return inv;
}

// Isomorphism witness, or nullopt. Searches the hom space for a combination
// invertible at every class: single basis elements first, then seeded random
// integer combinations (rank can only be lost on a measure-zero set, so a few
// draws find an iso whenever one exists). Any witness returned is verified
// exactly; a nullopt answer after exhausting draws is probabilistic only.
inline std::optional<RepMorphism> is_isomorphic(const Rep& x, const Rep& y, std::uint64_t seed = 0xA11CE) {
  if (x.fam != y.fam || x.dims != y.dims) return std::nullopt;
  bool all_zero = true;
  for (int d : x.dims) all_zero &= d == 0;
  if (all_zero) return zero_morphism(x, y);
  auto basis = hom_space(x, y);
  if (basis.empty()) return std::nullopt;
  auto check = [&](const RepMorphism& f) -> bool {
    for (const Mat& m : f.comp)
      if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
    return true;
  };
  for (const auto& f : basis)
    if (check(f)) return f;
  Rng rng(seed);
  for (int attempt = 0; attempt < 60; ++attempt) {
    long long span = attempt < 30 ? 3 : 20;
    std::vector<Rational> coeff;
    for (size_t i = 0; i < basis.size(); ++i) coeff.push_back(Rational(rng.range(-span, span)));
    RepMorphism f = morphism_combination(basis, coeff);
    if (check(f)) return f;
  }
  return std::nullopt;
}

// Pointwise-injective morphism x -> y, or nullopt (same randomized scheme;
// positives are exact).
inline std::optional<RepMorphism> find_mono(const Rep& x, const Rep& y, std::uint64_t seed = 0xB0B) {
  for (int g = 0; g < x.fam->n(); ++g)
    if (x.dims[g] > y.dims[g]) return std::nullopt;
  bool all_zero = true;
  for (int d : x.dims) all_zero &= d == 0;
  if (all_zero) return zero_morphism(x, y);
  auto basis = hom_space(x, y);
  if (basis.empty()) return std::nullopt;
  for (const auto& f : basis)
    if (is_pointwise_mono(f)) return f;
  Rng rng(seed);
  for (int attempt = 0; attempt < 60; ++attempt) {
    long long span = attempt < 30 ? 3 : 20;
    std::vector<Rational> coeff;
    for (size_t i = 0; i < basis.size(); ++i) coeff.push_back(Rational(rng.range(-span, span)));
    RepMorphism f = morphism_combination(basis, coeff);
    if (is_pointwise_mono(f)) return f;
  }
  return std::nullopt;
}

inline std::optional<RepMorphism> find_epi(const Rep& x, const Rep& y, std::uint64_t seed = 0xE91) {
  for (int g = 0; g < x.fam->n(); ++g)
    if (x.dims[g] < y.dims[g]) return std::nullopt;
  bool all_zero = true;
  for (int d : y.dims) all_zero &= d == 0;
  if (all_zero) return zero_morphism(x, y);
  auto basis = hom_space(x, y);
  if (basis.empty()) return std::nullopt;
  for (const auto& f : basis)
    if (is_pointwise_epi(f)) return f;
  Rng rng(seed);
  for (int attempt = 0; attempt < 60; ++attempt) {
    long long span = attempt < 30 ? 3 : 20;
    std::vector<Rational> coeff;
    for (size_t i = 0; i < basis.size(); ++i) coeff.push_back(Rational(rng.range(-span, span)));
    RepMorphism f = morphism_combination(basis, coeff);
    if (is_pointwise_epi(f)) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Automorphism-class representations at a single class

struct OutRep {
  FamilyPtr fam;
  int cls = 0;
  int dim = 0;
  std::vector<Mat> rho;  // per endo class sigma in homs(cls, cls)
  bool regular = false;
};

inline RepValidationReport validate_out_rep(const OutRep& v) {
  RepValidationReport rep;
  const GroupFamily& fam = *v.fam;
  int g = v.cls;
  int m = fam.hom_count(g, g);
  if (static_cast<int>(v.rho.size()) != m) {
    rep.fail("action table size mismatch");
    return rep;
  }
  for (const Mat& r : v.rho)
    if (r.rows() != v.dim || r.cols() != v.dim) rep.fail("action matrix shape mismatch");
  if (!rep.ok) return rep;
  if (v.rho[fam.identity_class(g)] != Mat::identity(v.dim)) rep.fail("identity does not act trivially");
  for (int a = 0; a < m; ++a) {
    if (rank(v.rho[a]) != v.dim) rep.fail("non-invertible action matrix");
    for (int b = 0; b < m; ++b) {
      // Left action: rho(a o b) = rho(a) rho(b).
      if (v.rho[fam.compose(g, g, g, a, b)] != mul(v.rho[a], v.rho[b])) rep.fail("action is not a homomorphism");
    }
  }
  return rep;
}

inline OutRep trivial_out_rep(FamilyPtr fam, int cls, int dim = 1) {
  OutRep v{fam, cls, dim, {}, false};
  v.rho.assign(fam->hom_count(cls, cls), Mat::identity(dim));
  return v;
}

inline OutRep regular_out_rep(FamilyPtr fam, int cls) {
  int m = fam->hom_count(cls, cls);
  OutRep v{fam, cls, m, {}, true};
  for (int s = 0; s < m; ++s) {
    Mat r(m, m);
    for (int t = 0; t < m; ++t) r(fam->compose(cls, cls, cls, s, t), t) = 1;
    v.rho.push_back(std::move(r));
  }
  return v;
}

inline int inverse_endo(const GroupFamily& fam, int cls, int sigma) {
  int e = fam.identity_class(cls);
  for (int t = 0; t < fam.hom_count(cls, cls); ++t)
    if (fam.compose(cls, cls, cls, sigma, t) == e && fam.compose(cls, cls, cls, t, sigma) == e) return t;
  throw internal_error("endo class has no inverse");
}

// The value of x at cls as a left action: rho(sigma) = X(sigma^{-1}).
// Contravariance turns the inverse into a homomorphism, and this is the
// equivariance structure under which evaluation maps out of induced objects
// are well defined.
inline OutRep out_rep_of(const Rep& x, int cls) {
  OutRep v{x.fam, cls, x.dims[cls], {}, false};
  for (int s = 0; s < x.fam->hom_count(cls, cls); ++s) v.rho.push_back(x.t(cls, cls, inverse_endo(*x.fam, cls, s)));
  return v;
}

// ---------------------------------------------------------------------------
// Induced objects: e(G, V), chi(G, V), gamma(i)

// The representable object k[Hom(-, G)]: value at H is spanned by the hom
// classes H -> G, transitions are precomposition. This is e(G, V) for V the
// regular action, in its permutation presentation.
inline Rep representable_rep(FamilyPtr fam, int g) {
  int n = fam->n();
  std::vector<int> dims;
  for (int h = 0; h < n; ++h) dims.push_back(fam->hom_count(h, g));
  Rep x = make_rep(fam, dims);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d)
      for (int k = 0; k < fam->hom_count(s, d); ++k) {
        Mat m(dims[s], dims[d]);
        for (int f = 0; f < dims[d]; ++f) m(fam->compose(s, d, g, f, k), f) = 1;
        x.t(s, d, k) = m;
      }
  return x;
}

// Yoneda: a vector in x(G) induces the morphism representable(G) -> x sending
// the class f to X(f) v.
inline RepMorphism yoneda_morphism(const Rep& rep_g, const Rep& x, int g, const std::vector<Rational>& v) {
  RepMorphism out{rep_g, x, {}};
  for (int h = 0; h < x.fam->n(); ++h) {
    Mat m(x.dims[h], x.fam->hom_count(h, g));
    for (int f = 0; f < x.fam->hom_count(h, g); ++f) {
      const Mat& t = x.t(h, g, f);
      for (int r = 0; r < t.rows(); ++r) {
        Rational acc = 0;
        for (int c = 0; c < t.cols(); ++c) acc += t(r, c) * v[c];
        m(r, f) = acc;
      }
    }
    out.comp.push_back(std::move(m));
  }
  return out;
}

// Induced object data: the value at H is the invariant subspace of
// V (x) k[Hom(H,G)] under sigma . (v (x) f) = rho(sigma) v (x) sigma o f,
// realized as the image of the averaging idempotent (exact in char 0).
// basis[H] holds the embedding of the value space into the big space.
struct EData {
  Rep rep;
  int cls = 0;
  OutRep v;
  std::vector<Mat> basis;
};

inline EData e_rep_data(FamilyPtr fam, int g, const OutRep& v) {
  int n = fam->n();
  int gamma = fam->hom_count(g, g);
  EData out;
  out.cls = g;
  out.v = v;
  out.basis.resize(n);
  std::vector<int> dims(n);
  std::vector<std::vector<int>> post(gamma);  // post[sigma][f] = sigma o f, per class
  for (int h = 0; h < n; ++h) {
    int nh = fam->hom_count(h, g);
    int big = v.dim * nh;
    if (big == 0) {
      out.basis[h] = Mat(big, 0);
      dims[h] = 0;
      continue;
    }
    Mat pi(big, big);
    for (int s = 0; s < gamma; ++s) {
      // kron(rho(sigma), P(sigma)) with P the postcomposition permutation.
      const Mat& r = v.rho[s];
      for (int f = 0; f < nh; ++f) {
        int sf = fam->compose(h, g, g, s, f);
        for (int i = 0; i < v.dim; ++i)
          for (int j = 0; j < v.dim; ++j)
            if (r(i, j) != 0) pi(i * nh + sf, j * nh + f) += r(i, j);
      }
    }
    Rational inv_order = Rational(1) / Rational(gamma);
    for (int i = 0; i < big; ++i)
      for (int j = 0; j < big; ++j) pi(i, j) *= inv_order;
    Subspace im = image_basis(pi);
    out.basis[h] = transpose(im.basis);
    dims[h] = im.dim();
  }
  out.rep = make_rep(fam, dims);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d)
      for (int k = 0; k < fam->hom_count(s, d); ++k) {
        int nd = fam->hom_count(d, g), ns = fam->hom_count(s, g);
        // Precomposition on hom classes, extended V-identically.
        Mat pre(v.dim * ns, v.dim * nd);
        for (int f = 0; f < nd; ++f) {
          int fk = fam->compose(s, d, g, f, k);
          for (int i = 0; i < v.dim; ++i) pre(i * ns + fk, i * nd + f) = 1;
        }
        auto c = solve_matrix(out.basis[s], mul(pre, out.basis[d]));
        if (!c) throw internal_error("induced object: invariant spaces not transition-closed");
        out.rep.t(s, d, k) = *c;
      }
  return out;
}

// Evaluation morphism out of an induced object: the component at H sends
// [v (x) f] to X(f) phi(v). On the invariant subspace this only sees the
// equivariant average of phi (intertwining rho with sigma |-> X(sigma^{-1})),
// so the result is natural for every phi and injective precisely on
// equivariant inducing maps.
inline RepMorphism counit_from_e(const EData& e, const Rep& x, const Mat& phi) {
  FamilyPtr fam = x.fam;
  int g = e.cls;
  RepMorphism out{e.rep, x, {}};
  for (int h = 0; h < fam->n(); ++h) {
    int nh = fam->hom_count(h, g);
    Mat big(x.dims[h], e.v.dim * nh);
    for (int f = 0; f < nh; ++f) {
      Mat xf_phi = mul(x.t(h, g, f), phi);  // x(H) <- V
      for (int r = 0; r < x.dims[h]; ++r)
        for (int i = 0; i < e.v.dim; ++i) big(r, i * nh + f) = xf_phi(r, i);
    }
    out.comp.push_back(mul(big, e.basis[h]));
  }
  return out;
}

// chi(G, V): the induced object squashed to its top class. Transitions at G
// are copied from e(G, V), so the defining epi is the identity at G and zero
// elsewhere.
struct ChiData {
  Rep rep;
  EData e;
  RepMorphism from_e;  // e(G,V) ->> chi(G,V)
};

inline ChiData chi_rep(FamilyPtr fam, int g, const OutRep& v) {
  ChiData out;
  out.e = e_rep_data(fam, g, v);
  std::vector<int> dims(fam->n(), 0);
  dims[g] = out.e.rep.dims[g];
  out.rep = make_rep(fam, dims);
  for (int k = 0; k < fam->hom_count(g, g); ++k) out.rep.t(g, g, k) = out.e.rep.t(g, g, k);
  out.from_e = RepMorphism{out.e.rep, out.rep, {}};
  for (int h = 0; h < fam->n(); ++h)
    out.from_e.comp.push_back(h == g ? Mat::identity(dims[g]) : Mat(0, out.e.rep.dims[h]));
  return out;
}

// One-dimensional object with a hole at level i of a totally ordered family:
// transitions are the identity when both levels are on the same side of i and
// zero across the hole.
inline Rep gamma_rep(FamilyPtr fam, int i) {
  auto st = check_n_stable(*fam);
  if (!st.totally_ordered) throw input_error("gamma requires a totally ordered family: " + st.witness);
  int n = fam->n();
  if (i < 0 || i >= n) throw input_error("gamma level out of range");
  std::vector<int> dims(n, 1);
  dims[i] = 0;
  Rep x = make_rep(fam, dims);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d)
      for (int k = 0; k < fam->hom_count(s, d); ++k) {
        if (dims[s] == 0 || dims[d] == 0) continue;
        bool same_side = (s < i && d < i) || (s > i && d > i);
        x.t(s, d, k) = same_side ? Mat::identity(1) : Mat(1, 1);
      }
  return x;
}

// ---------------------------------------------------------------------------
// Projective cover map and torsion-freeness

struct ProjectiveCover {
  RepMorphism epi;                  // (+)_G e(G, x(G)) ->> x
  std::vector<int> summand_classes; // the G that contribute a summand
};

// Counit-assembled surjection from induced objects, one summand per support
// class, with V the value of x there. Pointwise onto because the identity
// class hits every value space.
inline ProjectiveCover epi_from_projectives(const Rep& x) {
  FamilyPtr fam = x.fam;
  ProjectiveCover out;
  Rep p = zero_rep(fam);
  RepMorphism f = zero_morphism(p, x);
  for (int g : support(x)) {
    EData e = e_rep_data(fam, g, out_rep_of(x, g));
    RepMorphism c = counit_from_e(e, x, Mat::identity(x.dims[g]));
    Rep p2 = dsum(p, e.rep);
    RepMorphism f2{p2, x, {}};
    for (int h = 0; h < fam->n(); ++h) f2.comp.push_back(hstack(f.comp[h], c.comp[h]));
    p = std::move(p2);
    f = std::move(f2);
    out.summand_classes.push_back(g);
  }
  out.epi = std::move(f);
  return out;
}

struct TorsionFreeReport {
  long long r = 0;                 // least bound such that all transitions out of levels above it are injective
  bool certified_window = false;   // every transition in the family window was inspected
  std::string witness;             // a non-injective transition at level r, when r > 0
};

// Smallest r such that every transition X(n) -> X(m) with n > r is injective,
// where n indexes the value space the map acts from (the smaller class of the
// surjection). Requires a totally ordered family.
inline TorsionFreeReport check_eventually_torsion_free(const Rep& x) {
  auto st = check_n_stable(*x.fam);
  if (!st.totally_ordered) throw input_error("torsion-freeness requires a totally ordered family: " + st.witness);
  TorsionFreeReport rep;
  rep.certified_window = true;
  int n = x.fam->n();
  for (int d = 0; d < n; ++d)
    for (int s = d; s < n; ++s)
      for (int k = 0; k < x.fam->hom_count(s, d); ++k)
        if (!full_column_rank(x.t(s, d, k)) && d >= rep.r) {
          // The bound is the largest level with a non-injective outgoing map.
          rep.r = d;
          rep.witness = "transition " + x.fam->label(s) + " -> " + x.fam->label(d) + " class " +
                        x.fam->homs(s, d)[k].label + " is not injective on the level-" + std::to_string(d) +
                        " value";
        }
  return rep;
}

}  // namespace globrep
