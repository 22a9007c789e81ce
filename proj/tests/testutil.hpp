#pragma once

#include <optional>
#include <vector>

#include <globrep/family.hpp>
#include <globrep/rep.hpp>

namespace testutil {

using namespace globrep;

// Random invertible matrix built from elementary row operations, so the
// inverse is exact.
inline Mat random_invertible(int n, Rng& rng) {
  Mat q = Mat::identity(n);
  for (int step = 0; step < 2 * n + 2; ++step) {
    int i = static_cast<int>(rng.below(std::max(1u, static_cast<unsigned>(n))));
    int j = static_cast<int>(rng.below(std::max(1u, static_cast<unsigned>(n))));
    if (n == 0) break;
    switch (rng.below(3)) {
      case 0: {  // add a small multiple of another row
        if (i == j) break;
        Rational lam(rng.range(-2, 2));
        for (int c = 0; c < n; ++c) q(i, c) += lam * q(j, c);
        break;
      }
      case 1: {  // swap
        for (int c = 0; c < n; ++c) std::swap(q(i, c), q(j, c));
        break;
      }
      default: {  // scale by a nonzero small rational
        Rational s(rng.range(1, 3), rng.range(1, 2));
        if (rng.below(2)) s = -s;
        for (int c = 0; c < n; ++c) q(i, c) *= s;
        break;
      }
    }
  }
  return q;
}

// Same functor up to a pointwise change of basis; optionally returns the
// witnessing isomorphism x -> result.
inline Rep conjugated(const Rep& x, Rng& rng, RepMorphism* iso_out = nullptr) {
  int n = x.fam->n();
  std::vector<Mat> q(n), qinv(n);
  for (int g = 0; g < n; ++g) {
    q[g] = random_invertible(x.dims[g], rng);
    auto inv = solve_matrix(q[g], Mat::identity(x.dims[g]));
    qinv[g] = *inv;
  }
  Rep y = make_rep(x.fam, x.dims);
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d)
      for (int k = 0; k < x.fam->hom_count(s, d); ++k) y.t(s, d, k) = mul(q[s], mul(x.t(s, d, k), qinv[d]));
  if (iso_out) *iso_out = RepMorphism{x, y, q};
  return y;
}

// Direct sum of small standard pieces with a random change of basis. The
// dimension cap keeps hom-space systems cheap; oversized draws are retried.
inline Rep random_rep(FamilyPtr fam, Rng& rng, int max_pieces = 3, bool twist = true, int dim_cap = 8) {
  bool ordered = check_n_stable(*fam).totally_ordered;
  for (int attempt = 0; attempt < 50; ++attempt) {
    Rep acc = zero_rep(fam);
    int pieces = 1 + static_cast<int>(rng.below(static_cast<unsigned>(max_pieces)));
    for (int p = 0; p < pieces; ++p) {
      switch (rng.below(ordered ? 4u : 3u)) {
        case 0:
          acc = dsum(acc, unit_rep(fam));
          break;
        case 1:
          acc = dsum(acc, representable_rep(fam, static_cast<int>(rng.below(static_cast<unsigned>(fam->n())))));
          break;
        case 2: {
          int g = static_cast<int>(rng.below(static_cast<unsigned>(fam->n())));
          acc = dsum(acc, chi_rep(fam, g, trivial_out_rep(fam, g)).rep);
          break;
        }
        default:
          acc = dsum(acc, gamma_rep(fam, static_cast<int>(rng.below(static_cast<unsigned>(fam->n())))));
          break;
      }
    }
    int top = 0;
    for (int d : acc.dims) top = std::max(top, d);
    if (top > dim_cap) continue;
    return twist ? conjugated(acc, rng) : acc;
  }
  return unit_rep(fam);
}

// Random element of the hom space (zero morphism when the space is trivial).
inline RepMorphism random_morphism(const Rep& x, const Rep& y, Rng& rng) {
  auto basis = hom_space(x, y);
  if (basis.empty()) return zero_morphism(x, y);
  std::vector<Rational> coeff;
  for (size_t i = 0; i < basis.size(); ++i) coeff.push_back(Rational(rng.range(-2, 2)));
  return morphism_combination(basis, coeff);
}

// Dimension of the space of intertwiners v -> w over the endo classes.
inline int equivariant_hom_dim(const OutRep& v, const OutRep& w) {
  int m = v.fam->hom_count(v.cls, v.cls);
  int vars = w.dim * v.dim;
  Mat sys(0, vars);
  for (int s = 0; s < m; ++s) {
    // phi rho_v(s) = rho_w(s) phi, entries (r, c).
    Mat block(w.dim * v.dim, vars);
    int row = 0;
    for (int r = 0; r < w.dim; ++r)
      for (int c = 0; c < v.dim; ++c) {
        for (int t = 0; t < v.dim; ++t) block(row, r * v.dim + t) += v.rho[s](t, c);
        for (int u = 0; u < w.dim; ++u) block(row, u * v.dim + c) -= w.rho[s](r, u);
        ++row;
      }
    sys = vstack(sys, block);
  }
  return kernel_basis(sys).dim();
}

}  // namespace testutil
