#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "util.hpp"

namespace globrep {

// Finite abelian group in invariant-factor form: factors d_1 | d_2 | ... with
// every d_i >= 2. The trivial group has an empty factor list.
struct AbelianGroup {
  std::vector<long long> factors;

  long long order() const {
    long long o = 1;
    for (long long d : factors) o *= d;
    return o;
  }
  int rank() const { return static_cast<int>(factors.size()); }

  bool is_valid() const {
    for (size_t i = 0; i < factors.size(); ++i) {
      if (factors[i] < 2) return false;
      if (i + 1 < factors.size() && factors[i + 1] % factors[i] != 0) return false;
    }
    return true;
  }

  std::string label() const {
    if (factors.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) {
      if (i) s += "x";
      s += "C" + std::to_string(factors[i]);
    }
    return s;
  }

  bool operator==(const AbelianGroup&) const = default;
  auto operator<=>(const AbelianGroup&) const = default;
};

// Elements of a product group with the given factor vector (any order, not
// necessarily invariant-factor normalized) are coordinate vectors mod factors.
using Elem = std::vector<long long>;

inline Elem elem_add(const std::vector<long long>& factors, const Elem& a, const Elem& b) {
  Elem c(factors.size());
  for (size_t i = 0; i < factors.size(); ++i) c[i] = (a[i] + b[i]) % factors[i];
  return c;
}

inline Elem elem_scale(const std::vector<long long>& factors, long long k, const Elem& a) {
  Elem c(factors.size());
  for (size_t i = 0; i < factors.size(); ++i) {
    long long v = (a[i] * (k % factors[i])) % factors[i];
    c[i] = v < 0 ? v + factors[i] : v;
  }
  return c;
}

// Subgroup generated by gens inside the product group with the given factors.
inline std::set<Elem> subgroup_closure(const std::vector<long long>& factors,
                                       const std::vector<Elem>& gens) {
  std::set<Elem> s;
  Elem zero(factors.size(), 0);
  s.insert(zero);
  std::vector<Elem> frontier{zero};
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (const Elem& x : frontier)
      for (const Elem& g : gens) {
        Elem y = elem_add(factors, x, g);
        if (s.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return s;
}

namespace detail {
inline int int_log(long long base, long long value) {
  int e = 0;
  while (value > 1) {
    if (value % base != 0) throw internal_error("int_log: not a power");
    value /= base;
    ++e;
  }
  return e;
}
}  // namespace detail

// Isomorphism type of a subgroup given as an element set of a product group,
// recovered from element-order statistics prime by prime.
inline AbelianGroup subgroup_type(const std::vector<long long>& factors, const std::set<Elem>& elems) {
  long long n = static_cast<long long>(elems.size());
  if (n == 1) return AbelianGroup{};
  // Distinct primes of n.
  std::vector<long long> primes;
  long long m = n;
  for (long long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0) m /= p;
    }
  if (m > 1) primes.push_back(m);

  // Per prime, the exponent partition, largest part first.
  std::vector<std::vector<int>> parts_desc;
  for (long long p : primes) {
    std::vector<int> delta;  // delta[j-1] = #{parts >= j} of the partition
    long long prev_count = 1;
    long long pj = 1;
    while (true) {
      pj *= p;
      long long count = 0;
      for (const Elem& x : elems) {
        bool killed = true;
        for (size_t i = 0; i < factors.size(); ++i)
          if ((x[i] * (pj % factors[i])) % factors[i] != 0) {
            killed = false;
            break;
          }
        if (killed) ++count;
      }
      if (count == prev_count) break;
      delta.push_back(detail::int_log(p, count) - detail::int_log(p, prev_count));
      prev_count = count;
    }
    int num_parts = delta.empty() ? 0 : delta[0];
    std::vector<int> lambda(num_parts, 0);
    for (size_t j = 0; j < delta.size(); ++j)
      for (int k = 0; k < delta[j]; ++k) lambda[k] += 1;
    parts_desc.push_back(lambda);
  }

  // Align largest-with-largest across primes to get invariant factors.
  size_t width = 0;
  for (const auto& v : parts_desc) width = std::max(width, v.size());
  std::vector<long long> inv;
  for (size_t t = 0; t < width; ++t) {
    long long f = 1;
    for (size_t pi = 0; pi < primes.size(); ++pi) {
      long long pe = 1;
      if (t < parts_desc[pi].size())
        for (int e = 0; e < parts_desc[pi][t]; ++e) pe *= primes[pi];
      f *= pe;
    }
    inv.push_back(f);
  }
  std::sort(inv.begin(), inv.end());
  AbelianGroup g{inv};
  if (!g.is_valid()) throw internal_error("subgroup_type produced invalid factors");
  return g;
}

// Homomorphisms H -> G are integer matrices, row-major rank(G) x rank(H),
// entry (j,i) reduced mod G.factors[j]; column i must be killed by H.factors[i].
using HomMat = std::vector<long long>;

inline std::string hom_mat_label(const AbelianGroup& src, const AbelianGroup& dst, const HomMat& m) {
  if (m.empty()) return "[]";
  std::string s;
  int rows = dst.rank(), cols = src.rank();
  for (int j = 0; j < rows; ++j) {
    if (j) s += ";";
    for (int i = 0; i < cols; ++i) {
      if (i) s += ",";
      s += std::to_string(m[static_cast<size_t>(j) * cols + i]);
    }
  }
  return s;
}

// Composite of beta: src -> mid then alpha: mid -> dst, reduced mod dst factors.
inline HomMat hom_compose(const AbelianGroup& src, const AbelianGroup& mid, const AbelianGroup& dst,
                          const HomMat& alpha, const HomMat& beta) {
  int rs = dst.rank(), rm = mid.rank(), rc = src.rank();
  HomMat out(static_cast<size_t>(rs) * rc, 0);
  for (int j = 0; j < rs; ++j)
    for (int k = 0; k < rm; ++k) {
      long long a = alpha[static_cast<size_t>(j) * rm + k];
      if (a == 0) continue;
      for (int i = 0; i < rc; ++i) {
        long long& o = out[static_cast<size_t>(j) * rc + i];
        o = (o + a * beta[static_cast<size_t>(k) * rc + i]) % dst.factors[j];
      }
    }
  return out;
}

inline Elem hom_apply(const AbelianGroup& src, const AbelianGroup& dst, const HomMat& m, const Elem& x) {
  int rows = dst.rank(), cols = src.rank();
  Elem y(rows, 0);
  for (int j = 0; j < rows; ++j) {
    long long acc = 0;
    for (int i = 0; i < cols; ++i) acc = (acc + m[static_cast<size_t>(j) * cols + i] * x[i]) % dst.factors[j];
    y[j] = acc;
  }
  return y;
}

namespace detail {

// Rank over F_p of an integer matrix (entries taken mod p).
inline int rank_mod_p(std::vector<long long> a, int rows, int cols, long long p) {
  for (auto& v : a) {
    v %= p;
    if (v < 0) v += p;
  }
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (a[static_cast<size_t>(i) * cols + col] % p != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    for (int j = 0; j < cols; ++j)
      std::swap(a[static_cast<size_t>(sel) * cols + j], a[static_cast<size_t>(r) * cols + j]);
    long long piv = a[static_cast<size_t>(r) * cols + col];
    // Inverse of piv mod p by Fermat.
    long long inv = 1, base = piv % p, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    for (int j = 0; j < cols; ++j)
      a[static_cast<size_t>(r) * cols + j] = a[static_cast<size_t>(r) * cols + j] * inv % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      long long f = a[static_cast<size_t>(i) * cols + col] % p;
      if (f == 0) continue;
      for (int j = 0; j < cols; ++j) {
        long long v = (a[static_cast<size_t>(i) * cols + j] - f * a[static_cast<size_t>(r) * cols + j]) % p;
        a[static_cast<size_t>(i) * cols + j] = v < 0 ? v + p : v;
      }
    }
    ++r;
  }
  return r;
}

}  // namespace detail

// Surjectivity of a well-defined homomorphism H -> G. A hom is surjective iff
// for every prime p dividing |G| the induced map H/pH -> G/pG is onto, which
// reduces to a rank computation mod p on the rows and columns of p-divisible
// order.
inline bool hom_is_surjective(const AbelianGroup& src, const AbelianGroup& dst, const HomMat& m) {
  if (dst.rank() == 0) return true;
  std::set<long long> primes;
  for (long long e : dst.factors) {
    long long v = e;
    for (long long p = 2; p * p <= v; ++p)
      if (v % p == 0) {
        primes.insert(p);
        while (v % p == 0) v /= p;
      }
    if (v > 1) primes.insert(v);
  }
  for (long long p : primes) {
    std::vector<int> rows, cols;
    for (int j = 0; j < dst.rank(); ++j)
      if (dst.factors[j] % p == 0) rows.push_back(j);
    for (int i = 0; i < src.rank(); ++i)
      if (src.factors[i] % p == 0) cols.push_back(i);
    if (cols.empty()) return false;  // rows is nonempty by construction
    std::vector<long long> sub;
    sub.reserve(rows.size() * cols.size());
    for (int j : rows)
      for (int i : cols) sub.push_back(m[static_cast<size_t>(j) * src.rank() + i]);
    if (detail::rank_mod_p(sub, static_cast<int>(rows.size()), static_cast<int>(cols.size()), p) !=
        static_cast<int>(rows.size()))
      return false;
  }
  return true;
}

// All surjective homomorphisms H -> G in lexicographic matrix order. Entry
// (j,i) ranges over multiples of G.factors[j]/gcd, so well-definedness is
// built into the enumeration. Candidate count is budget-guarded.
inline std::vector<HomMat> enumerate_surjective_homs(const AbelianGroup& src, const AbelianGroup& dst,
                                                     long long candidate_budget = (1LL << 22)) {
  int rows = dst.rank(), cols = src.rank();
  if (rows == 0) return {HomMat{}};  // the unique map to the trivial group
  if (cols == 0) return {};          // nothing surjects onto a nontrivial group
  size_t cells = static_cast<size_t>(rows) * cols;
  std::vector<long long> step(cells), count(cells);
  long long total = 1;
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i < cols; ++i) {
      long long g = std::gcd(dst.factors[j], src.factors[i]);
      step[static_cast<size_t>(j) * cols + i] = dst.factors[j] / g;
      count[static_cast<size_t>(j) * cols + i] = g;
      if (total > candidate_budget / g)
        throw budget_error("hom enumeration between " + src.label() + " and " + dst.label() +
                           " exceeds the candidate budget");
      total *= g;
    }
  std::vector<HomMat> out;
  std::vector<long long> idx(cells, 0);
  HomMat m(cells, 0);
  while (true) {
    if (hom_is_surjective(src, dst, m)) out.push_back(m);
    size_t pos = cells;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < count[pos]) {
        m[pos] = idx[pos] * step[pos];
        break;
      }
      idx[pos] = 0;
      m[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

inline HomMat identity_hom(const AbelianGroup& g) {
  int r = g.rank();
  HomMat m(static_cast<size_t>(r) * r, 0);
  for (int i = 0; i < r; ++i) m[static_cast<size_t>(i) * r + i] = 1;
  return m;
}

// All subgroups of the product group, as element sets. Budget-guarded.
inline std::vector<std::set<Elem>> enumerate_subgroups(const std::vector<long long>& factors,
                                                       size_t subgroup_budget = 200000) {
  long long order = 1;
  for (long long f : factors) order *= f;
  if (order > 4096) throw budget_error("subgroup enumeration over a group of order " + std::to_string(order));
  // All elements.
  std::vector<Elem> all;
  Elem cur(factors.size(), 0);
  while (true) {
    all.push_back(cur);
    size_t pos = factors.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++cur[pos] < factors[pos]) {
        done = false;
        break;
      }
      cur[pos] = 0;
    }
    if (done) break;
    for (size_t i = pos + 1; i < factors.size(); ++i) cur[i] = 0;
  }
  std::set<std::set<Elem>> seen;
  std::vector<std::set<Elem>> out;
  std::vector<std::pair<std::set<Elem>, std::vector<Elem>>> work;
  std::set<Elem> triv{Elem(factors.size(), 0)};
  seen.insert(triv);
  out.push_back(triv);
  work.push_back({triv, {}});
  while (!work.empty()) {
    auto [s, gens] = std::move(work.back());
    work.pop_back();
    for (const Elem& x : all) {
      if (s.count(x)) continue;
      std::vector<Elem> g2 = gens;
      g2.push_back(x);
      std::set<Elem> t = subgroup_closure(factors, g2);
      if (seen.insert(t).second) {
        out.push_back(t);
        work.push_back({t, g2});
        if (out.size() > subgroup_budget) throw budget_error("subgroup count exceeds budget");
      }
    }
  }
  return out;
}

}  // namespace globrep
