#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace forminv::oracle {

std::vector<ParentArray> all_parent_arrays(int k) {
  std::vector<ParentArray> out;
  ParentArray p(k, -1);
  std::function<void(int)> rec = [&](int v) {
    if (v == k) {
      out.push_back(p);
      return;
    }
    for (int q = 0; q < v; ++q) {
      p[v] = q;
      rec(v + 1);
    }
  };
  rec(1);
  return out;
}

namespace {

std::string canon_at(const ParentArray& p, int v) {
  std::vector<std::string> kids;
  for (int c = 0; c < static_cast<int>(p.size()); ++c)
    if (p[c] == v) kids.push_back(canon_at(p, c));
  std::sort(kids.begin(), kids.end());
  std::string s = "[";
  for (const auto& k : kids) s += k;
  return s + "]";
}

void append(const RootedTree& t, int parent, ParentArray& p) {
  int me = static_cast<int>(p.size());
  p.push_back(parent);
  for (const auto& c : t.children()) append(c, me, p);
}

}  // namespace

std::string canonical(const ParentArray& p) { return canon_at(p, 0); }

std::set<std::string> distinct_trees(int k) {
  std::set<std::string> s;
  for (const auto& p : all_parent_arrays(k)) s.insert(canonical(p));
  return s;
}

ParentArray to_parents(const RootedTree& t) {
  ParentArray p;
  append(t, -1, p);
  return p;
}

long automorphisms(const ParentArray& p) {
  const int k = static_cast<int>(p.size());
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  long count = 0;
  do {
    if (perm[0] != 0) continue;
    bool ok = true;
    for (int v = 1; v < k && ok; ++v) ok = p[perm[v]] == perm[p[v]];
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

long strict_maps(const ParentArray& p, int m) {
  const int k = static_cast<int>(p.size());
  if (m <= 0) return 0;
  std::vector<int> s(k, 1);
  long count = 0;
  for (;;) {
    bool ok = true;
    for (int v = 1; v < k && ok; ++v) ok = s[p[v]] < s[v];
    if (ok) ++count;
    int j = 0;
    while (j < k && s[j] == m) s[j++] = 1;
    if (j == k) break;
    ++s[j];
  }
  return count;
}

MSeries labeled_tree_sum(const ParentArray& p, const PolyMap& h, int i) {
  const int k = static_cast<int>(p.size());
  const int n = h.nvars();
  MSeries total(n);
  std::vector<int> label(k, 0);
  label[0] = i;
  for (;;) {
    MSeries prod = MSeries::constant(n, Rat(1));
    for (int v = 0; v < k; ++v) {
      MSeries factor = h[label[v]];
      for (int c = 1; c < k; ++c)
        if (p[c] == v) factor = partial_diff(factor, label[c]);
      prod = mul(prod, factor);
    }
    total = add(total, prod);
    int j = 1;
    while (j < k && label[j] == n - 1) label[j++] = 0;
    if (j >= k) break;
    ++label[j];
  }
  return scale(total, Rat(1, automorphisms(p)));
}

namespace {

int total(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

Laurent lmul(const Laurent& a, const Laurent& b, int window) {
  Laurent out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exponent e(ea.size());
      for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
      if (total(e) > window) continue;
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

Laurent inverse_power(const PolyMap& h, const Exponent& k, int window) {
  const int n = h.nvars();
  int low = 0;
  for (int j = 0; j < n; ++j) low -= k[j] + 1;
  // Every factor other than the one being expanded contributes total degree >= low.
  const int slack = window - low;
  Laurent result{{Exponent(n, 0), Rat(1)}};
  for (int i = 0; i < n; ++i) {
    Laurent u;
    for (const auto& t : h[i].terms()) {
      Exponent e = mono::unpack(t.key, n);
      e[i] -= 1;
      u[e] += t.coeff;
    }
    Laurent sum;
    Laurent power{{Exponent(n, 0), Rat(1)}};
    for (int m = 0; m <= slack; ++m) {
      Rat c(binomial(k[i] + m, m));
      for (const auto& [e, v] : power) sum[e] += c * v;
      power = lmul(power, u, slack);
      if (power.empty()) break;
    }
    Exponent shift(n, 0);
    shift[i] = -k[i] - 1;
    Laurent factor;
    for (const auto& [e, v] : sum) {
      Exponent s = e;
      s[i] += shift[i];
      if (v != 0) factor[s] = v;
    }
    result = lmul(result, factor, kExact);
  }
  Laurent out;
  for (const auto& [e, v] : result)
    if (total(e) <= window && v != 0) out[e] = v;
  return out;
}

PolyMap directional_form(const PolyMap& h, int d, const std::vector<PolyMap>& args) {
  const int n = h.nvars();
  std::vector<MSeries> comps;
  for (int i = 0; i < n; ++i) {
    MSeries acc(n);
    std::vector<int> idx(d, 0);
    for (;;) {
      MSeries deriv = h[i];
      for (int j : idx) deriv = partial_diff(deriv, j);
      Rat c = deriv.coeff(Exponent(n, 0));
      if (c != 0) {
        MSeries prod = MSeries::constant(n, c);
        for (int j = 0; j < d; ++j) prod = mul(prod, args[j][idx[j]]);
        acc = add(acc, prod);
      }
      int j = 0;
      while (j < d && idx[j] == n - 1) idx[j++] = 0;
      if (j == d) break;
      ++idx[j];
    }
    comps.push_back(scale(acc, Rat(1) / Rat(factorial(d))));
  }
  return PolyMap(std::move(comps));
}

MSeries leibniz_det(const SeriesMatrix<Rat>& a, int cap) {
  const int n = static_cast<int>(a.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  MSeries acc(a[0][0].nvars(), cap);
  do {
    int inversions = 0;
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        if (perm[x] > perm[y]) ++inversions;
    MSeries prod = MSeries::constant(a[0][0].nvars(), Rat(inversions % 2 ? -1 : 1));
    for (int r = 0; r < n; ++r) prod = mul(prod, a[r][perm[r]], cap);
    acc = add(acc, prod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

BigInt catalan(int k) { return binomial(2 * k, k) / (k + 1); }

PolyMap iterate_inverse(const PolyMap& h, int deg) {
  const int n = h.nvars();
  PolyMap z = PolyMap::identity(n);
  PolyMap g = z;
  for (int step = 0; step < deg; ++step) {
    std::vector<MSeries> next;
    for (int i = 0; i < n; ++i) {
      MSeries acc(n, deg);
      for (const auto& t : h[i].terms()) {
        MSeries prod = MSeries::constant(n, t.coeff, deg);
        Exponent e = mono::unpack(t.key, n);
        for (int j = 0; j < n; ++j)
          for (int r = 0; r < e[j]; ++r) prod = mul(prod, g[j], deg);
        acc = add(acc, prod);
      }
      next.push_back(add(z[i].truncated(deg), acc));
    }
    g = PolyMap(std::move(next));
  }
  return g;
}

}  // namespace forminv::oracle
