#include "forminv/trees.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <thread>

namespace forminv {

namespace {

bool tree_less(const RootedTree& a, const RootedTree& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.code() < b.code();
}

RootedTree parse_at(std::string_view code, std::size_t& pos) {
  if (pos >= code.size() || code[pos] != '(') throw std::invalid_argument("malformed tree code: expected '('");
  ++pos;
  std::vector<RootedTree> children;
  while (pos < code.size() && code[pos] == '(') children.push_back(parse_at(code, pos));
  if (pos >= code.size() || code[pos] != ')') throw std::invalid_argument("malformed tree code: expected ')'");
  ++pos;
  return RootedTree(std::move(children));
}

}  // namespace

RootedTree::RootedTree() = default;

RootedTree::RootedTree(std::vector<RootedTree> children) : children_(std::move(children)) {
  std::sort(children_.begin(), children_.end(), tree_less);
  code_ = "(";
  aut_ = 1;
  std::size_t run = 0;
  for (std::size_t i = 0; i < children_.size(); ++i) {
    size_ += children_[i].size_;
    code_ += children_[i].code_;
    aut_ *= children_[i].aut_;
    run = (i > 0 && children_[i].code_ == children_[i - 1].code_) ? run + 1 : 1;
    aut_ *= static_cast<unsigned long>(run);
  }
  code_ += ")";
}

RootedTree RootedTree::parse(std::string_view code) {
  std::size_t pos = 0;
  RootedTree t = parse_at(code, pos);
  if (pos != code.size()) throw std::invalid_argument("malformed tree code: trailing characters");
  return t;
}

std::strong_ordering operator<=>(const RootedTree& a, const RootedTree& b) {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  return a.code_ <=> b.code_;
}

std::vector<std::vector<RootedTree>> enumerate_trees(int max_size) {
  if (max_size < 1) throw std::invalid_argument("max_size must be >= 1");
  std::vector<std::vector<RootedTree>> by_size{{RootedTree()}};
  std::vector<RootedTree> all{RootedTree()};  // sizes < s, ordered by (size, code)
  for (int s = 2; s <= max_size; ++s) {
    std::vector<RootedTree> level;
    std::vector<RootedTree> chosen;
    // Child multisets summing to s - 1, with nondecreasing indices into `all`.
    std::function<void(std::size_t, int)> pick = [&](std::size_t from, int remaining) {
      if (remaining == 0) {
        level.emplace_back(chosen);
        return;
      }
      for (std::size_t i = from; i < all.size(); ++i) {
        if (all[i].size() > remaining) break;
        chosen.push_back(all[i]);
        pick(i, remaining - all[i].size());
        chosen.pop_back();
      }
    };
    pick(0, s - 1);
    std::sort(level.begin(), level.end(), tree_less);
    all.insert(all.end(), level.begin(), level.end());
    by_size.push_back(std::move(level));
  }
  return by_size;
}

BigInt strict_order_count(const RootedTree& t, int m) {
  if (m < 0) throw std::invalid_argument("m must be non-negative");
  if (m == 0) return 0;
  // ways[r] = number of valid maps on the subtree with sigma(root) = r + 1.
  std::function<std::vector<BigInt>(const RootedTree&)> ways = [&](const RootedTree& v) {
    std::vector<BigInt> w(m, BigInt(1));
    for (const auto& c : v.children()) {
      auto wc = ways(c);
      // suffix[r] = sum_{r' >= r} wc[r'].
      std::vector<BigInt> suffix(m + 1, BigInt(0));
      for (int r = m - 1; r >= 0; --r) suffix[r] = suffix[r + 1] + wc[r];
      for (int r = 0; r < m; ++r) w[r] *= suffix[r + 1];
    }
    return w;
  };
  BigInt total = 0;
  for (const auto& x : ways(t)) total += x;
  return total;
}

TPoly order_polynomial(const RootedTree& t) {
  std::vector<Rat> xs, ys;
  for (int m = 0; m <= t.size(); ++m) {
    xs.emplace_back(m);
    ys.emplace_back(strict_order_count(t, m));
  }
  return interpolate(xs, ys);
}

const MSeries& TreeWeights::Derivatives::get(int label, std::vector<int> vars) {
  std::sort(vars.begin(), vars.end());
  auto key = std::make_pair(label, vars);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  MSeries value;
  if (vars.empty()) {
    value = h_[label];
  } else {
    int last = vars.back();
    vars.pop_back();
    value = partial_diff(get(label, vars), last);
  }
  return memo_.emplace(std::move(key), std::move(value)).first->second;
}

TreeWeights::TreeWeights(PolyMap h, int cap) : h_(std::move(h)), cap_(cap), n_(h_.nvars()), derivs_(h_) {}

std::vector<MSeries> TreeWeights::evaluate(const RootedTree& t, Derivatives& derivs) const {
  std::vector<MSeries> out(n_, MSeries(n_, cap_));
  // Every term has order >= |T| + 1.
  if (cap_ < kExact && t.size() + 1 > cap_) return out;

  std::vector<const std::vector<MSeries>*> kids;
  for (const auto& c : t.children()) {
    const auto& w = cache_.at(c.code());
    if (std::all_of(w.begin(), w.end(), [](const MSeries& s) { return s.is_zero(); })) return out;
    kids.push_back(&w);
  }
  const std::size_t k = kids.size();

  for (int a = 0; a < n_; ++a) {
    MSeries acc(n_, cap_);
    std::vector<int> labels;
    // Chooses child labels one at a time; the vertex factor is the derivative
    // of H_a by all chosen labels, and branches stop as soon as the
    // derivative or the running product of child weights vanishes.
    std::function<void(std::size_t, const MSeries&)> go = [&](std::size_t j, const MSeries& prod) {
      const MSeries& d = derivs.get(a, labels);
      if (d.is_zero()) return;
      if (j == k) {
        acc = add(acc, mul(d, prod, cap_));
        return;
      }
      for (int b = 0; b < n_; ++b) {
        const MSeries& wb = (*kids[j])[b];
        if (wb.is_zero()) continue;
        MSeries next = mul(prod, wb, cap_);
        if (next.is_zero()) continue;
        labels.push_back(b);
        go(j + 1, next);
        labels.pop_back();
      }
    };
    go(0, MSeries::constant(n_, Rat(1)));
    out[a] = acc.truncated(cap_);
  }
  return out;
}

const std::vector<MSeries>& TreeWeights::weight(const RootedTree& t) {
  if (auto it = cache_.find(t.code()); it != cache_.end()) return it->second;
  for (const auto& c : t.children()) weight(c);
  auto w = evaluate(t, derivs_);
  return cache_.emplace(t.code(), std::move(w)).first->second;
}

void TreeWeights::compute_batch(const std::vector<RootedTree>& trees, unsigned threads) {
  std::vector<const RootedTree*> todo;
  for (const auto& t : trees)
    if (!cache_.contains(t.code())) todo.push_back(&t);
  std::vector<std::vector<MSeries>> results(todo.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(todo.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < todo.size(); ++i) results[i] = evaluate(*todo[i], derivs_);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        Derivatives local(h_);
        for (std::size_t i = w; i < todo.size(); i += threads) results[i] = evaluate(*todo[i], local);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < todo.size(); ++i) cache_.emplace(todo[i]->code(), std::move(results[i]));
}

PolyMap TreeWeights::tree_term(const RootedTree& t) {
  const auto& w = weight(t);
  Rat inv(BigInt(1), t.aut_order());
  std::vector<MSeries> c;
  for (const auto& s : w) c.push_back(scale(s, inv));
  return PolyMap(std::move(c));
}

MSeries tree_poly(const RootedTree& t, const PolyMap& h, int i, int cap) {
  if (i < 0 || i >= h.nvars()) throw std::out_of_range("root label out of range");
  TreeWeights tw(h, cap);
  return tw.tree_term(t)[i];
}

std::vector<TreeTerm> tree_expansion(const PolyMap& h, int max_size, int cap, unsigned threads) {
  std::vector<TreeTerm> out;
  if (max_size < 1) return out;
  TreeWeights tw(h, cap);
  for (const auto& level : enumerate_trees(max_size)) {
    tw.compute_batch(level, threads);
    for (const auto& t : level) {
      PolyMap term = tw.tree_term(t);
      if (!term.is_zero()) out.push_back({t, std::move(term)});
    }
  }
  return out;
}

}  // namespace forminv
