#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "forminv/polymap.hpp"
#include "forminv/upoly.hpp"

namespace forminv {

/// Unlabeled rooted tree in canonical form.
///
/// Children are kept sorted by (size, code), where code is the
/// parenthesis encoding "(" + children codes + ")". Two trees are
/// root-preserving isomorphic iff their codes are equal.
class RootedTree {
 public:
  /// Single vertex.
  RootedTree();
  explicit RootedTree(std::vector<RootedTree> children);

  /// Parses a parenthesis code such as "(()())". The result is canonical
  /// even if the children in `code` are not sorted.
  static RootedTree parse(std::string_view code);

  int size() const { return size_; }
  const std::string& code() const { return code_; }
  const std::vector<RootedTree>& children() const { return children_; }
  /// Order of the root-preserving automorphism group.
  const BigInt& aut_order() const { return aut_; }

  friend bool operator==(const RootedTree& a, const RootedTree& b) { return a.code_ == b.code_; }
  friend std::strong_ordering operator<=>(const RootedTree& a, const RootedTree& b);

 private:
  std::vector<RootedTree> children_;
  int size_ = 1;
  std::string code_ = "()";
  BigInt aut_ = 1;
};

/// All rooted trees with 1..max_size vertices, one per isomorphism class.
/// Element s-1 holds the trees of size s, sorted by code.
std::vector<std::vector<RootedTree>> enumerate_trees(int max_size);

inline BigInt aut_order(const RootedTree& t) { return t.aut_order(); }

/// Number of maps sigma: V(T) -> {1..m} with sigma(parent) < sigma(child)
/// along every edge (strictly order preserving, root is the minimum).
BigInt strict_order_count(const RootedTree& t, int m);

/// The strict order polynomial: the unique polynomial of degree |T| that
/// agrees with strict_order_count at every m >= 0.
TPoly order_polynomial(const RootedTree& t);

/// Evaluates the labeled differential sums attached to rooted trees.
///
/// For a tree T and root label a, weight(T)[a] is the sum over all labelings
/// l with l(root) = a of prod_v D_{v+} H_{l(v)}, truncated at `cap`.
/// Identical subtrees are evaluated once; the labeling sum factorizes over
/// children, so each vertex contracts the k-th derivative tensor of H_a
/// against its children's weight vectors.
class TreeWeights {
 public:
  TreeWeights(PolyMap h, int cap);

  /// Weight vector of T (length n). Cached by canonical code.
  const std::vector<MSeries>& weight(const RootedTree& t);

  /// (1/|Aut T|) * weight(T): the tree's term in the inversion expansion.
  PolyMap tree_term(const RootedTree& t);

  /// Precomputes weights of a batch of trees in parallel. Every proper
  /// subtree of each tree must already be cached.
  void compute_batch(const std::vector<RootedTree>& trees, unsigned threads);

 private:
  // Partial derivatives of H_a by a sorted multiset of variables.
  class Derivatives {
   public:
    explicit Derivatives(const PolyMap& h) : h_(h) {}
    const MSeries& get(int label, std::vector<int> vars);

   private:
    const PolyMap& h_;
    std::map<std::pair<int, std::vector<int>>, MSeries> memo_;
  };

  std::vector<MSeries> evaluate(const RootedTree& t, Derivatives& derivs) const;

  PolyMap h_;
  int cap_;
  int n_;
  Derivatives derivs_;
  std::unordered_map<std::string, std::vector<MSeries>> cache_;
};

/// P_{T,i}: the weight of T with root label i divided by |Aut T|.
MSeries tree_poly(const RootedTree& t, const PolyMap& h, int i, int cap = kExact);

/// One tree and its contribution P_T = (P_{T,1}, ..., P_{T,n}).
struct TreeTerm {
  RootedTree tree;
  PolyMap term;
};

/// P_T for every tree with |T| <= max_size, truncated at cap, in enumeration
/// order. Trees whose term vanishes are omitted.
std::vector<TreeTerm> tree_expansion(const PolyMap& h, int max_size, int cap, unsigned threads = 1);

}  // namespace forminv
