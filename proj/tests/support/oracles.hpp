#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "forminv/polymap.hpp"
#include "forminv/trees.hpp"

// Slow reference implementations used only by the tests. None of them calls
// the library routine it is meant to check.
namespace forminv::oracle {

/// parent[v] for v = 1..k-1 (parent[0] = -1); the root is vertex 0.
using ParentArray = std::vector<int>;

/// Every parent array with parent[v] < v, i.e. every recursively labeled
/// tree on k vertices.
std::vector<ParentArray> all_parent_arrays(int k);

/// Canonical string of the unlabeled tree: children strings sorted
/// lexicographically, wrapped in "[" "]".
std::string canonical(const ParentArray& p);

/// Distinct unlabeled rooted trees on k vertices, by canonical string.
std::set<std::string> distinct_trees(int k);

ParentArray to_parents(const RootedTree& t);

/// Root-fixing automorphisms counted over all vertex permutations.
long automorphisms(const ParentArray& p);

/// Maps V -> {1..m} strictly increasing from parent to child, counted one by one.
long strict_maps(const ParentArray& p, int m);

/// (1/|Aut|) * sum over all labelings with root label i of
/// prod_v (derivative of H_l(v) by the labels of v's children).
MSeries labeled_tree_sum(const ParentArray& p, const PolyMap& h, int i);

/// Laurent polynomials as exponent -> coefficient maps.
using Laurent = std::map<Exponent, Rat>;

/// prod_i (z_i - H_i)^(-k_i - 1), expanded as z_i^(-k_i-1) * sum_m C(k_i+m, m) u_i^m
/// with u_i = H_i / z_i, keeping total degrees <= window.
Laurent inverse_power(const PolyMap& h, const Exponent& k, int window);

/// B_i(U^1..U^d) = 1/d! * sum over index tuples of the constant
/// d_{j1}...d_{jd} H_i times U^1_{j1} ... U^d_{jd}.
PolyMap directional_form(const PolyMap& h, int d, const std::vector<PolyMap>& args);

/// Leibniz expansion over all permutations.
MSeries leibniz_det(const SeriesMatrix<Rat>& a, int cap);

/// C(2k, k) / (k + 1).
BigInt catalan(int k);

/// G = z + H(G) iterated deg times from G = z, written independently of
/// the library's fixed-point inverter.
PolyMap iterate_inverse(const PolyMap& h, int deg);

}  // namespace forminv::oracle
