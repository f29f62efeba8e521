#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "forminv/inversion.hpp"

namespace forminv {

struct BenchInput {
  std::string id;
  MapF f;
};

struct BenchOptions {
  std::vector<int> degrees{4, 6, 8, 10};
  std::vector<Method> methods{Method::Recurrent, Method::Homogeneous, Method::AbhyankarGurjar, Method::Bcw};
  int repeats = 3;
  unsigned threads = 1;
};

struct BenchRecord {
  std::string input_id;
  Method method;
  int degree = 0;
  /// Median wall time over the repeats.
  double millis = 0;
  /// Number of nonzero terms in G.
  std::size_t terms = 0;
  std::string agree_hash;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  /// Methods skipped because they do not apply to an input.
  std::vector<std::string> notes;
};

/// Raised when two methods disagree on the same input and degree.
class BenchDisagreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 64-bit FNV-1a of the canonical text of G, as 16 hex digits.
std::string agreement_hash(const PolyMap& g);

/// Times every applicable method on every input and degree. Results are
/// hash-compared per (input, degree) before any record is returned; a
/// mismatch throws BenchDisagreement naming the first differing coefficient.
BenchResult run_bench(const std::vector<BenchInput>& inputs, const BenchOptions& options);

/// CSV with header input_id,method,degree,millis,terms,agree_hash.
std::string bench_csv(const std::vector<BenchRecord>& records);
/// Aligned plain-text table.
std::string bench_table(const std::vector<BenchRecord>& records);

/// Homogeneous H of degree d in n variables using every monomial, with
/// coefficients drawn from {-2, -1, -1/2, 1/2, 1, 2} by a seeded generator.
PolyMap dense_homogeneous(int n, int d, std::uint32_t seed);

}  // namespace forminv
