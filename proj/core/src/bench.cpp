#include "forminv/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>

#include "forminv/io.hpp"

namespace forminv {

std::string agreement_hash(const PolyMap& g) {
  MapDocument doc;
  doc.degree = std::min(g.trunc(), kMaxKeyDegree / 2);
  doc.vars = default_var_names(g.nvars());
  doc.map = g;
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : serialize(doc)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BenchResult run_bench(const std::vector<BenchInput>& inputs, const BenchOptions& options) {
  if (options.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  BenchResult out;
  for (const auto& input : inputs) {
    std::vector<Method> usable;
    for (Method m : options.methods) {
      if (auto why = inapplicable_reason(m, input.f))
        out.notes.push_back(input.id + ": skipped " + std::string(method_name(m)) + " (" + *why + ")");
      else
        usable.push_back(m);
    }
    for (int deg : options.degrees) {
      std::vector<BenchRecord> group;
      std::vector<PolyMap> results;
      for (Method m : usable) {
        std::vector<double> times;
        PolyMap g;
        for (int r = 0; r < options.repeats; ++r) {
          auto start = std::chrono::steady_clock::now();
          g = invert(m, input.f, deg, options.threads);
          std::chrono::duration<double, std::milli> took = std::chrono::steady_clock::now() - start;
          times.push_back(took.count());
        }
        std::sort(times.begin(), times.end());
        std::size_t terms = 0;
        for (const auto& c : g) terms += c.size();
        group.push_back({input.id, m, deg, times[times.size() / 2], terms, agreement_hash(g)});
        results.push_back(std::move(g));
      }
      for (std::size_t k = 1; k < group.size(); ++k) {
        if (group[k].agree_hash == group[0].agree_hash) continue;
        auto diff = describe_difference(results[k], results[0], deg).value_or("hash mismatch");
        throw BenchDisagreement(input.id + " at degree " + std::to_string(deg) + ": " +
                                std::string(method_name(group[k].method)) + " disagrees with " +
                                std::string(method_name(group[0].method)) + ": " + diff);
      }
      out.records.insert(out.records.end(), group.begin(), group.end());
    }
  }
  return out;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::string out = "input_id,method,degree,millis,terms,agree_hash\n";
  char millis[32];
  for (const auto& r : records) {
    std::snprintf(millis, sizeof millis, "%.3f", r.millis);
    out += r.input_id + "," + std::string(method_name(r.method)) + "," + std::to_string(r.degree) + "," + millis + "," +
           std::to_string(r.terms) + "," + r.agree_hash + "\n";
  }
  return out;
}

std::string bench_table(const std::vector<BenchRecord>& records) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-16s %-10s %6s %12s %8s  %s\n", "input", "method", "D", "millis", "terms", "hash");
  out += line;
  for (const auto& r : records) {
    std::snprintf(line, sizeof line, "%-16s %-10s %6d %12.3f %8zu  %s\n", r.input_id.c_str(),
                  std::string(method_name(r.method)).c_str(), r.degree, r.millis, r.terms, r.agree_hash.c_str());
    out += line;
  }
  return out;
}

PolyMap dense_homogeneous(int n, int d, std::uint32_t seed) {
  if (n < 1 || n > kMaxVars || d < 2) throw std::invalid_argument("dense_homogeneous needs 1 <= n <= 7 and d >= 2");
  static const Rat kValues[] = {Rat(-2), Rat(-1), Rat(-1, 2), Rat(1, 2), Rat(1), Rat(2)};
  std::mt19937 rng(seed);
  std::vector<Exponent> monomials;
  Exponent e(n, 0);
  std::function<void(int, int)> fill = [&](int var, int left) {
    if (var == n - 1) {
      e[var] = left;
      monomials.push_back(e);
      return;
    }
    for (int x = left; x >= 0; --x) {
      e[var] = x;
      fill(var + 1, left - x);
    }
  };
  fill(0, d);
  std::vector<MSeries> comps;
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<Exponent, Rat>> terms;
    for (const auto& m : monomials) terms.emplace_back(m, kValues[rng() % 6]);
    comps.push_back(MSeries::from_terms(n, kExact, terms));
  }
  return PolyMap(std::move(comps));
}

}  // namespace forminv
