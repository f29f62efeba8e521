#pragma once

#include <string>
#include <vector>

#include "forminv/polymap.hpp"

namespace forminv {

enum class Status { Pass, Fail, Skipped };

std::string_view status_name(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::Pass;
  /// First failing coefficient, skip reason, or a short note.
  std::string detail;
};

/// Outcome of a group of identity checks.
class Report {
 public:
  explicit Report(std::string title = {}) : title_(std::move(title)) {}

  void add(std::string name, bool ok, std::string detail = {});
  void skip(std::string name, std::string reason);
  void note(std::string text) { notes_.push_back(std::move(text)); }
  void merge(const Report& other);

  const std::string& title() const { return title_; }
  const std::vector<CheckResult>& checks() const { return checks_; }
  const std::vector<std::string>& notes() const { return notes_; }
  /// True when no check failed.
  bool passed() const;
  int count(Status s) const;

  std::string to_text() const;
  std::string to_json() const;

  /// Records whether a and b agree through degree d, with the first
  /// differing coefficient on failure.
  template <class R>
  bool expect_equal(std::string name, const BasicMap<R>& a, const BasicMap<R>& b, int d) {
    auto diff = describe_difference(a, b, d);
    add(std::move(name), !diff, diff.value_or(""));
    return !diff;
  }

 private:
  std::string title_;
  std::vector<CheckResult> checks_;
  std::vector<std::string> notes_;
};

}  // namespace forminv
