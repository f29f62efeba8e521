#include "forminv/report.hpp"

#include <algorithm>
#include "json.hpp"

namespace forminv {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "FAIL";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

void Report::add(std::string name, bool ok, std::string detail) {
  checks_.push_back({std::move(name), ok ? Status::Pass : Status::Fail, std::move(detail)});
}

void Report::skip(std::string name, std::string reason) {
  checks_.push_back({std::move(name), Status::Skipped, std::move(reason)});
}

void Report::merge(const Report& other) {
  for (const auto& c : other.checks_) {
    CheckResult r = c;
    if (!other.title_.empty()) r.name = other.title_ + "/" + r.name;
    checks_.push_back(std::move(r));
  }
  notes_.insert(notes_.end(), other.notes_.begin(), other.notes_.end());
}

bool Report::passed() const { return count(Status::Fail) == 0; }

int Report::count(Status s) const {
  return static_cast<int>(std::count_if(checks_.begin(), checks_.end(), [&](const auto& c) { return c.status == s; }));
}

std::string Report::to_text() const {
  std::string out;
  if (!title_.empty()) out += "== " + title_ + "\n";
  for (const auto& c : checks_) {
    out += "[" + std::string(status_name(c.status)) + "] " + c.name;
    if (!c.detail.empty()) out += ": " + c.detail;
    out += "\n";
  }
  for (const auto& n : notes_) out += "note: " + n + "\n";
  out += std::to_string(count(Status::Pass)) + " passed, " + std::to_string(count(Status::Fail)) + " failed, " +
         std::to_string(count(Status::Skipped)) + " skipped\n";
  return out;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["title"] = title_;
  j["passed"] = passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["status"] = status_name(c.status);
    if (!c.detail.empty()) e["detail"] = c.detail;
    j["checks"].push_back(std::move(e));
  }
  j["notes"] = notes_;
  return j.dump(2) + "\n";
}

}  // namespace forminv
