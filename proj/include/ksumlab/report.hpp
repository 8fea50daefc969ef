#pragma once

// Machine-readable verification reports.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ksumlab {

using Json = nlohmann::ordered_json;

struct Violation {
  std::string witness;
  std::optional<std::int64_t> k;
  std::string observed;
  std::string required;
};

/// Running tally for one chunk of an enumeration; merged in enumeration order.
struct Tally {
  static constexpr std::size_t kMaxListed = 100;

  std::uint64_t checked = 0;
  std::uint64_t violations_total = 0;
  std::vector<Violation> violations;
  std::map<std::string, std::uint64_t> census;

  void violate(Violation v) {
    ++violations_total;
    if (violations.size() < kMaxListed) violations.push_back(std::move(v));
  }
  void count(const std::string& tag, std::uint64_t by = 1) { census[tag] += by; }

  void merge(const Tally& o) {
    checked += o.checked;
    violations_total += o.violations_total;
    for (const auto& v : o.violations)
      if (violations.size() < kMaxListed) violations.push_back(v);
    for (const auto& [k, c] : o.census) census[k] += c;
  }
};

struct VerifyReport {
  std::string claim;
  std::string group;
  Json params = Json::object();
  std::uint64_t checked = 0;
  std::uint64_t violations_total = 0;
  std::vector<Violation> violations;
  std::map<std::string, std::uint64_t> census;
  std::uint64_t seed = 0;
  double elapsed_ms = 0;

  bool pass() const noexcept { return violations_total == 0; }
  std::string status() const { return pass() ? "PASS" : "FAIL"; }

  void absorb(const Tally& t) {
    checked = t.checked;
    violations_total = t.violations_total;
    violations = t.violations;
    census = t.census;
  }

  /// Timing off gives byte-identical output for identical inputs.
  Json to_json(bool timing = true) const {
    Json j;
    j["claim"] = claim;
    j["group"] = group;
    j["params"] = params;
    j["checked"] = checked;
    j["status"] = status();
    Json vs = Json::array();
    for (const auto& v : violations) {
      Json e;
      e["witness"] = v.witness;
      e["k"] = v.k ? Json(*v.k) : Json(nullptr);
      e["observed"] = v.observed;
      e["required"] = v.required;
      vs.push_back(std::move(e));
    }
    j["violations"] = std::move(vs);
    j["violations_total"] = violations_total;
    Json c = Json::object();
    for (const auto& [k, n] : census) c[k] = n;
    j["census"] = std::move(c);
    j["seed"] = seed;
    j["elapsed_ms"] = timing ? static_cast<std::int64_t>(elapsed_ms) : 0;
    return j;
  }
};

class Stopwatch {
public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace ksumlab
