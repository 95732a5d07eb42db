#pragma once

#include <algorithm>
#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

#include "detourlab/decompositions.hpp"

namespace detourlab {

/// One verification check in a run report.
struct CheckResult {
  std::string id;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  Verdict verdict = Verdict::fail;
  nlohmann::ordered_json dims = nlohmann::ordered_json::object();
  nlohmann::ordered_json residuals = nlohmann::ordered_json::object();
  std::string paper_ref;  // statement tag, see the explain registry
  std::string note;
};

/// A whole run: config echo plus checks, order-normalised so identical
/// configs and seeds serialise byte-identically (modulo the timestamp).
struct RunReport {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<CheckResult> checks;

  void add(CheckResult c) { checks.push_back(std::move(c)); }

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.verdict != Verdict::pass) return false;
    return true;
  }

  nlohmann::ordered_json to_json(bool with_timestamp = true) const {
    std::vector<const CheckResult*> order;
    order.reserve(checks.size());
    for (const auto& c : checks) order.push_back(&c);
    std::stable_sort(order.begin(), order.end(),
                     [](const CheckResult* a, const CheckResult* b) {
                       if (a->id != b->id) return a->id < b->id;
                       return a->params.dump() < b->params.dump();
                     });
    nlohmann::ordered_json j;
    j["config"] = config;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    nlohmann::ordered_json inconclusive = nlohmann::ordered_json::array();
    for (const CheckResult* c : order) {
      nlohmann::ordered_json e;
      e["id"] = c->id;
      e["params"] = c->params;
      e["verdict"] = to_string(c->verdict);
      e["dims"] = c->dims;
      e["residuals"] = c->residuals;
      e["paper_ref"] = c->paper_ref;
      if (!c->note.empty()) e["note"] = c->note;
      arr.push_back(std::move(e));
      nlohmann::ordered_json tag;
      tag["id"] = c->id;
      tag["params"] = c->params;
      if (c->verdict == Verdict::fail) failures.push_back(tag);
      if (c->verdict == Verdict::inconclusive) inconclusive.push_back(tag);
    }
    j["checks"] = std::move(arr);
    j["failures"] = std::move(failures);
    j["inconclusive"] = std::move(inconclusive);
    if (with_timestamp) {
      const auto now = std::chrono::system_clock::now();
      const std::time_t t = std::chrono::system_clock::to_time_t(now);
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
      j["timestamp"] = buf;
    }
    return j;
  }

  /// Human-oriented rendering: one line per check.
  std::string to_text() const {
    std::string out;
    int pass = 0, fail = 0, inc = 0;
    for (const auto& c : checks) {
      out += "[" + to_string(c.verdict) + "] " + c.id + " " + c.params.dump();
      if (!c.note.empty()) out += "  -- " + c.note;
      out += "\n";
      if (c.verdict == Verdict::pass) ++pass;
      else if (c.verdict == Verdict::fail) ++fail;
      else ++inc;
    }
    out += std::to_string(pass) + " passed, " + std::to_string(fail) +
           " failed, " + std::to_string(inc) + " inconclusive\n";
    return out;
  }
};

}  // namespace detourlab
