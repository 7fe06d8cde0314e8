#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace qlw {

enum class CheckStatus { pass, fail, skipped };

std::string to_string(CheckStatus s);

struct CheckResult {
  std::string check;
  /// What the check asserts, in words.
  std::string statement;
  CheckStatus status = CheckStatus::pass;
  /// The offending data on failure (for instance a nonzero matrix difference).
  nlohmann::json witness;
};

/// An ordered list of check results.
class Report {
 public:
  void add(std::string check, std::string statement, bool ok, nlohmann::json witness = nullptr);
  void add_skipped(std::string check, std::string statement, std::string reason);
  void merge(const Report& other);

  bool passed() const;
  const std::vector<CheckResult>& entries() const { return entries_; }
  const CheckResult* first_failure() const;
  std::size_t count(CheckStatus s) const;

  /// [{"check", "paper_ref", "status", "witness"}, ...]
  nlohmann::json to_json() const;
  std::string to_text() const;

 private:
  std::vector<CheckResult> entries_;
};

}  // namespace qlw
