#include "qlw/report.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace qlw {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "unknown";
}

void Report::add(std::string check, std::string statement, bool ok, nlohmann::json witness) {
  entries_.push_back({std::move(check), std::move(statement), ok ? CheckStatus::pass : CheckStatus::fail,
                      ok ? nlohmann::json(nullptr) : std::move(witness)});
}

void Report::add_skipped(std::string check, std::string statement, std::string reason) {
  entries_.push_back({std::move(check), std::move(statement), CheckStatus::skipped, {{"reason", std::move(reason)}}});
}

void Report::merge(const Report& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool Report::passed() const { return first_failure() == nullptr; }

const CheckResult* Report::first_failure() const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [](const CheckResult& c) { return c.status == CheckStatus::fail; });
  return it == entries_.end() ? nullptr : &*it;
}

std::size_t Report::count(CheckStatus s) const {
  return std::count_if(entries_.begin(), entries_.end(), [s](const CheckResult& c) { return c.status == s; });
}

nlohmann::json Report::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : entries_) {
    out.push_back({{"check", c.check}, {"paper_ref", c.statement}, {"status", to_string(c.status)},
                   {"witness", c.witness}});
  }
  return out;
}

std::string Report::to_text() const {
  std::ostringstream os;
  for (const auto& c : entries_) {
    os << (c.status == CheckStatus::pass ? "PASS " : c.status == CheckStatus::fail ? "FAIL " : "SKIP ") << c.check
       << "  " << c.statement << "\n";
    if (c.status != CheckStatus::pass && !c.witness.is_null()) os << "     witness: " << c.witness.dump() << "\n";
  }
  os << count(CheckStatus::pass) << " passed, " << count(CheckStatus::fail) << " failed, "
     << count(CheckStatus::skipped) << " skipped\n";
  return os.str();
}

}  // namespace qlw
