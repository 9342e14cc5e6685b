#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace graphcat {

// Outcome of a validation predicate. A failed status names the first clause
// that did not hold.
class Status {
 public:
  Status() = default;
  static Status failure(std::string clause, std::string detail) {
    Status s;
    s.ok_ = false;
    s.clause_ = std::move(clause);
    s.detail_ = std::move(detail);
    return s;
  }

  bool ok() const { return ok_; }
  explicit operator bool() const { return ok_; }
  const std::string& clause() const { return clause_; }
  const std::string& detail() const { return detail_; }
  std::string message() const { return ok_ ? "ok" : clause_ + ": " + detail_; }

 private:
  bool ok_ = true;
  std::string clause_;
  std::string detail_;
};

// Raised for malformed input that cannot be represented at all (unknown
// identifiers, duplicate names) and for broken preconditions.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration was asked to run past its size caps.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace graphcat
