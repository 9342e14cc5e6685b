#pragma once

#include <string>
#include <unordered_set>

namespace graphcat {

// Hands out identifiers that have not been used yet by appending primes.
class NameAllocator {
 public:
  void reserve(const std::string& name) { used_.insert(name); }
  bool taken(const std::string& name) const { return used_.count(name) != 0; }
  std::string fresh(std::string base) {
    while (used_.count(base)) base += "'";
    used_.insert(base);
    return base;
  }

 private:
  std::unordered_set<std::string> used_;
};

}  // namespace graphcat
