#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cherednik/errors.hpp"

namespace cherednik {

// Ordered list of indeterminate names shared by all polynomials of a session.
// The order fixes the monomial order (lexicographic on exponents in this
// variable order), so it is part of the canonical form of every polynomial.
class SymbolSet {
 public:
  static std::shared_ptr<const SymbolSet> make(std::vector<std::string> names) {
    auto s = std::shared_ptr<SymbolSet>(new SymbolSet());
    s->names_ = std::move(names);
    for (unsigned i = 0; i < s->names_.size(); ++i) {
      if (!s->index_.emplace(s->names_[i], i).second)
        fail(ErrorCode::IncompatibleScalars, "duplicate symbol '" + s->names_[i] + "'");
    }
    return s;
  }

  size_t size() const { return names_.size(); }
  const std::string& name(unsigned i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<unsigned> find(const std::string& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  unsigned require(const std::string& n) const {
    auto i = find(n);
    if (!i) fail(ErrorCode::IncompatibleScalars, "unknown symbol '" + n + "'");
    return *i;
  }

  bool same_as(const SymbolSet& o) const { return names_ == o.names_; }

 private:
  SymbolSet() = default;
  std::vector<std::string> names_;
  std::map<std::string, unsigned> index_;
};

using SymbolsPtr = std::shared_ptr<const SymbolSet>;

}  // namespace cherednik
