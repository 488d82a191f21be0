#pragma once

#include "rcanav/context.hpp"
#include "rcanav/object_set.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rcanav {

/// Session-scoped concept names "C_<context>_<n>". Numbers are handed out per
/// context in first-seen order, starting at 1; the same extent always maps to
/// the same name.
class NameRegistry {
 public:
  struct Entry {
    std::string context;
    ObjectSet extent;
    std::string name;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  std::string name(const std::string& context, const ObjectSet& extent);
  std::optional<std::string> find(const std::string& context, const ObjectSet& extent) const;
  const Entry* resolve(const std::string& name) const;

  /// Names the unnamed extents of a batch in NamingOrder.
  void register_batch(const std::string& context, std::vector<ObjectSet> extents);

  /// Entries in assignment order.
  const std::vector<Entry>& entries() const noexcept { return entries_; }

 private:
  struct KeyOrder {
    bool operator()(const std::pair<std::string, ObjectSet>& a,
                    const std::pair<std::string, ObjectSet>& b) const {
      if (a.first != b.first) return a.first < b.first;
      return CanonicalOrder{}(a.second, b.second);
    }
  };

  std::map<std::pair<std::string, ObjectSet>, std::size_t, KeyOrder> index_;
  std::map<std::string, std::size_t> by_name_;
  std::map<std::string, std::size_t> counters_;
  std::vector<Entry> entries_;
};

std::string concept_name(const std::string& ctx_id, const Concept& c,
                         NameRegistry& registry);

}  // namespace rcanav
