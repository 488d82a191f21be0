#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace rcanav {

/// A set of objects of one formal context, stored as a bitset over the
/// context's object indices. Object indices follow the lexicographic order of
/// object names, so index order and name order coincide.
class ObjectSet {
 public:
  ObjectSet() = default;
  explicit ObjectSet(std::size_t universe) : bits_(universe) {}
  ObjectSet(std::size_t universe, std::initializer_list<std::size_t> members);

  static ObjectSet full(std::size_t universe);

  std::size_t universe() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }
  bool contains(std::size_t i) const { return bits_.test(i); }

  void insert(std::size_t i) { bits_.set(i); }
  void erase(std::size_t i) { bits_.reset(i); }

  bool is_subset_of(const ObjectSet& other) const { return bits_.is_subset_of(other.bits_); }
  bool is_proper_subset_of(const ObjectSet& other) const {
    return bits_.is_proper_subset_of(other.bits_);
  }
  bool intersects(const ObjectSet& other) const { return bits_.intersects(other.bits_); }

  ObjectSet& operator&=(const ObjectSet& other) {
    bits_ &= other.bits_;
    return *this;
  }
  ObjectSet& operator|=(const ObjectSet& other) {
    bits_ |= other.bits_;
    return *this;
  }
  ObjectSet& operator-=(const ObjectSet& other) {
    bits_ -= other.bits_;
    return *this;
  }
  friend ObjectSet operator&(ObjectSet a, const ObjectSet& b) { return a &= b; }
  friend ObjectSet operator|(ObjectSet a, const ObjectSet& b) { return a |= b; }
  friend ObjectSet operator-(ObjectSet a, const ObjectSet& b) { return a -= b; }

  /// Member indices in increasing order.
  std::vector<std::size_t> indices() const;

  template <typename F>
  void for_each(F&& f) const {
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) f(i);
  }

  std::size_t hash() const { return boost::hash_value(bits_); }

  friend bool operator==(const ObjectSet& a, const ObjectSet& b) { return a.bits_ == b.bits_; }

 private:
  using Bits = boost::dynamic_bitset<>;
  Bits bits_;
};

/// Lexicographic comparison of the sorted member lists (shorter prefix first).
int compare_lexicographic(const ObjectSet& a, const ObjectSet& b);

/// Canonical concept order: extent size, then lexicographic extent.
struct CanonicalOrder {
  bool operator()(const ObjectSet& a, const ObjectSet& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return compare_lexicographic(a, b) < 0;
  }
};

/// Naming order used when a batch of concepts is registered: extent size, then
/// reverse lexicographic extent (later objects first).
struct NamingOrder {
  bool operator()(const ObjectSet& a, const ObjectSet& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return compare_lexicographic(a, b) > 0;
  }
};

}  // namespace rcanav
