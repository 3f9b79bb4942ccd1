/* relation.hpp -- state-pair relations as bit matrices */

#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace ltbt {

using State = int;
using Label = int;

/// A relation over S1 x S2, stored as a row-major bit matrix.
class StateRelation {
 public:
  StateRelation() = default;

  StateRelation(int left_size, int right_size, bool fill = false)
      : rows_(left_size),
        cols_(right_size),
        words_((static_cast<size_t>(left_size) * right_size + 63) / 64, 0) {
    if (fill) {
      for (State l = 0; l < rows_; ++l)
        for (State r = 0; r < cols_; ++r) insert(l, r);
    }
  }

  int left_size() const { return rows_; }
  int right_size() const { return cols_; }

  bool contains(State l, State r) const {
    assert(in_range(l, r));
    size_t i = index(l, r);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  void insert(State l, State r) {
    assert(in_range(l, r));
    size_t i = index(l, r);
    words_[i >> 6] |= uint64_t{1} << (i & 63);
  }

  void erase(State l, State r) {
    assert(in_range(l, r));
    size_t i = index(l, r);
    words_[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }

  /// Number of pairs in the relation.
  int size() const {
    int n = 0;
    for (uint64_t w : words_) n += __builtin_popcountll(w);
    return n;
  }

  bool empty() const {
    for (uint64_t w : words_)
      if (w) return false;
    return true;
  }

  /// Visits pairs in row-major (left, right) order.
  template <typename F>
  void for_each(F&& f) const {
    for (State l = 0; l < rows_; ++l)
      for (State r = 0; r < cols_; ++r)
        if (contains(l, r)) f(l, r);
  }

  friend bool operator==(const StateRelation&, const StateRelation&) = default;

 private:
  bool in_range(State l, State r) const {
    return l >= 0 && l < rows_ && r >= 0 && r < cols_;
  }
  size_t index(State l, State r) const {
    return static_cast<size_t>(l) * cols_ + r;
  }

  int rows_ = 0, cols_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace ltbt
