#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "mubra/common.hpp"

namespace mubra {

/// Opaque data value with equality only. The initial register value (bottom,
/// written `_` in text) is distinct from every integer token.
class DataValue {
 public:
  constexpr DataValue() : v_(-1) {}

  static constexpr DataValue bottom() { return DataValue(); }
  static DataValue integer(std::int64_t n);

  bool is_bottom() const { return v_ < 0; }
  std::int64_t integer_value() const;

  friend auto operator<=>(const DataValue&, const DataValue&) = default;

 private:
  std::int64_t v_;  // -1 encodes bottom
};

std::string to_string(const DataValue& d);

/// Set of atomic propositions as a mask over the declared alphabet.
using AtomSet = std::uint32_t;

struct Letter {
  AtomSet atoms = 0;
  DataValue datum;

  bool has_atom(int atom_index) const { return (atoms >> atom_index) & 1u; }
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Register assignment: a k-tuple of data values, indices 1..k.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<DataValue> values)
      : values_(std::move(values)) {}

  static Assignment bottoms(int k) {
    return Assignment(std::vector<DataValue>(static_cast<std::size_t>(k)));
  }

  int size() const { return static_cast<int>(values_.size()); }
  const DataValue& value(int r) const;
  const std::vector<DataValue>& values() const { return values_; }

  /// theta[R <- d]: the assignment with every register in R set to d.
  Assignment updated(RegSet regs, const DataValue& d) const;

  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  std::vector<DataValue> values_;
};

std::string to_string(const Assignment& theta);

/// Ultimately periodic infinite data word: finite prefix + nonempty period.
/// Positions are 1-based.
struct LassoWord {
  std::vector<Letter> prefix;
  std::vector<Letter> period;

  Position prefix_length() const {
    return static_cast<Position>(prefix.size());
  }
  Position period_length() const {
    return static_cast<Position>(period.size());
  }
  void validate() const;
};

/// w_i for any i >= 1, folding periodic positions back into the period.
const Letter& letter_at(const LassoWord& w, Position i);

/// Canonical representative of position i in [1, |prefix| + |period|].
Position fold_position(const LassoWord& w, Position i);

/// theta[R <- d] as a free function; rejects register indices outside [1, k].
Assignment assignment_update(const Assignment& theta, RegSet regs,
                             const DataValue& d);

/// Data values appearing in w plus bottom, sorted and deduplicated.
std::vector<DataValue> word_domain(const LassoWord& w);

}  // namespace mubra
