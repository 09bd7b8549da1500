#include "mubra/data.hpp"

#include <algorithm>
#include <sstream>

namespace mubra {

DataValue DataValue::integer(std::int64_t n) {
  if (n < 0) throw Error("data values are non-negative integers");
  DataValue d;
  d.v_ = n;
  return d;
}

std::int64_t DataValue::integer_value() const {
  if (is_bottom()) throw Error("bottom has no integer value");
  return v_;
}

std::string to_string(const DataValue& d) {
  return d.is_bottom() ? "_" : std::to_string(d.integer_value());
}

const DataValue& Assignment::value(int r) const {
  if (r < 1 || r > size())
    throw Error("register index " + std::to_string(r) + " out of range [1," +
                std::to_string(size()) + "]");
  return values_[static_cast<std::size_t>(r - 1)];
}

Assignment Assignment::updated(RegSet regs, const DataValue& d) const {
  Assignment out = *this;
  for (int r = 1; r <= size(); ++r)
    if (reg_set_contains(regs, r)) out.values_[static_cast<std::size_t>(r - 1)] = d;
  return out;
}

std::string to_string(const Assignment& theta) {
  std::ostringstream os;
  os << '[';
  for (int r = 1; r <= theta.size(); ++r) {
    if (r > 1) os << ',';
    os << to_string(theta.value(r));
  }
  os << ']';
  return os.str();
}

void LassoWord::validate() const {
  if (period.empty()) throw Error("lasso word has an empty period");
}

const Letter& letter_at(const LassoWord& w, Position i) {
  if (i < 1) throw Error("word positions are 1-based");
  const Position l = w.prefix_length();
  if (i <= l) return w.prefix[static_cast<std::size_t>(i - 1)];
  const Position p = w.period_length();
  if (p == 0) throw Error("lasso word has an empty period");
  return w.period[static_cast<std::size_t>((i - l - 1) % p)];
}

Position fold_position(const LassoWord& w, Position i) {
  if (i < 1) throw Error("word positions are 1-based");
  const Position l = w.prefix_length();
  const Position p = w.period_length();
  if (i <= l + p) return i;
  return l + 1 + (i - l - 1) % p;
}

Assignment assignment_update(const Assignment& theta, RegSet regs,
                             const DataValue& d) {
  const int k = theta.size();
  if (k < kMaxRegisters && (regs >> k) != 0)
    throw Error("register update set mentions a register beyond k=" +
                std::to_string(k));
  return theta.updated(regs, d);
}

std::vector<DataValue> word_domain(const LassoWord& w) {
  std::vector<DataValue> out;
  out.push_back(DataValue::bottom());
  for (const auto& letters : {w.prefix, w.period})
    for (const auto& letter : letters) out.push_back(letter.datum);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mubra
