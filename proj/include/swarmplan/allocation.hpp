#ifndef SWARMPLAN_ALLOCATION_HPP_
#define SWARMPLAN_ALLOCATION_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmplan/types.hpp"

namespace swarmplan {

/// Group membership table. Row i (0-based, i < m-1) is the robot mask of
/// translation group i; the last row is always the empty all-rotate group.
/// Invariants: membership columns are pairwise distinct, no robot belongs to
/// every translation group, none belongs to no group at all.
struct GroupAllocation {
  int n = 0;
  int m = 0;
  std::vector<std::uint64_t> rows;  // size m, rows[m-1] == 0

  bool member(int group, int robot) const { return (rows[group] >> robot) & 1u; }

  /// Membership column of one robot, bit i set when the robot is in group i.
  std::uint64_t column(int robot) const {
    std::uint64_t c = 0;
    for (int i = 0; i < m - 1; ++i)
      if (member(i, robot)) c |= (std::uint64_t{1} << i);
    return c;
  }

  std::vector<int> group_members(int group) const {
    std::vector<int> out;
    for (int j = 0; j < n; ++j)
      if (member(group, j)) out.push_back(j);
    return out;
  }

  void validate() const {
    if (n < 1 || n > 64) throw std::invalid_argument("allocation robot count out of range");
    if (m < 2) throw std::invalid_argument("allocation needs at least two groups");
    if (static_cast<int>(rows.size()) != m)
      throw std::invalid_argument("allocation row count does not match m");
    if (rows[m - 1] != 0)
      throw std::invalid_argument("last group must be the empty all-rotate group");
    const std::uint64_t all = (m - 1 >= 64) ? ~std::uint64_t{0}
                                            : ((std::uint64_t{1} << (m - 1)) - 1);
    std::vector<std::uint64_t> seen;
    for (int j = 0; j < n; ++j) {
      std::uint64_t c = column(j);
      if (c == 0)
        throw std::invalid_argument("robot " + std::to_string(j + 1) + " belongs to no group");
      if (c == all)
        throw std::invalid_argument("robot " + std::to_string(j + 1) + " belongs to every group");
      for (std::uint64_t s : seen)
        if (s == c)
          throw std::invalid_argument("robot " + std::to_string(j + 1) +
                                      " duplicates another robot's membership pattern");
      seen.push_back(c);
    }
  }
};

/// Smallest number of groups (including the all-rotate group) that admits n
/// pairwise-distinct membership columns avoiding the all-zeros and all-ones
/// patterns: ceil(log2(n + 2)) + 1.
inline int min_groups(int n) {
  if (n < 1) throw std::invalid_argument("swarm size must be >= 1");
  int bits = 0;
  while ((std::uint64_t{1} << bits) < static_cast<std::uint64_t>(n) + 2) ++bits;
  return bits + 1;
}

/// Canonical allocation: robot j (0-based) takes pattern value j+1 over
/// m-1 bits, group 0 holding the highest-order bit. Values 0 and 2^(m-1)-1
/// (all-zeros / all-ones) are never assigned.
inline GroupAllocation allocate_groups(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("swarm size out of range [1, 64]");
  GroupAllocation a;
  a.n = n;
  a.m = min_groups(n);
  a.rows.assign(static_cast<std::size_t>(a.m), 0);
  const int bits = a.m - 1;
  for (int j = 0; j < n; ++j) {
    const std::uint64_t pattern = static_cast<std::uint64_t>(j) + 1;
    for (int i = 0; i < bits; ++i) {
      const int bit = bits - 1 - i;  // group 0 is the high bit
      if ((pattern >> bit) & 1u) a.rows[i] |= (std::uint64_t{1} << j);
    }
  }
  a.validate();
  return a;
}

}  // namespace swarmplan

#endif  // SWARMPLAN_ALLOCATION_HPP_
