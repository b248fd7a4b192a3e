#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "arith.hpp"

namespace nfold {

/// A length-q arrangement of block symbols in which every symbol's prefix
/// count stays close to its proportional share. Symbols are 0-based here
/// (0..n-1); prefix lengths j are 1-based to match the usual statement.
struct BalancedSchedule {
  std::vector<std::size_t> entries;
  std::vector<Int> counts;

  Int length() const { return static_cast<Int>(entries.size()); }
  std::size_t symbols() const { return counts.size(); }
};

/// Occurrences of `symbol` among the first `prefix` entries.
inline Int occurrences(const BalancedSchedule& sched, std::size_t symbol, Int prefix) {
  Int occ = 0;
  for (Int j = 0; j < prefix; ++j)
    if (sched.entries[static_cast<std::size_t>(j)] == symbol) ++occ;
  return occ;
}

/// occ(e, j) - (j/q) m_e, returned exactly as (q*occ - j*m_e) / q.
inline Rational imbalance(const BalancedSchedule& sched, std::size_t symbol, Int prefix) {
  Int q = sched.length();
  if (q == 0) throw PreconditionError("imbalance of an empty schedule");
  if (symbol >= sched.symbols()) throw PreconditionError("imbalance: symbol out of range");
  if (prefix < 1 || prefix > q) throw PreconditionError("imbalance: column out of range");
  Int occ = occurrences(sched, symbol, prefix);
  return Rational(checked::sub(checked::mul(q, occ), checked::mul(prefix, sched.counts[symbol])), q);
}

/// Greedy balancing: at column j place the live symbol whose imbalance,
/// measured with occurrences over columns 1..j-1 and expectation (j/q)*m_e,
/// is smallest; ties go to the smaller symbol. Comparisons use the integer
/// numerator q*occ - j*m_e. O(n) per column.
inline BalancedSchedule balance_counts(std::span<const Int> counts) {
  BalancedSchedule sched;
  sched.counts.assign(counts.begin(), counts.end());
  Int q = 0;
  for (Int c : counts) {
    if (c < 0) throw PreconditionError("balance_counts: negative count");
    q = checked::add(q, c);
  }
  sched.entries.reserve(static_cast<std::size_t>(q));

  std::vector<std::size_t> live;
  for (std::size_t e = 0; e < counts.size(); ++e)
    if (counts[e] > 0) live.push_back(e);

  // key[e] = q*occ(e) - j*m_e, kept current for the column about to be filled.
  std::vector<__int128> key(counts.size(), 0);
  for (std::size_t e : live) key[e] = -static_cast<__int128>(counts[e]);

  for (Int j = 1; j <= q; ++j) {
    std::size_t best = live.front();
    for (std::size_t e : live)
      if (key[e] < key[best]) best = e;
    sched.entries.push_back(best);
    key[best] += q;
    for (std::size_t e : live) key[e] -= counts[e];
  }
  return sched;
}

inline BalancedSchedule balance_counts(const std::vector<Int>& counts) {
  return balance_counts(std::span<const Int>(counts));
}

/// Checks that the schedule is a permutation of its counts and that every
/// imbalance lies in [-n, 1].
inline bool verify_balance(const BalancedSchedule& sched) {
  const std::size_t n = sched.symbols();
  const Int q = sched.length();
  std::vector<Int> occ(n, 0);
  for (Int j = 1; j <= q; ++j) {
    std::size_t e = sched.entries[static_cast<std::size_t>(j - 1)];
    if (e >= n) return false;
    ++occ[e];
    for (std::size_t s = 0; s < n; ++s) {
      __int128 num = static_cast<__int128>(q) * occ[s] - static_cast<__int128>(j) * sched.counts[s];
      if (num > q || num < -static_cast<__int128>(n) * q) return false;
    }
  }
  for (std::size_t s = 0; s < n; ++s)
    if (occ[s] != sched.counts[s]) return false;
  return true;
}

}  // namespace nfold
