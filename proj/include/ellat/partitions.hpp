#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellat {

// A partition is stored as exactly n weakly decreasing parts in [0, m],
// padded with zeros.
using Partition = std::vector<int>;

// Elementary move on the lattice: add eps (+1 or -1) to part `site`
// (0-based).
struct Move {
  int site;
  int eps;
};

inline Partition apply_move(const Partition& lam, const Move& mv) {
  Partition out = lam;
  out[mv.site] += mv.eps;
  return out;
}

// All partitions with at most n parts, each at most m, enumerated in graded
// lexicographic order: weight |lambda| ascending, ties broken by descending
// lexicographic comparison of the part vectors. The empty partition has
// rank 0.
class PartitionLattice {
 public:
  PartitionLattice(int n, int m) : n_(n), m_(m) {
    if (n < 1 || m < 1)
      throw std::domain_error("PartitionLattice: need n >= 1 and m >= 1");
    Partition cur(n, 0);
    gather(cur, 0, m);
    std::sort(states_.begin(), states_.end(),
              [](const Partition& a, const Partition& b) {
                int wa = weight(a), wb = weight(b);
                if (wa != wb) return wa < wb;
                return a > b;
              });
    for (int i = 0; i < static_cast<int>(states_.size()); ++i)
      rank_[states_[i]] = i;
  }

  int n() const { return n_; }
  int m() const { return m_; }
  int size() const { return static_cast<int>(states_.size()); }

  const Partition& at(int rank) const { return states_.at(rank); }
  const std::vector<Partition>& states() const { return states_; }

  bool contains(const Partition& lam) const { return rank_.count(lam) > 0; }

  int rank_of(const Partition& lam) const {
    auto it = rank_.find(lam);
    if (it == rank_.end())
      throw std::out_of_range("PartitionLattice: partition not in lattice");
    return it->second;
  }

  static int weight(const Partition& lam) {
    int w = 0;
    for (int x : lam) w += x;
    return w;
  }

  // A move is admissible when the resulting part vector is again weakly
  // decreasing with entries in [0, m]. Spelled out per direction:
  // raising part j needs lambda_j < m and (j first or lambda_{j-1} >
  // lambda_j); lowering needs lambda_j > 0 and (j last or lambda_j >
  // lambda_{j+1}).
  static bool is_admissible(const Partition& lam, int m, const Move& mv) {
    int n = static_cast<int>(lam.size());
    int j = mv.site;
    if (j < 0 || j >= n) return false;
    if (mv.eps == +1)
      return lam[j] < m && (j == 0 || lam[j - 1] > lam[j]);
    if (mv.eps == -1)
      return lam[j] > 0 && (j == n - 1 || lam[j] > lam[j + 1]);
    return false;
  }

  std::vector<Move> admissible_moves(int rank) const {
    const Partition& lam = at(rank);
    std::vector<Move> out;
    for (int j = 0; j < n_; ++j)
      for (int eps : {+1, -1})
        if (is_admissible(lam, m_, {j, eps})) out.push_back({j, eps});
    return out;
  }

 private:
  // Enumerate weakly decreasing fillings; cap is the maximum allowed value
  // of the part currently being chosen.
  void gather(Partition& cur, int pos, int cap) {
    if (pos == n_) {
      states_.push_back(cur);
      return;
    }
    for (int v = 0; v <= cap; ++v) {
      cur[pos] = v;
      gather(cur, pos + 1, v);
    }
    cur[pos] = 0;
  }

  int n_, m_;
  std::vector<Partition> states_;
  std::map<Partition, int> rank_;
};

// Human-readable form like (2,1,0); used by diagnostics and serialization.
inline std::string to_string(const Partition& lam) {
  std::string s = "(";
  for (size_t i = 0; i < lam.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(lam[i]);
  }
  s += ")";
  return s;
}

}  // namespace ellat
