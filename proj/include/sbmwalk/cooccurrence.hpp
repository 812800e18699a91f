#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "sbmwalk/walks.hpp"

namespace sbmwalk {

/// Co-occurrence offsets t in [lower, upper].
struct Window {
  int lower = 1;
  int upper = 1;

  friend bool operator==(const Window&, const Window&) = default;
};

/// (2l - t_L - t_U)(t_U - t_L + 1) / 2, i.e. the sum of (l - t) over the window.
double window_gamma(int l, Window window);

/// Symmetric matrix of windowed co-occurrence counts. Dense storage up to
/// kDenseLimit nodes, a hash of (i, j) pairs above.
class CooccurrenceMatrix {
 public:
  static constexpr int kDenseLimit = 4096;

  CooccurrenceMatrix(int n, Window window);

  int node_count() const { return n_; }
  Window window() const { return window_; }
  bool is_dense() const { return n_ <= kDenseLimit; }

  std::uint64_t at(int i, int j) const;
  /// Adds `count` to (i, j); call once per ordered pair.
  void add(int i, int j, std::uint64_t count);

  std::uint64_t row_sum(int i) const { return row_sums_[i]; }
  const std::vector<std::uint64_t>& row_sums() const { return row_sums_; }
  std::uint64_t total() const { return total_; }

  /// Visits every nonzero (i, j, count) with i <= j in (i, j) order.
  void for_each_upper(const std::function<void(int, int, std::uint64_t)>& visit) const;

  /// "i,j,count" for the upper triangle (i <= j), sorted, with a header line.
  void write_csv(std::ostream& out) const;

  friend bool operator==(const CooccurrenceMatrix& a, const CooccurrenceMatrix& b);
  friend CooccurrenceMatrix merge(const CooccurrenceMatrix& a, const CooccurrenceMatrix& b);

 private:
  int n_;
  Window window_;
  std::vector<std::uint64_t> dense_;
  std::unordered_map<std::uint64_t, std::uint64_t> sparse_;
  std::vector<std::uint64_t> row_sums_;
  std::uint64_t total_ = 0;
};

/// C_ij = sum over walks, offsets t in the window and positions k of
/// 1{w_k = i, w_{k+t} = j} + 1{w_k = j, w_{k+t} = i}. Requires
/// 1 <= t_L <= t_U <= l - 1 and n covering every node id in the corpus.
CooccurrenceMatrix accumulate(const WalkCorpus& corpus, int n, Window window);

/// Entrywise sum. Throws on a size or window mismatch.
CooccurrenceMatrix merge(const CooccurrenceMatrix& a, const CooccurrenceMatrix& b);

}  // namespace sbmwalk
