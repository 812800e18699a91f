#include "sbmwalk/cooccurrence.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "sbmwalk/parallel.hpp"

namespace sbmwalk {

double window_gamma(int l, Window window) {
  return static_cast<double>(2 * l - window.lower - window.upper) * (window.upper - window.lower + 1) / 2.0;
}

namespace {
std::uint64_t pair_key(int i, int j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) | static_cast<std::uint32_t>(j);
}
}  // namespace

CooccurrenceMatrix::CooccurrenceMatrix(int n, Window window) : n_(n), window_(window), row_sums_(n, 0) {
  if (n < 0) throw std::invalid_argument("cooccurrence: negative node count");
  if (is_dense()) dense_.assign(static_cast<std::size_t>(n) * n, 0);
}

std::uint64_t CooccurrenceMatrix::at(int i, int j) const {
  if (is_dense()) return dense_[static_cast<std::size_t>(i) * n_ + j];
  auto it = sparse_.find(pair_key(i, j));
  return it == sparse_.end() ? 0 : it->second;
}

void CooccurrenceMatrix::add(int i, int j, std::uint64_t count) {
  if (count == 0) return;
  if (is_dense())
    dense_[static_cast<std::size_t>(i) * n_ + j] += count;
  else
    sparse_[pair_key(i, j)] += count;
  row_sums_[i] += count;
  total_ += count;
}

void CooccurrenceMatrix::for_each_upper(const std::function<void(int, int, std::uint64_t)>& visit) const {
  if (is_dense()) {
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j)
        if (auto c = dense_[static_cast<std::size_t>(i) * n_ + j]) visit(i, j, c);
    return;
  }
  std::vector<std::tuple<int, int, std::uint64_t>> cells;
  for (auto [key, c] : sparse_) {
    const auto i = static_cast<int>(key >> 32), j = static_cast<int>(key & 0xFFFFFFFFu);
    if (i <= j && c) cells.emplace_back(i, j, c);
  }
  std::sort(cells.begin(), cells.end());
  for (auto [i, j, c] : cells) visit(i, j, c);
}

void CooccurrenceMatrix::write_csv(std::ostream& out) const {
  out << "i,j,count\n";
  for_each_upper([&](int i, int j, std::uint64_t c) { out << i << ',' << j << ',' << c << '\n'; });
}

bool operator==(const CooccurrenceMatrix& a, const CooccurrenceMatrix& b) {
  if (a.n_ != b.n_ || !(a.window_ == b.window_) || a.total_ != b.total_ || a.row_sums_ != b.row_sums_) return false;
  if (a.is_dense()) return a.dense_ == b.dense_;
  return a.sparse_ == b.sparse_;
}

CooccurrenceMatrix accumulate(const WalkCorpus& corpus, int n, Window window) {
  const int l = corpus.walk_length();
  if (window.lower < 1 || window.lower > window.upper || window.upper > l - 1)
    throw std::invalid_argument("accumulate: window must satisfy 1 <= t_L <= t_U <= l - 1");
  for (auto v : corpus.nodes)
    if (static_cast<int>(v) >= n) throw std::invalid_argument("accumulate: node id exceeds n");

  // Fixed slicing of the walks independent of the thread count; partial
  // counts are integers, so the reduction order cannot change the result.
  const std::int64_t r = corpus.walk_count();
  const std::int64_t slices = std::clamp<std::int64_t>(thread_count(), 1, std::max<std::int64_t>(r, 1));
  std::vector<CooccurrenceMatrix> partial(static_cast<std::size_t>(slices), CooccurrenceMatrix(n, window));
  parallel_for(static_cast<std::size_t>(slices), [&](std::size_t s) {
    const std::int64_t begin = r * static_cast<std::int64_t>(s) / slices;
    const std::int64_t end = r * static_cast<std::int64_t>(s + 1) / slices;
    auto& C = partial[s];
    for (std::int64_t m = begin; m < end; ++m) {
      auto w = corpus.walk(m);
      for (int t = window.lower; t <= window.upper; ++t) {
        for (int k = 0; k + t < l; ++k) {
          const int a = static_cast<int>(w[k]), b = static_cast<int>(w[k + t]);
          C.add(a, b, 1);
          C.add(b, a, 1);
        }
      }
    }
  });
  CooccurrenceMatrix result = std::move(partial[0]);
  for (std::size_t s = 1; s < partial.size(); ++s) result = merge(result, partial[s]);
  return result;
}

CooccurrenceMatrix merge(const CooccurrenceMatrix& a, const CooccurrenceMatrix& b) {
  if (a.node_count() != b.node_count() || !(a.window() == b.window()))
    throw std::invalid_argument("merge: node count or window mismatch");
  CooccurrenceMatrix out = a;
  if (out.is_dense()) {
    for (std::size_t k = 0; k < out.dense_.size(); ++k) out.dense_[k] += b.dense_[k];
  } else {
    for (auto [key, c] : b.sparse_) out.sparse_[key] += c;
  }
  for (int i = 0; i < out.n_; ++i) out.row_sums_[i] += b.row_sums_[i];
  out.total_ += b.total_;
  return out;
}

}  // namespace sbmwalk
