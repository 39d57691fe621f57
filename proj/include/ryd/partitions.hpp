#pragma once

// Integer partitions: the universal state atom. Weakly decreasing nonnegative
// parts, trailing zeros dropped at construction.

#include <cstddef>
#include <functional>
#include <vector>

#include "ryd/towers.hpp"

namespace ryd {

class Partition {
 public:
  Partition() = default;
  // Accepts any nonnegative weakly-decreasing sequence; trailing zeros dropped.
  explicit Partition(std::vector<int> parts);

  // 1-based part access; zero beyond the length.
  int part(int i) const {
    return (i >= 1 && i <= static_cast<int>(parts_.size())) ? parts_[i - 1] : 0;
  }
  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  long size() const { return size_; }
  bool empty() const { return parts_.empty(); }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return parts_ != o.parts_; }
  // Graded-lex order: by |lambda|, then lexicographically decreasing parts
  // first, matching enumerate_partitions.
  bool operator<(const Partition& o) const;

 private:
  std::vector<int> parts_;
  long size_ = 0;
};

// 1-based cell (i,j); in the diagram iff j <= lambda_i.
struct Cell {
  int row = 1;
  int col = 1;
};

Partition conjugate(const Partition& lambda);

enum class InterlaceKind { Row, Column };

// Row: lambda_1 >= mu_1 >= lambda_2 >= mu_2 >= ... (mu "precedes" lambda).
// Column: row-interlacing of the conjugates.
bool interlaces(const Partition& mu, const Partition& lambda, InterlaceKind kind);

bool contains_cell(const Partition& lambda, Cell s);

// arm = lambda_row - col, leg = lambda'_col - row. Throws CellOutsideDiagram.
std::pair<int, int> arm_leg(const Partition& lambda, Cell s);

constexpr int kUnbounded = 1 << 29;

// All partitions with |lambda| <= max_size, length <= max_length,
// lambda_1 <= max_part, graded by size then lexicographically decreasing.
std::vector<Partition> enumerate_partitions(int max_size,
                                            int max_length = kUnbounded,
                                            int max_part = kUnbounded);

// Partitions of exactly n under the same order and bounds.
std::vector<Partition> partitions_of(int n, int max_length = kUnbounded,
                                     int max_part = kUnbounded);

struct PartitionHash {
  size_t operator()(const Partition& p) const {
    size_t h = 1469598103934665603ull;
    for (int v : p.parts()) {
      h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace ryd
