#include "ryd/partitions.hpp"

#include <algorithm>
#include <stdexcept>

namespace ryd {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (size_t i = 0; i + 1 < parts_.size(); ++i) {
    if (parts_[i] < parts_[i + 1]) {
      throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
  }
  if (!parts_.empty() && parts_.back() < 0) {
    throw std::invalid_argument("Partition: parts must be nonnegative");
  }
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  size_ = 0;
  for (int v : parts_) size_ += v;
}

bool Partition::operator<(const Partition& o) const {
  if (size_ != o.size_) return size_ < o.size_;
  return parts_ > o.parts_;  // larger first part comes earlier in the grade
}

Partition conjugate(const Partition& lambda) {
  std::vector<int> out(lambda.part(1), 0);
  for (int i = 1; i <= lambda.length(); ++i) {
    for (int j = 0; j < lambda.part(i); ++j) out[j]++;
  }
  return Partition(out);
}

bool interlaces(const Partition& mu, const Partition& lambda, InterlaceKind kind) {
  if (kind == InterlaceKind::Column) {
    return interlaces(conjugate(mu), conjugate(lambda), InterlaceKind::Row);
  }
  int n = std::max(mu.length(), lambda.length()) + 1;
  for (int i = 1; i <= n; ++i) {
    if (lambda.part(i) < mu.part(i)) return false;
    if (mu.part(i) < lambda.part(i + 1)) return false;
  }
  return true;
}

bool contains_cell(const Partition& lambda, Cell s) {
  return s.row >= 1 && s.col >= 1 && s.col <= lambda.part(s.row);
}

std::pair<int, int> arm_leg(const Partition& lambda, Cell s) {
  if (!contains_cell(lambda, s)) {
    throw CellOutsideDiagram("arm_leg: cell outside diagram");
  }
  int arm = lambda.part(s.row) - s.col;
  int leg = conjugate(lambda).part(s.col) - s.row;
  return {arm, leg};
}

namespace {

void emit(int remaining, int max_part, int slots, std::vector<int>& acc,
          std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(acc);
    return;
  }
  if (slots == 0) return;
  int hi = std::min(remaining, max_part);
  for (int p = hi; p >= 1; --p) {
    acc.push_back(p);
    emit(remaining - p, p, slots - 1, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int n, int max_length, int max_part) {
  std::vector<Partition> out;
  std::vector<int> acc;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  emit(n, max_part, max_length, acc, out);
  return out;
}

std::vector<Partition> enumerate_partitions(int max_size, int max_length,
                                            int max_part) {
  std::vector<Partition> out;
  for (int n = 0; n <= max_size; ++n) {
    auto layer = partitions_of(n, max_length, max_part);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace ryd
