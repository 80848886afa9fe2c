#pragma once

#include <string>
#include <vector>

namespace gkmtr {

// Integer partition, weakly decreasing positive parts.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  Partition(std::initializer_list<int> p);
  explicit Partition(std::vector<int> p);

  int size() const;                   // |mu|
  int length() const { return static_cast<int>(parts.size()); }
  Partition conjugate() const;
  // Frobenius coordinates (m_1..m_d | n_1..n_d), m_i = mu_i - i (1-based),
  // n_j = mu'_j - j; both strictly decreasing and nonnegative.
  void frobenius(std::vector<int>& arms, std::vector<int>& legs) const;

  bool operator==(const Partition& o) const { return parts == o.parts; }
  bool operator<(const Partition& o) const { return parts < o.parts; }
  std::string str() const;
};

// All partitions of exactly n.
std::vector<Partition> partitions_of(int n);
// All partitions of size 1..n.
std::vector<Partition> partitions_up_to(int n);

}  // namespace gkmtr
