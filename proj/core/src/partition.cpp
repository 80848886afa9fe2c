#include "gkmtr/partition.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gkmtr {

Partition::Partition(std::initializer_list<int> p) : Partition(std::vector<int>(p)) {}

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
}

int Partition::size() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

Partition Partition::conjugate() const {
  Partition c;
  if (parts.empty()) return c;
  c.parts.resize(parts[0]);
  for (int j = 0; j < parts[0]; ++j) {
    int cnt = 0;
    for (int p : parts)
      if (p > j) ++cnt;
    c.parts[j] = cnt;
  }
  return c;
}

void Partition::frobenius(std::vector<int>& arms, std::vector<int>& legs) const {
  arms.clear();
  legs.clear();
  Partition conj = conjugate();
  for (size_t i = 0; i < parts.size(); ++i) {
    int m = parts[i] - static_cast<int>(i) - 1;
    if (m < 0) break;
    arms.push_back(m);
  }
  for (size_t j = 0; j < conj.parts.size(); ++j) {
    int n = conj.parts[j] - static_cast<int>(j) - 1;
    if (n < 0) break;
    legs.push_back(n);
  }
  if (arms.size() != legs.size()) throw std::logic_error("frobenius mismatch");
}

std::string Partition::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) os << ",";
    os << parts[i];
  }
  os << "]";
  return os.str();
}

namespace {
void gen(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(Partition(cur));
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    gen(remaining - p, p, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  if (n == 0) {
    out.push_back(Partition{});
    return out;
  }
  gen(n, n, cur, out);
  return out;
}

std::vector<Partition> partitions_up_to(int n) {
  std::vector<Partition> out;
  for (int k = 1; k <= n; ++k) {
    auto v = partitions_of(k);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace gkmtr
