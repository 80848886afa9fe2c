#include "gkmtr/dvv.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace gkmtr {

namespace {

mpq_class dfact_odd(long m) {  // (2m-1)!!, (-1)!! = 1
  mpz_class r = 1;
  for (long j = 2 * m - 1; j >= 3; j -= 2) r *= j;
  return mpq_class(r);
}

using Key = std::pair<int, std::vector<int>>;
std::map<Key, mpq_class>& memo() {
  static std::map<Key, mpq_class> m;
  return m;
}

mpq_class compute(int g, std::vector<int> ks);

mpq_class get(int g, std::vector<int> ks) {
  int n = static_cast<int>(ks.size());
  if (g < 0 || 2 * g - 2 + n <= 0) return 0;
  long total = 0;
  for (int k : ks) {
    if (k < 0) return 0;
    total += k;
  }
  if (total != 3 * g - 3 + n) return 0;
  std::sort(ks.begin(), ks.end(), std::greater<int>());
  Key key{g, ks};
  auto it = memo().find(key);
  if (it != memo().end()) return it->second;
  mpq_class v = compute(g, ks);
  memo()[key] = v;
  return v;
}

mpq_class compute(int g, std::vector<int> ks) {
  int n = static_cast<int>(ks.size());
  // bases
  if (g == 0 && n == 3) return 1;  // dimension gate leaves only <tau_0^3>
  if (g == 1 && n == 1) return mpq_class(1, 24);

  // string equation for a tau_0 insertion
  if (ks.back() == 0) {
    std::vector<int> rest(ks.begin(), ks.end() - 1);
    mpq_class acc = 0;
    for (size_t j = 0; j < rest.size(); ++j) {
      std::vector<int> sub = rest;
      if (--sub[j] < 0) continue;
      acc += get(g, sub);
    }
    return acc;
  }

  // DVV on the largest insertion ks[0] = k+1
  int k = ks[0] - 1;
  std::vector<int> rest(ks.begin() + 1, ks.end());
  mpq_class acc = 0;
  for (size_t j = 0; j < rest.size(); ++j) {
    std::vector<int> sub = rest;
    sub.erase(sub.begin() + j);
    sub.push_back(k + rest[j]);
    acc += dfact_odd(k + rest[j] + 1) / dfact_odd(rest[j]) * get(g, sub);
  }
  int m = static_cast<int>(rest.size());
  for (int a = 0; a + 1 <= k; ++a) {
    int b = k - 1 - a;
    mpq_class w = dfact_odd(a + 1) * dfact_odd(b + 1) / 2;
    // nonseparating
    {
      std::vector<int> sub = rest;
      sub.push_back(a);
      sub.push_back(b);
      acc += w * get(g - 1, sub);
    }
    // separating, over genus splits and subsets of the remaining legs
    for (int g1 = 0; g1 <= g; ++g1) {
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> s1{a}, s2{b};
        for (int t = 0; t < m; ++t) {
          if (mask & (1u << t)) s1.push_back(rest[t]);
          else s2.push_back(rest[t]);
        }
        acc += w * get(g1, s1) * get(g - g1, s2);
      }
    }
  }
  return acc / dfact_odd(k + 2);  // (2k+3)!!
}

}  // namespace

mpq_class dvv_intersection(int g, std::vector<int> ks) { return get(g, std::move(ks)); }

}  // namespace gkmtr
