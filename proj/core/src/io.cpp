#include "gkmtr/io.hpp"

#include <json.hpp>

#include <sstream>

namespace gkmtr {

std::string scalar_to_string(const Scalar& s) {
  if (s.is_rational()) return rat_to_string(s.to_rational());
  return s.str();
}

std::string to_json(const RunMeta& meta, const CorrelatorTable& corr,
                    const std::vector<ReportLine>& reports) {
  nlohmann::ordered_json j;
  j["meta"]["mode"] = meta.mode;
  j["meta"]["potential"] = meta.potential;
  j["meta"]["conventions-version"] = kConventionsVersion;
  nlohmann::ordered_json caps = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta.caps) caps[k] = v;
  j["meta"]["caps"] = caps;
  j["correlators"] = nlohmann::ordered_json::array();
  for (const auto& [key, v] : corr.entries()) {
    const auto& [g, n, ks] = key;
    nlohmann::ordered_json e;
    e["g"] = g;
    e["n"] = n;
    e["indices"] = ks;
    e["value"] = scalar_to_string(v);
    j["correlators"].push_back(e);
  }
  j["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json e;
    e["name"] = r.name;
    e["ok"] = r.ok;
    if (!r.detail.empty()) e["detail"] = r.detail;
    j["reports"].push_back(e);
  }
  return j.dump(2) + "\n";
}

std::string to_csv(const CorrelatorTable& corr) {
  std::ostringstream os;
  os << "g,n,indices,value\n";
  for (const auto& [key, v] : corr.entries()) {
    const auto& [g, n, ks] = key;
    os << g << "," << n << ",";
    for (size_t i = 0; i < ks.size(); ++i) {
      if (i) os << " ";
      os << ks[i];
    }
    os << "," << scalar_to_string(v) << "\n";
  }
  return os.str();
}

}  // namespace gkmtr
