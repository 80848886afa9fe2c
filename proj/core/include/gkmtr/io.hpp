#pragma once

#include "gkmtr/correlators.hpp"

#include <string>
#include <vector>

namespace gkmtr {

// Conventions stamp embedded in every output so downstream consumers can
// detect sign-convention changes.
inline constexpr const char* kConventionsVersion = "gkmtr-conventions-1";

struct RunMeta {
  std::string mode;
  std::string potential;
  std::vector<std::pair<std::string, std::string>> caps;  // name -> value
};

struct ReportLine {
  std::string name;
  bool ok = true;
  std::string detail;
};

// Deterministic JSON document: {"meta": {...}, "correlators": [...],
// "reports": [...]}; rational values as decimal-free "p/q" strings.
std::string to_json(const RunMeta& meta, const CorrelatorTable& corr,
                    const std::vector<ReportLine>& reports);
// CSV mirror of the correlator array: g,n,indices...,value
std::string to_csv(const CorrelatorTable& corr);

std::string scalar_to_string(const Scalar& s);

}  // namespace gkmtr
