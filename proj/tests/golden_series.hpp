#pragma once
// Loader for the frozen series tables under tests/golden/. Each file holds
// "exponent coefficient" integer lines; '#' starts a comment.

#include "walg/qseries.hpp"
#include "walg/rational.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

inline std::vector<std::pair<long, long>> golden_table(const std::string& name) {
  std::ifstream in(std::string(WALG_GOLDEN_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing golden file " + name);
  std::vector<std::pair<long, long>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    long e, c;
    if (ss >> e >> c) out.emplace_back(e, c);
  }
  if (out.empty()) throw std::runtime_error("empty golden file " + name);
  return out;
}

/// The table as a series faithful through its last exponent.
inline walg::qs::QSeries golden_series(const std::string& name) {
  auto tab = golden_table(name);
  walg::qs::QSeries s;
  s.order = tab.back().first + 1;
  for (const auto& [e, c] : tab)
    if (c != 0) s.coeff[e] = c;
  return s;
}
