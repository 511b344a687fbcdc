#pragma once

// Tick files: asset,time,logprice rows.

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "tickcoint/market.hpp"

namespace tickcoint {

struct TickRecord {
  std::size_t asset = 1;  // 1 or 2
  double time = 0.0;
  double logprice = 0.0;
};

// Per asset, the first row sets the origin and initial value and every later
// row is one jump. Both paths get the latest timestamp of the file as horizon.
// Rows of one asset must be in nondecreasing time order; ties are kept.
std::array<StepPath, 2> ingest_ticks(std::istream& in);
std::array<StepPath, 2> ingest_ticks_file(const std::filesystem::path& path);
std::array<StepPath, 2> paths_from_ticks(const std::vector<TickRecord>& ticks);

// One origin row (time 0) per asset followed by every event up to the horizon.
std::string ticks_csv(const MarketSample& sample);

}  // namespace tickcoint
