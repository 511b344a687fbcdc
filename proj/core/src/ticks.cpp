#include "tickcoint/ticks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tickcoint/csv.hpp"
#include "tickcoint/errors.hpp"

namespace tickcoint {

std::array<StepPath, 2> paths_from_ticks(const std::vector<TickRecord>& ticks) {
  std::array<StepPath, 2> out;
  std::array<bool, 2> seen{false, false};
  double last = -INFINITY;
  for (const auto& t : ticks) {
    if (t.asset != 1 && t.asset != 2) throw InputError("ticks: asset must be 1 or 2");
    auto& p = out[t.asset - 1];
    if (!seen[t.asset - 1]) {
      p.origin = t.time;
      p.initial = t.logprice;
      seen[t.asset - 1] = true;
    } else {
      const double prev = p.times.empty() ? p.origin : p.times.back();
      if (t.time < prev) throw InputError("ticks: asset " + std::to_string(t.asset) + " rows out of time order");
      p.times.push_back(t.time);
      p.values.push_back(t.logprice);
    }
    last = std::max(last, t.time);
  }
  for (std::size_t i = 0; i < 2; ++i)
    if (!seen[i]) throw InputError("ticks: asset " + std::to_string(i + 1) + " has no rows");
  for (auto& p : out) p.horizon = last;
  return out;
}

std::array<StepPath, 2> ingest_ticks(std::istream& in) {
  const auto table = csv::read(in);
  const std::size_t ca = table.column("asset");
  const std::size_t ct = table.column("time");
  const std::size_t cp = table.column("logprice");
  std::vector<TickRecord> ticks;
  ticks.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = "ticks row " + std::to_string(r + 1) + " (line " +
                              std::to_string(table.line_numbers[r]) + ")";
    TickRecord t;
    if (row[ca] == "1")
      t.asset = 1;
    else if (row[ca] == "2")
      t.asset = 2;
    else
      throw InputError(where + ": asset must be 1 or 2, found '" + row[ca] + "'");
    try {
      t.time = csv::parse_double(row[ct]);
      t.logprice = csv::parse_double(row[cp]);
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    if (!std::isfinite(t.time) || !std::isfinite(t.logprice)) throw InputError(where + ": non-finite value");
    ticks.push_back(t);
  }
  // Report the offending row when one asset goes back in time.
  std::array<double, 2> last{-INFINITY, -INFINITY};
  for (std::size_t r = 0; r < ticks.size(); ++r) {
    auto& l = last[ticks[r].asset - 1];
    if (ticks[r].time < l)
      throw InputError("ticks row " + std::to_string(r + 1) + ": asset " + std::to_string(ticks[r].asset) +
                       " time " + csv::format_double(ticks[r].time) + " precedes " + csv::format_double(l));
    l = ticks[r].time;
  }
  return paths_from_ticks(ticks);
}

std::array<StepPath, 2> ingest_ticks_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open tick file '" + path.string() + "'");
  return ingest_ticks(in);
}

std::string ticks_csv(const MarketSample& sample) {
  csv::Writer w({"asset", "time", "logprice"});
  const std::array<const StepPath*, 2> paths{&sample.y1, &sample.y2};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& p = *paths[i];
    const std::string id = std::to_string(i + 1);
    w.field(std::string_view(id)).field(p.origin).field(p.initial).end_row();
    for (std::size_t k = 0; k < p.times.size(); ++k)
      w.field(std::string_view(id)).field(p.times[k]).field(p.values[k]).end_row();
  }
  return w.str();
}

}  // namespace tickcoint
