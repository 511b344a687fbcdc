#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "tickcoint/csv.hpp"
#include "tickcoint/errors.hpp"

using namespace tickcoint;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("tickcoint_csv_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(csv::format_double(0.1), "0.1");
  EXPECT_EQ(csv::format_double(1.0), "1");
  EXPECT_EQ(csv::format_double(-2.5e-300), "-2.5e-300");
  std::mt19937_64 g(1);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t b = bits(g);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    const double back = csv::parse_double(csv::format_double(v));
    EXPECT_EQ(std::memcmp(&back, &v, sizeof v), 0) << csv::format_double(v);
  }
  const double tiny = std::numeric_limits<double>::denorm_min();
  EXPECT_EQ(csv::parse_double(csv::format_double(tiny)), tiny);
}

TEST(FormatDouble, NonFinite) {
  EXPECT_EQ(csv::format_double(std::nan("")), "nan");
  EXPECT_EQ(csv::format_double(INFINITY), "inf");
  EXPECT_EQ(csv::format_double(-INFINITY), "-inf");
  EXPECT_TRUE(std::isnan(csv::parse_double("nan")));
  EXPECT_EQ(csv::parse_double("-inf"), -INFINITY);
}

TEST(ParseDouble, RejectsGarbage) {
  for (const char* s : {"", "abc", "1.5x", "1,2", " "}) EXPECT_THROW(csv::parse_double(s), InputError) << s;
}

TEST(Writer, RowsAndHeader) {
  csv::Writer w({"a", "b", "c"});
  w.field("x").field(0.25).field(std::size_t{7}).end_row();
  w.field("y").field(-1e20).field(std::size_t{0}).end_row();
  EXPECT_EQ(w.str(), "a,b,c\nx,0.25,7\ny,-1e+20,0\n");
}

TEST(Read, TableColumnsAndLineNumbers) {
  std::istringstream in("k,v\n\n1,2.5\n\n3,4\n");
  const auto t = csv::read(in);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.column("v"), 1u);
  EXPECT_EQ(t.rows[1][0], "3");
  EXPECT_EQ(t.line_numbers, (std::vector<std::size_t>{3, 5}));
  EXPECT_THROW(t.column("missing"), InputError);
}

TEST(Read, RaggedRowAndEmptyInput) {
  std::istringstream ragged("a,b\n1\n");
  EXPECT_THROW(csv::read(ragged), InputError);
  std::istringstream empty("");
  EXPECT_THROW(csv::read(empty), InputError);
}

TEST(Read, WriterOutputParsesBack) {
  csv::Writer w({"x"});
  std::vector<double> vals{0.1, 1.0 / 3.0, -7e-12, 12345678.9};
  for (double v : vals) w.field(v).end_row();
  std::istringstream in(w.str());
  const auto t = csv::read(in);
  for (std::size_t i = 0; i < vals.size(); ++i) EXPECT_EQ(csv::parse_double(t.rows[i][0]), vals[i]);
}

TEST(WriteFileAtomic, ReplacesAndLeavesNoTemporaries) {
  const auto dir = scratch("atomic");
  const auto f = dir / "sub" / "out.csv";
  csv::write_file_atomic(f, "one\n");
  csv::write_file_atomic(f, "two\n");
  EXPECT_EQ(slurp(f), "two\n");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(f.parent_path())) ++entries;
  EXPECT_EQ(entries, 1u);
}

TEST(WriteFileAtomic, FailureKeepsPreviousContent) {
  const auto dir = scratch("atomic_fail");
  const auto blocker = dir / "file";
  csv::write_file_atomic(blocker, "keep\n");
  EXPECT_THROW(csv::write_file_atomic(blocker / "child.csv", "x"), ResourceError);
  EXPECT_EQ(slurp(blocker), "keep\n");
  const auto target = dir / "target";
  fs::create_directories(target / "nonempty");
  std::ofstream(target / "nonempty" / "f") << "x";
  EXPECT_THROW(csv::write_file_atomic(target, "y"), ResourceError);
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 2u);
}
