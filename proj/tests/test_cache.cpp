#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "qhv/cache.hpp"
#include "qhv/error.hpp"

using namespace qhv;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  explicit TempFile(const char* name) : path(fs::temp_directory_path() / name) { fs::remove(path); }
  ~TempFile() { fs::remove(path); }
};

}  // namespace

TEST(Cache, StoresAndReloads) {
  TempFile f("qhv_cache_test.jsonl");
  {
    ResultCache c(f.path.string());
    EXPECT_EQ(c.size(), 0u);
    EXPECT_FALSE(c.get("k1"));
    c.put("k1", Json{{"kind", "EMPTY"}});
    ASSERT_TRUE(c.get("k1"));
    EXPECT_EQ((*c.get("k1"))["kind"], "EMPTY");
  }
  ResultCache again(f.path.string());
  EXPECT_EQ(again.size(), 1u);
  EXPECT_TRUE(again.warnings().empty());
  EXPECT_EQ((*again.get("k1"))["kind"], "EMPTY");
}

TEST(Cache, CorruptLinesAreSkippedWithWarning) {
  TempFile f("qhv_cache_corrupt.jsonl");
  {
    std::ofstream out(f.path);
    out << "{\"key\":\"a\",\"record\":1}\n";
    out << "{not json\n";
    out << "[1,2]\n";
    out << "{\"key\":\"b\",\"record\":2}\n";
  }
  ResultCache c(f.path.string());
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.warnings().size(), 2u);
}

TEST(Cache, KeyTracksSettings) {
  ClassifyConfig a, b;
  b.field.seed = a.field.seed + 1;
  const auto ka = ResultCache::key("classify", "L(13;5,4^9)", a);
  EXPECT_EQ(ka.size(), 16u);
  EXPECT_EQ(ka, ResultCache::key("classify", "L(13;5,4^9)", a));
  EXPECT_NE(ka, ResultCache::key("classify", "L(13;5,4^9)", b));
  EXPECT_NE(ka, ResultCache::key("rank", "L(13;5,4^9)", a));
  EXPECT_NE(ka, ResultCache::key("classify", "L(13;5,4^8)", a));
  b = a;
  b.use_axioms = false;
  EXPECT_NE(ka, ResultCache::key("classify", "L(13;5,4^9)", b));
}

TEST(Cache, UnwritablePathThrowsIo) {
  ResultCache c("/nonexistent-dir/cache.jsonl");
  try {
    c.put("x", Json(1));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}
