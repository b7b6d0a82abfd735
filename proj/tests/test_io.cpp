#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "steinitz/io.hpp"
#include "steinitz/verify.hpp"

using namespace steinitz;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("steinitz_io_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Json, ClassGroupRecord) {
  const auto g = ClassGroup::enumerate(Field::from_d(-23));
  const auto j = io::to_json(g);
  EXPECT_EQ(j.dump(), R"({"d":-23,"D":-23,"h":3,"invariants":[3],"generators":[[2,-1,3]],"forms":[[1,1,6],[2,-1,3],[2,1,3]]})");
}

TEST(Json, CertificateShapes) {
  FieldPool pool;
  EXPECT_EQ(io::to_json(pool.get(-47).w(3).certificate).dump(), R"({"kind":"INDEX_FORCED"})");
  const auto stabilized = io::to_json(pool.get(-5).w(4).certificate);
  EXPECT_EQ(stabilized["kind"], "STABILIZED");
  EXPECT_TRUE(stabilized.contains("bound"));
  EXPECT_TRUE(stabilized.contains("prime_count"));
}

TEST(Json, DeterministicSuiteOutput) {
  VerifyOptions opts;
  opts.seed = 42;
  opts.soundness_samples = 50;
  opts.fields = {-23, -47};
  auto render = [&] {
    FieldPool pool;
    std::string out;
    for (const auto& name : suite_names()) out += io::to_json(run_suite(name, opts, pool)).dump();
    return out;
  };
  EXPECT_EQ(render(), render());
}

TEST(Cache, RoundTrip) {
  const auto dir = fresh_dir("roundtrip");
  const Field k = Field::from_d(-65);
  const auto computed = io::load_or_compute(k, dir);
  const auto file = dir / io::cache_file_name(k.D);
  ASSERT_TRUE(std::filesystem::exists(file));
  EXPECT_EQ(io::cache_file_name(k.D), "D260.json");

  std::ifstream in(file);
  const auto record = io::Json::parse(in);
  EXPECT_EQ(record["d"], -65);
  EXPECT_EQ(record["D"], -260);
  EXPECT_EQ(record["h"], 8);
  EXPECT_EQ(record["invariants"], (std::vector<Int>{2, 4}));

  const auto loaded = io::load_or_compute(k, dir);
  EXPECT_EQ(loaded.elements(), computed.elements());
  EXPECT_EQ(loaded.invariants(), computed.invariants());
  std::filesystem::remove_all(dir);
}

TEST(Cache, CorruptOrForeignRecordsAreRecomputed) {
  const auto dir = fresh_dir("corrupt");
  std::filesystem::create_directories(dir);
  const Field k = Field::from_d(-23);
  {
    std::ofstream out(dir / io::cache_file_name(k.D));
    out << "{not json";
  }
  EXPECT_EQ(io::load_or_compute(k, dir).h(), 3);

  auto bogus = io::cache_record(ClassGroup::enumerate(k));
  bogus["forms"] = io::Json::array({io::Json::array({1, 1, 6})});
  {
    std::ofstream out(dir / io::cache_file_name(k.D));
    out << bogus.dump();
  }
  EXPECT_EQ(io::load_or_compute(k, dir).h(), 3);
  EXPECT_FALSE(io::class_group_from_record(Field::from_d(-47), io::cache_record(ClassGroup::enumerate(k))));
  std::filesystem::remove_all(dir);
}

TEST(Cache, FormsMustBeReduced) {
  const Field k = Field::from_d(-23);
  auto record = io::cache_record(ClassGroup::enumerate(k));
  record["forms"][1] = io::Json::array({3, 1, 2});
  EXPECT_FALSE(io::class_group_from_record(k, record));
}
