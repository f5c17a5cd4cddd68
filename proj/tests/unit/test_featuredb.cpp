#include <doctest.h>

#include <bit>
#include <cstring>
#include <random>

#include "comogphog/error.hpp"
#include "comogphog/featuredb.hpp"
#include "synthetic.hpp"
#include "tempdir.hpp"

using namespace comogphog;
using testsupport::TempDir;

namespace {

FeatureVector random_vector(std::mt19937_64& rng, std::string id) {
  FeatureVector fv{std::move(id), std::vector<double>(kFeatureLength)};
  for (double& v : fv.values)
    v = testsupport::gaussian(rng, 1.0);
  return fv;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_SUITE("featuredb") {

TEST_CASE("empty store round-trips") {
  TempDir dir;
  save_store(FeatureStore{}, dir / "e.cmgp");
  const FeatureStore back = load_store(dir / "e.cmgp");
  CHECK(back.empty());
  CHECK(back.version == kStoreVersion);
  CHECK(std::filesystem::file_size(dir / "e.cmgp") == 12);
}

TEST_CASE("vectors round-trip bit-exactly") {
  std::mt19937_64 rng(1);
  FeatureStore store;
  store.add(random_vector(rng, "d1n4ja_"));
  store.add(random_vector(rng, "d2efva1"));
  FeatureVector odd = random_vector(rng, "odd");
  odd.values[0] = -0.0;
  odd.values[1] = std::numeric_limits<double>::denorm_min();
  odd.values[2] = std::numeric_limits<double>::max();
  store.add(odd);

  TempDir dir;
  save_store(store, dir / "s.cmgp");
  const FeatureStore back = load_store(dir / "s.cmgp");
  REQUIRE(back.size() == 3);
  for (std::size_t e = 0; e < 3; ++e) {
    CHECK(back.entries()[e].id == store.entries()[e].id);
    for (std::size_t i = 0; i < kFeatureLength; ++i)
      CHECK(std::bit_cast<std::uint64_t>(back.entries()[e].values[i]) ==
            std::bit_cast<std::uint64_t>(store.entries()[e].values[i]));
  }
  CHECK(encode_store(back) == encode_store(store));
}

TEST_CASE("layout is little-endian with the documented header") {
  FeatureStore store;
  FeatureVector fv{"ab", std::vector<double>(kFeatureLength, 0.0)};
  fv.values[0] = 1.0;  // 0x3FF0000000000000
  store.add(fv);
  const std::string bytes = encode_store(store);
  REQUIRE(bytes.size() == 4 + 4 + 4 + 2 + 2 + 8 * kFeatureLength);
  CHECK(bytes.substr(0, 4) == "CMGP");
  CHECK(bytes.substr(4, 4) == std::string("\x01\x00\x00\x00", 4));
  CHECK(bytes.substr(8, 4) == std::string("\x01\x00\x00\x00", 4));
  CHECK(bytes.substr(12, 2) == std::string("\x02\x00", 2));
  CHECK(bytes.substr(14, 2) == "ab");
  CHECK(bytes.substr(16, 8) == std::string("\x00\x00\x00\x00\x00\x00\xF0\x3F", 8));
}

TEST_CASE("header and record validation") {
  std::mt19937_64 rng(2);
  FeatureStore store;
  store.add(random_vector(rng, "x"));
  const std::string good = encode_store(store);

  std::string bad_magic = good;
  bad_magic[0] = 'X';
  CHECK(code_of([&] { decode_store(bad_magic); }) == ErrorCode::BadMagic);
  CHECK(code_of([&] { decode_store("CM"); }) == ErrorCode::BadMagic);

  std::string v2 = good;
  v2[4] = 2;
  CHECK(code_of([&] { decode_store(v2); }) == ErrorCode::UnsupportedVersion);

  CHECK(code_of([&] { decode_store(good.substr(0, good.size() - 1)); }) == ErrorCode::CorruptEntry);
  CHECK(code_of([&] { decode_store(good.substr(0, 13)); }) == ErrorCode::CorruptEntry);
  CHECK(code_of([&] { decode_store(good + "z"); }) == ErrorCode::CorruptEntry);

  std::string dup = good;
  dup[8] = 2;
  dup += good.substr(12);
  CHECK(code_of([&] { decode_store(dup); }) == ErrorCode::CorruptEntry);

  CHECK(code_of([] { load_store("/nonexistent/store.cmgp"); }) == ErrorCode::Io);
}

TEST_CASE("store rejects duplicate ids and wrong lengths") {
  FeatureStore store;
  store.add({"a", std::vector<double>(kFeatureLength)});
  CHECK(code_of([&] { store.add({"a", std::vector<double>(kFeatureLength)}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { store.add({"b", std::vector<double>(1021)}); }) == ErrorCode::InvalidArgument);
  CHECK(store.find("a") != nullptr);
  CHECK(store.find("b") == nullptr);
}

TEST_CASE("CSV export uses 17 significant digits") {
  FeatureStore store;
  FeatureVector fv{"p", std::vector<double>(kFeatureLength, 0.0)};
  fv.values[0] = 0.1;
  fv.values[1] = 1.0 / 3.0;
  store.add(fv);
  const std::string csv = export_csv(store);
  CHECK(csv.rfind("p,0.10000000000000001,0.33333333333333331,0,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), ',') == static_cast<long>(kFeatureLength));
  CHECK(csv.back() == '\n');
}

TEST_CASE("ingesting a directory") {
  TempDir dir;
  testsupport::write_pdb(dir / "b_helix.pdb", testsupport::helix_trace(30));
  testsupport::write_pdb(dir / "a_strand.ent", testsupport::strand_trace(25));

  SUBCASE("two valid files") {
    const IngestResult r = ingest_dir(dir.path());
    REQUIRE(r.store.size() == 2);
    CHECK(r.store.entries()[0].id == "a_strand");
    CHECK(r.store.entries()[1].id == "b_helix");
    CHECK(r.skipped.empty());
  }
  SUBCASE("corrupt files are skipped and reported") {
    testsupport::write_text(dir / "c_bad.pdb", "ATOM      1  CA  ALA A   1       1.0\n");
    testsupport::write_text(dir / ".hidden.pdb", "garbage");
    std::vector<std::string> seen;
    IngestOptions opts;
    opts.on_file = [&](const std::filesystem::path& p, const std::string&) { seen.push_back(p.filename().string()); };
    const IngestResult r = ingest_dir(dir.path(), opts);
    CHECK(r.store.size() == 2);
    REQUIRE(r.skipped.size() == 1);
    CHECK(r.skipped[0].path.filename() == "c_bad.pdb");
    CHECK(r.skipped[0].reason.find("MalformedRecord") != std::string::npos);
    CHECK(seen == std::vector<std::string>{"a_strand.ent", "b_helix.pdb", "c_bad.pdb"});
  }
  SUBCASE("labels filter the corpus") {
    const LabelTable labels = parse_label_table("b_helix,a.1.1.1\n");
    IngestOptions opts;
    opts.labels = &labels;
    const IngestResult r = ingest_dir(dir.path(), opts);
    REQUIRE(r.store.size() == 1);
    CHECK(r.store.entries()[0].id == "b_helix");
    CHECK(r.skipped.size() == 1);
  }
  SUBCASE("repeat runs and job counts give identical bytes") {
    const std::string once = encode_store(ingest_dir(dir.path()).store);
    CHECK(encode_store(ingest_dir(dir.path()).store) == once);
    IngestOptions opts;
    opts.jobs = 4;
    CHECK(encode_store(ingest_dir(dir.path(), opts).store) == once);
  }
}

TEST_CASE("ingest errors") {
  TempDir dir;
  CHECK(code_of([&] { ingest_dir(dir.path()); }) == ErrorCode::EmptyCorpus);
  testsupport::write_text(dir / "junk.pdb", "HETATM\n");
  CHECK(code_of([&] { ingest_dir(dir.path()); }) == ErrorCode::EmptyCorpus);
  CHECK(code_of([&] { ingest_dir(dir / "missing"); }) == ErrorCode::Io);
}

}  // TEST_SUITE
