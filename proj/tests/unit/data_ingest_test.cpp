#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oltr/data_ingest.hpp"

using namespace oltr;

namespace {

// 1000 ratings per movie; movie 100+i gets round(1000 w_i) ratings of 5.
RatingsTable synthetic_reference_table() {
  const auto profile = movielens10_profile();
  const auto w = profile.weights();
  RatingsTable table;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto movie = 100 + i;
    const auto good = static_cast<int>(std::lround(w[i] * 1000));
    for (int u = 0; u < 1000; ++u) table.records.push_back({static_cast<std::uint64_t>(u), movie, u < good ? 5.0 : 2.0, 0});
  }
  return table;
}

}  // namespace

TEST(ParseMovielens, LegacyRow) {
  std::istringstream in("1\t50\t5\t881250949\n");
  const auto t = parse_movielens(in, RatingsFormat::LegacyTsv);
  ASSERT_EQ(t.records.size(), 1u);
  EXPECT_EQ(t.records[0].user, 1u);
  EXPECT_EQ(t.records[0].movie, 50u);
  EXPECT_EQ(t.records[0].rating, 5.0);
  EXPECT_EQ(t.records[0].timestamp, 881250949);
}

TEST(ParseMovielens, HeaderedCsvWithHalfStars) {
  std::istringstream in("userId,movieId,rating,timestamp\n1,31,2.5,1260759144\n1,1029,3.0,1260759179\n");
  const auto t = parse_movielens(in, RatingsFormat::HeaderedCsv);
  ASSERT_EQ(t.records.size(), 2u);
  EXPECT_EQ(t.records[0].rating, 2.5);
  EXPECT_EQ(t.skipped, 0u);
}

TEST(ParseMovielens, HeaderOnlyIsAnError) {
  std::istringstream in("userId,movieId,rating,timestamp\n");
  try {
    parse_movielens(in, RatingsFormat::HeaderedCsv);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("zero valid rows"), std::string::npos);
  }
}

TEST(ParseMovielens, MalformedRowsAreSkipped) {
  std::istringstream in("1\t1\t4\t0\n2\t1\t3\t0\nbroken line\n3\t2\t5\t0\n");
  const auto t = parse_movielens(in, RatingsFormat::LegacyTsv);
  EXPECT_EQ(t.records.size(), 3u);
  EXPECT_EQ(t.skipped, 1u);
}

TEST(ParseMovielens, OutOfScaleRatingIsSkipped) {
  std::istringstream in("1\t1\t9\t0\n1\t2\t4\t0\n");
  const auto t = parse_movielens(in, RatingsFormat::LegacyTsv);
  EXPECT_EQ(t.records.size(), 1u);
  EXPECT_EQ(t.skipped, 1u);
}

TEST(ParseMovielens, MissingFileIsIoError) {
  EXPECT_THROW(parse_movielens(std::filesystem::path("/nonexistent/ratings.dat"), RatingsFormat::LegacyTsv), IoError);
}

TEST(ParseFormats, Tags) {
  EXPECT_EQ(parse_ratings_format("tsv"), RatingsFormat::LegacyTsv);
  EXPECT_EQ(parse_ratings_format("csv"), RatingsFormat::HeaderedCsv);
  EXPECT_THROW(parse_ratings_format("xml"), ValidationError);
  EXPECT_EQ(parse_selection_mode("given-ids"), SelectionMode::GivenIds);
  EXPECT_THROW(parse_selection_mode("best"), ValidationError);
}

TEST(AttractionProbs, StrictThreshold) {
  RatingsTable t;
  for (double r : {5.0, 4.0, 2.0, 3.0}) t.records.push_back({1, 7, r, 0});
  for (double r : {1.0, 3.0, 2.0}) t.records.push_back({1, 8, r, 0});
  const auto p = attraction_probs(t, 3.0, 1);
  EXPECT_EQ(p.at(7).probability(), 0.5);
  EXPECT_EQ(p.at(8).probability(), 0.0);
}

TEST(AttractionProbs, MinCountFilter) {
  RatingsTable t;
  for (int i = 0; i < 19; ++i) t.records.push_back({1, 7, 4.0, 0});
  for (int i = 0; i < 20; ++i) t.records.push_back({1, 8, 4.0, 0});
  const auto p = attraction_probs(t);
  EXPECT_FALSE(p.contains(7));
  EXPECT_TRUE(p.contains(8));
  EXPECT_THROW(attraction_probs(t, 7.0), ValidationError);
}

TEST(SelectProfile, GivenIdsReproduceReferenceProfile) {
  const auto probs = attraction_probs(synthetic_reference_table());
  // Supplied out of order: relabelling sorts by descending probability.
  const std::vector<std::uint64_t> ids{109, 100, 105, 101, 102, 103, 104, 106, 107, 108};
  const auto sel = select_profile(probs, 10, SelectionMode::GivenIds, 0, ids);
  EXPECT_EQ(sel.profile, movielens10_profile());
  EXPECT_EQ(sel.source_ids.front(), 100u);
  EXPECT_EQ(sel.source_ids.back(), 109u);
}

TEST(SelectProfile, SingleItem) {
  const auto probs = attraction_probs(synthetic_reference_table());
  const auto sel = select_profile(probs, 1, SelectionMode::TopVariance);
  EXPECT_EQ(sel.profile.size(), 1u);
  EXPECT_EQ(sel.source_ids, (std::vector<std::uint64_t>{100}));  // 0.336 has the largest w(1-w)
}

TEST(SelectProfile, SeededArbitraryIsDeterministic) {
  const auto probs = attraction_probs(synthetic_reference_table());
  const auto a = select_profile(probs, 4, SelectionMode::SeededArbitrary, 42);
  const auto b = select_profile(probs, 4, SelectionMode::SeededArbitrary, 42);
  EXPECT_EQ(a.source_ids, b.source_ids);
  EXPECT_EQ(a.profile, b.profile);
  EXPECT_TRUE(a.profile.is_sorted());
}

TEST(SelectProfile, Errors) {
  const auto probs = attraction_probs(synthetic_reference_table());
  EXPECT_THROW(select_profile(probs, 11, SelectionMode::TopVariance), ValidationError);
  const std::vector<std::uint64_t> unknown{100, 999};
  EXPECT_THROW(select_profile(probs, 2, SelectionMode::GivenIds, 0, unknown), ValidationError);
  const std::vector<std::uint64_t> short_list{100};
  EXPECT_THROW(select_profile(probs, 2, SelectionMode::GivenIds, 0, short_list), ValidationError);
}

TEST(BuiltinProfile, Names) {
  EXPECT_EQ(builtin_profile("movielens10"), movielens10_profile());
  EXPECT_EQ(builtin_profile("movielens10").weights()[0], 0.336);
  EXPECT_THROW(builtin_profile("netflix"), ValidationError);
}

TEST(ProfileFile, RoundTrip) {
  std::stringstream io;
  const std::vector<std::uint64_t> sources{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  write_profile(io, movielens10_profile(), sources);
  EXPECT_EQ(read_profile(io), movielens10_profile());

  std::stringstream bad("item,w\n1,0.5\n3,0.2\n");
  EXPECT_THROW(read_profile(bad), ValidationError);
}
