#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "fic/error.hpp"
#include "fic/model_io.hpp"
#include "oracles.hpp"

using namespace fic;

namespace {

DataError::Kind parse_error_kind(const std::string& text) {
    try {
        parse_model(text);
    } catch (const DataError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected a DataError for: " << text;
    return DataError::Kind::io_failure;
}

}  // namespace

TEST(ModelIo, RoundTripIsExact) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        auto centers = oracle::random_matrix(rng, 4, 5, -1e3, 1e3);
        CentersModel m(centers, Provenance::fic_mr, BlockSplit{2, 3});
        auto back = parse_model(serialize_model(m));
        EXPECT_EQ(back, m);
    }
    CentersModel plain(DataMatrix::from_rows({{0.1, 1e-300}, {-0.0, 5e300}}), Provenance::km_p1);
    EXPECT_EQ(parse_model(serialize_model(plain)), plain);
}

TEST(ModelIo, FileRoundTrip) {
    const auto p = std::filesystem::temp_directory_path() / ("fic_model_" + std::to_string(std::random_device{}()));
    CentersModel m(DataMatrix::from_rows({{1.0 / 3.0, 2}, {3, 4}}), Provenance::fic_dr, BlockSplit{1, 1});
    save_model(p, m);
    EXPECT_EQ(load_model(p), m);
    std::filesystem::remove(p);
    try {
        load_model(p);
        ADD_FAILURE();
    } catch (const DataError& e) {
        EXPECT_EQ(e.kind(), DataError::Kind::missing_file);
    }
}

TEST(ModelIo, DocumentLayout) {
    CentersModel m(DataMatrix::from_rows({{1, 2}}), Provenance::fic_da, BlockSplit{1, 1});
    const auto text = serialize_model(m);
    EXPECT_NE(text.find("\"format\": \"fic-centers\""), std::string::npos);
    EXPECT_NE(text.find("\"version\": 1"), std::string::npos);
    EXPECT_NE(text.find("\"provenance\": \"FIC-DA\""), std::string::npos);
}

TEST(ModelIo, RejectsMalformedDocuments) {
    EXPECT_EQ(parse_error_kind("{"), DataError::Kind::parse_failure);
    EXPECT_EQ(parse_error_kind(R"({"format":"other"})"), DataError::Kind::parse_failure);
    EXPECT_EQ(parse_error_kind(
                  R"({"format":"fic-centers","version":2,"k":1,"dim":1,"block_split":null,"provenance":"KMEANS","centers":[[1]]})"),
              DataError::Kind::parse_failure);
    EXPECT_EQ(parse_error_kind(
                  R"({"format":"fic-centers","version":1,"k":2,"dim":1,"block_split":null,"provenance":"KMEANS","centers":[[1]]})"),
              DataError::Kind::column_count_mismatch);
    EXPECT_EQ(parse_error_kind(
                  R"({"format":"fic-centers","version":1,"k":1,"dim":2,"block_split":null,"provenance":"KMEANS","centers":[[1]]})"),
              DataError::Kind::column_count_mismatch);
    EXPECT_EQ(parse_error_kind(
                  R"({"format":"fic-centers","version":1,"k":1,"dim":1,"block_split":null,"centers":[[1]]})"),
              DataError::Kind::parse_failure);
    EXPECT_EQ(parse_error_kind(
                  R"({"format":"fic-centers","version":1,"k":1,"dim":1,"block_split":null,"provenance":"NOPE","centers":[[1]]})"),
              DataError::Kind::parse_failure);
}
