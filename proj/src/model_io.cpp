#include "fic/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fic/error.hpp"

namespace fic {

using nlohmann::json;

namespace {

constexpr const char* kFormatTag = "fic-centers";

}  // namespace

std::string serialize_model(const CentersModel& model) {
    json doc;
    doc["format"] = kFormatTag;
    doc["version"] = kModelFormatVersion;
    doc["k"] = model.k();
    doc["dim"] = model.dim();
    if (model.block_split()) {
        doc["block_split"] = {model.block_split()->d1, model.block_split()->d2};
    } else {
        doc["block_split"] = nullptr;
    }
    doc["provenance"] = std::string(to_string(model.provenance()));
    json centers = json::array();
    for (std::size_t s = 0; s < model.k(); ++s) {
        const auto c = model.center(s);
        centers.push_back(std::vector<double>(c.begin(), c.end()));
    }
    doc["centers"] = std::move(centers);
    return doc.dump(2) + "\n";
}

CentersModel parse_model(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(DataError::Kind::parse_failure, std::string("model document is not valid JSON: ") + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != kFormatTag) {
            throw DataError(DataError::Kind::parse_failure, "not a centers model document");
        }
        const int version = doc.at("version").get<int>();
        if (version != kModelFormatVersion) {
            throw DataError(DataError::Kind::parse_failure,
                            "unsupported model format version " + std::to_string(version));
        }
        const auto k = doc.at("k").get<std::size_t>();
        const auto dim = doc.at("dim").get<std::size_t>();
        std::optional<BlockSplit> split;
        if (!doc.at("block_split").is_null()) {
            const auto parts = doc.at("block_split").get<std::vector<std::size_t>>();
            if (parts.size() != 2) throw DataError(DataError::Kind::parse_failure, "block_split must have two entries");
            split = BlockSplit{parts[0], parts[1]};
        }
        Provenance provenance = Provenance::kmeans;
        try {
            provenance = provenance_from_string(doc.at("provenance").get<std::string>());
        } catch (const ConfigError& e) {
            throw DataError(DataError::Kind::parse_failure, e.what());
        }
        const auto rows = doc.at("centers").get<std::vector<std::vector<double>>>();
        if (rows.size() != k) throw DataError(DataError::Kind::column_count_mismatch, "center count does not match k");
        std::vector<double> values;
        values.reserve(k * dim);
        for (const auto& r : rows) {
            if (r.size() != dim) {
                throw DataError(DataError::Kind::column_count_mismatch, "center length does not match dim");
            }
            values.insert(values.end(), r.begin(), r.end());
        }
        return CentersModel(DataMatrix(k, dim, std::move(values)), provenance, split);
    } catch (const json::exception& e) {
        throw DataError(DataError::Kind::parse_failure, std::string("malformed model document: ") + e.what());
    }
}

void save_model(const std::filesystem::path& path, const CentersModel& model) {
    std::ofstream out(path);
    if (!out) throw DataError(DataError::Kind::io_failure, "cannot write '" + path.string() + "'");
    out << serialize_model(model);
    if (!out) throw DataError(DataError::Kind::io_failure, "write to '" + path.string() + "' failed");
}

CentersModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError(DataError::Kind::missing_file, "cannot open model '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_model(buffer.str());
}

}  // namespace fic
