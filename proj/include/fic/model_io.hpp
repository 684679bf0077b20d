#ifndef FIC_MODEL_IO_HPP
#define FIC_MODEL_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "fic/matrix.hpp"

namespace fic {

inline constexpr int kModelFormatVersion = 1;

// JSON document: format tag, version, k, dim, block_split (or null),
// provenance and the centers as nested arrays. Doubles are written in their
// shortest round-trip form, so save/load is exact.
std::string serialize_model(const CentersModel& model);
CentersModel parse_model(std::string_view text);

void save_model(const std::filesystem::path& path, const CentersModel& model);
CentersModel load_model(const std::filesystem::path& path);

}  // namespace fic

#endif  // FIC_MODEL_IO_HPP
