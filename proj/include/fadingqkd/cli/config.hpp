#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fqkd::cli {

/// Flat `key = value` text. Blank lines and lines starting with '#' or ';'
/// are ignored, as are [section] headers. Later keys win. Throws DomainError
/// on a line without '=' or with an empty key.
std::vector<std::pair<std::string, std::string>> parse_config(std::string_view text);

std::vector<std::pair<std::string, std::string>> load_config(const std::filesystem::path& path);

}  // namespace fqkd::cli
