#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hypin::cli {

inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view bytes);

/// Numbers are serialized with 12 significant digits.
double round12(double v);
std::string format12(double v);

struct OutputFile {
    std::string path;
    std::string sha256;
    std::size_t bytes = 0;
};

class RunManifest {
public:
    RunManifest(std::string command_line, int l, nlohmann::ordered_json tolerances);

    /// Writes `contents` to `path` and records its hash.
    void write_output(const std::filesystem::path& path, const std::string& contents);

    void set_summary(nlohmann::ordered_json summary) { summary_ = std::move(summary); }

    const std::vector<OutputFile>& files() const { return files_; }

    nlohmann::ordered_json to_json() const;

    /// Writes the manifest next to `primary` as <primary>.manifest.json.
    std::filesystem::path save_next_to(const std::filesystem::path& primary) const;

private:
    std::string command_line_;
    int l_;
    nlohmann::ordered_json tolerances_;
    nlohmann::ordered_json summary_;
    std::string timestamp_;
    std::vector<OutputFile> files_;
};

}  // namespace hypin::cli
