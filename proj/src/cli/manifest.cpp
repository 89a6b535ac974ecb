#include "cli/manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace hypin::cli {

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string format12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round12(double v) {
    return std::strtod(format12(v).c_str(), nullptr);
}

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

RunManifest::RunManifest(std::string command_line, int l, nlohmann::ordered_json tolerances)
    : command_line_(std::move(command_line)),
      l_(l),
      tolerances_(std::move(tolerances)),
      summary_(nlohmann::ordered_json::object()),
      timestamp_(utc_timestamp()) {}

void RunManifest::write_output(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    out << contents;
    out.close();
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    files_.push_back({path.string(), sha256_hex(contents), contents.size()});
}

nlohmann::ordered_json RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = "hypin";
    j["version"] = kToolVersion;
    j["command_line"] = command_line_;
    j["l"] = l_;
    j["tolerances"] = tolerances_;
    j["files"] = nlohmann::ordered_json::array();
    for (const auto& f : files_) {
        j["files"].push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    }
    j["summary"] = summary_;
    j["timestamp"] = timestamp_;
    return j;
}

std::filesystem::path RunManifest::save_next_to(const std::filesystem::path& primary) const {
    auto path = primary;
    path += ".manifest.json";
    std::ofstream out(path, std::ios::binary);
    out << to_json().dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return path;
}

}  // namespace hypin::cli
