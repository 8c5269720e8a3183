#pragma once

#include "drugwatch/text.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace testutil {

inline std::string data(const std::string& rel) { return std::string(DRUGWATCH_DATA_DIR) + "/" + rel; }
inline std::string testdir(const std::string& rel) { return std::string(DRUGWATCH_TEST_DIR) + "/" + rel; }

/// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("drugwatch-test-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }
    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    out << contents;
}

inline bool update_golden() {
    const char* v = std::getenv("DRUGWATCH_UPDATE_GOLDEN");
    return v && std::string(v) == "1";
}

}  // namespace testutil
