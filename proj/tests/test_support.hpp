#pragma once

#include <atomic>
#include <filesystem>
#include <random>
#include <string>

#include "seeker/config.hpp"
#include "seeker/textproc.hpp"

namespace testing {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(SEEKER_FIXTURES) / name;
}

inline const seeker::StopwordList& stopwords() {
    static const seeker::StopwordList list =
        seeker::StopwordList::load(std::filesystem::path(SEEKER_DEFAULT_DATA_DIR) / "stopwords.txt");
    return list;
}

/// Fresh directory removed on destruction.
class TempDir {
  public:
    TempDir() {
        static std::atomic<int> counter{0};
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("seeker-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

inline seeker::Config config_for(const std::filesystem::path& dir) {
    seeker::Config c;
    c.data_dir = dir;
    c.validate();
    return c;
}

}  // namespace testing
