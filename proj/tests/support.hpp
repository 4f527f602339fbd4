#pragma once

// Helpers shared by the test binaries: scratch directories, running the CLI, random data.

#include <mvst/data.hpp>
#include <mvst/dataset_io.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace support {

  namespace fs = std::filesystem;

  /// Fresh directory under the system temp dir, removed on destruction.
  class ScratchDir {
  public:
    explicit ScratchDir(const std::string& tag) {
      std::random_device rd;
      path_ = fs::temp_directory_path() / ("mvst-" + tag + "-" + std::to_string(rd()));
      fs::remove_all(path_);
      fs::create_directories(path_);
    }
    ~ScratchDir() {
      std::error_code ec;
      fs::remove_all(path_, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;

    [[nodiscard]] const fs::path& path() const { return path_; }
    [[nodiscard]] std::string operator/(const std::string& name) const { return (path_ / name).string(); }

  private:
    fs::path path_;
  };

  struct RunResult {
    int exit_code = -1;
    std::string output; // stdout and stderr interleaved
  };

  inline RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(MVST_CLI_PATH) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) { return r; }
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) { r.output.append(buf.data(), got); }
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  inline mvst::MultivariateInstance random_instance(std::mt19937_64& rng, std::size_t d, std::size_t m,
                                                    std::string label = "a") {
    std::normal_distribution<double> g;
    std::vector<mvst::TimeSeries> dims;
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<double> v(m);
      for (auto& x : v) { x = g(rng); }
      dims.emplace_back(std::move(v));
    }
    return mvst::MultivariateInstance(std::move(dims), std::move(label));
  }

  inline mvst::Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t d, std::size_t m,
                                      std::size_t classes, const std::string& name = "Rand") {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < classes; ++k) { names.push_back("k" + std::to_string(k)); }
    std::vector<mvst::MultivariateInstance> out;
    for (std::size_t i = 0; i < n; ++i) { out.push_back(random_instance(rng, d, m, names[i % classes])); }
    return mvst::Dataset(name, std::move(out), names);
  }

} // namespace support
