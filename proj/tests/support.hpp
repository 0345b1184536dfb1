// Shared helpers for the test binaries.
#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pbg/params.hpp"

namespace pbg::test {

inline std::uint64_t seed() { return 0x5eed5eedULL; }

// Full width at half maximum by linear interpolation of the outermost crossings.
inline double fwhm(const std::vector<double>& x, const std::vector<double>& y) {
    const auto top = std::max_element(y.begin(), y.end());
    const double half = 0.5 * *top;
    std::size_t lo = static_cast<std::size_t>(top - y.begin());
    std::size_t hi = lo;
    while (lo > 0 && y[lo - 1] >= half) --lo;
    while (hi + 1 < y.size() && y[hi + 1] >= half) ++hi;
    auto cross = [&](std::size_t a, std::size_t b) {
        return x[a] + (half - y[a]) * (x[b] - x[a]) / (y[b] - y[a]);
    };
    const double left = lo > 0 ? cross(lo - 1, lo) : x.front();
    const double right = hi + 1 < y.size() ? cross(hi, hi + 1) : x.back();
    return right - left;
}

inline ModelParams random_bandgap(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> wc(1.0, 200.0), off(0.01, 5.0), rabi(0.0, 2.0), beta(0.5, 2.0);
    const double c = wc(rng);
    return ModelParams::bandgap(c + off(rng), c, rabi(rng), beta(rng));
}

inline ModelParams random_markovian(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> gamma(0.1, 5.0), rabi(0.0, 20.0);
    return ModelParams::markovian(gamma(rng), rabi(rng));
}

struct Csv {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};

inline Csv read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    Csv csv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            csv.comments.push_back(line.substr(2));
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        if (csv.header.empty()) {
            while (std::getline(ss, cell, ',')) csv.header.push_back(cell);
            csv.columns.resize(csv.header.size());
            continue;
        }
        for (std::size_t j = 0; std::getline(ss, cell, ','); ++j) csv.columns.at(j).push_back(std::stod(cell));
    }
    return csv;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path = std::filesystem::temp_directory_path() / ("pbgfluor_" + tag + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

}  // namespace pbg::test
