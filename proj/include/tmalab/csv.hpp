#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <string>

#include "tmalab/errors.hpp"

namespace tmalab {

inline constexpr const char* kToolVersion = "1.0.0";

/// Locale-independent number formatting shared by every emitted artifact,
/// so identical inputs always produce byte-identical files.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string format_u64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%llu", static_cast<unsigned long long>(v));
    return buf;
}

/// CSV writer: provenance comment line, header row, data rows. UTF-8, comma
/// separated, '.' decimal point.
class CsvFile {
public:
    CsvFile(const std::string& path, std::uint64_t config_hash, std::uint64_t seed)
        : out_(path, std::ios::binary) {
        if (!out_) {
            throw Error("cannot write " + path);
        }
        char buf[96];
        std::snprintf(buf, sizeof(buf), "# tmalab %s config_hash=%016llx seed=%llu\n",
                      kToolVersion, static_cast<unsigned long long>(config_hash),
                      static_cast<unsigned long long>(seed));
        out_ << buf;
    }

    void row(std::initializer_list<std::string> cells) {
        bool first = true;
        for (const std::string& cell : cells) {
            if (!first) {
                out_ << ',';
            }
            out_ << cell;
            first = false;
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

} // namespace tmalab
