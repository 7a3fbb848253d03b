#pragma once

// Sequence/profile CSV files, complex JSON encoding and atomic file writes.
//
// Sequence CSV:  index,re,im            (one row per sample)
// Profile CSV:   delay,re,im,magnitude  (one row per delay)
// Floats use 17 significant digits so doubles round-trip exactly.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "zczseq/correlation.hpp"
#include "zczseq/numerics.hpp"

namespace zczseq::io {

namespace fs = std::filesystem;
using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Writes to a sibling temporary file, then renames over the target.
inline void write_file_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
        }
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        out << content;
        out.flush();
        if (!out) {
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json read_json(const fs::path& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw IoError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

inline void write_json(const fs::path& path, const json& j) {
    write_file_atomic(path, j.dump(2) + "\n");
}

inline json complex_to_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ValidationError("complex numbers must be encoded as [re, im], got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json seq_to_json(const ComplexSeq& x) {
    json arr = json::array();
    for (const auto& v : x) {
        arr.push_back(complex_to_json(v));
    }
    return arr;
}

inline std::vector<Complex> complex_list_from_json(const json& j) {
    if (!j.is_array()) {
        throw ValidationError("expected an array of [re, im] pairs, got " + j.dump());
    }
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        out.push_back(complex_from_json(v));
    }
    return out;
}

inline std::string sequence_csv(const ComplexSeq& x) {
    std::string out = "index,re,im\n";
    for (std::size_t k = 0; k < x.size(); ++k) {
        out += std::to_string(k) + "," + format_double(x[k].real()) + "," + format_double(x[k].imag()) + "\n";
    }
    return out;
}

inline std::string profile_csv(const CorrelationProfile& prof) {
    std::string out = "delay,re,im,magnitude\n";
    for (std::size_t p = 0; p < prof.length(); ++p) {
        out += std::to_string(p) + "," + format_double(prof[p].real()) + "," + format_double(prof[p].imag()) + "," +
               format_double(std::abs(prof[p])) + "\n";
    }
    return out;
}

inline std::string sparse_profile_csv(const CorrelationProfile& prof, double zeroTol) {
    std::string out = "delay,re,im,magnitude\n";
    for (const auto& [p, v] : sparse_view(prof, zeroTol)) {
        out += std::to_string(p) + "," + format_double(v.real()) + "," + format_double(v.imag()) + "," +
               format_double(std::abs(v)) + "\n";
    }
    return out;
}

namespace detail {

inline double parse_double_field(const std::string& field, const fs::path& path, std::size_t line) {
    const char* begin = field.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE) {
        throw IoError(path.string() + ":" + std::to_string(line) + ": bad number '" + field + "'");
    }
    return v;
}

} // namespace detail

inline ComplexSeq read_sequence_csv(const fs::path& path) {
    std::istringstream in(read_file(path));
    std::string row;
    if (!std::getline(in, row) || row != "index,re,im") {
        throw IoError(path.string() + ": missing 'index,re,im' header");
    }
    std::vector<Complex> samples;
    std::size_t line = 1;
    while (std::getline(in, row)) {
        ++line;
        if (row.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(row);
        std::string f;
        while (std::getline(ss, f, ',')) {
            fields.push_back(f);
        }
        if (fields.size() != 3) {
            throw IoError(path.string() + ":" + std::to_string(line) + ": expected 3 columns");
        }
        if (fields[0] != std::to_string(samples.size())) {
            throw IoError(path.string() + ":" + std::to_string(line) + ": index out of sequence");
        }
        samples.emplace_back(detail::parse_double_field(fields[1], path, line),
                             detail::parse_double_field(fields[2], path, line));
    }
    try {
        return ComplexSeq(std::move(samples));
    } catch (const ValidationError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

} // namespace zczseq::io
