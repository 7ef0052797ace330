// serialize.hpp -- flat-record serialization of spectral fields (JSON and
// binary), full-precision CSV writing, and the FNV run id used in manifests.
//
// Flat record: truncation N followed by interleaved re/im pairs in index
// order -N..N.  Binary layout: magic "GBSQFLD1", uint64 N (little-endian),
// then (2N+1)*2 doubles.

#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "goodbsq/spectral_field.hpp"

namespace goodbsq {

using json = nlohmann::json;

// %.17g round-trips doubles exactly.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline json field_to_json(const SpectralField& u) {
    json j;
    j["trunc"] = u.trunc;
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(2 * u.size()));
    for (const auto& z : u.coeffs) {
        flat.push_back(z.real());
        flat.push_back(z.imag());
    }
    j["coeffs"] = flat;
    return j;
}

inline SpectralField field_from_json(const json& j) {
    const int trunc = j.at("trunc").get<int>();
    const auto flat = j.at("coeffs").get<std::vector<double>>();
    if (flat.size() != static_cast<std::size_t>(2 * (2 * trunc + 1)))
        throw std::invalid_argument("field_from_json: coefficient count mismatch");
    SpectralField u(trunc, false);
    for (int i = 0; i < u.size(); ++i)
        u.coeffs[static_cast<std::size_t>(i)] =
            cdouble(flat[static_cast<std::size_t>(2 * i)], flat[static_cast<std::size_t>(2 * i + 1)]);
    u.real_flag = u.is_hermitian();
    return u;
}

inline void field_write_binary(const SpectralField& u, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("field_write_binary: cannot open " + path);
    const char magic[8] = {'G', 'B', 'S', 'Q', 'F', 'L', 'D', '1'};
    out.write(magic, 8);
    const std::uint64_t n = static_cast<std::uint64_t>(u.trunc);
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    for (const auto& z : u.coeffs) {
        const double re = z.real(), im = z.imag();
        out.write(reinterpret_cast<const char*>(&re), sizeof(re));
        out.write(reinterpret_cast<const char*>(&im), sizeof(im));
    }
}

inline SpectralField field_read_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("field_read_binary: cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, "GBSQFLD1", 8) != 0)
        throw std::runtime_error("field_read_binary: bad magic in " + path);
    std::uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    SpectralField u(static_cast<int>(n), false);
    for (auto& z : u.coeffs) {
        double re = 0, im = 0;
        in.read(reinterpret_cast<char*>(&re), sizeof(re));
        in.read(reinterpret_cast<char*>(&im), sizeof(im));
        z = cdouble(re, im);
    }
    if (!in) throw std::runtime_error("field_read_binary: truncated file " + path);
    u.real_flag = u.is_hermitian();
    return u;
}

// Row-oriented CSV with full-precision floats.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
    }

    void header(const std::vector<std::string>& cols) { line(cols); }

    void line(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

  private:
    std::ofstream out_;
};

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string run_id_from(const std::string& canonical) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical)));
    return buf;
}

} // namespace goodbsq
