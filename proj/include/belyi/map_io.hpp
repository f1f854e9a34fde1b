#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "belyi/pairing.hpp"

namespace belyi {

// Map file format (text):
//   line 1: belyi-map v1
//   line 2: n=<int>
//   line 3: 6n whitespace-separated integers, match[0..6n)
// Strict parse, trailing whitespace tolerated.

class MapFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string encode_map(const Pairing& p) {
    std::string out = "belyi-map v1\nn=" + std::to_string(p.n) + "\n";
    for (std::int32_t h = 0; h < p.half_edges(); ++h) {
        if (h) out += ' ';
        out += std::to_string(p.match[h]);
    }
    out += '\n';
    return out;
}

inline Pairing decode_map(std::string_view text) {
    auto fail = [](const std::string& what) -> Pairing { throw MapFormatError(what); };

    auto next_line = [&](std::string_view& rest) -> std::string_view {
        std::size_t nl = rest.find('\n');
        std::string_view line = nl == std::string_view::npos ? rest : rest.substr(0, nl);
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        return line;
    };

    std::string_view rest = text;
    if (next_line(rest) != "belyi-map v1") return fail("map file: line 1 must be 'belyi-map v1'");

    std::string_view nline = next_line(rest);
    if (nline.substr(0, 2) != "n=") return fail("map file: line 2 must be 'n=<int>'");
    std::int32_t n = 0;
    {
        auto [ptr, ec] = std::from_chars(nline.data() + 2, nline.data() + nline.size(), n);
        if (ec != std::errc{} || ptr != nline.data() + nline.size() || n < 1)
            return fail("map file: line 2 has a malformed or non-positive n");
    }

    std::vector<HalfEdgeId> values;
    values.reserve(6 * n);
    {
        std::string_view body = rest;
        std::size_t i = 0;
        while (i < body.size()) {
            while (i < body.size() && (body[i] == ' ' || body[i] == '\t' || body[i] == '\n' || body[i] == '\r'))
                ++i;
            if (i >= body.size()) break;
            std::int32_t value = 0;
            auto [ptr, ec] = std::from_chars(body.data() + i, body.data() + body.size(), value);
            if (ec != std::errc{})
                return fail("map file: malformed integer at entry " + std::to_string(values.size()));
            i = static_cast<std::size_t>(ptr - body.data());
            values.push_back(value);
        }
    }

    if (values.size() % 6 != 0)
        return fail("map file: entry count " + std::to_string(values.size()) + " is not a multiple of 6");
    if (static_cast<std::int32_t>(values.size()) != 6 * n)
        return fail("map file: expected " + std::to_string(6 * n) + " entries, found " +
                    std::to_string(values.size()));

    Pairing p;
    p.n = n;
    p.match = std::move(values);
    for (std::int32_t h = 0; h < 6 * n; ++h) {
        HalfEdgeId m = p.match[h];
        if (m < 0 || m >= 6 * n)
            throw MapFormatError("map file: entry " + std::to_string(h) + " out of range");
        if (m == h)
            throw MapFormatError("map file: fixed point at entry " + std::to_string(h));
        if (p.match[m] != h)
            throw MapFormatError("map file: not an involution at entry " + std::to_string(h));
    }
    return p;
}

inline void write_map_file(const std::string& path, const Pairing& p) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << encode_map(p);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

inline Pairing read_map_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return decode_map(ss.str());
}

}  // namespace belyi
