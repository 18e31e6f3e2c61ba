#pragma once

// Line helpers shared by the text formats. Blank lines and '#' comments are
// skipped.

#include "qmcoh/errors.hpp"

#include <istream>
#include <string>

namespace qmcoh::textio {

inline std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    const auto start = s.find_first_not_of(" \t");
    return start == std::string::npos ? std::string() : s.substr(start);
}

inline bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        line = trimmed(line);
        if (!line.empty() && line[0] != '#') return true;
    }
    return false;
}

inline std::string expect_key(std::istream& in, const std::string& key) {
    std::string line;
    if (!next_content_line(in, line)) throw InputError("unexpected end of input, expected '" + key + "'");
    if (line == key) return {};
    if (line.rfind(key + " ", 0) != 0) throw InputError("expected '" + key + "', got '" + line + "'");
    return trimmed(line.substr(key.size() + 1));
}

} // namespace qmcoh::textio
