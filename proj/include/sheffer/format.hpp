#pragma once

// Deterministic number and CSV formatting: shortest round-trip doubles,
// LF line endings, byte-stable output for identical inputs.

#include <charconv>
#include <string>
#include <vector>

namespace sheffer {

inline std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) {
        append_row(header);
    }
    void append_row(const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            line += cells[i];
        }
        line += '\n';
        out_ += line;
    }
    const std::string& str() const { return out_; }

private:
    std::string out_;
};

struct CsvDocument {
    std::vector<std::string> comments;  // leading '#' metadata lines, verbatim
    std::vector<std::vector<std::string>> rows;  // header first
};

inline CsvDocument parse_csv(const std::string& text) {
    CsvDocument doc;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        if (!line.empty() && line[0] == '#') {
            doc.comments.push_back(line);
            continue;
        }
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        doc.rows.push_back(std::move(cells));
    }
    return doc;
}

inline std::string emit_csv(const CsvDocument& doc) {
    std::string out;
    for (const auto& c : doc.comments) out += c + '\n';
    for (const auto& row : doc.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

}  // namespace sheffer
