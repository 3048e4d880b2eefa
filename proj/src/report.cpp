#include "vqlm/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace vqlm {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Cell Cell::number(double v) { return {Kind::Number, format_double(v)}; }
Cell Cell::str(std::string s) { return {Kind::Text, std::move(s)}; }
Cell Cell::null() { return {}; }

void Table::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns.size())
        throw std::invalid_argument("Table: row width does not match header");
    rows.push_back(std::move(cells));
}

namespace {

std::string csv_escape(const std::string& s) {
    bool needs_quotes = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

} // namespace

std::string to_csv(const Table& t) {
    std::string out;
    for (size_t j = 0; j < t.columns.size(); ++j) {
        if (j) out += ',';
        out += csv_escape(t.columns[j]);
    }
    out += "\r\n";
    for (const auto& row : t.rows) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            if (row[j].kind != Cell::Kind::Null)
                out += csv_escape(row[j].text);
        }
        out += "\r\n";
    }
    return out;
}

std::string to_json(const Table& t) {
    std::string out = "[";
    for (size_t i = 0; i < t.rows.size(); ++i) {
        out += i ? ",\n " : "\n ";
        out += "{";
        for (size_t j = 0; j < t.columns.size(); ++j) {
            if (j) out += ", ";
            out += "\"" + json_escape(t.columns[j]) + "\": ";
            const Cell& c = t.rows[i][j];
            switch (c.kind) {
            case Cell::Kind::Number: out += c.text; break;
            case Cell::Kind::Text: out += "\"" + json_escape(c.text) + "\""; break;
            case Cell::Kind::Null: out += "null"; break;
            }
        }
        out += "}";
    }
    out += "\n]\n";
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    fs::path tmp = dir / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out.flush())
            throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("rename failed for " + target.string() + ": " + ec.message());
    }
}

} // namespace vqlm
