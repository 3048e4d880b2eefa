#pragma once

// Tabular output shared by the command-line tool: CSV (RFC 4180 quoting) and
// JSON (flat array of row objects).  Numbers are rendered with 17 significant
// digits so identical runs produce identical bytes.

#include <string>
#include <vector>

namespace vqlm {

struct Cell {
    enum class Kind { Number, Text, Null };
    Kind kind = Kind::Null;
    std::string text; // preformatted for numbers

    static Cell number(double v);
    static Cell str(std::string s);
    static Cell null();
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells);
};

std::string format_double(double v); // %.17g

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

// Writes via a temporary file in the same directory and renames into place,
// so a failed run never leaves a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace vqlm
