// io.hpp — deterministic CSV/JSON emission with embedded regeneration metadata

#pragma once

#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace becspec::io {

// Scientific notation, 9 significant digits, locale-independent.
std::string fmt_sci(double v);

using Cell = std::variant<double, long long, std::string>;

struct Table {
    // Regeneration metadata, emitted as "# key=value" lines (CSV) or a
    // "meta" object (JSON). Insertion order preserved.
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    // Free-form notes (skipped rows etc.), emitted as comments / "notes".
    std::vector<std::string> notes;
};

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);

// Flat key -> string map parsed from a JSON config document. Accepts either a
// flat object or a full tool output whose "meta" object is then used; scalar
// values are stringified.
std::map<std::string, std::string> read_config(const std::string& path);

} // namespace becspec::io
