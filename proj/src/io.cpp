// io.cpp — CSV/JSON writers and the flat JSON config reader

#include "becspec/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace becspec::io {

std::string fmt_sci(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.8e", v);
    return buf;
}

namespace {

std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<double>(c)) return fmt_sci(std::get<double>(c));
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

nlohmann::json cell_to_json(const Cell& c) {
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
    return std::get<std::string>(c);
}

} // namespace

void write_csv(std::ostream& os, const Table& t) {
    for (const auto& [key, value] : t.meta) os << "# " << key << "=" << value << "\n";
    for (const auto& note : t.notes) os << "# note " << note << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "");
    }
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << cell_to_string(row[i]) << (i + 1 < row.size() ? "," : "");
        }
        os << "\n";
    }
}

void write_json(std::ostream& os, const Table& t) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta;
    for (const auto& [key, value] : t.meta) meta[key] = value;
    doc["meta"] = meta;
    if (!t.notes.empty()) doc["notes"] = t.notes;
    doc["columns"] = t.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_to_json(row[i]);
        rows.push_back(obj);
    }
    doc["rows"] = rows;
    os << doc.dump(2) << "\n";
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config: invalid JSON in " + path + ": " + e.what());
    }
    if (doc.contains("meta") && doc["meta"].is_object()) doc = doc["meta"];
    if (!doc.is_object()) {
        throw std::invalid_argument("config: expected a flat JSON object in " + path);
    }
    std::map<std::string, std::string> out;
    for (const auto& [key, value] : doc.items()) {
        if (value.is_string()) {
            out[key] = value.get<std::string>();
        } else if (value.is_boolean()) {
            out[key] = value.get<bool>() ? "1" : "0";
        } else if (value.is_number_integer()) {
            out[key] = std::to_string(value.get<long long>());
        } else if (value.is_number()) {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "%.17g", value.get<double>());
            out[key] = buf;
        } else {
            throw std::invalid_argument("config: key '" + key + "' must be scalar");
        }
    }
    return out;
}

} // namespace becspec::io
