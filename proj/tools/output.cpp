#include "output.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace buckling::cli {

namespace {

constexpr const char* kSchemaVersion = "1";

template <class... Ts>
struct Overload : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

// Reals keep the fixed 17-digit form; non-finite values become null.
std::string json_cell(const Cell& c) {
    return std::visit(Overload{[](double x) { return std::isfinite(x) ? format_real(x) : std::string("null"); },
                               [](std::int64_t x) { return std::to_string(x); },
                               [](const std::string& s) { return json_string(s); },
                               [](bool b) { return std::string(b ? "true" : "false"); }},
                      c);
}

void json_object(std::ostream& os, const std::vector<std::string>& keys, const std::vector<Cell>& values,
                 const char* indent) {
    os << "{";
    for (std::size_t i = 0; i < keys.size(); ++i)
        os << (i ? "," : "") << '\n' << indent << "  " << json_string(keys[i]) << ": " << json_cell(values[i]);
    os << '\n' << indent << "}";
}

}  // namespace

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_cell(const Cell& c) {
    return std::visit(Overload{[](double x) { return format_real(x); },
                               [](std::int64_t x) { return std::to_string(x); },
                               [](const std::string& s) { return s; },
                               [](bool b) { return std::string(b ? "true" : "false"); }},
                      c);
}

void write_table(std::ostream& os, const Table& t, Format f, const std::string& command) {
    if (f == Format::json) {
        os << "{\n  \"schema_version\": " << json_string(kSchemaVersion) << ",\n  \"command\": "
           << json_string(command) << ",\n";
        if (!t.meta.empty()) {
            std::vector<std::string> keys;
            std::vector<Cell> values;
            for (const auto& [k, v] : t.meta) {
                keys.push_back(k);
                values.push_back(v);
            }
            os << "  \"meta\": ";
            json_object(os, keys, values, "  ");
            os << ",\n";
        }
        os << "  \"records\": [";
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            os << (i ? ",\n    " : "\n    ");
            json_object(os, t.columns, t.rows[i], "    ");
        }
        os << (t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
        return;
    }
    for (const auto& [k, v] : t.meta) os << "# " << k << '=' << format_cell(v) << '\n';
    const char* sep = (f == Format::csv) ? "," : " ";
    if (f == Format::csv || t.header_in_dat) {
        if (f == Format::dat) os << "# ";
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? sep : "") << t.columns[i];
        os << '\n';
    }
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? sep : "") << format_cell(row[i]);
        os << '\n';
    }
}

void write_record(std::ostream& os, const std::vector<std::pair<std::string, Cell>>& fields,
                  Format f, const std::string& command) {
    if (f == Format::dat) {
        for (const auto& [k, v] : fields) os << k << ' ' << format_cell(v) << '\n';
        return;
    }
    Table t;
    std::vector<Cell> row;
    for (const auto& [k, v] : fields) {
        t.columns.push_back(k);
        row.push_back(v);
    }
    t.rows.push_back(std::move(row));
    write_table(os, t, f, command);
}

}  // namespace buckling::cli
