#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace buckling::cli {

enum class Format { dat, csv, json };

using Cell = std::variant<double, std::int64_t, std::string, bool>;

// Named columns with rows, plus optional metadata rendered as comment lines
// (dat, csv) or as a sibling object (json).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> meta;
    bool header_in_dat = true;
};

std::string format_real(double x);
std::string format_cell(const Cell& c);

// dat: whitespace separated, optional "# " header; csv: header row;
// json: {"schema_version":"1","command":...,"meta":{...},"records":[...]},
// reals printed with 17 significant digits in every format.
void write_table(std::ostream& os, const Table& t, Format f, const std::string& command);

// Single record: dat renders one "key value" pair per line.
void write_record(std::ostream& os, const std::vector<std::pair<std::string, Cell>>& fields,
                  Format f, const std::string& command);

}  // namespace buckling::cli
