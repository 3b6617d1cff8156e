#include "semsans/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "semsans/errors.hpp"

namespace semsans {

std::string format_csv(const CsvTable& table) {
    std::string out;
    for (const auto& c : table.comments) {
        out += "# ";
        out += c;
        out += '\n';
    }
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    char buf[64];
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
    if (!out)
        throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
    out << format_csv(table);
    if (!out)
        throw Error(ErrorCode::IoError, "write failed for '" + path + "'");
}

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool have_columns = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            size_t b = line.find_first_not_of("# ");
            t.comments.push_back(b == std::string::npos ? "" : line.substr(b));
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!have_columns) {
            t.columns = cells;
            have_columns = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            try {
                row.push_back(std::stod(c));
            } catch (const std::exception&) {
                throw Error(ErrorCode::ParseError, "bad CSV number '" + c + "'");
            }
        }
        if (row.size() != t.columns.size())
            throw Error(ErrorCode::ParseError, "CSV row width mismatch");
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

}  // namespace semsans
