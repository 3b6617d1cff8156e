#ifndef SEMSANS_CSV_IO_HPP
#define SEMSANS_CSV_IO_HPP

#include <string>
#include <vector>

namespace semsans {

/// Deterministic CSV table: '#'-prefixed comment header (config hash, column
/// units), comma-separated data, LF endings, 17 significant digits.
struct CsvTable {
    std::vector<std::string> comments;  // without the leading "# "
    std::vector<std::string> columns;   // "name [unit]"
    std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);
std::string format_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);

}  // namespace semsans

#endif
