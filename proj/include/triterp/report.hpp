#pragma once

#include <nlohmann/json.hpp>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace triterp::report {

/// Fixed float formatting shared by every emitter: 17 significant digits,
/// '.' decimal separator, so identical inputs produce identical bytes.
std::string fmt17(double v);

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

void write_csv(const Table& t, std::ostream& os);

/// Serialize a JSON summary with sorted keys and '\n' line endings.
void write_json(const nlohmann::json& j, std::ostream& os);

/// Route either format to a file, or to the given stream when path is "-".
enum class Format { Csv, Json };
void write_report(const Table& t, const std::string& path, Format f,
                  std::ostream& fallback);

nlohmann::json table_json(const Table& t);

} // namespace triterp::report
