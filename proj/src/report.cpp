#include "triterp/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace triterp::report {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    std::string s(buf);
    // guard against a non-'.' decimal separator leaking in from the locale
    for (char& c : s)
        if (c == ',') c = '.';
    return s;
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != header.size())
        throw std::invalid_argument("table row width mismatch");
    rows.push_back(std::move(row));
}

namespace {

std::string cell_text(const Cell& c) {
    if (std::holds_alternative<double>(c)) return fmt17(std::get<double>(c));
    if (std::holds_alternative<long long>(c))
        return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

} // namespace

void write_csv(const Table& t, std::ostream& os) {
    for (size_t i = 0; i < t.header.size(); ++i)
        os << (i ? "," : "") << t.header[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << cell_text(row[i]);
        os << '\n';
    }
}

void write_json(const nlohmann::json& j, std::ostream& os) {
    os << j.dump(2) << '\n';
}

nlohmann::json table_json(const Table& t) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json obj;
        for (size_t i = 0; i < row.size(); ++i) {
            const Cell& c = row[i];
            if (std::holds_alternative<double>(c))
                obj[t.header[i]] = std::get<double>(c);
            else if (std::holds_alternative<long long>(c))
                obj[t.header[i]] = std::get<long long>(c);
            else
                obj[t.header[i]] = std::get<std::string>(c);
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

void write_report(const Table& t, const std::string& path, Format f,
                  std::ostream& fallback) {
    auto emit = [&](std::ostream& os) {
        if (f == Format::Csv)
            write_csv(t, os);
        else
            write_json(table_json(t), os);
    };
    if (path == "-" || path.empty()) {
        emit(fallback);
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    emit(os);
}

} // namespace triterp::report
