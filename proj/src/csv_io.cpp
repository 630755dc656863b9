#include "gsvm/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace gsvm {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

bool parse_number(const std::string& field, double& value) {
    const char* first = field.data();
    const char* last = first + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc() && ptr == last && !field.empty();
}

[[noreturn]] void row_error(int row, const std::string& what) {
    fail("csv_parse", "row " + std::to_string(row) + ": " + what);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

DataSet parse_dataset_csv(std::istream& in) {
    std::vector<LabeledPoint> points;
    Index dim = -1;
    std::string line;
    int row = 0;
    bool first_content_line = true;

    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;

        const std::vector<std::string> fields = split_fields(line);

        if (first_content_line) {
            first_content_line = false;
            double probe;
            if (!parse_number(fields.front(), probe)) continue;  // header row
        }

        if (fields.size() < 2) row_error(row, "expected features and a label column");
        if (dim < 0) {
            dim = static_cast<Index>(fields.size()) - 1;
        } else if (static_cast<Index>(fields.size()) - 1 != dim) {
            row_error(row, "ragged row: expected " + std::to_string(dim + 1) + " fields, got " +
                               std::to_string(fields.size()));
        }

        Vector x(dim);
        for (Index i = 0; i < dim; ++i) {
            if (!parse_number(fields[i], x[i])) {
                row_error(row, "non-numeric feature value '" + fields[i] + "'");
            }
        }

        const std::string& label = fields.back();
        int y;
        if (label == "1") {
            y = 1;
        } else if (label == "-1") {
            y = -1;
        } else {
            row_error(row, "invalid label '" + label + "' (must be 1 or -1)");
        }
        points.emplace_back(std::move(x), y);
    }

    if (points.empty()) fail("csv_parse", "no data rows found");
    return DataSet(std::move(points));
}

DataSet parse_dataset_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("io", "cannot open '" + path + "' for reading");
    return parse_dataset_csv(in);
}

void serialize_dataset_csv(const DataSet& ds, std::ostream& out) {
    for (const auto& p : ds.points) {
        for (Index i = 0; i < p.x.size(); ++i) out << format_double(p.x[i]) << ',';
        out << p.y << '\n';
    }
}

std::string dataset_to_csv(const DataSet& ds) {
    std::ostringstream os;
    serialize_dataset_csv(ds, os);
    return os.str();
}

}  // namespace gsvm
