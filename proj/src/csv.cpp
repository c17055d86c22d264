#include "tsboot/csv.hpp"

#include "tsboot/error.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace tsboot {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        fields.push_back(trim(line.substr(pos, comma == std::string_view::npos ? line.size() - pos
                                                                              : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return fields;
}

std::optional<double> parse_number(std::string_view field) {
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

TimeSeries parse_csv(std::string_view text) {
    std::vector<std::string> names;
    std::vector<double> data;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::size_t line_no = 0;
    bool first_row = true;

    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto end = text.find('\n', pos);
        const std::string_view line =
            trim(text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos));
        pos = end == std::string_view::npos ? text.size() : end + 1;
        ++line_no;
        if (line.empty()) continue;

        const auto fields = split_fields(line);
        if (first_row) {
            first_row = false;
            cols = fields.size();
            bool numeric = true;
            for (const auto f : fields) numeric = numeric && parse_number(f).has_value();
            if (!numeric) {
                for (const auto f : fields) names.emplace_back(f);
                continue;
            }
        }
        if (fields.size() != cols) {
            throw Error(ErrorCode::InputError, "CSV line " + std::to_string(line_no) + " has " +
                                                   std::to_string(fields.size()) +
                                                   " fields, expected " + std::to_string(cols));
        }
        for (const auto f : fields) {
            const auto value = parse_number(f);
            if (!value) {
                throw Error(ErrorCode::InputError, "CSV line " + std::to_string(line_no) +
                                                       ": cannot parse '" + std::string(f) +
                                                       "' as a number");
            }
            data.push_back(*value);
        }
        ++rows;
    }
    if (cols == 0) cols = 1;
    return TimeSeries(Matrix(rows, cols, std::move(data)), std::move(names));
}

TimeSeries read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InputError, "cannot open input file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str());
}

std::string format_real(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                         std::chars_format::general, 17);
    return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const TimeSeries& series) {
    const std::size_t d = series.channels();
    for (std::size_t c = 0; c < d; ++c) {
        if (c > 0) out << ',';
        out << (series.channel_names().empty() ? "c" + std::to_string(c)
                                               : series.channel_names()[c]);
    }
    out << '\n';
    for (std::size_t t = 0; t < series.length(); ++t) {
        for (std::size_t c = 0; c < d; ++c) {
            if (c > 0) out << ',';
            out << format_real(series(t, c));
        }
        out << '\n';
    }
}

}  // namespace tsboot
