#include "tsboot/config.hpp"

#include "tsboot/csv.hpp"
#include "tsboot/error.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

namespace tsboot {

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& message) {
    throw Error(ErrorCode::MalformedConfig,
                "config line " + std::to_string(line) + ": " + message);
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct RawValue {
    std::string text;
    bool quoted = false;
    std::size_t line = 0;
};

using Section = std::map<std::string, RawValue>;

bool is_auto(const RawValue& v) { return v.text == "auto" || v.text == "Auto"; }

std::size_t parse_positive(const RawValue& v, const std::string& key) {
    std::size_t out = 0;
    const char* first = v.text.data();
    const char* last = first + v.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (v.quoted || ec != std::errc() || ptr != last) {
        malformed(v.line, key + " expects a positive integer, got '" + v.text + "'");
    }
    if (out == 0) malformed(v.line, key + " must be positive");
    return out;
}

double parse_real(const RawValue& v, const std::string& key) {
    double out = 0.0;
    const char* first = v.text.data();
    const char* last = first + v.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (v.quoted || ec != std::errc() || ptr != last) {
        malformed(v.line, key + " expects a real number, got '" + v.text + "'");
    }
    return out;
}

std::optional<std::size_t> parse_optional_count(const RawValue& v, const std::string& key) {
    if (is_auto(v)) return std::nullopt;
    return parse_positive(v, key);
}

template <typename F>
auto parse_name(const RawValue& v, F&& parser) {
    try {
        return parser(v.text);
    } catch (const Error& e) {
        malformed(v.line, e.what());
    }
}

ResamplerSpec build_spec(const Section& section, std::size_t section_line) {
    static const std::set<std::string> known = {
        "method", "block_length", "geometric_p", "window", "tukey_alpha", "ar_order",
        "max_ar_order", "distribution", "statistic", "n_states"};
    for (const auto& [key, value] : section) {
        if (!known.contains(key)) malformed(value.line, "unknown key '" + key + "'");
    }
    ResamplerSpec spec;
    const auto find = [&](const char* key) -> const RawValue* {
        const auto it = section.find(key);
        return it == section.end() ? nullptr : &it->second;
    };
    if (const auto* v = find("method")) {
        spec.method = parse_name(*v, parse_method);
    } else {
        malformed(section_line, "missing required key 'method'");
    }
    if (const auto* v = find("block_length")) spec.block_length = parse_positive(*v, "block_length");
    if (const auto* v = find("geometric_p")) {
        if (!is_auto(*v)) {
            const double p = parse_real(*v, "geometric_p");
            if (!(p > 0.0 && p <= 1.0)) malformed(v->line, "geometric_p must lie in (0, 1]");
            spec.geometric_p = p;
        }
    }
    if (const auto* v = find("window")) spec.window = parse_name(*v, parse_window);
    if (const auto* v = find("tukey_alpha")) {
        const double a = parse_real(*v, "tukey_alpha");
        if (!(a >= 0.0 && a <= 1.0)) malformed(v->line, "tukey_alpha must lie in [0, 1]");
        spec.tukey_alpha = a;
    }
    if (const auto* v = find("ar_order")) spec.ar_order = parse_optional_count(*v, "ar_order");
    if (const auto* v = find("max_ar_order")) {
        spec.max_ar_order = parse_optional_count(*v, "max_ar_order");
    }
    if (const auto* v = find("distribution")) spec.distribution = parse_name(*v, parse_distribution);
    if (const auto* v = find("statistic")) spec.statistic = parse_name(*v, parse_statistic);
    if (const auto* v = find("n_states")) spec.n_states = parse_optional_count(*v, "n_states");
    return spec;
}

void write_fields(std::ostringstream& out, const ResamplerSpec& spec) {
    out << "method = \"" << to_string(spec.method) << "\"\n";
    out << "block_length = " << spec.block_length << "\n";
    if (spec.geometric_p) out << "geometric_p = " << format_real(*spec.geometric_p) << "\n";
    out << "window = \"" << to_string(spec.window) << "\"\n";
    out << "tukey_alpha = " << format_real(spec.tukey_alpha) << "\n";
    if (spec.ar_order) {
        out << "ar_order = " << *spec.ar_order << "\n";
    } else {
        out << "ar_order = \"auto\"\n";
    }
    if (spec.max_ar_order) out << "max_ar_order = " << *spec.max_ar_order << "\n";
    out << "distribution = \"" << to_string(spec.distribution) << "\"\n";
    out << "statistic = \"" << to_string(spec.statistic) << "\"\n";
    if (spec.n_states) out << "n_states = " << *spec.n_states << "\n";
}

}  // namespace

std::string to_config_text(const ResamplerSpec& spec) {
    std::ostringstream out;
    write_fields(out, spec);
    if (spec.inner) {
        if (spec.inner->inner) {
            throw Error(ErrorCode::InvalidSpec, "inner resamplers cannot be nested further");
        }
        out << "\n[inner]\n";
        write_fields(out, *spec.inner);
    }
    return out.str();
}

ResamplerSpec parse_config(std::string_view text, bool normalize) {
    Section top;
    Section inner;
    bool has_inner = false;
    std::size_t inner_line = 0;
    Section* current = &top;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? text.size() - pos
                                                                                : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        // Comments start at an unquoted '#'.
        bool in_quotes = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_quotes = !in_quotes;
            if (line[i] == '#' && !in_quotes) {
                line = line.substr(0, i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') malformed(line_no, "unterminated section header");
            const auto name = trim(line.substr(1, line.size() - 2));
            if (name != "inner") malformed(line_no, "unknown section '" + std::string(name) + "'");
            if (has_inner) malformed(line_no, "duplicate [inner] section");
            has_inner = true;
            inner_line = line_no;
            current = &inner;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) malformed(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        std::string_view raw = trim(line.substr(eq + 1));
        if (key.empty()) malformed(line_no, "missing key");
        if (raw.empty()) malformed(line_no, "missing value for '" + key + "'");

        RawValue value;
        value.line = line_no;
        if (raw.front() == '"') {
            if (raw.size() < 2 || raw.back() != '"') malformed(line_no, "unterminated string");
            value.text = std::string(raw.substr(1, raw.size() - 2));
            value.quoted = true;
        } else {
            value.text = std::string(raw);
        }
        if (!current->emplace(key, std::move(value)).second) {
            malformed(line_no, "duplicate key '" + key + "'");
        }
    }

    ResamplerSpec spec = build_spec(top, 1);
    if (has_inner) {
        spec.inner = std::make_shared<const ResamplerSpec>(build_spec(inner, inner_line));
    }
    if (!normalize) return spec;
    try {
        return normalize_spec(std::move(spec));
    } catch (const Error& e) {
        throw Error(ErrorCode::MalformedConfig, e.what());
    }
}

ResamplerSpec spec_params_roundtrip(const ResamplerSpec& spec) {
    return parse_config(to_config_text(spec));
}

nlohmann::json spec_to_json(const ResamplerSpec& spec) {
    nlohmann::json j;
    j["method"] = std::string(to_string(spec.method));
    j["block_length"] = spec.block_length;
    if (spec.geometric_p) j["geometric_p"] = *spec.geometric_p;
    j["window"] = std::string(to_string(spec.window));
    j["tukey_alpha"] = spec.tukey_alpha;
    if (spec.ar_order) {
        j["ar_order"] = *spec.ar_order;
    } else {
        j["ar_order"] = "auto";
    }
    if (spec.max_ar_order) j["max_ar_order"] = *spec.max_ar_order;
    j["distribution"] = std::string(to_string(spec.distribution));
    j["statistic"] = std::string(to_string(spec.statistic));
    if (spec.n_states) j["n_states"] = *spec.n_states;
    if (spec.inner) j["inner"] = spec_to_json(*spec.inner);
    return j;
}

}  // namespace tsboot
