#include "fdscat/error.hpp"
#include "fdscat/phase_shifts.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace fdscat
{

namespace
{

std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, int line, const std::string& field)
{
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError(line, field, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

std::string format_table(const PhaseShiftTable& table)
{
    std::string out = "k: " + format_number(table.k) + "\n";
    out += "a_eff: " + format_number(table.a_eff) + "\n";
    out += "shifts: [";
    for (std::size_t i = 0; i < table.shifts.size(); ++i) {
        if (i) out += ", ";
        out += format_number(table.shifts[i]);
    }
    out += "]\n";
    return out;
}

PhaseShiftTable parse_table(std::string_view text)
{
    std::optional<double> k, a_eff;
    std::optional<std::vector<double>> shifts;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(line_no, "", "expected 'key: value'");
        const std::string key(trim(line.substr(0, colon)));
        const std::string_view value = trim(line.substr(colon + 1));

        if (key == "k" || key == "a_eff") {
            auto& slot = key == "k" ? k : a_eff;
            if (slot) throw ParseError(line_no, key, "duplicate field");
            slot = parse_number(value, line_no, key);
        } else if (key == "shifts") {
            if (shifts) throw ParseError(line_no, key, "duplicate field");
            if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
                throw ParseError(line_no, key, "expected a bracketed array [x, y, ...]");
            }
            std::string_view body = trim(value.substr(1, value.size() - 2));
            std::vector<double> values;
            while (!body.empty()) {
                const auto comma = body.find(',');
                values.push_back(parse_number(body.substr(0, comma), line_no, key));
                if (comma == std::string_view::npos) break;
                body = body.substr(comma + 1);
                if (trim(body).empty()) throw ParseError(line_no, key, "trailing comma");
            }
            shifts = std::move(values);
        } else {
            throw ParseError(line_no, key, "unknown field");
        }
    }
    if (!k) throw ParseError(line_no, "k", "missing field");
    if (!a_eff) throw ParseError(line_no, "a_eff", "missing field");
    if (!shifts) throw ParseError(line_no, "shifts", "missing field");

    PhaseShiftTable table{*k, *a_eff, std::move(*shifts)};
    table.validate();
    return table;
}

void write_table(const std::filesystem::path& path, const PhaseShiftTable& table)
{
    table.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << format_table(table);
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

PhaseShiftTable read_table(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_table(buf.str());
}

} // namespace fdscat
