#include "objloc/eval/report_io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "objloc/errors.hpp"
#include "text_format.hpp"

namespace objloc::eval {

using detail::format_double;
using detail::parse_double;
using detail::parse_int;
using json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kColumns = "trans_error_m,rot_error_rad";
constexpr const char* kStats[] = {"mean", "std", "max"};

std::pair<double, double> stat_pair(const ErrorReport& r, std::string_view stat) {
    if (stat == "mean") return {r.trans.mean, r.rot.mean};
    if (stat == "std") return {r.trans.std, r.rot.std};
    return {r.trans.max, r.rot.max};
}

void set_stat(ErrorReport& r, std::string_view stat, double trans, double rot, std::size_t line_no) {
    if (stat == "mean") {
        r.trans.mean = trans;
        r.rot.mean = rot;
    } else if (stat == "std") {
        r.trans.std = trans;
        r.rot.std = rot;
    } else if (stat == "max") {
        r.trans.max = trans;
        r.rot.max = rot;
    } else {
        throw ParseError(line_no, "unknown statistic '" + std::string(stat) + "'");
    }
}

void push_tick(ErrorReport& r, std::int64_t tick, double trans, double rot, std::size_t line_no) {
    if (tick != static_cast<std::int64_t>(r.trans_error.size())) {
        throw ParseError(line_no, "tick " + std::to_string(tick) + " out of sequence");
    }
    r.trans_error.push_back(trans);
    r.rot_error.push_back(rot);
}

json parse_json_line(const std::string& line, std::size_t line_no) {
    try {
        return json::parse(line);
    } catch (const json::exception& ex) {
        throw ParseError(line_no, ex.what());
    }
}

template <typename T>
T field(const json& j, const char* key, std::size_t line_no) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& ex) {
        throw ParseError(line_no, std::string("field '") + key + "': " + ex.what());
    }
}

SweepParameter parameter_from_string(std::string_view s, std::size_t line_no) {
    if (s == "vartheta") return SweepParameter::vartheta;
    if (s == "omega") return SweepParameter::omega;
    throw ParseError(line_no, "unknown sweep parameter '" + std::string(s) + "'");
}

json stats_json(const SeriesStats& s) { return json{{"mean", s.mean}, {"std", s.std}, {"max", s.max}}; }

SeriesStats stats_from_json(const json& j, std::size_t line_no) {
    return {field<double>(j, "mean", line_no), field<double>(j, "std", line_no), field<double>(j, "max", line_no)};
}

// --- report ---

void write_report_csv(std::ostream& os, const ErrorReport& r) {
    os << "tick," << kColumns << '\n';
    for (std::size_t i = 0; i < r.ticks(); ++i) {
        os << i << ',' << format_double(r.trans_error[i]) << ',' << format_double(r.rot_error[i]) << '\n';
    }
    os << "#summary\n";
    os << "stat," << kColumns << '\n';
    for (const char* stat : kStats) {
        const auto [t, q] = stat_pair(r, stat);
        os << stat << ',' << format_double(t) << ',' << format_double(q) << '\n';
    }
}

ErrorReport read_report_csv(std::istream& is) {
    ErrorReport r;
    std::string line;
    std::size_t line_no = 0;
    bool summary = false;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line == "#summary") {
            summary = true;
            header_seen = false;
            continue;
        }
        const auto f = detail::split_fields(line, ',');
        if (!header_seen) {
            const std::string expected = std::string(summary ? "stat," : "tick,") + std::string(kColumns);
            if (line != expected) throw ParseError(line_no, "expected header '" + expected + "'");
            header_seen = true;
            continue;
        }
        if (f.size() != 3) throw ParseError(line_no, "expected 3 columns");
        const double trans = parse_double(f[1], line_no);
        const double rot = parse_double(f[2], line_no);
        if (summary) {
            set_stat(r, f[0], trans, rot, line_no);
        } else {
            push_tick(r, parse_int(f[0], line_no), trans, rot, line_no);
        }
    }
    if (!header_seen && !summary) throw ParseError(line_no, "missing header");
    return r;
}

void write_report_jsonl(std::ostream& os, const ErrorReport& r) {
    for (std::size_t i = 0; i < r.ticks(); ++i) {
        os << json{{"tick", i}, {"trans_error_m", r.trans_error[i]}, {"rot_error_rad", r.rot_error[i]}}.dump()
           << '\n';
    }
    for (const char* stat : kStats) {
        const auto [t, q] = stat_pair(r, stat);
        os << json{{"stat", stat}, {"trans_error_m", t}, {"rot_error_rad", q}}.dump() << '\n';
    }
}

ErrorReport read_report_jsonl(std::istream& is) {
    ErrorReport r;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        const json j = parse_json_line(line, line_no);
        const double trans = field<double>(j, "trans_error_m", line_no);
        const double rot = field<double>(j, "rot_error_rad", line_no);
        if (j.contains("stat")) {
            set_stat(r, field<std::string>(j, "stat", line_no), trans, rot, line_no);
        } else {
            push_tick(r, field<std::int64_t>(j, "tick", line_no), trans, rot, line_no);
        }
    }
    return r;
}

// --- sweep ---

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
    const std::string_view name = to_string(table.parameter);
    os << name << ",tick," << kColumns << '\n';
    for (const auto& row : table.rows) {
        const std::string v = format_double(row.value);
        for (std::size_t i = 0; i < row.report.ticks(); ++i) {
            os << v << ',' << i << ',' << format_double(row.report.trans_error[i]) << ','
               << format_double(row.report.rot_error[i]) << '\n';
        }
    }
    os << "#summary\n";
    os << name << ",stat," << kColumns << '\n';
    for (const auto& row : table.rows) {
        const std::string v = format_double(row.value);
        for (const char* stat : kStats) {
            const auto [t, q] = stat_pair(row.report, stat);
            os << v << ',' << stat << ',' << format_double(t) << ',' << format_double(q) << '\n';
        }
    }
}

SweepTable read_sweep_csv(std::istream& is) {
    SweepTable table;
    std::string line;
    std::size_t line_no = 0;
    bool summary = false;
    bool header_seen = false;
    auto row_for = [&](double value, std::size_t ln) -> SweepRow& {
        for (auto& row : table.rows) {
            if (row.value == value) return row;
        }
        if (summary) throw ParseError(ln, "summary for a value without per-tick rows");
        table.rows.push_back({value, {}});
        return table.rows.back();
    };
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line == "#summary") {
            summary = true;
            header_seen = false;
            continue;
        }
        const auto f = detail::split_fields(line, ',');
        if (!header_seen) {
            if (f.size() != 4 || f[1] != (summary ? "stat" : "tick") || f[2] != "trans_error_m" ||
                f[3] != "rot_error_rad") {
                throw ParseError(line_no, "malformed sweep header");
            }
            table.parameter = parameter_from_string(f[0], line_no);
            header_seen = true;
            continue;
        }
        if (f.size() != 4) throw ParseError(line_no, "expected 4 columns");
        SweepRow& row = row_for(parse_double(f[0], line_no), line_no);
        const double trans = parse_double(f[2], line_no);
        const double rot = parse_double(f[3], line_no);
        if (summary) {
            set_stat(row.report, f[1], trans, rot, line_no);
        } else {
            push_tick(row.report, parse_int(f[1], line_no), trans, rot, line_no);
        }
    }
    if (!header_seen && !summary) throw ParseError(line_no, "missing header");
    return table;
}

void write_sweep_jsonl(std::ostream& os, const SweepTable& table) {
    const std::string name(to_string(table.parameter));
    os << json{{"parameter", name}}.dump() << '\n';
    for (const auto& row : table.rows) {
        json j;
        j[name] = row.value;
        j["trans_error_m"] = row.report.trans_error;
        j["rot_error_rad"] = row.report.rot_error;
        j["trans"] = stats_json(row.report.trans);
        j["rot"] = stats_json(row.report.rot);
        os << j.dump() << '\n';
    }
}

SweepTable read_sweep_jsonl(std::istream& is) {
    SweepTable table;
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::string> name;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        const json j = parse_json_line(line, line_no);
        if (!name) {
            name = field<std::string>(j, "parameter", line_no);
            table.parameter = parameter_from_string(*name, line_no);
            continue;
        }
        SweepRow row;
        row.value = field<double>(j, name->c_str(), line_no);
        row.report.trans_error = field<std::vector<double>>(j, "trans_error_m", line_no);
        row.report.rot_error = field<std::vector<double>>(j, "rot_error_rad", line_no);
        if (row.report.trans_error.size() != row.report.rot_error.size()) {
            throw ParseError(line_no, "series lengths differ");
        }
        row.report.trans = stats_from_json(field<json>(j, "trans", line_no), line_no);
        row.report.rot = stats_from_json(field<json>(j, "rot", line_no), line_no);
        table.rows.push_back(std::move(row));
    }
    if (!name) throw ParseError(line_no, "missing parameter line");
    return table;
}

template <typename Fn>
void save_with(const std::filesystem::path& path, Fn&& write) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    write(os);
    os.flush();
    if (!os) throw IoError("failed writing " + path.string());
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    return is;
}

}  // namespace

std::string_view to_string(Format f) noexcept { return f == Format::csv ? "csv" : "jsonl"; }

std::optional<Format> format_from_string(std::string_view s) noexcept {
    if (s == "csv") return Format::csv;
    if (s == "jsonl" || s == "json-lines") return Format::jsonl;
    return std::nullopt;
}

void write_report(std::ostream& os, const ErrorReport& report, Format format) {
    format == Format::csv ? write_report_csv(os, report) : write_report_jsonl(os, report);
}

ErrorReport read_report(std::istream& is, Format format) {
    return format == Format::csv ? read_report_csv(is) : read_report_jsonl(is);
}

void write_sweep(std::ostream& os, const SweepTable& table, Format format) {
    format == Format::csv ? write_sweep_csv(os, table) : write_sweep_jsonl(os, table);
}

SweepTable read_sweep(std::istream& is, Format format) {
    return format == Format::csv ? read_sweep_csv(is) : read_sweep_jsonl(is);
}

void save_report(const std::filesystem::path& path, const ErrorReport& report, Format format) {
    save_with(path, [&](std::ostream& os) { write_report(os, report, format); });
}

void save_sweep(const std::filesystem::path& path, const SweepTable& table, Format format) {
    save_with(path, [&](std::ostream& os) { write_sweep(os, table, format); });
}

ErrorReport load_report(const std::filesystem::path& path, Format format) {
    auto is = open_for_read(path);
    return read_report(is, format);
}

SweepTable load_sweep(const std::filesystem::path& path, Format format) {
    auto is = open_for_read(path);
    return read_sweep(is, format);
}

}  // namespace objloc::eval
