#include "objloc/sim/log_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "objloc/errors.hpp"
#include "text_format.hpp"

namespace objloc::sim {

using detail::format_double;
using detail::parse_double;
using detail::parse_int;

namespace {

constexpr std::string_view kMagic = "OBJLOC_LOG";

void put_pose(std::ostream& os, const Pose2& p) {
    os << ' ' << format_double(p.x()) << ' ' << format_double(p.y()) << ' ' << format_double(p.theta());
}

Pose2 take_pose(const std::vector<std::string_view>& f, std::size_t first, std::size_t line_no) {
    return {parse_double(f[first], line_no), parse_double(f[first + 1], line_no),
            parse_double(f[first + 2], line_no)};
}

void expect_fields(const std::vector<std::string_view>& f, std::size_t n, std::size_t line_no) {
    if (f.size() != n) {
        throw ParseError(line_no, std::string(f.front()) + " record expects " + std::to_string(n - 1) +
                                      " fields, got " + std::to_string(f.size() - 1));
    }
}

}  // namespace

void write_log(std::ostream& os, const SensorLog& log) {
    os << kMagic << " 1\n";
    os << "META " << log.ticks << ' ' << format_double(log.dt) << '\n';
    os << "INIT";
    put_pose(os, log.robot_initial);
    put_pose(os, log.object_initial);
    os << '\n';

    std::size_t gt = 0, ro = 0, oo = 0, uwb = 0, scan = 0;
    for (std::size_t i = 0; i < log.ticks; ++i) {
        const auto t = static_cast<Tick>(i);
        for (; gt < log.truth.size() && log.truth[gt].t == t; ++gt) {
            os << "GT " << t;
            put_pose(os, log.truth[gt].robot);
            put_pose(os, log.truth[gt].object);
            os << '\n';
        }
        for (; ro < log.robot_odometry.size() && log.robot_odometry[ro].t == t; ++ro) {
            os << "ODOM_R " << t;
            put_pose(os, log.robot_odometry[ro].delta);
            os << '\n';
        }
        for (; oo < log.object_odometry.size() && log.object_odometry[oo].t == t; ++oo) {
            os << "ODOM_O " << t;
            put_pose(os, log.object_odometry[oo].delta);
            os << '\n';
        }
        for (; uwb < log.ranges.size() && log.ranges[uwb].t == t; ++uwb) {
            os << "UWB " << t << ' ' << format_double(log.ranges[uwb].range) << ' ' << (log.ranges[uwb].los ? 1 : 0)
               << '\n';
        }
        for (; scan < log.scans.size() && log.scans[scan].t == t; ++scan) {
            const auto& pts = log.scans[scan].points;
            os << "SCAN " << t << ' ' << pts.size();
            for (const auto& p : pts) {
                os << ' ' << format_double(p.x()) << ' ' << format_double(p.y());
            }
            os << '\n';
        }
    }
}

SensorLog read_log(std::istream& is) {
    SensorLog log;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    bool saw_meta = false;

    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto f = detail::split_fields(line);
        if (f.empty()) {
            continue;
        }
        const std::string_view tag = f.front();
        if (!saw_header) {
            if (tag != kMagic || f.size() != 2 || f[1] != "1") {
                throw ParseError(line_no, "missing OBJLOC_LOG 1 header");
            }
            saw_header = true;
            continue;
        }
        if (tag == "META") {
            expect_fields(f, 3, line_no);
            const auto ticks = parse_int(f[1], line_no);
            if (ticks < 0) throw ParseError(line_no, "negative tick count");
            log.ticks = static_cast<std::size_t>(ticks);
            log.dt = parse_double(f[2], line_no);
            saw_meta = true;
        } else if (tag == "INIT") {
            expect_fields(f, 7, line_no);
            log.robot_initial = take_pose(f, 1, line_no);
            log.object_initial = take_pose(f, 4, line_no);
        } else if (tag == "GT") {
            expect_fields(f, 8, line_no);
            log.truth.push_back({parse_int(f[1], line_no), take_pose(f, 2, line_no), take_pose(f, 5, line_no)});
        } else if (tag == "ODOM_R" || tag == "ODOM_O") {
            expect_fields(f, 5, line_no);
            OdomIncrement inc{parse_int(f[1], line_no), take_pose(f, 2, line_no)};
            (tag == "ODOM_R" ? log.robot_odometry : log.object_odometry).push_back(inc);
        } else if (tag == "UWB") {
            expect_fields(f, 4, line_no);
            const auto los = parse_int(f[3], line_no);
            if (los != 0 && los != 1) throw ParseError(line_no, "los flag must be 0 or 1");
            log.ranges.push_back({parse_int(f[1], line_no), parse_double(f[2], line_no), los == 1});
        } else if (tag == "SCAN") {
            if (f.size() < 3) throw ParseError(line_no, "SCAN record too short");
            const auto n = parse_int(f[2], line_no);
            if (n < 0 || f.size() != 3 + 2 * static_cast<std::size_t>(n)) {
                throw ParseError(line_no, "SCAN point count does not match payload");
            }
            PointCloud cloud;
            cloud.t = parse_int(f[1], line_no);
            cloud.points.reserve(static_cast<std::size_t>(n));
            for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
                cloud.points.emplace_back(parse_double(f[3 + 2 * k], line_no), parse_double(f[4 + 2 * k], line_no));
            }
            log.scans.push_back(std::move(cloud));
        } else {
            throw ParseError(line_no, "unknown record type '" + std::string(tag) + "'");
        }
    }
    if (!saw_header || !saw_meta) {
        throw ParseError(line_no, "log is missing its header or META record");
    }
    return log;
}

void save_log(const std::filesystem::path& path, const SensorLog& log) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    write_log(os, log);
    if (!os) {
        throw IoError("failed writing " + path.string());
    }
}

SensorLog load_log(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw IoError("cannot open " + path.string());
    }
    return read_log(is);
}

}  // namespace objloc::sim
