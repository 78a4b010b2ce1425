#include "cardbox/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "cardbox/errors.hpp"

namespace cardbox {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void save_trajectory_csv(std::span<const TrajectoryRow> rows, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write trajectory: " + path.string());
    out << "frame";
    for (std::size_t d = 1; d <= kPostureDof; ++d) out << ",d" << d;
    out << ",cost\n";
    for (const TrajectoryRow& row : rows) {
        out << row.frame;
        for (std::size_t d = 0; d < kPostureDof; ++d)
            out << ',' << format_double(row.posture[d]);
        out << ',' << row.cost << '\n';
    }
    if (!out) throw DataError("short write: " + path.string());
}

std::vector<TrajectoryRow> load_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open trajectory: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("frame,", 0) != 0)
        throw DataError("missing trajectory header: " + path.string());

    std::vector<TrajectoryRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string token;
        std::vector<std::string> tokens;
        while (std::getline(ss, token, ',')) tokens.push_back(token);
        if (tokens.size() != kPostureDof + 2)
            throw DataError("malformed trajectory row: " + line);

        TrajectoryRow row;
        auto parse = [&](const std::string& s, auto& out_value) {
            const auto res = std::from_chars(s.data(), s.data() + s.size(), out_value);
            if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
                throw DataError("malformed trajectory value: " + s);
        };
        parse(tokens[0], row.frame);
        for (std::size_t d = 0; d < kPostureDof; ++d) parse(tokens[d + 1], row.posture[d]);
        parse(tokens[kPostureDof + 1], row.cost);
        rows.push_back(row);
    }
    return rows;
}

void save_joints_csv(std::span<const JointPositions> joints, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write joints: " + path.string());
    out << "frame";
    for (const char* name : JointPositions::names())
        out << ',' << name << "_x," << name << "_y," << name << "_z";
    out << '\n';
    for (std::size_t f = 0; f < joints.size(); ++f) {
        out << f;
        for (std::size_t j = 0; j < JointPositions::kCount; ++j) {
            const Vec3 p = joints[f].by_index(j);
            out << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
                << format_double(p.z);
        }
        out << '\n';
    }
    if (!out) throw DataError("short write: " + path.string());
}

void save_stats_csv(std::span<const StatRow> rows, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write statistics: " + path.string());
    out << "frame,metric,value\n";
    for (const StatRow& row : rows)
        out << row.frame << ',' << row.metric << ',' << format_double(row.value) << '\n';
    if (!out) throw DataError("short write: " + path.string());
}

}  // namespace cardbox
