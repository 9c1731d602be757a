#include "trajdist/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace trajdist {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    for (auto& f : fields) {
        while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.erase(f.begin());
        while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.pop_back();
    }
    return fields;
}

bool parse_int(const std::string& s, long& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    out = std::strtol(s.c_str(), &end, 10);
    return errno == 0 && end != nullptr && *end == '\0';
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    out = std::strtod(s.c_str(), &end);
    return errno == 0 && end != nullptr && *end == '\0';
}

[[noreturn]] void fail(const std::string& origin, std::size_t line_no, const std::string& what) {
    throw InvalidInput(origin + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

TrajectorySet parse_trajectory_csv(const std::string& text, const std::string& origin) {
    TrajectorySet out;
    std::map<std::string, std::size_t> index_of;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    Eigen::Index dim = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() < 3) fail(origin, line_no, "expected track_id,frame,x1[,...]");
        long frame = 0;
        if (!parse_int(fields[1], frame)) {
            if (line_no == 1) continue;  // header row
            fail(origin, line_no, "frame '" + fields[1] + "' is not an integer");
        }
        if (frame < 1) fail(origin, line_no, "frame must be >= 1");
        Vector x(static_cast<Eigen::Index>(fields.size() - 2));
        for (std::size_t k = 2; k < fields.size(); ++k) {
            double v = 0.0;
            if (!parse_double(fields[k], v))
                fail(origin, line_no, "coordinate '" + fields[k] + "' is not a number");
            x[static_cast<Eigen::Index>(k - 2)] = v;
        }
        if (dim < 0) dim = x.size();
        if (x.size() != dim)
            fail(origin, line_no, "state dimension changed from " + std::to_string(dim) + " to " +
                                      std::to_string(x.size()));
        auto [it, inserted] = index_of.try_emplace(fields[0], out.trajectories.size());
        if (inserted) {
            out.trajectories.emplace_back();
            out.labels.push_back(fields[0]);
        }
        auto& tr = out.trajectories[it->second];
        if (tr.has(static_cast<int>(frame)))
            fail(origin, line_no, "duplicate observation for track '" + fields[0] + "' frame " +
                                      std::to_string(frame));
        tr.set(static_cast<int>(frame), x);
    }
    return out;
}

TrajectorySet read_trajectory_csv(const std::string& path) {
    return parse_trajectory_csv(read_file(path), path);
}

std::string format_trajectory_csv(const TrajectorySet& s) {
    std::string out = "track_id,frame";
    const Eigen::Index dim = s.state_dim();
    for (Eigen::Index d = 0; d < std::max<Eigen::Index>(dim, 1); ++d)
        out += ",x" + std::to_string(d + 1);
    out += "\n";
    char buf[64];
    for (std::size_t k = 0; k < s.trajectories.size(); ++k) {
        const std::string label = k < s.labels.size() ? s.labels[k] : std::to_string(k + 1);
        for (const auto& [t, x] : s.trajectories[k].points()) {
            out += label + "," + std::to_string(t);
            for (Eigen::Index d = 0; d < x.size(); ++d) {
                std::snprintf(buf, sizeof buf, ",%.17g", x[d]);
                out += buf;
            }
            out += "\n";
        }
    }
    return out;
}

void write_trajectory_csv(const TrajectorySet& s, const std::string& path) {
    write_file(path, format_trajectory_csv(s));
}

std::uint64_t content_digest(const TrajectorySet& s) {
    const std::string text = format_trajectory_csv(s);
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write file: " + path);
    out << text;
    if (!out.good()) throw InvalidInput("write failed: " + path);
}

}  // namespace trajdist
