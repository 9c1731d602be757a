#pragma once

#include "trajdist/types.hpp"

#include <cstdint>
#include <string>

namespace trajdist {

/// Trajectory CSV: one observation per row, `track_id,frame,x1[,...,xp]`,
/// optional header, absence of a row = missing observation.
TrajectorySet read_trajectory_csv(const std::string& path);
TrajectorySet parse_trajectory_csv(const std::string& text, const std::string& origin = "<string>");
std::string format_trajectory_csv(const TrajectorySet& s);
void write_trajectory_csv(const TrajectorySet& s, const std::string& path);

/// FNV-1a over the serialized CSV form; stable content digest for reports.
std::uint64_t content_digest(const TrajectorySet& s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace trajdist
