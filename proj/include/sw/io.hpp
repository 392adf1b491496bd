#pragma once

#include "sw/harness.hpp"
#include "sw/types.hpp"

#include <string>
#include <vector>

namespace sw {

// one point per row, comma-separated decimals; lines starting with '#' skipped
PointCloud read_point_cloud_csv(const std::string& path);
void write_point_cloud_csv(const std::string& path, const PointCloud& cloud);

// DirectionSet cache: "SWDS" magic, version byte, u32 M, u32 d, M*d
// little-endian f64, then a UTF-8 JSON trailer with the SamplerSpec and seed
void write_direction_set(const std::string& path, const DirectionSet& dirs);
DirectionSet read_direction_set(const std::string& path);

// sweep results: header "N_sample,Error,Timers", LF endings
void write_records_csv(const std::string& path, const std::vector<ConvergenceRecord>& records);
std::vector<ConvergenceRecord> read_records_csv(const std::string& path);

// square numeric matrix, no header
void write_matrix_csv(const std::string& path, const std::vector<double>& matrix,
                      std::size_t n);

// key = value experiment file; '#' comments, lists comma-separated
ExperimentConfig parse_experiment_config(const std::string& path);

} // namespace sw
