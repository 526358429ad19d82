#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hkm/space.hpp"

namespace hkm {

// 17 significant digits; round-trips any double exactly.
std::string fmt_g17(double v);

// Writes to a temporary file in the same directory, then renames over the
// target, so readers never observe a partial artifact.
void atomic_write_text(const std::filesystem::path& path, const std::string& text);

struct Dataset {
  std::vector<Point> points;
  std::optional<std::vector<int>> labels;
};

// One row per observation.  An optional header is detected by non-numeric
// fields in the first line; a trailing column named "label" (header) is read
// as integer labels.  Malformed input throws input_error naming the line.
Dataset load_dataset_csv(const std::filesystem::path& path);

void write_dataset_csv(const std::filesystem::path& path, const Dataset& d);

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);

}  // namespace hkm
