#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "chaosnet/matrix.hpp"

namespace chaosnet {

struct LabeledDataset {
    Matrix features;                  // m x n
    std::vector<std::string> labels;  // m, verbatim strings
    std::vector<std::string> header;  // column names; empty when headerless
    std::string label_name;          // name of the label column, if any
    std::size_t dropped_rows = 0;    // rows removed due to missing cells

    /// Class names in first-appearance order.
    std::vector<std::string> class_names() const;
    /// Row indices per class label.
    std::unordered_map<std::string, std::vector<std::size_t>> class_index() const;
    /// Rows of one class, as a matrix.
    Matrix rows_of(const std::string& label) const;
};

/// Loads a comma-delimited file. `label_column` indexes the label column
/// (negative counts from the end, -1 = last). Empty cells mark missing
/// data: the whole row is dropped and counted in `dropped_rows`.
/// Ragged rows and non-numeric feature cells raise ParseError with the
/// line number.
LabeledDataset load_csv(const std::filesystem::path& source, int label_column = -1,
                        bool has_header = true);

void save_csv(const LabeledDataset& data, const std::filesystem::path& destination);

/// Global matrix extrema used for input scaling.
struct Extrema {
    double min = 0.0;
    double max = 1.0;
};

/// (X - min X) / (max X - min X) over the whole matrix. A constant
/// matrix normalizes to all ones. Returns the extrema for reuse on
/// held-out data.
std::pair<Matrix, Extrema> normalize(const Matrix& data);

/// Scales with previously recorded extrema; results clamped to [0,1]
/// so out-of-range held-out values stay inside the map domain.
Matrix normalize_with(const Matrix& data, const Extrema& extrema);

struct TrainTestSplit {
    LabeledDataset train;
    LabeledDataset rest;
};

/// Draws exactly k rows per class uniformly without replacement
/// (deterministic under seed); the remainder keeps every other row in
/// original order. Throws std::invalid_argument naming the first class
/// with fewer than k rows.
TrainTestSplit sample_per_class(const LabeledDataset& data, std::size_t k, std::uint64_t seed);

} // namespace chaosnet
