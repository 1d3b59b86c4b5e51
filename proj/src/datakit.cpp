#include "chaosnet/datakit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "chaosnet/errors.hpp"
#include "chaosnet/rng.hpp"

namespace chaosnet {

std::vector<std::string> LabeledDataset::class_names() const {
    std::vector<std::string> names;
    for (const auto& label : labels) {
        if (std::find(names.begin(), names.end(), label) == names.end()) {
            names.push_back(label);
        }
    }
    return names;
}

std::unordered_map<std::string, std::vector<std::size_t>> LabeledDataset::class_index() const {
    std::unordered_map<std::string, std::vector<std::size_t>> index;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        index[labels[i]].push_back(i);
    }
    return index;
}

Matrix LabeledDataset::rows_of(const std::string& label) const {
    Matrix out;
    out.set_cols(features.cols());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) out.push_row(features.row(i));
    }
    return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    auto end = s.find_last_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    return s.substr(begin, end - begin + 1);
}

} // namespace

LabeledDataset load_csv(const std::filesystem::path& source, int label_column, bool has_header) {
    std::ifstream in(source);
    if (!in) {
        throw ParseError("load_csv: cannot open " + source.string());
    }

    LabeledDataset data;
    std::string line;
    std::size_t line_no = 0;
    std::size_t n_fields = 0;
    std::size_t label_idx = 0;
    bool first_data_row = true;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line);

        if (line_no == 1 && has_header) {
            n_fields = fields.size();
            label_idx = label_column < 0 ? fields.size() + label_column
                                         : static_cast<std::size_t>(label_column);
            if (label_idx >= fields.size()) {
                throw ParseError("load_csv: label column out of range at line 1");
            }
            for (std::size_t j = 0; j < fields.size(); ++j) {
                if (j == label_idx) {
                    data.label_name = trim(fields[j]);
                } else {
                    data.header.push_back(trim(fields[j]));
                }
            }
            continue;
        }

        if (first_data_row) {
            if (!has_header) {
                n_fields = fields.size();
                label_idx = label_column < 0 ? fields.size() + label_column
                                             : static_cast<std::size_t>(label_column);
                if (label_idx >= fields.size()) {
                    throw ParseError("load_csv: label column out of range at line " +
                                     std::to_string(line_no));
                }
            }
            data.features.set_cols(n_fields - 1);
            first_data_row = false;
        }

        if (fields.size() != n_fields) {
            throw ParseError("load_csv: ragged row at line " + std::to_string(line_no) +
                             " (expected " + std::to_string(n_fields) + " fields, got " +
                             std::to_string(fields.size()) + ")");
        }

        std::vector<double> row;
        row.reserve(n_fields - 1);
        std::string label;
        bool missing = false;
        for (std::size_t j = 0; j < fields.size(); ++j) {
            const std::string cell = trim(fields[j]);
            if (cell.empty()) {
                missing = true;
                continue;
            }
            if (j == label_idx) {
                label = cell;
                continue;
            }
            try {
                std::size_t consumed = 0;
                const double value = std::stod(cell, &consumed);
                if (consumed != cell.size()) throw std::invalid_argument(cell);
                row.push_back(value);
            } catch (const std::exception&) {
                throw ParseError("load_csv: non-numeric cell '" + cell + "' at line " +
                                 std::to_string(line_no) + ", column " + std::to_string(j + 1));
            }
        }
        if (missing) {
            ++data.dropped_rows;
            continue;
        }
        data.features.push_row(row);
        data.labels.push_back(label);
    }

    if (first_data_row) {
        throw ParseError("load_csv: no data rows in " + source.string());
    }
    return data;
}

void save_csv(const LabeledDataset& data, const std::filesystem::path& destination) {
    std::ofstream out(destination);
    if (!out) {
        throw ParseError("save_csv: cannot open " + destination.string() + " for writing");
    }
    out << std::setprecision(17);
    if (!data.header.empty() || !data.label_name.empty()) {
        for (const auto& name : data.header) out << name << ',';
        out << (data.label_name.empty() ? "label" : data.label_name) << '\n';
    }
    for (std::size_t i = 0; i < data.features.rows(); ++i) {
        for (double v : data.features.row(i)) out << v << ',';
        out << data.labels[i] << '\n';
    }
}

std::pair<Matrix, Extrema> normalize(const Matrix& data) {
    Extrema extrema{0.0, 1.0};
    if (data.rows() == 0 || data.cols() == 0) {
        return {data, extrema};
    }
    double lo = data(0, 0);
    double hi = data(0, 0);
    for (double v : data.data()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    extrema = {lo, hi};

    Matrix out(data.rows(), data.cols());
    if (lo == hi) {
        // Constant matrix normalizes to all ones.
        for (double& v : out.data()) v = 1.0;
        return {out, extrema};
    }
    const double span = hi - lo;
    for (std::size_t i = 0; i < data.data().size(); ++i) {
        out.data()[i] = (data.data()[i] - lo) / span;
    }
    return {out, extrema};
}

Matrix normalize_with(const Matrix& data, const Extrema& extrema) {
    Matrix out(data.rows(), data.cols());
    const double span = extrema.max - extrema.min;
    for (std::size_t i = 0; i < data.data().size(); ++i) {
        double v = span == 0.0 ? 1.0 : (data.data()[i] - extrema.min) / span;
        out.data()[i] = std::clamp(v, 0.0, 1.0);
    }
    return out;
}

TrainTestSplit sample_per_class(const LabeledDataset& data, std::size_t k, std::uint64_t seed) {
    const auto names = data.class_names();
    auto index = data.class_index();

    std::vector<bool> picked(data.labels.size(), false);
    std::size_t class_id = 0;
    for (const auto& name : names) {
        auto& rows = index[name];
        if (rows.size() < k) {
            throw std::invalid_argument("sample_per_class: class '" + name + "' has only " +
                                        std::to_string(rows.size()) + " rows, need " +
                                        std::to_string(k));
        }
        // Partial Fisher-Yates over this class's row list.
        Rng rng = Rng::stream(seed, class_id);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + rng.next_index(rows.size() - i);
            std::swap(rows[i], rows[j]);
            picked[rows[i]] = true;
        }
        ++class_id;
    }

    TrainTestSplit split;
    split.train.features.set_cols(data.features.cols());
    split.rest.features.set_cols(data.features.cols());
    split.train.header = data.header;
    split.rest.header = data.header;
    split.train.label_name = data.label_name;
    split.rest.label_name = data.label_name;
    for (std::size_t i = 0; i < data.labels.size(); ++i) {
        LabeledDataset& target = picked[i] ? split.train : split.rest;
        target.features.push_row(data.features.row(i));
        target.labels.push_back(data.labels[i]);
    }
    return split;
}

} // namespace chaosnet
