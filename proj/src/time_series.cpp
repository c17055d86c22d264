#include "tsboot/time_series.hpp"

#include "tsboot/error.hpp"

#include <cmath>
#include <string>

namespace tsboot {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptySeries: return "EmptySeries";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::InputError: return "InputError";
        case ErrorCode::MalformedConfig: return "MalformedConfig";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::BlockTooLong: return "BlockTooLong";
        case ErrorCode::NonUniformLengths: return "NonUniformLengths";
        case ErrorCode::SingularDesign: return "SingularDesign";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::DegenerateReplicate: return "DegenerateReplicate";
        case ErrorCode::EmptyState: return "EmptyState";
        case ErrorCode::FitFailure: return "FitFailure";
    }
    return "Unknown";
}

NonFiniteError::NonFiniteError(std::size_t row, std::size_t col)
    : Error(ErrorCode::NonFinite, "non-finite value at row " + std::to_string(row) + ", column " +
                                      std::to_string(col)),
      row_(row),
      col_(col) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) {
        throw std::invalid_argument("matrix data size does not match shape");
    }
}

std::vector<double> Matrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

void Matrix::set_column(std::size_t c, std::span<const double> values) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

TimeSeries::TimeSeries(Matrix values, std::vector<std::string> channel_names)
    : values_(std::move(values)), names_(std::move(channel_names)) {
    if (!names_.empty() && names_.size() != values_.cols()) {
        throw std::invalid_argument("channel name count does not match column count");
    }
}

TimeSeries TimeSeries::from_vector(std::span<const double> values) {
    return TimeSeries(Matrix(values.size(), 1, std::vector<double>(values.begin(), values.end())));
}

const TimeSeries& validate_series(const TimeSeries& series) {
    if (series.length() == 0 || series.channels() == 0) {
        throw Error(ErrorCode::EmptySeries, "series has no observations");
    }
    const Matrix& m = series.values();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (!std::isfinite(m(r, c))) throw NonFiniteError(r, c);
        }
    }
    return series;
}

}  // namespace tsboot
