#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tsboot {

/// Dense row-major matrix; rows are time steps, columns are channels.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    [[nodiscard]] std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    [[nodiscard]] std::vector<double> column(std::size_t c) const;
    void set_column(std::size_t c, std::span<const double> values);

    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

class TimeSeries {
public:
    TimeSeries() = default;
    explicit TimeSeries(Matrix values, std::vector<std::string> channel_names = {});

    /// Univariate convenience constructor.
    static TimeSeries from_vector(std::span<const double> values);

    [[nodiscard]] std::size_t length() const noexcept { return values_.rows(); }
    [[nodiscard]] std::size_t channels() const noexcept { return values_.cols(); }
    [[nodiscard]] const Matrix& values() const noexcept { return values_; }
    [[nodiscard]] double operator()(std::size_t t, std::size_t c) const { return values_(t, c); }
    [[nodiscard]] std::vector<double> channel(std::size_t c) const { return values_.column(c); }
    [[nodiscard]] const std::vector<std::string>& channel_names() const noexcept { return names_; }

private:
    Matrix values_;
    std::vector<std::string> names_;
};

/// Returns the series unchanged when it has at least one row and column and
/// every value is finite; throws Error(EmptySeries) or NonFiniteError otherwise.
const TimeSeries& validate_series(const TimeSeries& series);

}  // namespace tsboot
