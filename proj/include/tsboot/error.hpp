#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tsboot {

enum class ErrorCode {
    EmptySeries,
    NonFinite,
    InputError,
    MalformedConfig,
    InvalidSpec,
    BlockTooLong,
    NonUniformLengths,
    SingularDesign,
    InsufficientData,
    DegenerateReplicate,
    EmptyState,
    FitFailure,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// message is a single line suitable for a diagnostic stream.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised by validate_series; reports the first offending cell in row-major order.
class NonFiniteError : public Error {
public:
    NonFiniteError(std::size_t row, std::size_t col);

    [[nodiscard]] std::size_t row() const noexcept { return row_; }
    [[nodiscard]] std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

}  // namespace tsboot
