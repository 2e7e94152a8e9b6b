#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace collinear {

/// Broad failure category; the CLI maps each one to an exit status.
enum class ErrorKind {
    config,     ///< bad arguments or caller contract violations
    data,       ///< malformed or unusable input data
    io,         ///< file could not be read or written
    numerical,  ///< rank deficiency, degenerate regressors, ill conditioning
};

/** Base class for every error the library throws.
 *
 * `code()` is a stable machine-readable identifier (e.g. "rank_deficient")
 * that the CLI echoes in its error object.
 */
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& message)
        : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message)
        : Error(ErrorKind::config, "config_error", message) {}
};

/// Caller broke an operation precondition (dimension or ordering mismatch).
class ContractError : public Error {
public:
    explicit ContractError(const std::string& message)
        : Error(ErrorKind::config, "contract_violation", message) {}
};

class DataError : public Error {
public:
    explicit DataError(const std::string& message)
        : Error(ErrorKind::data, "data_error", message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message)
        : Error(ErrorKind::io, "io_error", message) {}
};

/// Centered explanatory column is (numerically) the zero vector.
class DegenerateRegressorError : public Error {
public:
    explicit DegenerateRegressorError(std::string column)
        : Error(ErrorKind::numerical, "degenerate_regressor",
                "degenerate regressor: column '" + column + "' is constant after centering"),
          column_(std::move(column)) {}

    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

/// Complete multicollinearity: the centered design does not have full column rank.
class RankDeficientError : public Error {
public:
    RankDeficientError(std::vector<std::string> dependent, double singular_ratio);

    /// Columns participating in the (near) exact linear dependence.
    const std::vector<std::string>& dependent_columns() const noexcept { return dependent_; }
    double singular_ratio() const noexcept { return singular_ratio_; }

private:
    std::vector<std::string> dependent_;
    double singular_ratio_;
};

/// B matrix too ill-conditioned to invert.
class StructuralCollinearityError : public Error {
public:
    explicit StructuralCollinearityError(double condition_number);

    double condition_number() const noexcept { return condition_number_; }

private:
    double condition_number_;
};

}  // namespace collinear
