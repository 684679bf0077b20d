#ifndef FIC_ERROR_HPP
#define FIC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fic {

// Broad error families. The CLI maps each family to its own exit code.
enum class ErrorFamily { config, data, numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorFamily family, const std::string& what)
        : std::runtime_error(what), family_(family) {}

    ErrorFamily family() const noexcept { return family_; }

private:
    ErrorFamily family_;
};

// Vector lengths or matrix shapes disagree.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(ErrorFamily::numeric, what) {}
};

class EmptyInputError : public Error {
public:
    explicit EmptyInputError(const std::string& what) : Error(ErrorFamily::numeric, what) {}
};

// Not enough rows (or distinct rows) for the requested number of clusters.
class InsufficientDataError : public Error {
public:
    explicit InsufficientDataError(const std::string& what) : Error(ErrorFamily::numeric, what) {}
};

class DegenerateClusterError : public Error {
public:
    explicit DegenerateClusterError(const std::string& what) : Error(ErrorFamily::numeric, what) {}
};

class NonFiniteError : public Error {
public:
    explicit NonFiniteError(const std::string& what) : Error(ErrorFamily::numeric, what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorFamily::config, what) {}
};

// Dataset ingestion failures; `kind()` distinguishes the cause.
class DataError : public Error {
public:
    enum class Kind { missing_file, parse_failure, non_finite_value, column_count_mismatch, io_failure };

    DataError(Kind kind, const std::string& what) : Error(ErrorFamily::data, what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace fic

#endif  // FIC_ERROR_HPP
