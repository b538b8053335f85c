#ifndef RNCX_ERROR_HPP
#define RNCX_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace rncx {

enum class ErrorKind {
    ContractiveRegime,
    NoConvergence,
    DimensionMismatch,
    UnknownLetter,
    UngroundedOutput,
    CapExceeded,
    AlphabetMismatch,
    NotRncPlus,
    WeakDrive,
    OutOfBounds,
    UnknownFixture,
    InvalidArgument,
    Parse,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// NoConvergence raised while settling a cascade carries the offending level.
class NoConvergenceError : public Error {
public:
    NoConvergenceError(std::size_t level, const std::string &what)
        : Error(ErrorKind::NoConvergence, what), level_(level) {}

    std::size_t level() const noexcept { return level_; }

private:
    std::size_t level_;
};

} // namespace rncx

#endif
