#ifndef CLIQUEPACK_ERRORS_HPP
#define CLIQUEPACK_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cliquepack {

/// A caller broke an operation's precondition (e.g. deleting a non-edge).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A memory/work guard refused the request.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what, std::uint64_t cap, std::uint64_t reached)
        : std::runtime_error(what + " (cap " + std::to_string(cap) + ", reached " +
                             std::to_string(reached) + ")"),
          cap_(cap), reached_(reached)
    {
    }

    std::uint64_t cap() const noexcept { return cap_; }
    std::uint64_t reached() const noexcept { return reached_; }

private:
    std::uint64_t cap_;
    std::uint64_t reached_;
};

/// Malformed graph or packing file.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace cliquepack

#endif // CLIQUEPACK_ERRORS_HPP
