#ifndef SUPERLINE_ERRORS_HPP
#define SUPERLINE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace superline {

// Base class for all mathematical errors raised by the library.
// Parse errors are separate (see ParseError) so the CLI can map
// math errors to exit code 1 and parse errors to exit code 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ParityError : Error {
    explicit ParityError(const std::string& w) : Error(w) {}
};

struct ModelMismatch : Error {
    explicit ModelMismatch(const std::string& w) : Error(w) {}
};

struct NotInvertible : Error {
    explicit NotInvertible(const std::string& w) : Error(w) {}
};

// An operation asked for a series coefficient beyond the known range.
struct TruncationExceeded : Error {
    explicit TruncationExceeded(const std::string& w) : Error(w) {}
};

struct DegenerateDivisor : Error {
    explicit DegenerateDivisor(const std::string& w) : Error(w) {}
};

struct BerUndefined : Error {
    explicit BerUndefined(const std::string& w) : Error(w) {}
};

struct BerStarUndefined : Error {
    explicit BerStarUndefined(const std::string& w) : Error(w) {}
};

struct IllegalWrongness : Error {
    explicit IllegalWrongness(const std::string& w) : Error(w) {}
};

struct KernelNotInGeneralPosition : Error {
    explicit KernelNotInGeneralPosition(const std::string& w) : Error(w) {}
};

struct InfiniteDimensionalKernel : Error {
    explicit InfiniteDimensionalKernel(const std::string& w) : Error(w) {}
};

struct NotAKernelElement : Error {
    explicit NotAKernelElement(const std::string& w) : Error(w) {}
};

struct RemainderNotConstant : Error {
    explicit RemainderNotConstant(const std::string& w) : Error(w) {}
};

struct NotInvariantFlag : Error {
    explicit NotInvariantFlag(const std::string& w) : Error(w) {}
};

struct FlagNotInGeneralPosition : Error {
    explicit FlagNotInGeneralPosition(const std::string& w) : Error(w) {}
};

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& w, int line_, int col_)
        : std::runtime_error(w + " (line " + std::to_string(line_) +
                             ", col " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

} // namespace superline

#endif
