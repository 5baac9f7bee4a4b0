#ifndef INCLUDED_CDX_ERRORS
#define INCLUDED_CDX_ERRORS

#include <stdexcept>
#include <string>

namespace cdx {

/** Base class for all library errors. */
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/** Malformed input stream: bad magic, truncation, impossible structure. */
struct FormatError : Error {
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

/** Unsupported serialization version. */
struct VersionError : FormatError {
    explicit VersionError(const std::string& msg) : FormatError(msg) {}
};

/** Structurally invalid grammar: cycle, empty production, dangling
 * reference, unreachable rule, terminator violation. */
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/** Expanded text does not end with a single unique terminator. */
struct TerminatorError : ValidationError {
    explicit TerminatorError(const std::string& msg) : ValidationError(msg) {}
};

/** Random-access position outside [0, n). */
struct OutOfBoundsError : Error {
    explicit OutOfBoundsError(const std::string& msg) : Error(msg) {}
};

/** Graph expected to be a DAG contains a cycle. */
struct CycleError : Error {
    explicit CycleError(const std::string& msg) : Error(msg) {}
};

/** Zero-length pattern given to a matching operation. */
struct EmptyPatternError : Error {
    explicit EmptyPatternError(const std::string& msg) : Error(msg) {}
};

/** Input too large for a brute-force oracle. */
struct ScaleError : Error {
    explicit ScaleError(const std::string& msg) : Error(msg) {}
};

/** Benchmark pattern length exceeds the text length. */
struct LengthError : Error {
    explicit LengthError(const std::string& msg) : Error(msg) {}
};

}

#endif
