#pragma once

#include <stdexcept>
#include <string>

namespace tfhom {

// Coarse failure classes; the C API maps them onto status codes and the CLI
// onto exit codes.
enum class ErrorKind { config, numerical, argument, io };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_argument(const std::string& what) { throw Error(ErrorKind::argument, what); }
[[noreturn]] inline void throw_config(const std::string& what) { throw Error(ErrorKind::config, what); }
[[noreturn]] inline void throw_numerical(const std::string& what) { throw Error(ErrorKind::numerical, what); }

}  // namespace tfhom
