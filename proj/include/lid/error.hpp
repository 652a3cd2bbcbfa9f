#ifndef LID_ERROR_HPP
#define LID_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lid {

// Error classes map to distinct process exit codes in the CLI.
enum class ErrorKind {
    Usage = 64,     // bad flags / bad parameters
    Data = 65,      // validation, parse or degenerate-input failures
    NoInput = 66,   // missing or unreadable file
    Mismatch = 67,  // scheme/model/shape mismatch
    Numeric = 68,   // non-finite intermediate
    Io = 74,        // write failure
};

class LidError : public std::runtime_error {
public:
    LidError(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

} // namespace lid

#endif
