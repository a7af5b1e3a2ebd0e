#ifndef ZEROSET_ERRORS_HPP
#define ZEROSET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zeroset {

// Error hierarchy shared by the library. Input errors (bad files, bad
// arguments) derive from InputError so the CLI can map them to exit codes.

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArityMismatchError : public InputError {
public:
    using InputError::InputError;
};

class DuplicateTupleError : public InputError {
public:
    using InputError::InputError;
};

class IndexOutOfRangeError : public InputError {
public:
    using InputError::InputError;
};

class EmptyPolynomialError : public InputError {
public:
    using InputError::InputError;
};

class UnivariateError : public InputError {
public:
    using InputError::InputError;
};

class UnsupportedOrderError : public InputError {
public:
    using InputError::InputError;
};

class NotPowerOfTwoError : public InputError {
public:
    using InputError::InputError;
};

class InvalidThresholdError : public InputError {
public:
    using InputError::InputError;
};

class DimensionUnsupportedError : public InputError {
public:
    using InputError::InputError;
};

// Parse failure in a polynomial file; carries the 1-based line number.
class SyntaxError : public InputError {
public:
    SyntaxError(int line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

} // namespace zeroset

#endif // ZEROSET_ERRORS_HPP
