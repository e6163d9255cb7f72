#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cbkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed ordinal text. `position` is the 0-based byte offset of the
/// offending character.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& what)
        : Error("syntax error at " + std::to_string(position) + ": " + what),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class NotCanonical : public Error {
public:
    using Error::Error;
};

/// A partial operation was applied outside its domain (e.g. left_sub(b, a)
/// with b > a).
class Undefined : public Error {
public:
    using Error::Error;
};

class NotLimit : public Error {
public:
    using Error::Error;
};

class InvalidRadius : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class InfiniteRank : public Error {
public:
    using Error::Error;
};

class StageBudgetExceeded : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// Malformed tree, config or characteristic file.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace cbkit
