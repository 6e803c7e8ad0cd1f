#pragma once

#include <stdexcept>
#include <string>

namespace grothsym {

// Base for every error raised by the library. The CLI maps InputError to exit
// code 2 and everything else to 1.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
  public:
    using Error::Error;
};

class ParseError : public InputError {
  public:
    using InputError::InputError;
};

class InvalidArgument : public InputError {
  public:
    using InputError::InputError;
};

class NotDivisible : public Error {
  public:
    using Error::Error;
};

class UnmappedVariable : public Error {
  public:
    using Error::Error;
};

class FrozenVertex : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

class WindowOverflow : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

class NotInvertible : public Error {
  public:
    using Error::Error;
};

class UnsupportedComponent : public Error {
  public:
    using Error::Error;
};

class ZeroDivision : public Error {
  public:
    using Error::Error;
};

class MissingTable : public InputError {
  public:
    using InputError::InputError;
};

} // namespace grothsym
