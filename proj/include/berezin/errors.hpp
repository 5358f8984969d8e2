#pragma once

#include <stdexcept>
#include <string>

namespace berezin {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimMismatch : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class BadRadius : public Error {
public:
    using Error::Error;
};

class InadmissiblePoint : public Error {
public:
    using Error::Error;
};

class OutsideDisk : public Error {
public:
    using Error::Error;
};

class NotDiskModel : public Error {
public:
    using Error::Error;
};

class UnknownEntry : public Error {
public:
    using Error::Error;
};

class UnknownKind : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace berezin
