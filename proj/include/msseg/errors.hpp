#pragma once

#include <stdexcept>
#include <string>

namespace msseg {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegeneratePolygon : public Error {
public:
    using Error::Error;
};

/// One side of the two-region partition holds no samples.
class EmptyRegion : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

class WrongColorspace : public Error {
public:
    using Error::Error;
};

class BadParams : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace msseg
