#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sizedist {

// Base class for every error this library raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptySampleError : public Error {
public:
    EmptySampleError() : Error("empty sample") {}
    explicit EmptySampleError(const std::string& what) : Error(what) {}
};

// All observations equal; a zero-spread fit has no defined shape parameter.
class DegenerateSampleError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class BadRangeError : public Error {
public:
    using Error::Error;
};

class TooFewPointsError : public Error {
public:
    using Error::Error;
};

class UnknownLanguageError : public Error {
public:
    using Error::Error;
};

class DecodeError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class MissingHeaderError : public Error {
public:
    using Error::Error;
};

class BadRowError : public Error {
public:
    BadRowError(std::size_t line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class DuplicateIdError : public Error {
public:
    explicit DuplicateIdError(const std::string& id) : Error("duplicate id: " + id) {}
};

class FormatMismatchError : public Error {
public:
    using Error::Error;
};

class MissingDefectDataError : public Error {
public:
    using Error::Error;
};

class ZeroDefectsError : public Error {
public:
    ZeroDefectsError() : Error("dataset contains zero defects of the requested kind") {}
};

}  // namespace sizedist
