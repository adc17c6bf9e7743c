#pragma once

#include <stdexcept>
#include <string>

namespace abcover {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes do not fit together (class length vs. surface, group ranks).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Arguments outside the accepted domain (m < 1, negative multiplicity, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input document could not be parsed into a valid object.
class MalformedInput : public Error {
public:
    using Error::Error;
};

/// The request is well-formed but outside what the library models.
class UnsupportedConfiguration : public Error {
public:
    using Error::Error;
};

/// Building data does not define a cover.
class CoverDataError : public Error {
public:
    using Error::Error;
};

class NotTwoDivisible : public CoverDataError {
public:
    using CoverDataError::CoverDataError;
};

class DegenerateCover : public CoverDataError {
public:
    using CoverDataError::CoverDataError;
};

/// An internal identity failed; the input slipped past validation.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Pipeline output disagrees with the closed-form table entry.
class TableIntegrityError : public Error {
public:
    using Error::Error;
};

}  // namespace abcover
