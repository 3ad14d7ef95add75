#pragma once

#include <stdexcept>
#include <string>

namespace sct {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration value.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Array shapes or grids that do not agree.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Physical value outside the range covered by a grid.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Window family not supported by a closed form or by a reconstruction rule.
class UnsupportedWindowError : public Error {
public:
    using Error::Error;
};

/// Numerical failure: empty or degenerate point clouds, singular systems, undefined metrics.
class NumericalError : public Error {
public:
    using Error::Error;
};

class EmptyCloudError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateCloudError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ExtractionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ReconstructionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class UndefinedMetricError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Malformed file content.
class FormatError : public Error {
public:
    using Error::Error;
};

/// File system failure.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace sct
