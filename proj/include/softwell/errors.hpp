#pragma once

#include <stdexcept>
#include <string>

namespace softwell {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid parameters or malformed input data.
class InvalidArgument : public Error {
public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

/// A numerical procedure could not produce a usable result
/// (rank-deficient fit, zero variance, grid too narrow, extinction, ...).
class ComputeError : public Error {
public:
  explicit ComputeError(const std::string& what) : Error(what) {}
};

/// File parsing / record ingestion failures.
class IngestError : public Error {
public:
  explicit IngestError(const std::string& what) : Error(what) {}
};

}  // namespace softwell
