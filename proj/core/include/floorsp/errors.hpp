#ifndef FLOORSP_ERRORS_HPP
#define FLOORSP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace floorsp {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mask operation needed at least one set pixel.
class EmptyMask : public Error {
 public:
  EmptyMask() : Error("mask has no set pixels") {}
};

/// Point cloud projection received no points.
class EmptyCloud : public Error {
 public:
  EmptyCloud() : Error("point cloud is empty") {}
};

/// An output file could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An input file is missing, unreadable or malformed.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// The synthetic plan generator exhausted its retry budget.
class GenerationFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace floorsp

#endif  // FLOORSP_ERRORS_HPP
