#pragma once

#include <stdexcept>
#include <string>

namespace spacetext {

// Input that violates a documented file format or operation precondition.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

// A referenced id (document, passage, idea, session) does not exist.
class NotFound : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace spacetext
