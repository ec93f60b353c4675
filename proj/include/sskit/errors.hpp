#pragma once

#include <stdexcept>
#include <string>

namespace sskit {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Width or arity of two distributions do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Operation requires an explicit tuple representation.
class RepresentationError : public Error {
 public:
  using Error::Error;
};

// Conditioning event has zero mass.
class ConditionOnNullError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (distribution files, literals, descriptors).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Codeword stream does not decode.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// Budget cannot guarantee the requested construction.
class BudgetTooSmallError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

// A bounded bit source was asked for more bits than it holds.
class OutOfBitsError : public Error {
 public:
  using Error::Error;
};

// A searcher oracle aborted instead of producing an output.
class SearchFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace sskit
