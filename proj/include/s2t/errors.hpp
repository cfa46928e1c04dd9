#pragma once

#include <stdexcept>
#include <string>

namespace s2t {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A multiplication table or action grid that is not a group (action).
class GroupError : public Error {
 public:
  using Error::Error;
};

/// Malformed word text or a letter that does not belong to the base group.
class WordError : public Error {
 public:
  using Error::Error;
};

/// A file that cannot be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent JSON document.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// The base action does not satisfy the hypotheses needed to start a run.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace s2t
