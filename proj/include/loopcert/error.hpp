#pragma once

#include <stdexcept>
#include <string>

namespace loopcert {

// Malformed input: bad factor index, bad Seifert data, unparsable text.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operands live in different free products.
class GroupMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentNotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RecipeNotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when the case engine reaches a state the case analysis says is
// unreachable. Never swallowed.
class ClassificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace loopcert
