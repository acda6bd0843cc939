#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gapcheck {

// Bad user input: malformed text, unknown ids, violated preconditions.
// The CLI maps these to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant did not hold. The CLI maps these to exit code 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Formula text outside the supported fragment.
class FragmentError : public InputError {
 public:
  using InputError::InputError;
};

class SyntaxError : public FragmentError {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected,
              const std::string& found);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class ArithFormError : public FragmentError {
 public:
  ArithFormError(std::size_t offset, const std::string& reason);

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Dataset / predictions / event-log line that cannot be read.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& reason);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicateId : public InputError {
 public:
  explicit DuplicateId(const std::string& id);
};

class UnknownCaseId : public InputError {
 public:
  explicit UnknownCaseId(const std::string& id);
};

class UnknownAxiomId : public InputError {
 public:
  explicit UnknownAxiomId(const std::string& id);
};

class NotNeutral : public InputError {
 public:
  using InputError::InputError;
};

class PoolTooLarge : public InputError {
 public:
  PoolTooLarge(std::size_t size, std::size_t limit);
};

class DegenerateCase : public InputError {
 public:
  using InputError::InputError;
};

class ReplayError : public InputError {
 public:
  ReplayError(std::size_t line, const std::string& reason);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Review-loop rejections. HTTP maps NotPending and ConflictingAnswer to 409.
class NotPending : public InputError {
 public:
  using InputError::InputError;
};

class UnknownSolution : public InputError {
 public:
  using InputError::InputError;
};

class ConflictingAnswer : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace gapcheck
