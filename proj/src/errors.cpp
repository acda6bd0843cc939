#include "gapcheck/errors.hpp"

namespace gapcheck {
namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += items[i];
  }
  return out;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected,
                         const std::string& found)
    : FragmentError("syntax error at byte " + std::to_string(offset) +
                    ": expected one of {" + join(expected) + "}, found " +
                    found),
      offset_(offset),
      expected_(std::move(expected)) {}

ArithFormError::ArithFormError(std::size_t offset, const std::string& reason)
    : FragmentError("arithmetic atom at byte " + std::to_string(offset) +
                    " is not a difference constraint: " + reason),
      offset_(offset) {}

ParseError::ParseError(std::size_t line, const std::string& reason)
    : InputError("line " + std::to_string(line) + ": " + reason), line_(line) {}

DuplicateId::DuplicateId(const std::string& id)
    : InputError("duplicate id '" + id + "'") {}

UnknownCaseId::UnknownCaseId(const std::string& id)
    : InputError("unknown case id '" + id + "'") {}

UnknownAxiomId::UnknownAxiomId(const std::string& id)
    : InputError("unknown axiom id '" + id + "'") {}

PoolTooLarge::PoolTooLarge(std::size_t size, std::size_t limit)
    : InputError("axiom pool has " + std::to_string(size) +
                 " axioms; at most " + std::to_string(limit) +
                 " are supported") {}

ReplayError::ReplayError(std::size_t line, const std::string& reason)
    : InputError("event log line " + std::to_string(line) + ": " + reason),
      line_(line) {}

}  // namespace gapcheck
