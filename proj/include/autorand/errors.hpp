#pragma once

#include <stdexcept>
#include <string>

namespace autorand {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: unparsable documents, arity mismatches, unknown names.
class InputError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The family's core language is nonempty: every word in it keeps a cylinder of
// positive measure inside every slice, so no equivalent test has measure zero.
class NotAnArt : public Error {
 public:
  explicit NotAnArt(std::string witness)
      : Error("not an automatic randomness test: core word " +
              (witness.empty() ? std::string("(empty word)") : witness)),
        witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

class LengthConditionUnsatisfied : public Error {
 public:
  LengthConditionUnsatisfied(std::string word, std::string index)
      : Error("length condition fails for x=" + word + " at index " + index),
        word_(std::move(word)),
        index_(std::move(index)) {}
  const std::string& word() const { return word_; }
  const std::string& index() const { return index_; }

 private:
  std::string word_;
  std::string index_;
};

}  // namespace autorand
