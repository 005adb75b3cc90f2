// Copyright 2026 The TeluRef Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TELUREF_ERROR_H_
#define TELUREF_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace teluref {

// Broad failure class, used by the CLI to pick an exit code.
enum class ErrorClass { kIo, kValidation };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string &what)
      : std::runtime_error(what), class_(cls) {}
  ErrorClass error_class() const { return class_; }

 private:
  ErrorClass class_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string &what) : Error(ErrorClass::kIo, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string &what)
      : Error(ErrorClass::kValidation, what) {}
};

// ssf-parser
class MalformedLine : public ValidationError {
 public:
  MalformedLine(std::size_t line_no, const std::string &reason)
      : ValidationError("line " + std::to_string(line_no) + ": " + reason),
        line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

class TooFewFields : public ValidationError {
 public:
  explicit TooFewFields(const std::string &af)
      : ValidationError("af needs at least 5 comma fields: '" + af + "'") {}
};

// corpus
class SchemaError : public ValidationError {
 public:
  SchemaError(const std::string &path, const std::string &reason)
      : ValidationError("schema error at " + path + ": " + reason),
        path_(path) {}
  const std::string &path() const { return path_; }

 private:
  std::string path_;
};

class MissingThirdReview : public ValidationError {
 public:
  explicit MissingThirdReview(std::size_t conflicts)
      : ValidationError(std::to_string(conflicts) +
                        " conflicted pair(s) need a third review") {}
};

class EmptySplit : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// embeddings
class BadHeader : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimMismatch : public ValidationError {
 public:
  DimMismatch(std::size_t expected, std::size_t found)
      : ValidationError("embedding dim mismatch: expected " +
                        std::to_string(expected) + ", found " +
                        std::to_string(found)),
        expected_(expected),
        found_(found) {}
  std::size_t expected() const { return expected_; }
  std::size_t found() const { return found_; }

 private:
  std::size_t expected_;
  std::size_t found_;
};

class BadVectorLine : public ValidationError {
 public:
  BadVectorLine(std::size_t line_no, const std::string &reason)
      : ValidationError("embedding line " + std::to_string(line_no) + ": " +
                        reason),
        line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

class EmptySpan : public ValidationError {
 public:
  EmptySpan() : ValidationError("cannot compose an empty span") {}
};

// featurizer
class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// sampler
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SingleClass : public ValidationError {
 public:
  SingleClass() : ValidationError("dataset holds a single class") {}
};

class TooFewMinority : public ValidationError {
 public:
  explicit TooFewMinority(std::size_t n)
      : ValidationError("SMOTE needs at least 2 minority samples, got " +
                        std::to_string(n)) {}
};

// mlp
class NonFiniteInput : public ValidationError {
 public:
  NonFiniteInput() : ValidationError("non-finite input vector") {}
};

class NonFiniteGradient : public ValidationError {
 public:
  NonFiniteGradient() : ValidationError("non-finite gradient") {}
};

class StaleCache : public ValidationError {
 public:
  StaleCache()
      : ValidationError("forward cache does not belong to current model") {}
};

class EmptyDataset : public ValidationError {
 public:
  EmptyDataset() : ValidationError("cannot train on an empty dataset") {}
};

class ModelFormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// evaluator
class LengthMismatch : public ValidationError {
 public:
  LengthMismatch(std::size_t a, std::size_t b)
      : ValidationError("length mismatch: " + std::to_string(a) + " vs " +
                        std::to_string(b)) {}
};

}  // namespace teluref

#endif  // TELUREF_ERROR_H_
