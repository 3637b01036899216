#pragma once

#include <stdexcept>
#include <string>

namespace ideolab {

// Base type for every error the library raises on bad data or bad config.
// Callers that only need "data/model error vs everything else" catch this.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct MalformedRow : Error {
  std::size_t row;  // 1-based data row number (header not counted)
  MalformedRow(std::size_t row_, const std::string& what)
      : Error("row " + std::to_string(row_) + ": " + what), row(row_) {}
};

struct UnknownFlair : Error {
  explicit UnknownFlair(const std::string& flair)
      : Error("unknown flair: \"" + flair + "\"") {}
};

struct UnknownLabel : Error {
  explicit UnknownLabel(const std::string& what) : Error(what) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& what) : Error(what) {}
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& what) : Error(what) {}
};

struct ZeroMatrix : Error {
  explicit ZeroMatrix(const std::string& what) : Error(what) {}
};

struct EmptyVocabulary : Error {
  explicit EmptyVocabulary(const std::string& what) : Error(what) {}
};

struct InconsistentDimension : Error {
  explicit InconsistentDimension(const std::string& what) : Error(what) {}
};

struct DuplicateToken : Error {
  explicit DuplicateToken(const std::string& token)
      : Error("duplicate token: \"" + token + "\"") {}
};

struct SingleClass : Error {
  explicit SingleClass(const std::string& what) : Error(what) {}
};

struct MissingClass : Error {
  explicit MissingClass(const std::string& what) : Error(what) {}
};

struct EmptyTrainingSet : Error {
  explicit EmptyTrainingSet(const std::string& what) : Error(what) {}
};

struct NonFinite : Error {
  explicit NonFinite(const std::string& what) : Error(what) {}
};

struct DegenerateLabels : Error {
  explicit DegenerateLabels(const std::string& what) : Error(what) {}
};

struct TooFewRows : Error {
  explicit TooFewRows(const std::string& what) : Error(what) {}
};

struct TooFewUsers : Error {
  explicit TooFewUsers(const std::string& what) : Error(what) {}
};

struct ConfigInvalid : Error {
  explicit ConfigInvalid(const std::string& what) : Error(what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace ideolab
