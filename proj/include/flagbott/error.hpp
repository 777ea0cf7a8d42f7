#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace flagbott {

enum class ErrorCode {
  kDimension,
  kNotUnimodular,
  kInvalidRayLabel,
  kInvalidChain,
  kInvalidDimension,
  kInvalidIndices,
  kSamplingExhausted,
  kNotInvertible,
  kEnumerationTooLarge,
  kInvalidStagePair,
  kOracleFailure,
  kNotSimplicial,
  kInvalidTower,
  kInvalidArgument,
  kParse,
};

const char* to_string(ErrorCode code);

// Base of every exception thrown by the library. The code is what the C API
// reports; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NotUnimodular : public Error {
 public:
  explicit NotUnimodular(boost::multiprecision::cpp_int det)
      : Error(ErrorCode::kNotUnimodular,
              "matrix is not unimodular: det = " + det.str()),
        det_(std::move(det)) {}

  const boost::multiprecision::cpp_int& determinant() const { return det_; }

 private:
  boost::multiprecision::cpp_int det_;
};

class EnumerationTooLarge : public Error {
 public:
  EnumerationTooLarge(boost::multiprecision::cpp_int count, std::uint64_t cap)
      : Error(ErrorCode::kEnumerationTooLarge,
              "enumeration of " + count.str() +
                  " maximal cones exceeds the cap of " + std::to_string(cap)),
        count_(std::move(count)),
        cap_(cap) {}

  const boost::multiprecision::cpp_int& count() const { return count_; }
  std::uint64_t cap() const { return cap_; }

 private:
  boost::multiprecision::cpp_int count_;
  std::uint64_t cap_;
};

}  // namespace flagbott
