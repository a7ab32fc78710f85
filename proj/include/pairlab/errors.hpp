#pragma once

#include <stdexcept>
#include <string>

namespace pairlab {

enum class Err {
  OutOfRange,
  SizeMismatch,
  InvalidSymbol,
  BadParams,
  NonMonotonicTimestamps,
  MalformedTrace,
  TooFewEvents,
  EmptyTrace,
  DegenerateTrace,
  NoSilenceFound,
  LengthMismatch,
  DegenerateDataset,
  CryptoFailure,
  Io,
  Config,
};

const char* err_name(Err c);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err c, const std::string& msg) { throw Error(c, msg); }

}  // namespace pairlab
