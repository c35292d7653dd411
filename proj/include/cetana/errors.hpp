#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cetana {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class RegistryMismatchError : public Error {
public:
  using Error::Error;
};

class TimeMismatchError : public Error {
public:
  using Error::Error;
};

class CapacityExceededError : public Error {
public:
  using Error::Error;
};

class OutOfRangeError : public Error {
public:
  using Error::Error;
};

class EmptyWindowError : public Error {
public:
  using Error::Error;
};

class LoopMismatchError : public Error {
public:
  using Error::Error;
};

class UnknownWorldKindError : public Error {
public:
  using Error::Error;
};

class EncoderMismatchError : public Error {
public:
  using Error::Error;
};

class IndexOutOfTraceError : public Error {
public:
  using Error::Error;
};

// Step failure propagated out of a run loop, tagged with the tick at which
// the step raised.
class RunError : public Error {
public:
  RunError(std::int64_t tick, const std::string& what)
      : Error("tick " + std::to_string(tick) + ": " + what), tick_(tick) {}
  std::int64_t tick() const { return tick_; }

private:
  std::int64_t tick_;
};

}  // namespace cetana
