#pragma once

#include <stdexcept>
#include <string>

namespace lcatf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LCATF_DEFINE_ERROR(Name)               \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(#Name ": " + what) {}          \
  }

LCATF_DEFINE_ERROR(EmptyGroup);
LCATF_DEFINE_ERROR(NonDivisor);
LCATF_DEFINE_ERROR(GroupMismatch);
LCATF_DEFINE_ERROR(NonPositiveExponent);
LCATF_DEFINE_ERROR(EmptyWindow);
LCATF_DEFINE_ERROR(ZeroWindow);
LCATF_DEFINE_ERROR(NotHermitian);
LCATF_DEFINE_ERROR(DegenerateSpectrum);
LCATF_DEFINE_ERROR(ConfigInvalid);
LCATF_DEFINE_ERROR(ToleranceExceeded);

#undef LCATF_DEFINE_ERROR

/// Raised when a Gabor system fails the lower frame bound. Carries the
/// bounds that were measured.
class NotAFrame : public Error {
 public:
  NotAFrame(double lower, double upper)
      : Error("NotAFrame: lower frame bound " + std::to_string(lower) +
              " vs upper " + std::to_string(upper)),
        lower_(lower),
        upper_(upper) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

}  // namespace lcatf
