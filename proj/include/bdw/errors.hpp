#pragma once

#include <stdexcept>
#include <string>

namespace bdw {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BDW_DEFINE_ERROR(Name)                 \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(std::string(#Name ": ") + what) {} \
  }

BDW_DEFINE_ERROR(DomainError);
BDW_DEFINE_ERROR(ModeMismatch);
BDW_DEFINE_ERROR(NonConvergent);
BDW_DEFINE_ERROR(RangeError);
BDW_DEFINE_ERROR(CountTooSmall);
BDW_DEFINE_ERROR(InvalidPartition);
BDW_DEFINE_ERROR(DimensionError);
BDW_DEFINE_ERROR(ConvergenceFailure);
BDW_DEFINE_ERROR(ZeroVector);
BDW_DEFINE_ERROR(SectorOverflow);
BDW_DEFINE_ERROR(OverlapError);
BDW_DEFINE_ERROR(NotHighestWeight);
BDW_DEFINE_ERROR(SingularRapidity);
BDW_DEFINE_ERROR(PoleError);
BDW_DEFINE_ERROR(WindowTooSmall);
BDW_DEFINE_ERROR(BasisMismatch);

#undef BDW_DEFINE_ERROR

}  // namespace bdw
