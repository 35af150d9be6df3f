#ifndef SGTEST_ERRORS_HPP
#define SGTEST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sgt {

// Base class for every error this library raises on bad inputs or
// undefined statistics. Callers that only need coarse handling can
// catch sgt::Error; the CLI maps DegenerateGraph to its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SGTEST_DEFINE_ERROR(Name)     \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  }

SGTEST_DEFINE_ERROR(NodeOutOfRange);
SGTEST_DEFINE_ERROR(SelfLoop);
SGTEST_DEFINE_ERROR(ParseError);
SGTEST_DEFINE_ERROR(GraphTooSmall);
SGTEST_DEFINE_ERROR(DegenerateGraph);
SGTEST_DEFINE_ERROR(BadSampleSize);
SGTEST_DEFINE_ERROR(BadProbability);
SGTEST_DEFINE_ERROR(BadPartition);
SGTEST_DEFINE_ERROR(BadTheta);
SGTEST_DEFINE_ERROR(BadParameter);
SGTEST_DEFINE_ERROR(BadFeatureFunction);
SGTEST_DEFINE_ERROR(EmptyVector);
SGTEST_DEFINE_ERROR(ConfigError);

#undef SGTEST_DEFINE_ERROR

}  // namespace sgt

#endif  // SGTEST_ERRORS_HPP
