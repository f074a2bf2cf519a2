#pragma once

#include <stdexcept>
#include <string>

namespace secondsound {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonInvertibleF : Error {
    explicit NonInvertibleF(const std::string& what) : Error(what) {}
};

struct NonPositiveJ : Error {
    explicit NonPositiveJ(const std::string& what) : Error(what) {}
};

struct InvalidParameter : Error {
    explicit InvalidParameter(const std::string& what) : Error(what) {}
};

struct SingularK : Error {
    explicit SingularK(const std::string& what) : Error(what) {}
};

struct SingularT : Error {
    explicit SingularT(const std::string& what) : Error(what) {}
};

struct NotARotation : Error {
    explicit NotARotation(const std::string& what) : Error(what) {}
};

struct EvaluationFailed : Error {
    explicit EvaluationFailed(const std::string& what) : Error(what) {}
};

// Simulator failures.
struct NegativeTemperature : Error {
    explicit NegativeTemperature(const std::string& what) : Error(what) {}
};

struct SingularHeatCapacity : Error {
    explicit SingularHeatCapacity(const std::string& what) : Error(what) {}
};

struct CFLViolation : Error {
    explicit CFLViolation(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace secondsound
