#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsl {

// Base class for every exception thrown by the library.  Each error carries a
// stable machine-readable code (`name()`) next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define QSL_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name, what) {}    \
  }

// Input validation.
QSL_DEFINE_ERROR(NotHermitian);     // matrix fails the Hermiticity check
QSL_DEFINE_ERROR(NotPositive);      // eigenvalue below the clipping floor
QSL_DEFINE_ERROR(TraceError);       // trace not within tolerance of one
QSL_DEFINE_ERROR(DimensionError);   // incompatible or unsupported dimensions
QSL_DEFINE_ERROR(DomainError);      // scalar argument outside its domain

// Numerical preconditions.
QSL_DEFINE_ERROR(SingularPower);      // negative power of a rank-deficient state
QSL_DEFINE_ERROR(RequiresFullRank);   // operation needs lambda_min > rank_tol
QSL_DEFINE_ERROR(SingularPhi);        // amplification prefactor not positive
QSL_DEFINE_ERROR(NonPositivePurity);  // relative purity too small to take a log
QSL_DEFINE_ERROR(ConvergenceError);   // iterative eigensolver failed to converge
QSL_DEFINE_ERROR(ZeroHorizon);        // time average over a non-positive horizon
QSL_DEFINE_ERROR(QuadratureError);    // sample count incompatible with the rule

// Configuration / CLI contract.
QSL_DEFINE_ERROR(ConfigError);  // malformed or inconsistent run configuration

#undef QSL_DEFINE_ERROR

// Non-fatal conditions attached to reports instead of thrown.  Values are
// bit flags so a report can carry several at once.
enum class ReportFlag : std::uint32_t {
  None = 0,
  // A quantity in the report diverged (support loss, vanishing overlap, ...).
  Divergent = 1u << 0,
  // The drive never moves the state (zero generator / zero rotation angle).
  DegenerateDrive = 1u << 1,
  // The amplification prefactor 1 + (1-alpha) ln(lambda_min) dropped below
  // the positivity threshold, so the sandwiched bound is not applicable.
  SingularPhi = 1u << 2,
};

constexpr ReportFlag operator|(ReportFlag a, ReportFlag b) {
  return static_cast<ReportFlag>(static_cast<std::uint32_t>(a) |
                                 static_cast<std::uint32_t>(b));
}
constexpr ReportFlag operator&(ReportFlag a, ReportFlag b) {
  return static_cast<ReportFlag>(static_cast<std::uint32_t>(a) &
                                 static_cast<std::uint32_t>(b));
}
inline ReportFlag& operator|=(ReportFlag& a, ReportFlag b) { return a = a | b; }
constexpr bool has_flag(ReportFlag set, ReportFlag f) {
  return (set & f) != ReportFlag::None;
}

// Canonical text form used in CSV output: flag names joined by ';'.
std::string flags_to_string(ReportFlag flags);

}  // namespace qsl
