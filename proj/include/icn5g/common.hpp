#ifndef ICN5G_COMMON_HPP
#define ICN5G_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace icn5g {

// Simulated time, integer milliseconds (floating point would make traces diverge).
using TimeMs = std::int64_t;

using NodeId = std::string;
using TunnelId = std::string;
using SessionId = std::uint32_t;
using FaceId = int;
using Nonce = std::uint64_t;
using CorrelationId = std::uint64_t;

// Base for all simulator errors; specific errors derive so tests can
// assert on the exact failure kind.
class SimError : public std::runtime_error {
public:
  explicit SimError(const std::string& what)
    : std::runtime_error(what)
  {
  }
};

#define ICN5G_DEFINE_ERROR(Type)              \
  class Type : public SimError {              \
  public:                                     \
    explicit Type(const std::string& what)    \
      : SimError(#Type ": " + what)           \
    {                                         \
    }                                         \
  }

ICN5G_DEFINE_ERROR(MalformedName);
ICN5G_DEFINE_ERROR(UnknownTunnel);
ICN5G_DEFINE_ERROR(NoRoute);
ICN5G_DEFINE_ERROR(DuplicateNonce);
ICN5G_DEFINE_ERROR(RoleViolation);
ICN5G_DEFINE_ERROR(NotFound);
ICN5G_DEFINE_ERROR(NoMatch);
ICN5G_DEFINE_ERROR(DanglingTunnel);
ICN5G_DEFINE_ERROR(NotAttached);
ICN5G_DEFINE_ERROR(NoSessionTunnel);
ICN5G_DEFINE_ERROR(TimeTravel);
ICN5G_DEFINE_ERROR(NoLink);
ICN5G_DEFINE_ERROR(NoSlice);
ICN5G_DEFINE_ERROR(NoCandidate);
ICN5G_DEFINE_ERROR(Unresolved);
ICN5G_DEFINE_ERROR(ParseError);
ICN5G_DEFINE_ERROR(ValidationError);
ICN5G_DEFINE_ERROR(IoError);

#undef ICN5G_DEFINE_ERROR

} // namespace icn5g

#endif // ICN5G_COMMON_HPP
