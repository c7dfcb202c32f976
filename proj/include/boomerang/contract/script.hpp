#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "boomerang/contract/contract.hpp"

namespace boomerang::contract {

/// Output scripts of the opcode-based construction, assuming an ECEXP<g>
/// opcode that pops x and pushes g^x.
enum class ScriptKind {
  SettleFunds,  // funds output on the settlement tx: forward component
  Retaliate,    // funds output on the retaliation tx: reverse component
  Fee,          // fee output on the settlement tx
};

std::string_view to_string(ScriptKind kind);
/// "settle_funds" | "retaliate" | "fee"; throws UsageError otherwise.
ScriptKind script_kind_from_string(std::string_view name);

/// Hex-encoded values substituted into the templates. Which fields are
/// required depends on the kind.
struct ScriptPlaceholders {
  std::optional<std::string> h_pi;          // H(p_i)
  std::optional<std::string> h_alpha0;      // H(alpha_0)
  std::optional<std::string> pk_p1;
  std::optional<std::string> pk_p2;
  std::optional<std::string> pk_p1_tmp;     // one-time keys signing the retaliation tx
  std::optional<std::string> pk_p2_tmp;
  std::optional<std::string> locktime_fwd;  // T0 + delta_fwd
  std::optional<std::string> locktime_rev;  // T0 + delta_rev
};

/// Emits the script text. Throws UsageError when a required placeholder is
/// missing or not hex. Output is a pure function of the inputs.
std::string emit_script(ScriptKind kind, const ScriptPlaceholders& placeholders);

/// 4-byte big-endian hex of a timestamp in whole seconds.
std::string locktime_hex(Timestamp t);

/// Fills the challenge and locktime placeholders from a deployed contract.
ScriptPlaceholders placeholders_for(const BoomerangContract& c);

}  // namespace boomerang::contract
