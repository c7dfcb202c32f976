#include "boomerang/contract/script.hpp"

#include <chrono>
#include <cstdint>

#include "boomerang/errors.hpp"

namespace boomerang::contract {

namespace {

const std::string& require(const std::optional<std::string>& value, std::string_view name) {
  if (!value) throw UsageError("missing script placeholder: " + std::string(name));
  if (!group::is_hex(*value)) throw UsageError("script placeholder " + std::string(name) + " is not hex");
  return *value;
}

std::string push(const std::string& hex) { return "PUSH<" + hex + ">"; }

}  // namespace

std::string_view to_string(ScriptKind kind) {
  switch (kind) {
    case ScriptKind::SettleFunds: return "settle_funds";
    case ScriptKind::Retaliate: return "retaliate";
    case ScriptKind::Fee: return "fee";
  }
  return "?";
}

ScriptKind script_kind_from_string(std::string_view name) {
  if (name == "settle_funds") return ScriptKind::SettleFunds;
  if (name == "retaliate") return ScriptKind::Retaliate;
  if (name == "fee") return ScriptKind::Fee;
  throw UsageError("unknown script kind: " + std::string(name));
}

std::string emit_script(ScriptKind kind, const ScriptPlaceholders& ph) {
  std::string out;
  switch (kind) {
    case ScriptKind::SettleFunds: {
      const auto& h = require(ph.h_pi, "h_pi");
      const auto& t1 = require(ph.pk_p1_tmp, "pk_p1_tmp");
      const auto& t2 = require(ph.pk_p2_tmp, "pk_p2_tmp");
      const auto& lock = require(ph.locktime_fwd, "locktime_fwd");
      const auto& p1 = require(ph.pk_p1, "pk_p1");
      out += "IF\n";
      out += "    ECEXP<g>  " + push(h) + "  EQUALVERIFY\n";
      out += "    2  " + push(t1) + "  " + push(t2) + "  2  CHECKMULTISIGVERIFY\n";
      out += "ELSE\n";
      out += "    " + push(lock) + "  CHECKLOCKTIMEVERIFY  DROP\n";
      out += "    " + push(p1) + "  CHECKSIGVERIFY\n";
      out += "ENDIF\n";
      break;
    }
    case ScriptKind::Retaliate: {
      const auto& h = require(ph.h_alpha0, "h_alpha0");
      const auto& p1 = require(ph.pk_p1, "pk_p1");
      const auto& lock = require(ph.locktime_rev, "locktime_rev");
      const auto& p2 = require(ph.pk_p2, "pk_p2");
      out += "IF\n";
      out += "    ECEXP<g>  " + push(h) + "  EQUALVERIFY\n";
      out += "    " + push(p1) + "  CHECKSIGVERIFY\n";
      out += "ELSE\n";
      out += "    " + push(lock) + "  CHECKLOCKTIMEVERIFY  DROP\n";
      out += "    " + push(p2) + "  CHECKSIGVERIFY\n";
      out += "ENDIF\n";
      break;
    }
    case ScriptKind::Fee: {
      const auto& h = require(ph.h_pi, "h_pi");
      const auto& p2 = require(ph.pk_p2, "pk_p2");
      const auto& lock = require(ph.locktime_fwd, "locktime_fwd");
      const auto& p1 = require(ph.pk_p1, "pk_p1");
      out += "IF\n";
      out += "    ECEXP<g>  " + push(h) + "  EQUALVERIFY\n";
      out += "    " + push(p2) + "  CHECKSIGVERIFY\n";
      out += "ELSE\n";
      out += "    " + push(lock) + "  CHECKLOCKTIMEVERIFY  DROP\n";
      out += "    " + push(p1) + "  CHECKSIGVERIFY\n";
      out += "ENDIF\n";
      break;
    }
  }
  return out;
}

std::string locktime_hex(Timestamp t) {
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(t.time_since_epoch()).count();
  if (secs < 0 || secs > 0xffffffffLL) throw UsageError("locktime out of 32-bit range");
  const auto v = static_cast<std::uint32_t>(secs);
  const std::uint8_t bytes[4] = {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
                                 static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
  return group::to_hex(bytes);
}

ScriptPlaceholders placeholders_for(const BoomerangContract& c) {
  ScriptPlaceholders ph;
  ph.h_pi = c.forward_challenge().to_hex();
  ph.h_alpha0 = c.revert_challenge().to_hex();
  ph.locktime_fwd = locktime_hex(c.forward_deadline());
  ph.locktime_rev = locktime_hex(c.reverse_deadline());
  return ph;
}

}  // namespace boomerang::contract
