#pragma once

#include <string>

namespace elenchus {

enum class SzsKind : std::uint8_t {
  Theorem,
  NonTheorem,
  GaveUp,
  Timeout,
  Inappropriate,
  Error,
};

/// SZS result with the reason carried alongside (e.g. GaveUp "depth").
struct SzsStatus {
  SzsKind kind;
  std::string reason;

  static SzsStatus theorem() { return {SzsKind::Theorem, ""}; }
  static SzsStatus non_theorem() { return {SzsKind::NonTheorem, ""}; }
  static SzsStatus gave_up(std::string why) { return {SzsKind::GaveUp, std::move(why)}; }
  static SzsStatus timeout() { return {SzsKind::Timeout, "timeout"}; }
  static SzsStatus inappropriate(std::string why) {
    return {SzsKind::Inappropriate, std::move(why)};
  }
  static SzsStatus error(std::string why) { return {SzsKind::Error, std::move(why)}; }

  /// Token used on the SZS status line and in CSV output.
  std::string token() const {
    switch (kind) {
      case SzsKind::Theorem: return "Theorem";
      case SzsKind::NonTheorem: return "Non-Theorem";
      case SzsKind::GaveUp: return "GaveUp";
      case SzsKind::Timeout: return "Timeout";
      case SzsKind::Inappropriate: return "Inappropriate";
      case SzsKind::Error: return "Error";
    }
    return "Error";
  }

  bool decided() const { return kind == SzsKind::Theorem || kind == SzsKind::NonTheorem; }
};

}  // namespace elenchus
