#include "rcanav/error.hpp"

namespace rcanav {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::unknown_object: return "unknown_object";
    case ErrorCode::unknown_attribute: return "unknown_attribute";
    case ErrorCode::unknown_relation: return "unknown_relation";
    case ErrorCode::unknown_context: return "unknown_context";
    case ErrorCode::invalid_strategy: return "invalid_strategy";
    case ErrorCode::not_closed: return "not_closed";
    case ErrorCode::empty_member: return "empty_member";
    case ErrorCode::syntax: return "syntax";
    case ErrorCode::dangling_endpoint: return "dangling_endpoint";
    case ErrorCode::duplicate_name: return "duplicate_name";
    case ErrorCode::unknown_field: return "unknown_field";
    case ErrorCode::unknown_rcf: return "unknown_rcf";
    case ErrorCode::unknown_session: return "unknown_session";
    case ErrorCode::stale_target: return "stale_target";
    case ErrorCode::invalid_request: return "invalid_request";
  }
  return "unknown";
}

}  // namespace rcanav
