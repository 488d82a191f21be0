#pragma once

#include "rcanav/context.hpp"
#include "rcanav/naming.hpp"
#include "rcanav/neighborhood.hpp"
#include "rcanav/relational_algebra.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rcanav {

enum class Direction { up, down, relational };

/// "up" | "down" | "relational"; throws Error{invalid_request}.
Direction parse_direction(std::string_view text);
std::string_view to_string(Direction d);

/// One exploration: a private snapshot that only grows, a strategy, the
/// current focus and neighbourhood, a name registry and a replayable log.
class Session {
 public:
  struct LogEntry {
    nlohmann::json action;
    std::string context;
    std::vector<std::string> focus_extent;
  };

  /// Throws Error{unknown_context}, Error{unknown_relation} and
  /// Error{invalid_strategy} (entry whose relation does not start at `context`).
  Session(RelationalContextFamily rcf, std::string context, Strategy strategy);

  /// Focus = concept of the attribute query in the active context, then one
  /// step. Terms are intrinsic attribute names or relational display strings
  /// ("∃ support.(C_DBMS_4)") naming concepts already in the registry. An empty
  /// extent yields the bottom concept and a "warning" field.
  nlohmann::json query(const std::vector<std::string>& attributes);

  /// Moves to a cover of the current neighbourhood; relational moves switch
  /// the active context to the relation's target. Throws Error{stale_target}.
  nlohmann::json step(Direction direction, const std::string& target);

  /// Applies a logged action (as produced in log()).
  nlohmann::json apply(const nlohmann::json& action);

  const std::vector<LogEntry>& log() const noexcept { return log_; }
  nlohmann::json log_json() const;

  const RelationalContextFamily& snapshot() const noexcept { return snapshot_; }
  const std::string& active_context() const noexcept { return active_; }
  const Strategy& strategy() const noexcept { return strategy_; }
  const NameRegistry& registry() const noexcept { return registry_; }
  const std::optional<Neighborhood>& current() const noexcept { return current_; }

 private:
  nlohmann::json run(const Concept& focus, nlohmann::json action, bool empty_query);
  Attribute resolve_term(const std::string& term) const;

  RelationalContextFamily snapshot_;
  std::string active_;
  Strategy strategy_;
  NameRegistry registry_;
  std::optional<Neighborhood> current_;
  std::vector<LogEntry> log_;
};

/// Re-runs a session log against the original family; returns the responses.
std::vector<nlohmann::json> replay(const RelationalContextFamily& rcf, const std::string& context,
                                   const Strategy& strategy,
                                   const std::vector<Session::LogEntry>& log);

/// In-memory store of loaded families and sessions. Sessions are isolated
/// copies; requests on one session are serialised, different sessions run
/// concurrently.
class ExploreService {
 public:
  std::string add_rcf(RelationalContextFamily rcf);
  std::shared_ptr<const RelationalContextFamily> rcf(const std::string& id) const;
  nlohmann::json describe_rcf(const std::string& id) const;

  std::string create_session(const std::string& rcf_id, const std::string& context,
                             Strategy strategy);
  nlohmann::json query(const std::string& session_id, const std::vector<std::string>& attributes);
  nlohmann::json step(const std::string& session_id, Direction direction,
                      const std::string& target);
  nlohmann::json log(const std::string& session_id);

 private:
  struct Slot {
    std::mutex mutex;
    Session session;
    template <typename... Args>
    explicit Slot(Args&&... args) : session(std::forward<Args>(args)...) {}
  };
  std::shared_ptr<Slot> slot(const std::string& session_id) const;

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const RelationalContextFamily>> rcfs_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::size_t next_rcf_ = 0;
  std::size_t next_session_ = 0;
};

/// {"error": {"code", "message"}} plus "line"/"column"/"pointer" for parse errors.
nlohmann::json error_json(const std::exception& e);

}  // namespace rcanav
