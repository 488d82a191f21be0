#include "rcanav/session.hpp"

#include "rcanav/error.hpp"
#include "rcanav/render.hpp"

#include <algorithm>

namespace rcanav {

using nlohmann::json;

Direction parse_direction(std::string_view text) {
  if (text == "up") return Direction::up;
  if (text == "down") return Direction::down;
  if (text == "relational") return Direction::relational;
  throw Error(ErrorCode::invalid_request,
              "direction must be up, down or relational, got '" + std::string(text) + "'");
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::up: return "up";
    case Direction::down: return "down";
    case Direction::relational: return "relational";
  }
  return "up";
}

Session::Session(RelationalContextFamily rcf, std::string context, Strategy strategy)
    : snapshot_(std::move(rcf)), active_(std::move(context)), strategy_(std::move(strategy)) {
  snapshot_.context(active_);
  for (const auto& entry : strategy_) {
    const auto& rel = snapshot_.relation(entry.relation);
    if (rel.source() != active_) {
      throw Error(ErrorCode::invalid_strategy, "relation " + rel.name() + " starts at context " +
                                                   rel.source() + ", not " + active_);
    }
  }
}

Attribute Session::resolve_term(const std::string& term) const {
  const auto& ctx = snapshot_.context(active_);
  if (ctx.has_intrinsic(term)) return Attribute(term);
  // "<op> <relation>.(<concept name>)"
  auto space = term.find(' ');
  auto open = term.rfind(".(");
  ScalingOperator op;
  if (space != std::string::npos && open != std::string::npos && open > space &&
      term.back() == ')' && parse_operator(term.substr(0, space), op)) {
    auto relation = term.substr(space + 1, open - space - 1);
    auto name = term.substr(open + 2, term.size() - open - 3);
    const auto* entry = registry_.resolve(name);
    auto rel = snapshot_.relations().find(relation);
    if (entry && rel != snapshot_.relations().end() && rel->second.source() == active_ &&
        rel->second.target() == entry->context) {
      return Attribute(make_relational(op, relation, entry->extent,
                                       intent_of(snapshot_, entry->context, entry->extent),
                                       snapshot_.generation() + 1));
    }
  }
  throw Error(ErrorCode::unknown_attribute,
              "unknown attribute '" + term + "' in context " + active_);
}

json Session::query(const std::vector<std::string>& attributes) {
  AttributeSet query;
  for (const auto& term : attributes) query.insert(resolve_term(term));
  Concept focus = concept_from_query(snapshot_, active_, query);
  bool empty = focus.extent.empty();
  if (empty) focus.extent = closure(snapshot_, active_, focus.extent);
  return run(focus, json{{"kind", "query"}, {"attributes", attributes}}, empty);
}

json Session::step(Direction direction, const std::string& target) {
  const auto* entry = registry_.resolve(target);
  std::optional<Concept> found;
  if (current_ && entry) {
    auto matches = [&](const Concept& c) {
      return c.home == entry->context && c.extent == entry->extent;
    };
    if (direction == Direction::up || direction == Direction::down) {
      const auto& side = direction == Direction::up ? current_->upper : current_->lower;
      auto it = std::find_if(side.begin(), side.end(), matches);
      if (it != side.end()) found = *it;
    } else {
      for (const auto& r : current_->relational) {
        if (matches(r.target)) found = r.target;
      }
    }
  }
  if (!found) {
    throw Error(ErrorCode::stale_target, "'" + target + "' is not a " +
                                             std::string(to_string(direction)) +
                                             " cover of the current focus; query again");
  }
  active_ = found->home;
  return run(*found,
             json{{"kind", "step"}, {"direction", to_string(direction)}, {"target", target}},
             false);
}

json Session::apply(const json& action) {
  const auto kind = action.at("kind").get<std::string>();
  if (kind == "query") return query(action.at("attributes").get<std::vector<std::string>>());
  if (kind == "step") {
    return step(parse_direction(action.at("direction").get<std::string>()),
                action.at("target").get<std::string>());
  }
  throw Error(ErrorCode::invalid_request, "unknown action '" + kind + "'");
}

json Session::run(const Concept& focus, json action, bool empty_query) {
  const FormalContext before = snapshot_.context(active_);
  StepResult result = rca_step(snapshot_, strategy_, focus);
  snapshot_ = std::move(result.rcf);

  // Concepts introduced by growth are named as one batch per target context.
  std::map<std::string, std::vector<ObjectSet>> introduced;
  for (const auto& attr : snapshot_.context(active_).relational_attributes()) {
    if (before.column(Attribute(attr))) continue;
    introduced[snapshot_.relation(attr.relation).target()].push_back(attr.target_extent);
  }
  for (auto& [ctx, extents] : introduced) registry_.register_batch(ctx, std::move(extents));

  const Neighborhood& n = result.neighborhood;
  registry_.name(n.focus.home, n.focus.extent);
  auto extents = [](const std::vector<Concept>& cs) {
    std::vector<ObjectSet> out;
    for (const auto& c : cs) out.push_back(c.extent);
    return out;
  };
  registry_.register_batch(n.focus.home, extents(n.upper));
  registry_.register_batch(n.focus.home, extents(n.lower));

  json response = neighborhood_json(n, snapshot_, registry_);
  response["step"] = log_.size() + 1;
  if (empty_query) response["warning"] = "empty_extent";

  log_.push_back(LogEntry{std::move(action), n.focus.home,
                          snapshot_.context(n.focus.home).names_of(n.focus.extent)});
  current_ = n;
  return response;
}

json Session::log_json() const {
  json entries = json::array();
  for (const auto& e : log_) {
    entries.push_back({{"action", e.action}, {"context", e.context}, {"focus", e.focus_extent}});
  }
  return json{{"entries", std::move(entries)}};
}

std::vector<json> replay(const RelationalContextFamily& rcf, const std::string& context,
                         const Strategy& strategy, const std::vector<Session::LogEntry>& log) {
  Session session(rcf, context, strategy);
  std::vector<json> out;
  for (const auto& entry : log) out.push_back(session.apply(entry.action));
  return out;
}

std::string ExploreService::add_rcf(RelationalContextFamily rcf) {
  std::lock_guard lock(mutex_);
  auto id = "rcf-" + std::to_string(++next_rcf_);
  rcfs_.emplace(id, std::make_shared<const RelationalContextFamily>(std::move(rcf)));
  return id;
}

std::shared_ptr<const RelationalContextFamily> ExploreService::rcf(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = rcfs_.find(id);
  if (it == rcfs_.end()) throw Error(ErrorCode::unknown_rcf, "unknown rcf '" + id + "'");
  return it->second;
}

json ExploreService::describe_rcf(const std::string& id) const {
  auto family = rcf(id);
  json contexts = json::array();
  for (const auto& [name, ctx] : family->contexts()) {
    contexts.push_back(
        {{"id", name}, {"objects", ctx.objects()}, {"attributes", ctx.intrinsic_attributes()}});
  }
  json relations = json::array();
  for (const auto& [name, rel] : family->relations()) {
    relations.push_back({{"name", name}, {"source", rel.source()}, {"target", rel.target()}});
  }
  return json{{"contexts", std::move(contexts)}, {"relations", std::move(relations)}};
}

std::string ExploreService::create_session(const std::string& rcf_id, const std::string& context,
                                           Strategy strategy) {
  auto family = rcf(rcf_id);
  auto created = std::make_shared<Slot>(*family, context, std::move(strategy));
  std::lock_guard lock(mutex_);
  auto id = "s-" + std::to_string(++next_session_);
  sessions_.emplace(id, std::move(created));
  return id;
}

std::shared_ptr<ExploreService::Slot> ExploreService::slot(const std::string& session_id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::unknown_session, "unknown session '" + session_id + "'");
  }
  return it->second;
}

json ExploreService::query(const std::string& session_id,
                           const std::vector<std::string>& attributes) {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  return s->session.query(attributes);
}

json ExploreService::step(const std::string& session_id, Direction direction,
                          const std::string& target) {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  return s->session.step(direction, target);
}

json ExploreService::log(const std::string& session_id) {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  return s->session.log_json();
}

json error_json(const std::exception& e) {
  json err{{"message", e.what()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    err["code"] = to_string(pe->code());
    if (pe->line()) {
      err["line"] = pe->line();
      err["column"] = pe->column();
    }
    if (!pe->pointer().empty()) err["pointer"] = pe->pointer();
  } else if (const auto* re = dynamic_cast<const Error*>(&e)) {
    err["code"] = to_string(re->code());
  } else {
    err["code"] = "internal";
  }
  return json{{"error", std::move(err)}};
}

}  // namespace rcanav
