#include "rcanav/rcf_io.hpp"

#include "rcanav/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace rcanav {

using nlohmann::json;

namespace {

constexpr std::string_view kJsonFormat = "rcf/1";
constexpr std::string_view kTableHeader = "format rcf-table 1";

using Pairs = std::vector<std::pair<std::string, std::string>>;

struct Position {
  std::size_t line = 0;
  std::size_t column = 0;
};

Position locate(std::string_view text, std::size_t byte) {
  Position p{1, 1};
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

[[noreturn]] void fail(ErrorCode code, const std::string& message, const std::string& pointer) {
  throw ParseError(code, message + " at " + pointer, 0, 0, pointer);
}

void only_fields(const json& object, std::initializer_list<std::string_view> allowed,
                 const std::string& pointer) {
  if (!object.is_object()) fail(ErrorCode::syntax, "expected an object", pointer);
  for (const auto& item : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      fail(ErrorCode::unknown_field, "unknown field '" + item.key() + "'", pointer + "/" + item.key());
    }
  }
}

const json& required(const json& object, const char* key, const std::string& pointer) {
  auto it = object.find(key);
  if (it == object.end()) {
    fail(ErrorCode::syntax, std::string("missing field '") + key + "'", pointer);
  }
  return *it;
}

std::string string_at(const json& value, const std::string& pointer) {
  if (!value.is_string()) fail(ErrorCode::syntax, "expected a string", pointer);
  return value.get<std::string>();
}

std::vector<std::string> strings_at(const json& value, const std::string& pointer) {
  if (!value.is_array()) fail(ErrorCode::syntax, "expected an array of strings", pointer);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(string_at(value[i], pointer + "/" + std::to_string(i)));
  }
  return out;
}

Pairs pairs_at(const json& value, const std::string& pointer) {
  if (!value.is_array()) fail(ErrorCode::syntax, "expected an array of pairs", pointer);
  Pairs out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    auto p = pointer + "/" + std::to_string(i);
    if (!value[i].is_array() || value[i].size() != 2) fail(ErrorCode::syntax, "expected a pair", p);
    out.emplace_back(string_at(value[i][0], p + "/0"), string_at(value[i][1], p + "/1"));
  }
  return out;
}

// Re-raises model validation errors as parse errors at `pointer`.
template <typename F>
void at(const std::string& pointer, F&& f) {
  try {
    f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.code(), std::string(e.what()) + " at " + pointer, 0, 0, pointer);
  }
}

}  // namespace

RelationalContextFamily parse_rcf_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto pos = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(ErrorCode::syntax,
                     "JSON syntax error at line " + std::to_string(pos.line) + ", column " +
                         std::to_string(pos.column),
                     pos.line, pos.column);
  }
  only_fields(doc, {"format", "contexts", "relations"}, "");
  auto format = string_at(required(doc, "format", ""), "/format");
  if (format != kJsonFormat) {
    fail(ErrorCode::syntax, "unsupported format '" + format + "'", "/format");
  }

  RelationalContextFamily rcf;
  const json& contexts = required(doc, "contexts", "");
  if (!contexts.is_array()) fail(ErrorCode::syntax, "expected an array", "/contexts");
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    auto p = "/contexts/" + std::to_string(i);
    const json& c = contexts[i];
    only_fields(c, {"id", "objects", "attributes", "incidence", "rows"}, p);
    auto id = string_at(required(c, "id", p), p + "/id");
    auto objects = strings_at(required(c, "objects", p), p + "/objects");
    auto attributes = strings_at(required(c, "attributes", p), p + "/attributes");
    Pairs incidence;
    if (c.contains("incidence") && c.contains("rows")) {
      fail(ErrorCode::syntax, "use either 'incidence' or 'rows'", p);
    }
    if (c.contains("incidence")) incidence = pairs_at(c["incidence"], p + "/incidence");
    if (c.contains("rows")) {
      const json& rows = c["rows"];
      if (!rows.is_object()) fail(ErrorCode::syntax, "expected an object", p + "/rows");
      for (const auto& row : rows.items()) {
        for (const auto& a : strings_at(row.value(), p + "/rows/" + row.key())) {
          incidence.emplace_back(row.key(), a);
        }
      }
    }
    at(p, [&] { rcf.add_context(FormalContext(id, objects, attributes, incidence)); });
  }

  if (doc.contains("relations")) {
    const json& relations = doc["relations"];
    if (!relations.is_array()) fail(ErrorCode::syntax, "expected an array", "/relations");
    for (std::size_t i = 0; i < relations.size(); ++i) {
      auto p = "/relations/" + std::to_string(i);
      const json& r = relations[i];
      only_fields(r, {"name", "source", "target", "pairs"}, p);
      auto name = string_at(required(r, "name", p), p + "/name");
      auto source = string_at(required(r, "source", p), p + "/source");
      auto target = string_at(required(r, "target", p), p + "/target");
      Pairs pairs;
      if (r.contains("pairs")) pairs = pairs_at(r["pairs"], p + "/pairs");
      at(p, [&] { rcf.add_relation(name, source, target, pairs); });
    }
  }
  return rcf;
}

namespace {

struct Cell {
  std::string text;
  std::size_t column = 0;
};

struct Line {
  std::string_view text;
  std::size_t number = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void fail_at(ErrorCode code, const std::string& message, std::size_t line,
                          std::size_t column) {
  throw ParseError(code,
                   message + " (line " + std::to_string(line) + ", column " +
                       std::to_string(column) + ")",
                   line, column);
}

std::vector<Cell> split_row(const Line& line) {
  std::string_view raw = line.text;
  auto first = raw.find('|');
  auto last = raw.rfind('|');
  if (first == std::string_view::npos || first == last || !trim(raw.substr(last + 1)).empty()) {
    fail_at(ErrorCode::syntax, "table rows must start and end with '|'", line.number, first + 1);
  }
  std::vector<Cell> cells;
  std::size_t start = first + 1;
  while (start <= last) {
    auto end = raw.find('|', start);
    auto content = raw.substr(start, end - start);
    auto trimmed = trim(content);
    std::size_t lead = trimmed.empty() ? 0 : static_cast<std::size_t>(trimmed.data() - content.data());
    cells.push_back(Cell{std::string(trimmed), start + lead + 1});
    start = end + 1;
    if (end == last) break;
  }
  return cells;
}

bool is_cross(const Cell& cell, std::size_t line) {
  if (cell.text == "x" || cell.text == "X") return true;
  if (cell.text.empty() || cell.text == "." || cell.text == "-") return false;
  fail_at(ErrorCode::syntax, "cell must be 'x' or empty, got '" + cell.text + "'", line,
          cell.column);
}

struct TableBlock {
  enum Kind { context, relation } kind = context;
  std::string name;
  std::string source;
  std::string target;
  std::size_t line = 0;
  std::vector<std::pair<Line, std::vector<Cell>>> rows;
};

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace

RelationalContextFamily parse_rcf_table(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 1;
  for (std::size_t start = 0; start <= text.size(); ++number) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(Line{text.substr(start, end - start), number});
    start = end + 1;
  }

  bool header_seen = false;
  std::vector<TableBlock> blocks;
  for (const auto& line : lines) {
    auto content = trim(line.text);
    if (content.empty() || content.front() == '#') continue;
    std::size_t indent = static_cast<std::size_t>(content.data() - line.text.data()) + 1;
    if (!header_seen) {
      if (content != kTableHeader) {
        fail_at(ErrorCode::syntax, "expected '" + std::string(kTableHeader) + "'", line.number,
                indent);
      }
      header_seen = true;
      continue;
    }
    if (content.front() == '|') {
      if (blocks.empty()) {
        fail_at(ErrorCode::syntax, "table row outside a context or relation block", line.number,
                indent);
      }
      blocks.back().rows.emplace_back(line, split_row(line));
      continue;
    }
    auto words = split_words(content);
    if (words[0] == "context") {
      if (words.size() != 2) {
        fail_at(ErrorCode::syntax, "expected 'context <id>'", line.number, indent);
      }
      blocks.push_back(TableBlock{TableBlock::context, words[1], {}, {}, line.number, {}});
    } else if (words[0] == "relation") {
      // relation <name>: <source> -> <target>
      if (words.size() != 5 || words[1].size() < 2 || words[1].back() != ':' || words[3] != "->") {
        fail_at(ErrorCode::syntax, "expected 'relation <name>: <source> -> <target>'", line.number,
                indent);
      }
      blocks.push_back(TableBlock{TableBlock::relation, words[1].substr(0, words[1].size() - 1),
                                  words[2], words[4], line.number, {}});
    } else {
      fail_at(ErrorCode::unknown_field, "unknown directive '" + words[0] + "'", line.number, indent);
    }
  }
  if (!header_seen) fail_at(ErrorCode::syntax, "empty document", 1, 1);

  RelationalContextFamily rcf;
  auto guarded = [](std::size_t line, std::size_t column, auto&& f) {
    try {
      f();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail_at(e.code(), e.what(), line, column);
    }
  };

  // Contexts first so relations may precede the contexts they reference.
  for (const auto& block : blocks) {
    if (block.kind != TableBlock::context) continue;
    std::vector<std::string> objects, attributes;
    Pairs incidence;
    if (!block.rows.empty()) {
      const auto& header = block.rows.front().second;
      std::set<std::string> seen;
      for (std::size_t i = 1; i < header.size(); ++i) {
        if (!seen.insert(header[i].text).second) {
          fail_at(ErrorCode::duplicate_name, "duplicate attribute '" + header[i].text + "'",
                  block.rows.front().first.number, header[i].column);
        }
        attributes.push_back(header[i].text);
      }
      std::set<std::string> seen_objects;
      for (std::size_t r = 1; r < block.rows.size(); ++r) {
        const auto& [line, cells] = block.rows[r];
        if (cells.size() != header.size()) {
          fail_at(ErrorCode::syntax, "row has " + std::to_string(cells.size()) +
                                         " cells, header has " + std::to_string(header.size()),
                  line.number, cells.front().column);
        }
        if (!seen_objects.insert(cells[0].text).second) {
          fail_at(ErrorCode::duplicate_name, "duplicate object '" + cells[0].text + "'",
                  line.number, cells[0].column);
        }
        objects.push_back(cells[0].text);
        for (std::size_t i = 1; i < cells.size(); ++i) {
          if (is_cross(cells[i], line.number)) incidence.emplace_back(cells[0].text, attributes[i - 1]);
        }
      }
    }
    guarded(block.line, 1,
            [&] { rcf.add_context(FormalContext(block.name, objects, attributes, incidence)); });
  }

  for (const auto& block : blocks) {
    if (block.kind != TableBlock::relation) continue;
    Pairs pairs;
    const FormalContext* source = nullptr;
    const FormalContext* target = nullptr;
    guarded(block.line, 1, [&] {
      try {
        source = &rcf.context(block.source);
        target = &rcf.context(block.target);
      } catch (const Error& e) {
        throw Error(ErrorCode::dangling_endpoint, e.what());
      }
    });
    if (!block.rows.empty()) {
      const auto& header = block.rows.front().second;
      for (std::size_t i = 1; i < header.size(); ++i) {
        if (!target->object_index(header[i].text)) {
          fail_at(ErrorCode::dangling_endpoint,
                  "relation " + block.name + " references object '" + header[i].text +
                      "' missing from context " + block.target,
                  block.rows.front().first.number, header[i].column);
        }
      }
      for (std::size_t r = 1; r < block.rows.size(); ++r) {
        const auto& [line, cells] = block.rows[r];
        if (cells.size() != header.size()) {
          fail_at(ErrorCode::syntax, "row has " + std::to_string(cells.size()) +
                                         " cells, header has " + std::to_string(header.size()),
                  line.number, cells.front().column);
        }
        if (!source->object_index(cells[0].text)) {
          fail_at(ErrorCode::dangling_endpoint,
                  "relation " + block.name + " references object '" + cells[0].text +
                      "' missing from context " + block.source,
                  line.number, cells[0].column);
        }
        for (std::size_t i = 1; i < cells.size(); ++i) {
          if (is_cross(cells[i], line.number)) pairs.emplace_back(cells[0].text, header[i].text);
        }
      }
    }
    guarded(block.line, 1, [&] { rcf.add_relation(block.name, block.source, block.target, pairs); });
  }
  return rcf;
}

RelationalContextFamily parse_rcf(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_rcf_json(text);
  return parse_rcf_table(text);
}

RelationalContextFamily load_rcf(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::unknown_rcf, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_rcf(buffer.str());
}

namespace {

Pairs relation_pairs(const RelationalContextFamily& rcf, const RelationalContext& rel) {
  const auto& source = rcf.context(rel.source());
  const auto& target = rcf.context(rel.target());
  Pairs out;
  for (std::size_t o = 0; o < rel.source_size(); ++o) {
    rel.successors(o).for_each(
        [&](std::size_t t) { out.emplace_back(source.object_name(o), target.object_name(t)); });
  }
  return out;
}

}  // namespace

std::string serialize_rcf_json(const RelationalContextFamily& rcf) {
  json doc;
  doc["format"] = kJsonFormat;
  doc["contexts"] = json::array();
  for (const auto& [id, ctx] : rcf.contexts()) {
    json c;
    c["id"] = id;
    c["objects"] = ctx.objects();
    c["attributes"] = ctx.intrinsic_attributes();
    json incidence = json::array();
    for (std::size_t o = 0; o < ctx.object_count(); ++o) {
      for (const auto& a : ctx.intrinsic_attributes()) {
        if (ctx.column(Attribute(a))->contains(o)) incidence.push_back({ctx.object_name(o), a});
      }
    }
    c["incidence"] = std::move(incidence);
    doc["contexts"].push_back(std::move(c));
  }
  doc["relations"] = json::array();
  for (const auto& [name, rel] : rcf.relations()) {
    json r;
    r["name"] = name;
    r["source"] = rel.source();
    r["target"] = rel.target();
    json pairs = json::array();
    for (const auto& [s, t] : relation_pairs(rcf, rel)) pairs.push_back({s, t});
    r["pairs"] = std::move(pairs);
    doc["relations"].push_back(std::move(r));
  }
  return doc.dump(2) + "\n";
}

namespace {

void write_table(std::ostringstream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  for (const auto& row : rows) {
    out << "|";
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << " " << row[i] << std::string(widths[i] - row[i].size(), ' ') << " |";
    }
    out << "\n";
  }
}

void check_cell_name(const std::string& name) {
  if (name.find('|') != std::string::npos || name.find('\n') != std::string::npos ||
      name != std::string(trim(name)) || name.empty()) {
    throw Error(ErrorCode::invalid_request,
                "name '" + name + "' cannot be written in the cross-table form");
  }
}

void check_identifier(const std::string& id) {
  if (id.empty() || id.find_first_of(" \t\r\n|") != std::string::npos || id.back() == ':') {
    throw Error(ErrorCode::invalid_request,
                "identifier '" + id + "' cannot be written in the cross-table form");
  }
}

}  // namespace

std::string serialize_rcf_table(const RelationalContextFamily& rcf) {
  std::ostringstream out;
  out << kTableHeader << "\n";
  for (const auto& [id, ctx] : rcf.contexts()) {
    check_identifier(id);
    out << "\ncontext " << id << "\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({""});
    for (const auto& a : ctx.intrinsic_attributes()) {
      check_cell_name(a);
      rows.front().push_back(a);
    }
    for (std::size_t o = 0; o < ctx.object_count(); ++o) {
      check_cell_name(ctx.object_name(o));
      std::vector<std::string> row{ctx.object_name(o)};
      for (const auto& a : ctx.intrinsic_attributes()) {
        row.push_back(ctx.column(Attribute(a))->contains(o) ? "x" : "");
      }
      rows.push_back(std::move(row));
    }
    write_table(out, rows);
  }
  for (const auto& [name, rel] : rcf.relations()) {
    check_identifier(name);
    out << "\nrelation " << name << ": " << rel.source() << " -> " << rel.target() << "\n";
    const auto& source = rcf.context(rel.source());
    const auto& target = rcf.context(rel.target());
    std::vector<std::vector<std::string>> rows;
    rows.push_back({""});
    for (const auto& t : target.objects()) rows.front().push_back(t);
    for (std::size_t o = 0; o < source.object_count(); ++o) {
      std::vector<std::string> row{source.object_name(o)};
      for (std::size_t t = 0; t < target.object_count(); ++t) {
        row.push_back(rel.successors(o).contains(t) ? "x" : "");
      }
      rows.push_back(std::move(row));
    }
    write_table(out, rows);
  }
  return out.str();
}

}  // namespace rcanav
