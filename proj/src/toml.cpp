#include "vprop/toml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace vprop {

TomlValue TomlValue::make_string(std::string v) {
  TomlValue t(Kind::String);
  t.str_ = std::move(v);
  return t;
}
TomlValue TomlValue::make_integer(std::int64_t v) {
  TomlValue t(Kind::Integer);
  t.int_ = v;
  return t;
}
TomlValue TomlValue::make_float(double v) {
  TomlValue t(Kind::Float);
  t.float_ = v;
  return t;
}
TomlValue TomlValue::make_boolean(bool v) {
  TomlValue t(Kind::Boolean);
  t.bool_ = v;
  return t;
}
TomlValue TomlValue::make_array(std::vector<TomlValue> v) {
  TomlValue t(Kind::Array);
  t.array_ = std::move(v);
  return t;
}

const std::string& TomlValue::as_string() const {
  if (kind_ != Kind::String) throw Error("TOML value is not a string");
  return str_;
}
std::int64_t TomlValue::as_integer() const {
  if (kind_ != Kind::Integer) throw Error("TOML value is not an integer");
  return int_;
}
double TomlValue::as_number() const {
  if (kind_ == Kind::Integer) return static_cast<double>(int_);
  if (kind_ == Kind::Float) return float_;
  throw Error("TOML value is not a number");
}
bool TomlValue::as_boolean() const {
  if (kind_ != Kind::Boolean) throw Error("TOML value is not a boolean");
  return bool_;
}
const std::vector<TomlValue>& TomlValue::as_array() const {
  if (kind_ != Kind::Array) throw Error("TOML value is not an array");
  return array_;
}

const TomlValue* TomlValue::find(const std::string& key) const {
  if (kind_ != Kind::Table) return nullptr;
  for (const auto& [k, v] : table_)
    if (k == key) return &v;
  return nullptr;
}

TomlValue& TomlValue::insert(const std::string& key, TomlValue value,
                             int line) {
  if (kind_ != Kind::Table) throw ParseError("not a table", line);
  for (const auto& [k, v] : table_)
    if (k == key) throw ParseError("duplicate key '" + key + "'", line);
  table_.emplace_back(key, std::move(value));
  return table_.back().second;
}

TomlValue& TomlValue::table_at(const std::string& key, int line) {
  if (kind_ != Kind::Table) throw ParseError("not a table", line);
  for (auto& [k, v] : table_)
    if (k == key) {
      if (!v.is_table())
        throw ParseError("key '" + key + "' is not a table", line);
      return v;
    }
  table_.emplace_back(key, make_table());
  return table_.back().second;
}

const std::vector<std::pair<std::string, TomlValue>>& TomlValue::items() const {
  if (kind_ != Kind::Table) throw Error("TOML value is not a table");
  return table_;
}

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  int line;
};

void skip_spaces(Cursor& c) {
  while (c.pos < c.text.size() &&
         (c.text[c.pos] == ' ' || c.text[c.pos] == '\t'))
    ++c.pos;
}

bool is_bare_key_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
}

std::string parse_key(Cursor& c) {
  skip_spaces(c);
  if (c.pos < c.text.size() && c.text[c.pos] == '"') {
    ++c.pos;
    std::string key;
    while (c.pos < c.text.size() && c.text[c.pos] != '"') key += c.text[c.pos++];
    if (c.pos == c.text.size())
      throw ParseError("unterminated quoted key", c.line);
    ++c.pos;
    return key;
  }
  std::string key;
  while (c.pos < c.text.size() && is_bare_key_char(c.text[c.pos]))
    key += c.text[c.pos++];
  if (key.empty()) throw ParseError("expected a key", c.line);
  return key;
}

std::vector<std::string> parse_key_path(Cursor& c) {
  std::vector<std::string> path{parse_key(c)};
  skip_spaces(c);
  while (c.pos < c.text.size() && c.text[c.pos] == '.') {
    ++c.pos;
    path.push_back(parse_key(c));
    skip_spaces(c);
  }
  return path;
}

TomlValue parse_scalar(const std::string& tok, int line) {
  if (tok == "true") return TomlValue::make_boolean(true);
  if (tok == "false") return TomlValue::make_boolean(false);
  if (tok.empty()) throw ParseError("empty value", line);

  bool integer_shape = true;
  for (std::size_t i = 0; i < tok.size(); ++i) {
    const char ch = tok[i];
    if (i == 0 && (ch == '+' || ch == '-')) continue;
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      integer_shape = false;
      break;
    }
  }
  try {
    std::size_t used = 0;
    if (integer_shape) {
      const std::int64_t v = std::stoll(tok, &used);
      if (used == tok.size()) return TomlValue::make_integer(v);
    } else {
      const double v = std::stod(tok, &used);
      if (used == tok.size()) return TomlValue::make_float(v);
    }
  } catch (const std::exception&) {
  }
  throw ParseError("cannot parse value '" + tok + "'", line);
}

TomlValue parse_value(Cursor& c);

TomlValue parse_array(Cursor& c) {
  ++c.pos;  // consume '['
  std::vector<TomlValue> values;
  skip_spaces(c);
  if (c.pos < c.text.size() && c.text[c.pos] == ']') {
    ++c.pos;
    return TomlValue::make_array(std::move(values));
  }
  while (true) {
    values.push_back(parse_value(c));
    skip_spaces(c);
    if (c.pos < c.text.size() && c.text[c.pos] == ',') {
      ++c.pos;
      skip_spaces(c);
      continue;
    }
    if (c.pos < c.text.size() && c.text[c.pos] == ']') {
      ++c.pos;
      return TomlValue::make_array(std::move(values));
    }
    throw ParseError("expected ',' or ']' in array", c.line);
  }
}

TomlValue parse_string(Cursor& c) {
  ++c.pos;  // consume '"'
  std::string out;
  while (c.pos < c.text.size() && c.text[c.pos] != '"') {
    char ch = c.text[c.pos];
    if (ch == '\\') {
      ++c.pos;
      if (c.pos == c.text.size())
        throw ParseError("unterminated escape", c.line);
      switch (c.text[c.pos]) {
        case '"': ch = '"'; break;
        case '\\': ch = '\\'; break;
        case 'n': ch = '\n'; break;
        case 't': ch = '\t'; break;
        default:
          throw ParseError("unsupported escape sequence", c.line);
      }
    }
    out += ch;
    ++c.pos;
  }
  if (c.pos == c.text.size()) throw ParseError("unterminated string", c.line);
  ++c.pos;
  return TomlValue::make_string(std::move(out));
}

TomlValue parse_value(Cursor& c) {
  skip_spaces(c);
  if (c.pos == c.text.size()) throw ParseError("expected a value", c.line);
  const char ch = c.text[c.pos];
  if (ch == '"') return parse_string(c);
  if (ch == '[') return parse_array(c);
  std::string tok;
  while (c.pos < c.text.size() && c.text[c.pos] != ',' &&
         c.text[c.pos] != ']' && c.text[c.pos] != ' ' && c.text[c.pos] != '\t')
    tok += c.text[c.pos++];
  return parse_scalar(tok, c.line);
}

// strips a comment, respecting quoted strings
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\'))
      in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

}  // namespace

TomlValue parse_toml(const std::string& text) {
  TomlValue root = TomlValue::make_table();
  TomlValue* current = &root;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_comment(raw);
    Cursor c{line, 0, line_no};
    skip_spaces(c);
    if (c.pos == line.size()) continue;

    if (line[c.pos] == '[') {
      ++c.pos;
      const auto path = parse_key_path(c);
      skip_spaces(c);
      if (c.pos == line.size() || line[c.pos] != ']')
        throw ParseError("expected ']' after table header", line_no);
      ++c.pos;
      skip_spaces(c);
      if (c.pos != line.size())
        throw ParseError("trailing characters after table header", line_no);
      current = &root;
      for (const auto& key : path) current = &current->table_at(key, line_no);
      continue;
    }

    const auto path = parse_key_path(c);
    skip_spaces(c);
    if (c.pos == line.size() || line[c.pos] != '=')
      throw ParseError("expected '=' after key", line_no);
    ++c.pos;
    TomlValue value = parse_value(c);
    skip_spaces(c);
    if (c.pos != line.size())
      throw ParseError("trailing characters after value", line_no);

    TomlValue* target = current;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      target = &target->table_at(path[i], line_no);
    target->insert(path.back(), std::move(value), line_no);
  }
  return root;
}

TomlValue parse_toml_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_toml(buffer.str());
}

}  // namespace vprop
