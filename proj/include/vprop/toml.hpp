#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vprop/errors.hpp"

namespace vprop {

/// Parsed TOML value. The subset covers what experiment configs need:
/// [dotted.table] headers, bare or quoted keys, basic strings, integers,
/// floats, booleans, and single-line arrays of scalars. Tables remember
/// insertion order so algorithm lists keep their file order.
class TomlValue {
public:
  enum class Kind { String, Integer, Float, Boolean, Array, Table };

  static TomlValue make_table() { return TomlValue(Kind::Table); }
  static TomlValue make_string(std::string v);
  static TomlValue make_integer(std::int64_t v);
  static TomlValue make_float(double v);
  static TomlValue make_boolean(bool v);
  static TomlValue make_array(std::vector<TomlValue> v);

  Kind kind() const { return kind_; }
  bool is_table() const { return kind_ == Kind::Table; }

  const std::string& as_string() const;
  std::int64_t as_integer() const;
  double as_number() const;  // Integer or Float
  bool as_boolean() const;
  const std::vector<TomlValue>& as_array() const;

  // table interface
  const TomlValue* find(const std::string& key) const;
  TomlValue& insert(const std::string& key, TomlValue value, int line);
  TomlValue& table_at(const std::string& key, int line);  // create-or-descend
  const std::vector<std::pair<std::string, TomlValue>>& items() const;

private:
  explicit TomlValue(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::string str_;
  std::int64_t int_ = 0;
  double float_ = 0.0;
  bool bool_ = false;
  std::vector<TomlValue> array_;
  std::vector<std::pair<std::string, TomlValue>> table_;
};

TomlValue parse_toml(const std::string& text);
TomlValue parse_toml_file(const std::string& path);

}  // namespace vprop
