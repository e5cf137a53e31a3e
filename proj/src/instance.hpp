#pragma once

#include <string>
#include <variant>

#include "decomposition.hpp"
#include "types.hpp"

namespace gctuf {

// Text instance formats. Line-oriented sections with a leading kind tag;
// serialization is canonical, and parsing a serialized instance reproduces it
// exactly. Grammar documented in docs/FORMATS.md.

struct ParsedInstance {
  enum class Kind { gctuf, ip, mcctu, gcc, gclf };
  Kind kind = Kind::gctuf;
  GctufInstance gctuf;
  IpInstance ip;
  McctuInstance mcctu;
  CirculationInstance gcc;
  GclfInstance gclf;
};

ParsedInstance parse_instance(const std::string& text);

std::string serialize(const GctufInstance& inst);
std::string serialize(const IpInstance& inst);
std::string serialize(const McctuInstance& inst);
std::string serialize(const CirculationInstance& inst);
std::string serialize(const GclfInstance& inst);
std::string serialize(const ParsedInstance& inst);

std::string serialize_decomposition(const DecompNode& node);
DecompPtr parse_decomposition(const std::string& text);

// Line-oriented "key: value" report with a JSON rendering behind the
// structured flag.
struct Report {
  std::vector<std::pair<std::string, std::string>> fields;

  void add(const std::string& key, const std::string& value) { fields.push_back({key, value}); }
  std::string to_text() const;
  std::string to_json() const;
};

}  // namespace gctuf
