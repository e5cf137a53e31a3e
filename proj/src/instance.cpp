#include "instance.hpp"

#include <json.hpp>

#include <sstream>

namespace gctuf {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  fail(errc::parse, "line " + std::to_string(line) + ": " + msg);
}

struct Lines {
  std::vector<std::string> all;
  int pos = 0;  // next line index

  explicit Lines(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) all.push_back(line);
  }

  bool done() {
    skip_blank();
    return pos >= int(all.size());
  }

  void skip_blank() {
    while (pos < int(all.size())) {
      const std::string& l = all[size_t(pos)];
      size_t i = l.find_first_not_of(" \t\r");
      if (i == std::string::npos || l[i] == '#') {
        ++pos;
        continue;
      }
      break;
    }
  }

  int number() const { return pos + 1; }

  std::string next() {
    skip_blank();
    if (pos >= int(all.size())) parse_fail(int(all.size()), "unexpected end of input");
    return all[size_t(pos++)];
  }

  std::string peek() {
    skip_blank();
    if (pos >= int(all.size())) return "";
    return all[size_t(pos)];
  }
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// "key = rest" split; returns false if the line has no '='
bool key_value(const std::string& line, std::string& key, std::string& rest) {
  size_t eq = line.find('=');
  if (eq == std::string::npos) return false;
  key = trim(line.substr(0, eq));
  rest = trim(line.substr(eq + 1));
  return true;
}

std::vector<Int> parse_ints(const std::string& s, int line) {
  std::vector<Int> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    try {
      out.push_back(Int(tok));
    } catch (...) {
      parse_fail(line, "expected an integer, got '" + tok + "'");
    }
  }
  return out;
}

// bracketed residue vectors: [1, 0] [2] ...
std::vector<std::vector<Int>> parse_elements(const std::string& s, int line) {
  std::vector<std::vector<Int>> out;
  size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] != '[') parse_fail(line, "expected '[' in group element list");
    size_t close = s.find(']', i);
    if (close == std::string::npos) parse_fail(line, "unterminated group element");
    std::string body = s.substr(i + 1, close - i - 1);
    for (char& c : body)
      if (c == ',') c = ' ';
    out.push_back(parse_ints(body, line));
    i = close + 1;
  }
  return out;
}

GroupElement element_of(const AbelianGroup& g, const std::vector<Int>& raw, int line) {
  if (int(raw.size()) != g.k()) parse_fail(line, "group element arity mismatch");
  for (size_t i = 0; i < raw.size(); ++i)
    if (raw[i] < 0 || raw[i] >= g.moduli[i]) parse_fail(line, "residue out of range");
  GroupElement e;
  for (const Int& v : raw) e.r.push_back(to_int64(v));
  return e;
}

IntMatrix parse_matrix_section(Lines& ls, const std::string& dims, int line) {
  std::istringstream is(dims);
  int rows = -1, cols = -1;
  std::string x;
  if (!(is >> rows >> x >> cols) || x != "x" || rows < 0 || cols < 0)
    parse_fail(line, "matrix header must read 'matrix = R x C'");
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    int ln = ls.number();
    auto vals = parse_ints(ls.next(), ln);
    if (int(vals.size()) != cols) parse_fail(ln, "matrix row has wrong width");
    for (int j = 0; j < cols; ++j) m.at(i, j) = vals[size_t(j)];
  }
  return m;
}

AbelianGroup parse_group_literal(const std::string& s, int line) {
  auto vecs = parse_elements(s, line);
  if (vecs.size() != 1) parse_fail(line, "group literal must be a single [m1, m2, ...]");
  std::vector<int64_t> moduli;
  for (const Int& m : vecs[0]) {
    if (m < 1) parse_fail(line, "group modulus must be >= 1");
    moduli.push_back(to_int64(m));
  }
  return AbelianGroup(moduli);
}

Box parse_box_section(Lines& ls, int n) {
  Box box;
  for (int j = 0; j < n; ++j) {
    int ln = ls.number();
    auto vals = parse_ints(ls.next(), ln);
    if (vals.size() != 2) parse_fail(ln, "box line must be 'lo hi'");
    if (vals[0] > vals[1]) parse_fail(ln, "box has lo > hi");
    box.lo.push_back(vals[0]);
    box.hi.push_back(vals[1]);
  }
  return box;
}

// -------------------------------------------------------------------------
// decomposition tree records

std::vector<std::string> tokenize_tree(const std::string& s) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : s) {
    if (c == '{' || c == '}') {
      if (!cur.empty()) {
        toks.push_back(cur);
        cur.clear();
      }
      toks.push_back(std::string(1, c));
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) {
        toks.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  return toks;
}

struct TreeParser {
  const std::vector<std::string>& toks;
  size_t pos = 0;

  std::string next() {
    require(pos < toks.size(), errc::parse, "decomposition record ended early");
    return toks[pos++];
  }
  void expect(const std::string& t) {
    std::string got = next();
    require(got == t, errc::parse, "decomposition record: expected '" + t + "', got '" + got + "'");
  }
  Int number() { return Int(next()); }
  int small() { return int(to_int64(number())); }

  std::vector<Int> int_list() {
    expect("{");
    std::vector<Int> out;
    while (true) {
      std::string t = next();
      if (t == "}") break;
      out.push_back(Int(t));
    }
    return out;
  }
  std::vector<int> index_list() {
    std::vector<int> out;
    for (const Int& v : int_list()) out.push_back(int(to_int64(v)));
    return out;
  }

  NetworkRealization realization() {
    NetworkRealization real;
    expect("{");
    expect("nv");
    real.nv = small();
    expect("rows");
    auto rows = index_list();
    require(rows.size() % 2 == 0, errc::parse, "row arc list must pair up");
    for (size_t i = 0; i < rows.size(); i += 2) real.row_arcs.push_back({rows[i], rows[i + 1]});
    expect("cols");
    auto cols = index_list();
    require(cols.size() % 2 == 0, errc::parse, "column arc list must pair up");
    for (size_t i = 0; i < cols.size(); i += 2) real.col_arcs.push_back({cols[i], cols[i + 1]});
    expect("}");
    return real;
  }

  DecompPtr node() {
    std::string kind = next();
    auto out = std::make_shared<DecompNode>();
    if (kind == "network" || kind == "transposed-network") {
      out->kind = kind == "network" ? DecompNode::Kind::network
                                    : DecompNode::Kind::transposed_network;
      out->realization = realization();
      return out;
    }
    if (kind == "core") {
      out->kind = DecompNode::Kind::core;
      expect("{");
      expect("id");
      out->core_id = small();
      expect("rowperm");
      out->trace.row_perm = index_list();
      expect("colperm");
      out->trace.col_perm = index_list();
      expect("rowsign");
      out->trace.row_sign = index_list();
      expect("colsign");
      out->trace.col_sign = index_list();
      expect("ops");
      expect("{");
      while (true) {
        std::string t = next();
        if (t == "}") break;
        CoreOp op;
        op.is_row = t == "row";
        require(op.is_row || t == "col", errc::parse, "core op must be 'row' or 'col'");
        op.index = small();
        op.removed = int_list();
        out->trace.ops.push_back(std::move(op));
      }
      expect("}");
      return out;
    }
    if (kind == "pivot") {
      out->kind = DecompNode::Kind::pivot;
      expect("{");
      expect("row");
      out->pivot_row = small();
      expect("col");
      out->pivot_col = small();
      expect("child");
      expect("{");
      out->child = node();
      expect("}");
      expect("}");
      return out;
    }
    if (kind == "three-sum") {
      out->kind = DecompNode::Kind::three_sum;
      expect("{");
      expect("rowsa");
      out->split.rows_a = index_list();
      expect("colsa");
      out->split.cols_a = index_list();
      expect("rowsb");
      out->split.rows_b = index_list();
      expect("colsb");
      out->split.cols_b = index_list();
      expect("e");
      out->split.e = int_list();
      expect("f");
      out->split.f = int_list();
      expect("g");
      out->split.g = int_list();
      expect("h");
      out->split.h = int_list();
      expect("childa");
      expect("{");
      out->child_a = node();
      expect("}");
      expect("childb");
      expect("{");
      out->child_b = node();
      expect("}");
      expect("}");
      return out;
    }
    fail(errc::parse, "unknown decomposition node kind: " + kind);
  }
};

void emit_list(std::ostringstream& os, const std::vector<Int>& v) {
  os << "{ ";
  for (const Int& x : v) os << x.str() << ' ';
  os << '}';
}

void emit_index_list(std::ostringstream& os, const std::vector<int>& v) {
  os << "{ ";
  for (int x : v) os << x << ' ';
  os << '}';
}

void emit_node(std::ostringstream& os, const DecompNode& node) {
  switch (node.kind) {
    case DecompNode::Kind::network:
    case DecompNode::Kind::transposed_network: {
      os << (node.kind == DecompNode::Kind::network ? "network" : "transposed-network");
      os << " { nv " << node.realization.nv << " rows { ";
      for (const auto& a : node.realization.row_arcs) os << a.tail << ' ' << a.head << ' ';
      os << "} cols { ";
      for (const auto& a : node.realization.col_arcs) os << a.tail << ' ' << a.head << ' ';
      os << "} }";
      return;
    }
    case DecompNode::Kind::core: {
      os << "core { id " << node.core_id << " rowperm ";
      emit_index_list(os, node.trace.row_perm);
      os << " colperm ";
      emit_index_list(os, node.trace.col_perm);
      os << " rowsign ";
      emit_index_list(os, node.trace.row_sign);
      os << " colsign ";
      emit_index_list(os, node.trace.col_sign);
      os << " ops { ";
      for (const CoreOp& op : node.trace.ops) {
        os << (op.is_row ? "row " : "col ") << op.index << ' ';
        emit_list(os, op.removed);
        os << ' ';
      }
      os << "} }";
      return;
    }
    case DecompNode::Kind::pivot:
      os << "pivot { row " << node.pivot_row << " col " << node.pivot_col << " child { ";
      emit_node(os, *node.child);
      os << " } }";
      return;
    case DecompNode::Kind::three_sum:
      os << "three-sum { rowsa ";
      emit_index_list(os, node.split.rows_a);
      os << " colsa ";
      emit_index_list(os, node.split.cols_a);
      os << " rowsb ";
      emit_index_list(os, node.split.rows_b);
      os << " colsb ";
      emit_index_list(os, node.split.cols_b);
      os << " e ";
      emit_list(os, node.split.e);
      os << " f ";
      emit_list(os, node.split.f);
      os << " g ";
      emit_list(os, node.split.g);
      os << " h ";
      emit_list(os, node.split.h);
      os << " childa { ";
      emit_node(os, *node.child_a);
      os << " } childb { ";
      emit_node(os, *node.child_b);
      os << " } }";
      return;
  }
}

}  // namespace

std::string serialize_decomposition(const DecompNode& node) {
  std::ostringstream os;
  emit_node(os, node);
  return os.str();
}

DecompPtr parse_decomposition(const std::string& text) {
  auto toks = tokenize_tree(text);
  TreeParser tp{toks};
  DecompPtr out = tp.node();
  require(tp.pos == toks.size(), errc::parse, "trailing tokens after decomposition record");
  return out;
}

// ---------------------------------------------------------------------------
// instance parsing

namespace {

ParsedInstance parse_gctuf_body(Lines& ls) {
  ParsedInstance out;
  out.kind = ParsedInstance::Kind::gctuf;
  GctufInstance& inst = out.gctuf;
  bool have_matrix = false, have_group = false;
  std::vector<std::vector<Int>> raw_labels, raw_targets;
  int labels_line = 0, targets_line = 0;
  while (!ls.done()) {
    int ln = ls.number();
    std::string line = ls.next();
    std::string key, rest;
    if (!key_value(line, key, rest)) parse_fail(ln, "expected 'key = value'");
    if (key == "matrix") {
      inst.t = parse_matrix_section(ls, rest, ln);
      have_matrix = true;
    } else if (key == "rhs") {
      inst.b = parse_ints(rest, ln);
    } else if (key == "group") {
      inst.group = parse_group_literal(rest, ln);
      have_group = true;
    } else if (key == "labels") {
      raw_labels = parse_elements(rest, ln);
      labels_line = ln;
    } else if (key == "targets") {
      raw_targets = parse_elements(rest, ln);
      targets_line = ln;
    } else if (key == "box") {
      if (!have_matrix) parse_fail(ln, "box section before matrix");
      inst.box = parse_box_section(ls, inst.t.cols());
    } else if (key == "decomposition") {
      inst.decomposition_hint = parse_decomposition(rest);
    } else {
      parse_fail(ln, "unknown section '" + key + "'");
    }
  }
  if (!have_matrix) parse_fail(ls.number(), "missing matrix section");
  if (!have_group) parse_fail(ls.number(), "missing group section");
  for (const auto& raw : raw_labels)
    inst.labels.push_back(element_of(inst.group, raw, labels_line));
  std::vector<GroupElement> tgts;
  for (const auto& raw : raw_targets) tgts.push_back(element_of(inst.group, raw, targets_line));
  inst.targets = TargetSet::of(inst.group, tgts);
  try {
    inst.validate();
  } catch (const error& e) {
    fail(errc::parse, std::string("instance invalid: ") + e.what());
  }
  return out;
}

ParsedInstance parse_ip_body(Lines& ls) {
  ParsedInstance out;
  out.kind = ParsedInstance::Kind::ip;
  IpInstance& inst = out.ip;
  bool have_matrix = false;
  while (!ls.done()) {
    int ln = ls.number();
    std::string line = ls.next();
    std::string key, rest;
    if (!key_value(line, key, rest)) parse_fail(ln, "expected 'key = value'");
    if (key == "matrix") {
      inst.a = parse_matrix_section(ls, rest, ln);
      have_matrix = true;
    } else if (key == "rhs") {
      inst.b = parse_ints(rest, ln);
    } else if (key == "objective") {
      inst.c = parse_ints(rest, ln);
    } else if (key == "box") {
      if (!have_matrix) parse_fail(ln, "box section before matrix");
      inst.box = parse_box_section(ls, inst.a.cols());
    } else {
      parse_fail(ln, "unknown section '" + key + "'");
    }
  }
  if (!have_matrix) parse_fail(ls.number(), "missing matrix section");
  try {
    inst.validate();
  } catch (const error& e) {
    fail(errc::parse, std::string("instance invalid: ") + e.what());
  }
  return out;
}

Rat parse_rat(const std::string& tok, int line) {
  size_t slash = tok.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(tok));
    return Rat(Int(tok.substr(0, slash)), Int(tok.substr(slash + 1)));
  } catch (...) {
    parse_fail(line, "expected a rational, got '" + tok + "'");
  }
}

ParsedInstance parse_mcctu_body(Lines& ls) {
  ParsedInstance out;
  out.kind = ParsedInstance::Kind::mcctu;
  McctuInstance& inst = out.mcctu;
  bool have_matrix = false;
  while (!ls.done()) {
    int ln = ls.number();
    std::string line = ls.next();
    std::string key, rest;
    if (!key_value(line, key, rest)) parse_fail(ln, "expected 'key = value'");
    if (key == "matrix") {
      inst.t = parse_matrix_section(ls, rest, ln);
      have_matrix = true;
    } else if (key == "rhs") {
      inst.b = parse_ints(rest, ln);
    } else if (key == "congruencies") {
      int count = 0;
      std::istringstream is(rest);
      if (!(is >> count) || count < 0) parse_fail(ln, "congruency count expected");
      for (int i = 0; i < count; ++i) {
        int cl = ls.number();
        std::string cline = ls.next();
        // gamma... | r mod m
        size_t bar = cline.find('|');
        if (bar == std::string::npos) parse_fail(cl, "congruency line needs 'gamma | r mod m'");
        Congruency cc;
        cc.gamma = parse_ints(cline.substr(0, bar), cl);
        std::istringstream cs(cline.substr(bar + 1));
        std::string rtok, modword, mtok;
        if (!(cs >> rtok >> modword >> mtok) || modword != "mod")
          parse_fail(cl, "congruency line needs 'gamma | r mod m'");
        cc.r = Int(rtok);
        cc.m = Int(mtok);
        inst.congruencies.push_back(std::move(cc));
      }
    } else if (key == "objective") {
      std::vector<Rat> c;
      std::istringstream is(rest);
      std::string tok;
      while (is >> tok) c.push_back(parse_rat(tok, ln));
      inst.cbar = std::move(c);
    } else if (key == "box") {
      if (!have_matrix) parse_fail(ln, "box section before matrix");
      inst.box = parse_box_section(ls, inst.t.cols());
    } else if (key == "bijection") {
      inst.bijection = parse_matrix_section(ls, rest, ln);
    } else {
      parse_fail(ln, "unknown section '" + key + "'");
    }
  }
  if (!have_matrix) parse_fail(ls.number(), "missing matrix section");
  return out;
}

ParsedInstance parse_gcc_body(Lines& ls) {
  ParsedInstance out;
  out.kind = ParsedInstance::Kind::gcc;
  CirculationInstance& inst = out.gcc;
  bool have_group = false;
  std::vector<Int> raw_target;
  int target_line = 0;
  while (!ls.done()) {
    int ln = ls.number();
    std::string line = ls.next();
    std::string key, rest;
    if (!key_value(line, key, rest)) parse_fail(ln, "expected 'key = value'");
    if (key == "vertices") {
      std::istringstream is(rest);
      if (!(is >> inst.nv) || inst.nv < 0) parse_fail(ln, "vertex count expected");
    } else if (key == "group") {
      inst.group = parse_group_literal(rest, ln);
      have_group = true;
    } else if (key == "target") {
      auto vecs = parse_elements(rest, ln);
      if (vecs.size() != 1) parse_fail(ln, "target must be a single element");
      raw_target = vecs[0];
      target_line = ln;
    } else if (key == "arcs") {
      if (!have_group) parse_fail(ln, "arcs section before group");
      int count = 0;
      std::istringstream is(rest);
      if (!(is >> count) || count < 0) parse_fail(ln, "arc count expected");
      for (int i = 0; i < count; ++i) {
        int al = ls.number();
        std::string aline = ls.next();
        size_t br = aline.find('[');
        if (br == std::string::npos) parse_fail(al, "arc line needs a group element");
        auto nums = parse_ints(aline.substr(0, br), al);
        if (nums.size() != 4) parse_fail(al, "arc line is 'tail head capacity length [elem]'");
        auto elems = parse_elements(aline.substr(br), al);
        if (elems.size() != 1) parse_fail(al, "arc line needs exactly one group element");
        GArc a;
        a.tail = int(to_int64(nums[0]));
        a.head = int(to_int64(nums[1]));
        a.cap = nums[2];
        a.len = nums[3];
        a.label = element_of(inst.group, elems[0], al);
        inst.arcs.push_back(std::move(a));
      }
    } else {
      parse_fail(ln, "unknown section '" + key + "'");
    }
  }
  if (!have_group) parse_fail(ls.number(), "missing group section");
  inst.target = raw_target.empty() ? inst.group.zero()
                                   : element_of(inst.group, raw_target, target_line);
  try {
    inst.validate();
  } catch (const error& e) {
    fail(errc::parse, std::string("instance invalid: ") + e.what());
  }
  return out;
}

ParsedInstance parse_gclf_body(Lines& ls) {
  ParsedInstance out;
  out.kind = ParsedInstance::Kind::gclf;
  GclfInstance& inst = out.gclf;
  bool have_group = false;
  std::vector<std::vector<Int>> raw_gamma;
  std::vector<Int> raw_target;
  int gamma_line = 0, target_line = 0;
  while (!ls.done()) {
    int ln = ls.number();
    std::string line = ls.next();
    std::string key, rest;
    if (!key_value(line, key, rest)) parse_fail(ln, "expected 'key = value'");
    if (key == "n") {
      std::istringstream is(rest);
      if (!(is >> inst.dag.n) || inst.dag.n < 0) parse_fail(ln, "ground set size expected");
    } else if (key == "arcs") {
      int count = 0;
      std::istringstream is(rest);
      if (!(is >> count) || count < 0) parse_fail(ln, "arc count expected");
      for (int i = 0; i < count; ++i) {
        int al = ls.number();
        auto nums = parse_ints(ls.next(), al);
        if (nums.size() != 2) parse_fail(al, "dag arc line is 'u v'");
        inst.dag.arcs.push_back({int(to_int64(nums[0])), int(to_int64(nums[1]))});
      }
    } else if (key == "group") {
      inst.group = parse_group_literal(rest, ln);
      have_group = true;
    } else if (key == "gamma") {
      raw_gamma = parse_elements(rest, ln);
      gamma_line = ln;
    } else if (key == "target") {
      auto vecs = parse_elements(rest, ln);
      if (vecs.size() != 1) parse_fail(ln, "target must be a single element");
      raw_target = vecs[0];
      target_line = ln;
    } else {
      parse_fail(ln, "unknown section '" + key + "'");
    }
  }
  if (!have_group) parse_fail(ls.number(), "missing group section");
  for (const auto& raw : raw_gamma) inst.gamma.push_back(element_of(inst.group, raw, gamma_line));
  inst.target = raw_target.empty() ? inst.group.zero()
                                   : element_of(inst.group, raw_target, target_line);
  try {
    inst.validate();
  } catch (const error& e) {
    fail(errc::parse, std::string("instance invalid: ") + e.what());
  }
  return out;
}

std::string ints_line(const std::vector<Int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v[i].str();
  }
  return os.str();
}

void emit_matrix(std::ostringstream& os, const IntMatrix& m) {
  os << "matrix = " << m.rows() << " x " << m.cols() << '\n';
  os << m.to_text();
}

void emit_box(std::ostringstream& os, const std::optional<Box>& box) {
  if (!box) return;
  os << "box =\n";
  for (int j = 0; j < box->size(); ++j)
    os << box->lo[size_t(j)].str() << ' ' << box->hi[size_t(j)].str() << '\n';
}

}  // namespace

ParsedInstance parse_instance(const std::string& text) {
  Lines ls(text);
  std::string tag = trim(ls.next());
  if (tag == "gctuf") return parse_gctuf_body(ls);
  if (tag == "ip") return parse_ip_body(ls);
  if (tag == "mcctu") return parse_mcctu_body(ls);
  if (tag == "gcc") return parse_gcc_body(ls);
  if (tag == "gclf") return parse_gclf_body(ls);
  parse_fail(1, "unknown instance tag '" + tag + "'");
}

std::string serialize(const GctufInstance& inst) {
  std::ostringstream os;
  os << "gctuf\n";
  emit_matrix(os, inst.t);
  os << "rhs = " << ints_line(inst.b) << '\n';
  os << "group = " << inst.group.to_text() << '\n';
  os << "labels =";
  for (const auto& l : inst.labels) os << ' ' << l.to_text();
  os << '\n';
  os << "targets =";
  for (const auto& t : inst.targets.elements) os << ' ' << t.to_text();
  os << '\n';
  emit_box(os, inst.box);
  if (inst.decomposition_hint)
    os << "decomposition = " << serialize_decomposition(*inst.decomposition_hint) << '\n';
  return os.str();
}

std::string serialize(const IpInstance& inst) {
  std::ostringstream os;
  os << "ip\n";
  emit_matrix(os, inst.a);
  os << "rhs = " << ints_line(inst.b) << '\n';
  if (inst.c) os << "objective = " << ints_line(*inst.c) << '\n';
  emit_box(os, inst.box);
  return os.str();
}

std::string serialize(const McctuInstance& inst) {
  std::ostringstream os;
  os << "mcctu\n";
  emit_matrix(os, inst.t);
  os << "rhs = " << ints_line(inst.b) << '\n';
  os << "congruencies = " << inst.congruencies.size() << '\n';
  for (const auto& cc : inst.congruencies)
    os << ints_line(cc.gamma) << " | " << cc.r.str() << " mod " << cc.m.str() << '\n';
  if (inst.cbar) {
    os << "objective =";
    for (const auto& v : *inst.cbar) os << ' ' << rat_to_string(v);
    os << '\n';
  }
  emit_box(os, inst.box);
  if (inst.bijection) {
    os << "bijection = " << inst.bijection->rows() << " x " << inst.bijection->cols() << '\n';
    os << inst.bijection->to_text();
  }
  return os.str();
}

std::string serialize(const CirculationInstance& inst) {
  std::ostringstream os;
  os << "gcc\n";
  os << "vertices = " << inst.nv << '\n';
  os << "group = " << inst.group.to_text() << '\n';
  os << "target = " << inst.target.to_text() << '\n';
  os << "arcs = " << inst.arcs.size() << '\n';
  for (const auto& a : inst.arcs)
    os << a.tail << ' ' << a.head << ' ' << a.cap.str() << ' ' << a.len.str() << ' '
       << a.label.to_text() << '\n';
  return os.str();
}

std::string serialize(const GclfInstance& inst) {
  std::ostringstream os;
  os << "gclf\n";
  os << "n = " << inst.dag.n << '\n';
  os << "arcs = " << inst.dag.arcs.size() << '\n';
  for (auto [u, v] : inst.dag.arcs) os << u << ' ' << v << '\n';
  os << "group = " << inst.group.to_text() << '\n';
  os << "gamma =";
  for (const auto& e : inst.gamma) os << ' ' << e.to_text();
  os << '\n';
  os << "target = " << inst.target.to_text() << '\n';
  return os.str();
}

std::string serialize(const ParsedInstance& inst) {
  switch (inst.kind) {
    case ParsedInstance::Kind::gctuf:
      return serialize(inst.gctuf);
    case ParsedInstance::Kind::ip:
      return serialize(inst.ip);
    case ParsedInstance::Kind::mcctu:
      return serialize(inst.mcctu);
    case ParsedInstance::Kind::gcc:
      return serialize(inst.gcc);
    case ParsedInstance::Kind::gclf:
      return serialize(inst.gclf);
  }
  fail(errc::internal, "unreachable");
}

std::string Report::to_text() const {
  std::ostringstream os;
  for (const auto& [k, v] : fields) os << k << ": " << v << '\n';
  return os.str();
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : fields) j[k] = v;
  return j.dump(2) + "\n";
}

}  // namespace gctuf
