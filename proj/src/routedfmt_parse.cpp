// Copyright 2026 The sectorctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <filesystem>
#include <set>
#include <sstream>

#include "sectorctl/error.hpp"
#include "sectorctl/routedfmt.hpp"

namespace sectorctl {

const WireDecl* CircuitAST::find_wire(const std::string& n) const {
  for (const auto& w : wires)
    if (w.name == n) return &w;
  return nullptr;
}

const GateDecl* CircuitAST::find_gate(const std::string& n) const {
  for (const auto& g : gates)
    if (g.name == n) return &g;
  return nullptr;
}

const SlotDecl* CircuitAST::find_slot(const std::string& n) const {
  for (const auto& s : slots)
    if (s.name == n) return &s;
  return nullptr;
}

namespace {

bool same_payload(const std::optional<CPMap>& a, const std::optional<CPMap>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  if (a->dim_in() != b->dim_in() || a->dim_out() != b->dim_out() ||
      a->kraus().size() != b->kraus().size())
    return false;
  for (std::size_t i = 0; i < a->kraus().size(); ++i)
    if (a->kraus()[i] != b->kraus()[i]) return false;
  return true;
}

}  // namespace

bool operator==(const CircuitAST& a, const CircuitAST& b) {
  if (a.wires.size() != b.wires.size() || a.gates.size() != b.gates.size() ||
      a.slots.size() != b.slots.size() || a.nodes.size() != b.nodes.size() ||
      a.inputs != b.inputs || a.outputs != b.outputs)
    return false;
  for (std::size_t i = 0; i < a.wires.size(); ++i)
    if (a.wires[i].name != b.wires[i].name || a.wires[i].type != b.wires[i].type) return false;
  for (std::size_t i = 0; i < a.gates.size(); ++i) {
    const auto &x = a.gates[i], &y = b.gates[i];
    if (x.name != y.name || x.in_types != y.in_types || x.out_types != y.out_types ||
        !(x.route == y.route) || x.kind != y.kind || x.kraus_path != y.kraus_path ||
        !same_payload(x.kraus, y.kraus))
      return false;
  }
  for (std::size_t i = 0; i < a.slots.size(); ++i) {
    const auto &x = a.slots[i], &y = b.slots[i];
    if (x.name != y.name || x.in_type != y.in_type || x.out_type != y.out_type ||
        !(x.route == y.route))
      return false;
  }
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    const auto &x = a.nodes[i], &y = b.nodes[i];
    if (x.op != y.op || x.in_wires != y.in_wires || x.out_wires != y.out_wires) return false;
  }
  return true;
}

namespace {

enum class Tok { kIdent, kNumber, kPunct, kPath, kEnd };

struct Token {
  Tok kind;
  std::string text;
  Position pos;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Position p{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::kIdent, src.substr(i, j - i), p});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::kNumber, src.substr(i, j - i), p});
      advance(j - i);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::kPunct, "->", p});
      advance(2);
    } else if (c == '@') {
      std::size_t j = i + 1;
      while (j < src.size() && !std::isspace(static_cast<unsigned char>(src[j])) && src[j] != ';')
        ++j;
      if (j == i + 1) throw ParseError(p.line, p.column, "expected a path after '@'");
      out.push_back({Tok::kPath, src.substr(i + 1, j - i - 1), p});
      advance(j - i);
    } else if (std::string(":,;[]()").find(c) != std::string::npos) {
      out.push_back({Tok::kPunct, std::string(1, c), p});
      advance(1);
    } else {
      throw ParseError(p.line, p.column, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::kEnd, "", {line, col}});
  return out;
}

const std::set<std::string> kKeywords = {"wire", "gate", "slot", "input", "output",
                                         "apply", "route", "id", "kraus", "embed"};

class Parser {
 public:
  Parser(const std::string& text, std::string base_dir)
      : toks_(lex(text)), base_(std::move(base_dir)) {}

  CircuitAST run() {
    if (peek().kind == Tok::kEnd)
      fail(peek(), "expected a statement ('wire', 'gate', 'slot', 'input', 'apply' or 'output')");
    while (peek().kind != Tok::kEnd) statement();
    finish();
    return std::move(ast_);
  }

 private:
  const Token& peek() const { return toks_[k_]; }
  const Token& take() { return toks_[k_++]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    const std::string got = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.pos.line, t.pos.column, msg + ", got " + got);
  }
  [[noreturn]] void fail_at(Position p, const std::string& msg) const {
    throw ParseError(p.line, p.column, msg);
  }

  void expect(const std::string& punct) {
    const Token& t = peek();
    if (!((t.kind == Tok::kPunct || t.kind == Tok::kIdent) && t.text == punct))
      fail(t, "expected '" + punct + "'");
    ++k_;
  }
  const Token& ident(const char* what) {
    const Token& t = peek();
    if (t.kind != Tok::kIdent || kKeywords.count(t.text)) fail(t, std::string("expected ") + what);
    return take();
  }
  std::vector<const Token*> ident_list(const char* what) {
    std::vector<const Token*> out{&ident(what)};
    while (peek().kind == Tok::kPunct && peek().text == ",") {
      ++k_;
      out.push_back(&ident(what));
    }
    return out;
  }
  std::size_t number() {
    const Token& t = peek();
    if (t.kind != Tok::kNumber) fail(t, "expected a number");
    ++k_;
    try {
      return std::stoul(t.text);
    } catch (...) {
      fail_at(t.pos, "number out of range");
    }
  }

  const WireDecl& wire_ref(const Token& t) const {
    const WireDecl* w = ast_.find_wire(t.text);
    if (!w) fail_at(t.pos, "unknown wire '" + t.text + "'");
    return *w;
  }

  void statement() {
    const Token& kw = peek();
    if (kw.kind != Tok::kIdent)
      fail(kw, "expected a statement ('wire', 'gate', 'slot', 'input', 'apply' or 'output')");
    if (kw.text == "wire") wire_stmt();
    else if (kw.text == "gate") gate_stmt();
    else if (kw.text == "slot") slot_stmt();
    else if (kw.text == "input") input_stmt();
    else if (kw.text == "output") output_stmt();
    else if (kw.text == "apply") apply_stmt();
    else fail(kw, "expected a statement ('wire', 'gate', 'slot', 'input', 'apply' or 'output')");
  }

  void wire_stmt() {
    take();
    const Token& name = ident("a wire name");
    if (ast_.find_wire(name.text)) fail_at(name.pos, "duplicate wire '" + name.text + "'");
    expect(":");
    expect("[");
    std::vector<std::size_t> dims;
    for (;;) {
      const Token& t = peek();
      const std::size_t d = number();
      if (d == 0) fail_at(t.pos, "sector dimension must be >= 1");
      dims.push_back(d);
      if (peek().kind == Tok::kPunct && peek().text == ",") {
        ++k_;
        continue;
      }
      break;
    }
    expect("]");
    expect(";");
    ast_.wires.push_back({name.text, PartitionedSpace(dims), name.pos});
  }

  RouteSpec route() {
    expect("route");
    RouteSpec r;
    if (peek().kind == Tok::kIdent && peek().text == "id") {
      ++k_;
      return r;
    }
    r.is_id = false;
    const Token& open = peek();
    expect("[");
    std::vector<std::vector<bool>> rows;
    for (;;) {
      expect("[");
      std::vector<bool> row;
      for (;;) {
        const Token& t = peek();
        const std::size_t b = number();
        if (b > 1) fail_at(t.pos, "route entries must be 0 or 1");
        row.push_back(b == 1);
        if (peek().kind == Tok::kPunct && peek().text == ",") {
          ++k_;
          continue;
        }
        break;
      }
      expect("]");
      if (!rows.empty() && row.size() != rows[0].size())
        fail_at(open.pos, "route rows have different lengths");
      rows.push_back(std::move(row));
      if (peek().kind == Tok::kPunct && peek().text == ",") {
        ++k_;
        continue;
      }
      break;
    }
    expect("]");
    r.matrix = Route(rows);
    return r;
  }

  void check_op_name(const Token& name) const {
    if (ast_.find_gate(name.text) || ast_.find_slot(name.text))
      fail_at(name.pos, "duplicate operation '" + name.text + "'");
  }

  void gate_stmt() {
    take();
    const Token& name = ident("a gate name");
    check_op_name(name);
    GateDecl g;
    g.name = name.text;
    g.pos = name.pos;
    expect(":");
    for (const Token* t : ident_list("a wire name")) g.in_types.push_back(wire_ref(*t).name);
    expect("->");
    for (const Token* t : ident_list("a wire name")) g.out_types.push_back(wire_ref(*t).name);
    g.route = route();
    const Token& kind = peek();
    if (kind.kind == Tok::kIdent && kind.text == "embed") {
      ++k_;
      g.kind = GateKind::kEmbed;
    } else if (kind.kind == Tok::kIdent && kind.text == "kraus") {
      ++k_;
      const Token& path = peek();
      if (path.kind != Tok::kPath) fail(path, "expected '@path'");
      ++k_;
      g.kind = GateKind::kKraus;
      g.kraus_path = path.text;
      std::filesystem::path p(path.text);
      if (p.is_relative()) p = std::filesystem::path(base_) / p;
      try {
        g.kraus = cp_map_from_json(read_json_file(p.string()));
      } catch (const Error& e) {
        fail_at(path.pos, std::string("cannot load Kraus payload: ") + e.what());
      }
    } else {
      fail(kind, "expected 'kraus' or 'embed'");
    }
    expect(";");
    ast_.gates.push_back(std::move(g));
  }

  void slot_stmt() {
    take();
    const Token& name = ident("a slot name");
    check_op_name(name);
    SlotDecl s;
    s.name = name.text;
    s.pos = name.pos;
    expect(":");
    s.in_type = wire_ref(ident("a wire name")).name;
    expect("->");
    s.out_type = wire_ref(ident("a wire name")).name;
    s.route = route();
    expect(";");
    ast_.slots.push_back(std::move(s));
    uses_[ast_.slots.back().name] = 0;
  }

  void input_stmt() {
    const Token& kw = take();
    if (have_input_) fail_at(kw.pos, "duplicate 'input' statement");
    have_input_ = true;
    for (const Token* t : ident_list("a wire name")) {
      wire_ref(*t);
      for (const auto& l : live_)
        if (l == t->text) fail_at(t->pos, "wire '" + t->text + "' listed twice");
      live_.push_back(t->text);
      ast_.inputs.push_back(t->text);
    }
    expect(";");
  }

  void output_stmt() {
    const Token& kw = take();
    if (have_output_) fail_at(kw.pos, "duplicate 'output' statement");
    have_output_ = true;
    output_pos_ = kw.pos;
    for (const Token* t : ident_list("a wire name")) {
      wire_ref(*t);
      for (const auto& o : ast_.outputs)
        if (o == t->text) fail_at(t->pos, "wire '" + t->text + "' listed twice");
      ast_.outputs.push_back(t->text);
    }
    expect(";");
  }

  void apply_stmt() {
    const Token& kw = take();
    if (!have_input_) fail_at(kw.pos, "'apply' before 'input'");
    const Token& op = ident("an operation name");
    const GateDecl* g = ast_.find_gate(op.text);
    const SlotDecl* s = ast_.find_slot(op.text);
    if (!g && !s) fail_at(op.pos, "unknown operation '" + op.text + "'");
    std::vector<std::string> sig_in = g ? g->in_types : std::vector<std::string>{s->in_type};
    std::vector<std::string> sig_out = g ? g->out_types : std::vector<std::string>{s->out_type};
    ApplyNode n;
    n.op = op.text;
    n.pos = kw.pos;
    expect("(");
    const auto ins = ident_list("a wire name");
    expect(")");
    std::vector<const Token*> outs = ins;
    if (peek().kind == Tok::kPunct && peek().text == "->") {
      ++k_;
      expect("(");
      outs = ident_list("a wire name");
      expect(")");
    }
    expect(";");
    if (ins.size() != sig_in.size())
      fail_at(op.pos, "'" + op.text + "' takes " + std::to_string(sig_in.size()) + " wire(s)");
    if (outs.size() != sig_out.size())
      fail_at(op.pos, "'" + op.text + "' produces " + std::to_string(sig_out.size()) + " wire(s)");
    std::vector<std::string> live = live_;
    std::size_t at = live.size();
    for (std::size_t i = 0; i < ins.size(); ++i) {
      const WireDecl& w = wire_ref(*ins[i]);
      auto it = std::find(live.begin(), live.end(), w.name);
      if (it == live.end()) fail_at(ins[i]->pos, "wire '" + w.name + "' is not live here");
      if (w.type != ast_.find_wire(sig_in[i])->type)
        fail_at(ins[i]->pos, "wire '" + w.name + "' does not have the type of '" + sig_in[i] + "'");
      at = std::min<std::size_t>(at, it - live_.begin() - 0);
      n.in_wires.push_back(w.name);
    }
    // position in the original live list of the first consumed wire
    std::size_t first = live_.size();
    for (const auto& w : n.in_wires)
      first = std::min<std::size_t>(first, std::find(live_.begin(), live_.end(), w) - live_.begin());
    std::vector<std::string> rest;
    std::size_t insert_at = 0;
    for (std::size_t i = 0; i < live_.size(); ++i) {
      if (i == first) insert_at = rest.size();
      if (std::find(n.in_wires.begin(), n.in_wires.end(), live_[i]) == n.in_wires.end())
        rest.push_back(live_[i]);
    }
    for (std::size_t i = 0; i < outs.size(); ++i) {
      const WireDecl& w = wire_ref(*outs[i]);
      if (w.type != ast_.find_wire(sig_out[i])->type)
        fail_at(outs[i]->pos, "wire '" + w.name + "' does not have the type of '" + sig_out[i] + "'");
      if (std::find(rest.begin(), rest.end(), w.name) != rest.end() ||
          std::find(n.out_wires.begin(), n.out_wires.end(), w.name) != n.out_wires.end())
        fail_at(outs[i]->pos, "wire '" + w.name + "' is already live");
      n.out_wires.push_back(w.name);
    }
    for (std::size_t i = 0; i < n.in_wires.size(); ++i)
      for (std::size_t j = i + 1; j < n.in_wires.size(); ++j)
        if (n.in_wires[i] == n.in_wires[j])
          fail_at(ins[j]->pos, "wire '" + n.in_wires[j] + "' listed twice");
    rest.insert(rest.begin() + insert_at, n.out_wires.begin(), n.out_wires.end());
    live_ = std::move(rest);
    if (s) ++uses_[s->name];
    ast_.nodes.push_back(std::move(n));
  }

  void finish() {
    const Token& end = peek();
    if (!have_input_) fail_at(end.pos, "missing 'input' statement");
    if (!have_output_) fail_at(end.pos, "missing 'output' statement");
    for (const auto& s : ast_.slots)
      if (uses_[s.name] != 1)
        fail_at(s.pos, "slot '" + s.name + "' is applied " + std::to_string(uses_[s.name]) +
                           " times, expected exactly once");
    std::vector<std::string> a = live_, b = ast_.outputs;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) {
      std::string msg = "output wires do not match the live wires (live:";
      for (const auto& w : live_) msg += " " + w;
      fail_at(output_pos_, msg + ")");
    }
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
  std::string base_;
  CircuitAST ast_;
  std::vector<std::string> live_;
  std::map<std::string, int> uses_;
  bool have_input_ = false;
  bool have_output_ = false;
  Position output_pos_;
};

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out;
}

std::string print_route(const RouteSpec& r) {
  if (r.is_id) return "id";
  std::string out = "[";
  const Route& m = *r.matrix;
  for (std::size_t l = 0; l < m.rows(); ++l) {
    out += l ? ", [" : "[";
    for (std::size_t k = 0; k < m.cols(); ++k) out += std::string(k ? ", " : "") + (m.at(l, k) ? "1" : "0");
    out += "]";
  }
  return out + "]";
}

}  // namespace

CircuitAST parse_circuit(const std::string& text, const std::string& base_dir) {
  return Parser(text, base_dir).run();
}

CircuitAST parse_circuit_file(const std::string& path) {
  const std::string text = read_text_file(path);
  std::string base = std::filesystem::path(path).parent_path().string();
  if (base.empty()) base = ".";
  return parse_circuit(text, base);
}

std::string print_circuit(const CircuitAST& ast) {
  std::ostringstream out;
  for (const auto& w : ast.wires) {
    out << "wire " << w.name << " : [";
    const auto& d = w.type.sector_dims();
    for (std::size_t i = 0; i < d.size(); ++i) out << (i ? ", " : "") << d[i];
    out << "];\n";
  }
  for (const auto& g : ast.gates) {
    out << "gate " << g.name << " : " << join(g.in_types) << " -> " << join(g.out_types)
        << " route " << print_route(g.route);
    if (g.kind == GateKind::kEmbed) out << " embed;\n";
    else out << " kraus @" << g.kraus_path << ";\n";
  }
  for (const auto& s : ast.slots)
    out << "slot " << s.name << " : " << s.in_type << " -> " << s.out_type << " route "
        << print_route(s.route) << ";\n";
  out << "input " << join(ast.inputs) << ";\n";
  for (const auto& n : ast.nodes)
    out << "apply " << n.op << " (" << join(n.in_wires) << ") -> (" << join(n.out_wires)
        << ");\n";
  out << "output " << join(ast.outputs) << ";\n";
  return out.str();
}

}  // namespace sectorctl
