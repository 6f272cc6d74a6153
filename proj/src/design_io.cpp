// Copyright 2026 The uahand Authors
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

#include "uahand/design_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "uahand/errors.hpp"

namespace uahand {
namespace {

struct Token {
  std::string text;
  int line = 1;
  int column = 1;
  bool eof = false;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) {
      tok.eof = true;
      return tok;
    }
    const char c = text_[pos_];
    if (c == '{' || c == '}') {
      tok.text = c;
      advance();
      return tok;
    }
    while (pos_ < text_.size() && !is_space(text_[pos_]) &&
           text_[pos_] != '{' && text_[pos_] != '}' && text_[pos_] != '#') {
      tok.text += text_[pos_];
      advance();
    }
    return tok;
  }

  Token peek() {
    const size_t pos = pos_;
    const int line = line_, column = column_;
    Token tok = next();
    pos_ = pos;
    line_ = line;
    column_ = column;
    return tok;
  }

 private:
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      if (is_space(text_[pos_])) {
        advance();
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

[[noreturn]] void fail(const Token& tok, const std::string& what) {
  throw ParseError(what, tok.line, tok.column);
}

Token expect_atom(Lexer& lex, const char* what) {
  Token tok = lex.next();
  if (tok.eof || tok.text == "{" || tok.text == "}")
    fail(tok, std::string("expected ") + what);
  return tok;
}

void expect(Lexer& lex, const char* literal) {
  Token tok = lex.next();
  if (tok.eof || tok.text != literal)
    fail(tok, "expected '" + std::string(literal) + "'" +
                  (tok.eof ? " before end of file" : ", got '" + tok.text +
                                                         "'"));
}

double parse_number(const Token& tok) {
  double value = 0.0;
  const char* begin = tok.text.data();
  const char* end = begin + tok.text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    fail(tok, "expected a number, got '" + tok.text + "'");
  return value;
}

double expect_number(Lexer& lex, const char* what) {
  return parse_number(expect_atom(lex, what));
}

int expect_sign(Lexer& lex, const char* what) {
  const Token tok = expect_atom(lex, what);
  const double v = parse_number(tok);
  if (v != 1.0 && v != -1.0) fail(tok, std::string(what) + " must be 1 or -1");
  return v > 0 ? 1 : -1;
}

// Key-value block reader that records which keys were seen so required
// fields can be reported against the block's closing brace.
class Fields {
 public:
  void set(const std::string& key, double value, const Token& at) {
    if (values_.count(key)) fail(at, "duplicate field '" + key + "'");
    values_[key] = value;
  }

  double require(const std::string& key, const Token& close) const {
    const auto it = values_.find(key);
    if (it == values_.end()) fail(close, "missing field '" + key + "'");
    return it->second;
  }

 private:
  std::map<std::string, double> values_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

std::string shortest(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace

HandDesign parse_design(const std::string& text) {
  Lexer lex(text);
  HandDesign design;
  std::vector<std::pair<std::string, double>> references;
  double motor_reference = 0.0;
  bool have_motor = false;

  expect(lex, "hand");
  expect(lex, "{");
  while (true) {
    Token tok = lex.next();
    if (tok.eof) fail(tok, "expected '}' before end of file");
    if (tok.text == "}") break;

    if (tok.text == "motor") {
      if (have_motor) fail(tok, "duplicate motor block");
      have_motor = true;
      expect(lex, "{");
      Fields fields;
      Token close;
      while (true) {
        close = lex.next();
        if (close.eof) fail(close, "expected '}' before end of file");
        if (close.text == "}") break;
        fields.set(close.text, expect_number(lex, "a value"), close);
      }
      design.motor.radius = fields.require("radius", close);
      design.motor.angle_min = fields.require("angle_min", close);
      design.motor.angle_max = fields.require("angle_max", close);
      design.motor.stiction = fields.require("stiction", close);
      motor_reference = fields.require("reference", close);
    } else if (tok.text == "joint") {
      Joint joint;
      joint.id = expect_atom(lex, "a joint id").text;
      expect(lex, "{");
      Fields fields;
      Token close;
      while (true) {
        close = lex.next();
        if (close.eof) fail(close, "expected '}' before end of file");
        if (close.text == "}") break;
        if (close.text == "kind") {
          const Token kind = expect_atom(lex, "flexion or abduction");
          if (kind.text == "flexion")
            joint.kind = JointKind::kFlexion;
          else if (kind.text == "abduction")
            joint.kind = JointKind::kAbduction;
          else
            fail(kind, "joint kind must be flexion or abduction");
          fields.set("kind", 0.0, close);
        } else {
          fields.set(close.text, expect_number(lex, "a value"), close);
        }
      }
      fields.require("kind", close);
      joint.angle_min = fields.require("min", close);
      joint.angle_max = fields.require("max", close);
      joint.stiffness = fields.require("stiffness", close);
      joint.preload = fields.require("preload", close);
      references.emplace_back(joint.id, fields.require("reference", close));
      design.joints.push_back(std::move(joint));
    } else if (tok.text == "tendon") {
      TendonRoute route;
      route.id = expect_atom(lex, "a tendon id").text;
      expect(lex, "{");
      bool have_role = false, have_winding = false;
      while (true) {
        Token key = lex.next();
        if (key.eof) fail(key, "expected '}' before end of file");
        if (key.text == "}") break;
        if (key.text == "role") {
          const Token role = expect_atom(lex, "ta or sa");
          if (role.text == "ta")
            route.role = TendonRole::kTendonAgonist;
          else if (role.text == "sa")
            route.role = TendonRole::kSpringAgonist;
          else
            fail(role, "tendon role must be ta or sa");
          have_role = true;
        } else if (key.text == "winding") {
          route.winding = expect_sign(lex, "winding");
          have_winding = true;
        } else if (key.text == "stop") {
          TendonStop stop;
          stop.joint = expect_atom(lex, "a joint id").text;
          expect(lex, "{");
          Fields fields;
          Token close;
          while (true) {
            close = lex.next();
            if (close.eof) fail(close, "expected '}' before end of file");
            if (close.text == "}") break;
            fields.set(close.text, expect_number(lex, "a value"), close);
          }
          stop.radius = fields.require("radius", close);
          const double sign = fields.require("sign", close);
          if (sign != 1.0 && sign != -1.0)
            fail(close, "stop sign must be 1 or -1");
          stop.pull_sign = sign > 0 ? 1 : -1;
          route.stops.push_back(std::move(stop));
        } else {
          fail(key, "unknown tendon field '" + key.text + "'");
        }
      }
      if (!have_role) fail(tok, "tendon " + route.id + ": missing role");
      if (!have_winding) fail(tok, "tendon " + route.id + ": missing winding");
      design.tendons.push_back(std::move(route));
    } else {
      fail(tok, "unknown section '" + tok.text + "'");
    }
  }
  {
    const Token trailing = lex.next();
    if (!trailing.eof) fail(trailing, "unexpected trailing content");
  }

  design.reference_pose.motor_angle = motor_reference;
  design.reference_pose.angles.resize(design.joints.size());
  for (size_t i = 0; i < design.joints.size(); ++i)
    design.reference_pose.angles[i] = references[i].second;

  require_valid(design);
  return design;
}

HandDesign load_design(const std::string& path) {
  return parse_design(read_file(path));
}

std::string serialize_design(const HandDesign& design) {
  std::ostringstream out;
  out << "hand {\n";
  out << "  motor { radius " << shortest(design.motor.radius)
      << "  angle_min " << shortest(design.motor.angle_min) << "  angle_max "
      << shortest(design.motor.angle_max) << "  stiction "
      << shortest(design.motor.stiction) << "  reference "
      << shortest(design.reference_pose.motor_angle) << " }\n";
  for (size_t i = 0; i < design.joints.size(); ++i) {
    const Joint& j = design.joints[i];
    out << "  joint " << j.id << " { kind " << to_string(j.kind) << "  min "
        << shortest(j.angle_min) << "  max " << shortest(j.angle_max)
        << "  stiffness " << shortest(j.stiffness) << "  preload "
        << shortest(j.preload) << "  reference "
        << shortest(design.reference_pose.angles[i]) << " }\n";
  }
  for (const TendonRoute& t : design.tendons) {
    out << "  tendon " << t.id << " {\n";
    out << "    role " << to_string(t.role) << "  winding " << t.winding
        << "\n";
    for (const TendonStop& s : t.stops)
      out << "    stop " << s.joint << " { radius " << shortest(s.radius)
          << "  sign " << s.pull_sign << " }\n";
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

void save_design(const HandDesign& design, const std::string& path) {
  write_file(path, serialize_design(design));
}

SynergyProblem parse_problem(const std::string& text, const HandDesign& base) {
  Lexer lex(text);
  SynergyProblem problem;
  problem.base = base;
  problem.weights.assign(base.joints.size(), 1.0);
  bool any_weight = false;
  std::vector<int> column_to_joint;

  expect(lex, "problem");
  expect(lex, "{");
  while (true) {
    Token tok = lex.next();
    if (tok.eof) fail(tok, "expected '}' before end of file");
    if (tok.text == "}") break;

    if (tok.text == "joints") {
      column_to_joint.clear();
      for (size_t i = 0; i < base.joints.size(); ++i) {
        const Token id = expect_atom(lex, "a joint id");
        const int j = base.joint_index(id.text);
        if (j < 0) fail(id, "unknown joint '" + id.text + "'");
        column_to_joint.push_back(j);
      }
    } else if (tok.text == "target") {
      if (column_to_joint.empty())
        fail(tok, "declare 'joints' column order before targets");
      std::vector<double> grasp(base.joints.size(), 0.0);
      for (size_t i = 0; i < column_to_joint.size(); ++i)
        grasp[static_cast<size_t>(column_to_joint[i])] =
            expect_number(lex, "a joint angle");
      problem.target_grasps.push_back(std::move(grasp));
    } else if (tok.text == "param") {
      ParameterSpec spec;
      spec.path = expect_atom(lex, "a parameter path").text;
      spec.lower = expect_number(lex, "a lower bound");
      spec.upper = expect_number(lex, "an upper bound");
      problem.parameters.push_back(std::move(spec));
    } else if (tok.text == "weight") {
      const Token id = expect_atom(lex, "a joint id");
      const int j = base.joint_index(id.text);
      if (j < 0) fail(id, "unknown joint '" + id.text + "'");
      problem.weights[static_cast<size_t>(j)] =
          expect_number(lex, "a weight");
      any_weight = true;
    } else if (tok.text == "budget") {
      problem.budget = static_cast<int>(expect_number(lex, "a budget"));
    } else if (tok.text == "seed") {
      problem.seed =
          static_cast<std::uint64_t>(expect_number(lex, "a seed"));
    } else if (tok.text == "restarts") {
      problem.restarts = static_cast<int>(expect_number(lex, "a count"));
    } else if (tok.text == "samples") {
      problem.trajectory_samples =
          static_cast<int>(expect_number(lex, "a count"));
    } else {
      fail(tok, "unknown problem field '" + tok.text + "'");
    }
  }
  if (!any_weight) problem.weights.clear();  // all-ones default
  return problem;
}

SynergyProblem load_problem(const std::string& path, const HandDesign& base) {
  return parse_problem(read_file(path), base);
}

std::vector<SpringCatalogEntry> parse_catalog(const std::string& text) {
  Lexer lex(text);
  std::vector<SpringCatalogEntry> catalog;
  expect(lex, "catalog");
  expect(lex, "{");
  while (true) {
    Token tok = lex.next();
    if (tok.eof) fail(tok, "expected '}' before end of file");
    if (tok.text == "}") break;
    if (tok.text != "spring") fail(tok, "expected 'spring'");
    SpringCatalogEntry entry;
    entry.stiffness = expect_number(lex, "a stiffness");
    entry.preload_min = expect_number(lex, "a preload lower bound");
    entry.preload_max = expect_number(lex, "a preload upper bound");
    if (!(entry.stiffness > 0.0))
      fail(tok, "spring stiffness must be positive");
    if (entry.preload_min < 0.0 || entry.preload_max < entry.preload_min)
      fail(tok, "spring preload range must be nonnegative and nonempty");
    catalog.push_back(entry);
  }
  return catalog;
}

std::vector<SpringCatalogEntry> load_catalog(const std::string& path) {
  return parse_catalog(read_file(path));
}

bool designs_equal(const HandDesign& a, const HandDesign& b) {
  if (a.joints.size() != b.joints.size() ||
      a.tendons.size() != b.tendons.size())
    return false;
  if (a.motor.radius != b.motor.radius ||
      a.motor.angle_min != b.motor.angle_min ||
      a.motor.angle_max != b.motor.angle_max ||
      a.motor.stiction != b.motor.stiction)
    return false;
  for (size_t i = 0; i < a.joints.size(); ++i) {
    const Joint& x = a.joints[i];
    const Joint& y = b.joints[i];
    if (x.id != y.id || x.kind != y.kind || x.angle_min != y.angle_min ||
        x.angle_max != y.angle_max || x.stiffness != y.stiffness ||
        x.preload != y.preload)
      return false;
  }
  for (size_t i = 0; i < a.tendons.size(); ++i) {
    const TendonRoute& x = a.tendons[i];
    const TendonRoute& y = b.tendons[i];
    if (x.id != y.id || x.role != y.role || x.winding != y.winding ||
        x.stops.size() != y.stops.size())
      return false;
    for (size_t s = 0; s < x.stops.size(); ++s) {
      if (x.stops[s].joint != y.stops[s].joint ||
          x.stops[s].radius != y.stops[s].radius ||
          x.stops[s].pull_sign != y.stops[s].pull_sign)
        return false;
    }
  }
  return a.reference_pose.angles == b.reference_pose.angles &&
         a.reference_pose.motor_angle == b.reference_pose.motor_angle;
}

}  // namespace uahand
