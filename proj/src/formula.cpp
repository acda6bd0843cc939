#include "gapcheck/formula.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <variant>

#include "gapcheck/errors.hpp"

namespace gapcheck {

// Magnitude cap for arithmetic bounds so that desugaring shifts and
// shortest-path sums stay far from int64 overflow.
inline constexpr std::int64_t kMaxBound = 1'000'000'000'000'000;

struct Formula::Node {
  Kind kind;
  std::variant<std::monostate, PropAtom, ArithAtom, bool> payload;
  std::vector<Formula> children;
};

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Le: return "<=";
    case CmpOp::Lt: return "<";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto lead = [](char c) { return (c >= 'a' && c <= 'z') || c == '_'; };
  auto tail = [&](char c) { return lead(c) || (c >= '0' && c <= '9'); };
  if (!lead(s.front())) return false;
  if (!std::all_of(s.begin() + 1, s.end(), tail)) return false;
  return s != "true" && s != "false";
}

namespace {

void require_identifier(const std::string& s, const char* what) {
  if (!valid_identifier(s)) {
    throw FragmentError(std::string("invalid ") + what + " '" + s + "'");
  }
}

}  // namespace

Formula Formula::prop(std::string predicate, std::vector<std::string> args) {
  require_identifier(predicate, "predicate");
  for (const auto& a : args) require_identifier(a, "constant");
  return Formula(std::make_shared<const Node>(
      Node{Kind::Prop, PropAtom{std::move(predicate), std::move(args)}, {}}));
}

Formula Formula::arith(std::string lhs, std::string rhs, CmpOp op,
                       std::int64_t bound) {
  require_identifier(lhs, "integer variable");
  require_identifier(rhs, "integer variable");
  if (bound > kMaxBound || bound < -kMaxBound) {
    throw FragmentError("arithmetic bound " + std::to_string(bound) +
                        " out of range");
  }
  if (lhs == rhs) {
    lhs = std::string(kZeroVar);
    rhs = std::string(kZeroVar);
  }
  return Formula(std::make_shared<const Node>(Node{
      Kind::Arith, ArithAtom{std::move(lhs), std::move(rhs), op, bound}, {}}));
}

Formula Formula::constant(bool value) {
  return Formula(std::make_shared<const Node>(Node{Kind::Const, value, {}}));
}

Formula Formula::negation(Formula child) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Not, std::monostate{}, {std::move(child)}}));
}

Formula Formula::conjunction(std::vector<Formula> children) {
  if (children.size() < 2) {
    throw InvariantError("conjunction needs at least two children");
  }
  return Formula(std::make_shared<const Node>(
      Node{Kind::And, std::monostate{}, std::move(children)}));
}

Formula Formula::disjunction(std::vector<Formula> children) {
  if (children.size() < 2) {
    throw InvariantError("disjunction needs at least two children");
  }
  return Formula(std::make_shared<const Node>(
      Node{Kind::Or, std::monostate{}, std::move(children)}));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Implies, std::monostate{}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::biconditional(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Iff, std::monostate{}, {std::move(lhs), std::move(rhs)}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const PropAtom& Formula::prop_atom() const {
  return std::get<PropAtom>(node_->payload);
}

const ArithAtom& Formula::arith_atom() const {
  return std::get<ArithAtom>(node_->payload);
}

bool Formula::const_value() const { return std::get<bool>(node_->payload); }

std::span<const Formula> Formula::children() const { return node_->children; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  if (node_->payload != other.node_->payload) return false;
  return node_->children == other.node_->children;
}

Formula conjoin(std::span<const Formula> parts) {
  if (parts.empty()) return Formula::constant(true);
  if (parts.size() == 1) return parts.front();
  return Formula::conjunction({parts.begin(), parts.end()});
}

std::string atom_key(const PropAtom& atom) {
  std::string out = atom.predicate;
  if (!atom.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      if (i > 0) out += ',';
      out += atom.args[i];
    }
    out += ')';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not: return 5;
    default: return 6;
  }
}

void write(std::ostringstream& out, const Formula& f);

void write_child(std::ostringstream& out, const Formula& child, bool parens) {
  if (parens) out << '(';
  write(out, child);
  if (parens) out << ')';
}

void write_arith(std::ostringstream& out, const ArithAtom& a) {
  const bool lhs_zero = a.lhs == kZeroVar;
  const bool rhs_zero = a.rhs == kZeroVar;
  out << '[';
  if (lhs_zero && rhs_zero) {
    out << '0';
  } else if (rhs_zero) {
    out << a.lhs;
  } else {
    out << (lhs_zero ? std::string("0") : a.lhs) << " - " << a.rhs;
  }
  out << ' ' << to_string(a.op) << ' ' << a.bound << ']';
}

void write(std::ostringstream& out, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Prop: out << atom_key(f.prop_atom()); return;
    case K::Arith: write_arith(out, f.arith_atom()); return;
    case K::Const: out << (f.const_value() ? "true" : "false"); return;
    case K::Not: {
      out << '!';
      write_child(out, f.children()[0], precedence(f.children()[0]) < 5);
      return;
    }
    case K::And:
    case K::Or: {
      const int own = precedence(f);
      const char* sep = f.kind() == K::And ? " & " : " | ";
      bool first = true;
      for (const auto& c : f.children()) {
        if (!first) out << sep;
        first = false;
        write_child(out, c, precedence(c) <= own);
      }
      return;
    }
    case K::Implies: {
      write_child(out, f.children()[0], precedence(f.children()[0]) <= 2);
      out << " -> ";
      write_child(out, f.children()[1], precedence(f.children()[1]) < 2);
      return;
    }
    case K::Iff: {
      write_child(out, f.children()[0], false);
      out << " <-> ";
      write_child(out, f.children()[1], precedence(f.children()[1]) <= 1);
      return;
    }
  }
}

}  // namespace

std::string pretty(const Formula& f) {
  std::ostringstream out;
  write(out, f);
  return out.str();
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

Formula le(const std::string& lhs, const std::string& rhs, std::int64_t bound) {
  return Formula::arith(lhs, rhs, CmpOp::Le, bound);
}

Formula desugar_arith(const ArithAtom& a) {
  const auto c = a.bound;
  switch (a.op) {
    case CmpOp::Le: return le(a.lhs, a.rhs, c);
    case CmpOp::Lt: return le(a.lhs, a.rhs, c - 1);
    case CmpOp::Ge: return le(a.rhs, a.lhs, -c);
    case CmpOp::Gt: return le(a.rhs, a.lhs, -c - 1);
    case CmpOp::Eq:
      return Formula::conjunction({le(a.lhs, a.rhs, c), le(a.rhs, a.lhs, -c)});
    case CmpOp::Ne:
      return Formula::disjunction(
          {le(a.lhs, a.rhs, c - 1), le(a.rhs, a.lhs, -c - 1)});
  }
  throw InvariantError("unknown comparison operator");
}

std::vector<Formula> desugar_all(std::span<const Formula> fs) {
  std::vector<Formula> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(desugar(f));
  return out;
}

}  // namespace

Formula desugar(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Prop:
    case K::Const: return f;
    case K::Arith:
      if (f.arith_atom().primitive()) return f;
      return desugar_arith(f.arith_atom());
    case K::Not: return Formula::negation(desugar(f.children()[0]));
    case K::And: return Formula::conjunction(desugar_all(f.children()));
    case K::Or: return Formula::disjunction(desugar_all(f.children()));
    case K::Implies:
      return Formula::implication(desugar(f.children()[0]),
                                  desugar(f.children()[1]));
    case K::Iff: {
      auto lhs = desugar(f.children()[0]);
      auto rhs = desugar(f.children()[1]);
      return Formula::conjunction(
          {Formula::implication(lhs, rhs), Formula::implication(rhs, lhs)});
    }
  }
  throw InvariantError("unknown formula kind");
}

int node_count(const Formula& f) {
  int n = 1;
  for (const auto& c : f.children()) n += node_count(c);
  return n;
}

// ---------------------------------------------------------------------------
// Semantics

namespace {

std::int64_t value_of(const std::string& var, const Assignment& a) {
  if (var == kZeroVar) return 0;
  auto it = a.ints.find(var);
  return it == a.ints.end() ? 0 : it->second;
}

bool compare(std::int64_t diff, CmpOp op, std::int64_t bound) {
  switch (op) {
    case CmpOp::Le: return diff <= bound;
    case CmpOp::Lt: return diff < bound;
    case CmpOp::Ge: return diff >= bound;
    case CmpOp::Gt: return diff > bound;
    case CmpOp::Eq: return diff == bound;
    case CmpOp::Ne: return diff != bound;
  }
  return false;
}

void collect(const Formula& f, std::set<std::string>& props,
             std::set<std::string>& ints) {
  if (f.kind() == Formula::Kind::Prop) {
    props.insert(atom_key(f.prop_atom()));
  } else if (f.kind() == Formula::Kind::Arith) {
    for (const auto* v : {&f.arith_atom().lhs, &f.arith_atom().rhs}) {
      if (*v != kZeroVar) ints.insert(*v);
    }
  }
  for (const auto& c : f.children()) collect(c, props, ints);
}

}  // namespace

bool evaluate(const Formula& f, const Assignment& a) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Prop: {
      auto it = a.props.find(atom_key(f.prop_atom()));
      return it != a.props.end() && it->second;
    }
    case K::Arith: {
      const auto& at = f.arith_atom();
      return compare(value_of(at.lhs, a) - value_of(at.rhs, a), at.op,
                     at.bound);
    }
    case K::Const: return f.const_value();
    case K::Not: return !evaluate(f.children()[0], a);
    case K::And:
      return std::all_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return evaluate(c, a); });
    case K::Or:
      return std::any_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return evaluate(c, a); });
    case K::Implies:
      return !evaluate(f.children()[0], a) || evaluate(f.children()[1], a);
    case K::Iff:
      return evaluate(f.children()[0], a) == evaluate(f.children()[1], a);
  }
  return false;
}

std::vector<std::string> prop_atom_keys(std::span<const Formula> fs) {
  std::set<std::string> props, ints;
  for (const auto& f : fs) collect(f, props, ints);
  return {props.begin(), props.end()};
}

std::vector<std::string> int_variables(std::span<const Formula> fs) {
  std::set<std::string> props, ints;
  for (const auto& f : fs) collect(f, props, ints);
  return {ints.begin(), ints.end()};
}

}  // namespace gapcheck
