#include "caal/dot.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "caal/errors.hpp"

namespace caal {
namespace {

enum class Tok { Id, Arrow, LBracket, RBracket, LBrace, RBrace, Equals, Semi, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    if (pos_ >= src_.size()) return {Tok::End, "", line_};
    const char c = src_[pos_];
    const std::size_t at = line_;
    switch (c) {
      case '[': ++pos_; return {Tok::LBracket, "[", at};
      case ']': ++pos_; return {Tok::RBracket, "]", at};
      case '{': ++pos_; return {Tok::LBrace, "{", at};
      case '}': ++pos_; return {Tok::RBrace, "}", at};
      case '=': ++pos_; return {Tok::Equals, "=", at};
      case ';': ++pos_; return {Tok::Semi, ";", at};
      case ',': ++pos_; return {Tok::Comma, ",", at};
      case '"': return quoted();
      default: break;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      pos_ += 2;
      return {Tok::Arrow, "->", at};
    }
    if (is_id_char(c)) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && is_id_char(src_[pos_]) &&
             !(src_[pos_] == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>'))
        ++pos_;
      return {Tok::Id, std::string(src_.substr(start, pos_ - start)), at};
    }
    throw ParseError(at, std::string("unexpected character '") + c + "'");
  }

 private:
  static bool is_id_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
           (c == '-');
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#' || (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/')) {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        pos_ += 2;
        while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) {
          if (src_[pos_] == '\n') ++line_;
          ++pos_;
        }
        pos_ += 2;
      } else {
        break;
      }
    }
  }

  Token quoted() {
    const std::size_t at = line_;
    ++pos_;
    std::string out;
    while (pos_ < src_.size() && src_[pos_] != '"') {
      if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) ++pos_;
      if (src_[pos_] == '\n') ++line_;
      out += src_[pos_++];
    }
    if (pos_ >= src_.size()) throw ParseError(at, "unterminated string");
    ++pos_;
    return {Tok::Id, std::move(out), at};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_start_node(const std::string& name) { return name.rfind("__start", 0) == 0; }

struct RawEdge {
  std::string from, to, input, output;
  std::size_t line;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { advance(); }

  MealyMachine parse() {
    if (cur_.kind == Tok::Id && cur_.text == "strict") advance();
    if (cur_.kind != Tok::Id || cur_.text != "digraph") throw ParseError(cur_.line, "expected 'digraph'");
    advance();
    if (cur_.kind == Tok::Id) advance();
    expect(Tok::LBrace, "'{'");
    while (cur_.kind != Tok::RBrace) {
      if (cur_.kind == Tok::End) throw ParseError(cur_.line, "unexpected end of input, missing '}'");
      statement();
    }
    close_line_ = cur_.line;
    return build();
  }

 private:
  void advance() { cur_ = lex_.next(); }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) throw ParseError(cur_.line, std::string("expected ") + what);
    advance();
  }

  std::map<std::string, std::string> attributes() {
    std::map<std::string, std::string> attrs;
    if (cur_.kind != Tok::LBracket) return attrs;
    advance();
    while (cur_.kind != Tok::RBracket) {
      if (cur_.kind != Tok::Id) throw ParseError(cur_.line, "expected attribute name");
      std::string key = cur_.text;
      advance();
      expect(Tok::Equals, "'=' in attribute list");
      if (cur_.kind != Tok::Id) throw ParseError(cur_.line, "expected attribute value");
      attrs[key] = cur_.text;
      advance();
      if (cur_.kind == Tok::Comma || cur_.kind == Tok::Semi) advance();
    }
    advance();
    return attrs;
  }

  void declare(const std::string& name) {
    if (is_start_node(name)) return;
    if (state_index_.try_emplace(name, state_names_.size()).second) state_names_.push_back(name);
  }

  void statement() {
    if (cur_.kind == Tok::Semi) {
      advance();
      return;
    }
    if (cur_.kind != Tok::Id) throw ParseError(cur_.line, "unexpected token '" + cur_.text + "'");
    const Token head = cur_;
    advance();
    if ((head.text == "graph" || head.text == "node" || head.text == "edge") && cur_.kind == Tok::LBracket) {
      attributes();
    } else if (cur_.kind == Tok::Equals) {
      advance();
      if (cur_.kind != Tok::Id) throw ParseError(cur_.line, "expected value after '='");
      advance();
    } else if (cur_.kind == Tok::Arrow) {
      advance();
      if (cur_.kind != Tok::Id) throw ParseError(cur_.line, "expected edge target");
      const Token target = cur_;
      advance();
      if (cur_.kind == Tok::Arrow) throw ParseError(cur_.line, "edge chains are not supported");
      auto attrs = attributes();
      edge(head, target, attrs);
    } else {
      attributes();
      declare(head.text);
    }
    if (cur_.kind == Tok::Semi) advance();
  }

  void edge(const Token& from, const Token& to, const std::map<std::string, std::string>& attrs) {
    if (is_start_node(from.text)) {
      if (is_start_node(to.text)) throw ParseError(from.line, "initial marker must point to a state");
      if (initial_ && *initial_ != to.text) throw ParseError(from.line, "multiple initial states");
      initial_ = to.text;
      declare(to.text);
      return;
    }
    declare(from.text);
    declare(to.text);
    auto it = attrs.find("label");
    if (it == attrs.end()) throw ParseError(from.line, "malformed label: transition without label");
    const std::string& label = it->second;
    const auto slash = label.find('/');
    if (slash == std::string::npos) throw ParseError(from.line, "malformed label \"" + label + "\": missing '/'");
    std::string in = trim(std::string_view(label).substr(0, slash));
    std::string out = trim(std::string_view(label).substr(slash + 1));
    if (in.empty() || out.empty() || out.find('/') != std::string::npos)
      throw ParseError(from.line, "malformed label \"" + label + "\"");
    edges_.push_back({from.text, to.text, std::move(in), std::move(out), from.line});
  }

  MealyMachine build() {
    if (state_names_.empty()) throw ParseError(close_line_, "missing initial state: no states declared");
    std::set<std::string> in_set, out_set;
    for (const auto& e : edges_) {
      in_set.insert(e.input);
      out_set.insert(e.output);
    }
    if (in_set.empty()) throw ParseError(close_line_, "no transitions");
    Alphabet inputs({in_set.begin(), in_set.end()});
    Alphabet outputs({out_set.begin(), out_set.end()});

    const std::size_t n = state_names_.size(), k = inputs.size();
    std::vector<std::int64_t> delta(n * k, -1);
    std::vector<Symbol> lambda(n * k, 0);
    for (const auto& e : edges_) {
      const std::size_t cell = state_index_.at(e.from) * k + inputs.index(e.input);
      const auto target = static_cast<std::int64_t>(state_index_.at(e.to));
      const Symbol out = outputs.index(e.output);
      if (delta[cell] >= 0) {
        if (delta[cell] != target || lambda[cell] != out)
          throw ParseError(e.line, "nondeterministic transition at " + e.from + "/" + e.input);
        continue;
      }
      delta[cell] = target;
      lambda[cell] = out;
    }
    std::vector<StateId> transitions(n * k);
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t a = 0; a < k; ++a) {
        if (delta[q * k + a] < 0)
          throw ParseError(close_line_, "incomplete transition function at " + state_names_[q] + "/" +
                                            inputs.name(static_cast<Symbol>(a)));
        transitions[q * k + a] = static_cast<StateId>(delta[q * k + a]);
      }
    const StateId init = initial_ ? static_cast<StateId>(state_index_.at(*initial_)) : 0;
    return MealyMachine(std::move(inputs), std::move(outputs), n, init, std::move(transitions),
                        std::move(lambda));
  }

  Lexer lex_;
  Token cur_{Tok::End, "", 0};
  std::size_t close_line_ = 0;
  std::vector<std::string> state_names_;
  std::map<std::string, std::size_t> state_index_;
  std::optional<std::string> initial_;
  std::vector<RawEdge> edges_;
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

MealyMachine parse_dot(std::string_view text) { return Parser(text).parse(); }

MealyMachine load_dot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read target file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dot(buf.str());
}

std::string write_dot(const MealyMachine& m) {
  std::ostringstream os;
  os << "digraph mealy {\n";
  os << "  __start0 [label=\"\" shape=\"none\"];\n";
  for (StateId q = 0; q < m.num_states(); ++q) os << "  s" << q << " [shape=\"circle\" label=\"s" << q << "\"];\n";
  const std::size_t k = m.inputs().size();
  for (StateId q = 0; q < m.num_states(); ++q)
    for (Symbol a = 0; a < k; ++a)
      os << "  s" << q << " -> s" << m.next(q, a) << " [label=\"" << escape(m.inputs().name(a)) << " / "
         << escape(m.outputs().name(m.output(q, a))) << "\"];\n";
  os << "  __start0 -> s" << m.initial() << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace caal
