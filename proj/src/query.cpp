#include "sparse_expand/query.hpp"

#include <cctype>
#include <cmath>

#include "sparse_expand/error.hpp"
#include "sparse_expand/io.hpp"

namespace sparse_expand {

Clause Clause::term(std::string field, std::string text, double boost) {
  return Clause{Kind::term, std::move(field), {std::move(text)}, boost};
}

Clause Clause::phrase(std::string field, std::vector<std::string> words, double boost) {
  return Clause{Kind::phrase, std::move(field), std::move(words), boost};
}

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool valid_field(std::string_view f) {
  if (f.empty()) return false;
  for (char c : f) {
    if (is_ws(c) || c == '(' || c == ')' || c == '"' || c == '\\') return false;
  }
  return true;
}

bool needs_escape_bare(char c) {
  return is_ws(c) || c == '\\' || c == '(' || c == ')' || c == '"' || c == '^' || c == ':';
}

void append_bare(std::string& out, std::string_view t) {
  if (t == "OR") {
    out += "\\OR";
    return;
  }
  for (char c : t) {
    if (needs_escape_bare(c)) out.push_back('\\');
    out.push_back(c);
  }
}

void append_phrase(std::string& out, const std::vector<std::string>& words) {
  out.push_back('"');
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out.push_back(' ');
    for (char c : words[i]) {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
  }
  out.push_back('"');
}

}  // namespace

void Query::validate() const {
  if (clauses.empty()) throw DataError("query has no clauses");
  for (const auto& c : clauses) {
    if (!valid_field(c.field)) throw DataError("invalid field name in query: '" + c.field + "'");
    if (!(c.boost > 0) || !std::isfinite(c.boost)) throw DataError("query boost must be positive");
    if (c.terms.empty()) throw DataError("query clause without text");
    if (c.kind == Clause::Kind::term && c.terms.size() != 1) throw DataError("term clause must hold one text");
    for (const auto& t : c.terms) {
      if (t.empty()) throw DataError("empty text in query clause");
      if (c.kind == Clause::Kind::phrase) {
        for (char ch : t) {
          if (is_ws(ch)) throw DataError("phrase word contains whitespace: '" + t + "'");
        }
      }
    }
  }
}

std::string serialize(const Query& query) {
  query.validate();
  std::string out;
  std::size_t i = 0;
  while (i < query.clauses.size()) {
    const auto& head = query.clauses[i];
    std::size_t j = i;
    while (j < query.clauses.size() && query.clauses[j].field == head.field &&
           query.clauses[j].boost == head.boost) {
      ++j;
    }
    if (!out.empty()) out += " OR ";
    out += head.field;
    out += ":(";
    for (std::size_t c = i; c < j; ++c) {
      if (c > i) out += " OR ";
      const auto& clause = query.clauses[c];
      if (clause.kind == Clause::Kind::term) {
        append_bare(out, clause.terms.front());
      } else {
        append_phrase(out, clause.terms);
      }
    }
    out += ')';
    if (head.boost != 1.0) {
      out += '^';
      out += io::format_double(head.boost);
    }
    i = j;
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Query parse() {
    Query q;
    skip_ws();
    parse_group(q);
    while (true) {
      skip_ws();
      if (at_end()) break;
      expect_or();
      skip_ws();
      parse_group(q);
    }
    q.validate();
    return q;
  }

 private:
  [[noreturn]] void fail(std::string_view what) const {
    throw DataError("query parse error at offset " + std::to_string(pos_) + ": " + std::string(what));
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  void skip_ws() {
    while (!at_end() && is_ws(s_[pos_])) ++pos_;
  }

  void expect_or() {
    if (s_.substr(pos_, 2) != "OR") fail("expected OR");
    pos_ += 2;
    if (at_end() || !is_ws(s_[pos_])) fail("expected whitespace after OR");
  }

  void parse_group(Query& q) {
    const std::size_t open = s_.find('(', pos_);
    if (open == std::string_view::npos || open == pos_ || s_[open - 1] != ':') fail("expected field:(");
    std::string field(s_.substr(pos_, open - 1 - pos_));
    if (!valid_field(field)) fail("invalid field name");
    pos_ = open + 1;
    std::vector<Clause> group;
    skip_ws();
    group.push_back(parse_item(field));
    while (true) {
      skip_ws();
      if (peek() == ')') {
        ++pos_;
        break;
      }
      expect_or();
      skip_ws();
      group.push_back(parse_item(field));
    }
    double boost = 1.0;
    if (peek() == '^') {
      ++pos_;
      const std::size_t start = pos_;
      while (!at_end() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                           s_[pos_] == 'e' || s_[pos_] == 'E' || s_[pos_] == '+' || s_[pos_] == '-')) {
        ++pos_;
      }
      try {
        boost = io::parse_double(s_.substr(start, pos_ - start));
      } catch (const DataError&) {
        fail("invalid boost");
      }
    }
    for (auto& c : group) {
      c.boost = boost;
      q.clauses.push_back(std::move(c));
    }
  }

  Clause parse_item(const std::string& field) {
    if (peek() == '"') {
      ++pos_;
      std::vector<std::string> words;
      std::string word;
      while (true) {
        if (at_end()) fail("unterminated phrase");
        char c = s_[pos_++];
        if (c == '"') break;
        if (c == '\\') {
          if (at_end()) fail("dangling escape");
          word.push_back(s_[pos_++]);
        } else if (c == ' ') {
          if (word.empty()) fail("empty phrase word");
          words.push_back(std::move(word));
          word.clear();
        } else {
          word.push_back(c);
        }
      }
      if (word.empty()) fail("empty phrase word");
      words.push_back(std::move(word));
      return Clause::phrase(field, std::move(words));
    }
    std::string t;
    while (!at_end()) {
      char c = s_[pos_];
      if (c == '\\') {
        if (pos_ + 1 >= s_.size()) fail("dangling escape");
        t.push_back(s_[pos_ + 1]);
        pos_ += 2;
        continue;
      }
      if (is_ws(c) || c == ')') break;
      if (c == '(' || c == '"' || c == '^' || c == ':') fail("unescaped special character in term");
      t.push_back(c);
      ++pos_;
    }
    if (t.empty()) fail("empty term");
    return Clause::term(field, std::move(t));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Query parse_query(std::string_view expression) { return Parser(expression).parse(); }

}  // namespace sparse_expand
