#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sparse_expand {

// One disjunct of a query. Text is raw (unanalyzed); the index analyzes it
// with the field's chain at search time. A term clause holds one text, a
// phrase clause holds whitespace-free words matched at consecutive positions.
struct Clause {
  enum class Kind { term, phrase };

  Kind kind = Kind::term;
  std::string field;
  std::vector<std::string> terms;
  double boost = 1.0;

  static Clause term(std::string field, std::string text, double boost = 1.0);
  static Clause phrase(std::string field, std::vector<std::string> words, double boost = 1.0);

  bool operator==(const Clause&) const = default;
};

struct Query {
  std::vector<Clause> clauses;

  // Throws DataError unless there is at least one clause, every boost is
  // positive and finite, and all texts are non-empty.
  void validate() const;

  bool operator==(const Query&) const = default;
};

// Surface syntax: consecutive clauses sharing field and boost form one group,
//   chic_all-en:(moby OR dick)^2 OR chic_all-en:("Herman Melville" OR literature)
// Term texts are written bare with backslash escapes, phrases in quotes.
std::string serialize(const Query& query);
Query parse_query(std::string_view expression);

}  // namespace sparse_expand
