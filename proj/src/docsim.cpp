#include "sparse_expand/docsim.hpp"

#include <algorithm>
#include <stdexcept>

#include "sparse_expand/error.hpp"
#include "sparse_expand/index.hpp"
#include "sparse_expand/io.hpp"
#include "sparse_expand/parallel.hpp"
#include "sparse_expand/text.hpp"

namespace sparse_expand {

SimCorpus::SimCorpus(std::vector<SimDocument> docs, AnalyzerChain chain, std::size_t n)
    : docs_(std::move(docs)), chain_(std::move(chain)), n_(n) {
  if (n_ < 1) throw std::invalid_argument("important-word count must be at least 1");
  std::sort(docs_.begin(), docs_.end(), [](const SimDocument& a, const SimDocument& b) { return a.title < b.title; });
  for (std::size_t i = 1; i < docs_.size(); ++i) {
    if (docs_[i].title == docs_[i - 1].title) throw DataError("duplicate corpus title: " + docs_[i].title);
  }

  std::vector<std::map<std::string, std::size_t>> tfs(docs_.size());
  parallel_for(docs_.size(), [&](std::size_t i) {
    for (auto& t : chain_.terms(docs_[i].body)) ++tfs[i][std::move(t)];
  });
  std::map<std::string_view, std::size_t> df;
  for (const auto& tf : tfs) {
    for (const auto& [term, _] : tf) ++df[term];
  }

  ranked_.resize(docs_.size());
  words_.resize(docs_.size());
  parallel_for(docs_.size(), [&](std::size_t i) {
    auto& r = ranked_[i];
    r.reserve(tfs[i].size());
    for (const auto& [term, tf] : tfs[i]) {
      r.push_back({term, static_cast<double>(tf) * idf(docs_.size(), df.at(term))});
    }
    std::stable_sort(r.begin(), r.end(), [](const Weighted& a, const Weighted& b) { return a.weight > b.weight; });
    words_[i] = important_words(i, n_);
  });
}

SimCorpus SimCorpus::load(const std::filesystem::path& dir, AnalyzerChain chain, std::size_t n) {
  if (!std::filesystem::is_directory(dir)) throw DataError("corpus directory not found: " + dir.string());
  std::vector<SimDocument> docs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    docs.push_back({text::percent_decode(entry.path().stem().string()), io::read_file(entry.path())});
  }
  return SimCorpus(std::move(docs), std::move(chain), n);
}

std::ptrdiff_t SimCorpus::find(std::string_view title) const {
  auto it = std::lower_bound(docs_.begin(), docs_.end(), title,
                             [](const SimDocument& d, std::string_view t) { return d.title < t; });
  if (it == docs_.end() || it->title != title) return -1;
  return it - docs_.begin();
}

std::vector<std::string> SimCorpus::important_words(std::size_t doc, std::size_t m) const {
  const auto& r = ranked_.at(doc);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < r.size() && i < m; ++i) out.push_back(r[i].term);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t SimCorpus::overlap(std::size_t a, std::size_t b) const {
  const auto& wa = words_.at(a);
  const auto& wb = words_.at(b);
  std::size_t common = 0;
  for (auto i = wa.begin(), j = wb.begin(); i != wa.end() && j != wb.end();) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

double SimCorpus::sim(std::size_t a, std::size_t b) const {
  return static_cast<double>(overlap(a, b)) / static_cast<double>(n_);
}

std::vector<ConceptSuggestion> suggest_docsim(const SimCorpus& corpus, std::string_view seed_title, std::size_t k,
                                              System label) {
  const auto seed = corpus.find(seed_title);
  if (seed < 0) throw DataError("seed not found: " + std::string(seed_title));
  const auto s = static_cast<std::size_t>(seed);

  std::vector<std::size_t> overlaps(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) { overlaps[i] = i == s ? 0 : corpus.overlap(s, i); });

  // Documents are title-sorted, so a stable sort on overlap leaves ties in
  // title order.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (overlaps[i] > 0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return overlaps[a] > overlaps[b]; });
  if (order.size() > k) order.resize(k);

  std::vector<ConceptSuggestion> out;
  for (auto i : order) {
    out.push_back({corpus.document(i).title,
                   static_cast<double>(overlaps[i]) / static_cast<double>(corpus.n()), out.size() + 1, label});
  }
  return out;
}

std::map<std::string, std::string> parse_seeds(std::string_view content) {
  std::map<std::string, std::string> seeds;
  std::size_t line_no = 0;
  for (auto line : text::split(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw DataError("seeds line " + std::to_string(line_no) + ": expected topic_id<TAB>title");
    std::string id(text::trim(line.substr(0, tab)));
    std::string title(text::trim(line.substr(tab + 1)));
    if (id.empty() || title.empty()) throw DataError("seeds line " + std::to_string(line_no) + ": empty field");
    if (!seeds.emplace(id, title).second) throw DataError("seeds line " + std::to_string(line_no) + ": duplicate topic " + id);
  }
  return seeds;
}

std::map<std::string, std::string> load_seeds(const std::filesystem::path& path) {
  return parse_seeds(io::read_file(path));
}

}  // namespace sparse_expand
