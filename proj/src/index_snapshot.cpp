// Binary snapshot of a sealed Index. Layout (little-endian):
//
//   magic "SPXINDEX" | u32 version | u32 reserved
//   options: strlist schema, str all_field
//   analyzers: u32 count, each { str lang, strlist stages, strlist stopwords }
//   documents: u32 count, each { str id, str lang, u32 nfields, each { str name, strlist values } }
//   fields: u32 count, each { str name, str lang, u64 total_tokens, u32[N] lengths,
//                             u32 nterms, each { str term, u32 npostings,
//                                                each { u32 doc, u32 npos, u32[npos] } } }
//   values: u32 count, each { str field, u32 nvalues, each { str value, u32 ndocs, u32[ndocs] } }
//   u64 FNV-1a checksum of every preceding byte
//
// str = u32 length + bytes; strlist = u32 count + str*.

#include <bit>
#include <cstring>
#include <fstream>

#include "sparse_expand/error.hpp"
#include "sparse_expand/index.hpp"
#include "sparse_expand/io.hpp"

namespace sparse_expand {

namespace {

constexpr char kMagic[8] = {'S', 'P', 'X', 'I', 'N', 'D', 'E', 'X'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little, "snapshot writer assumes a little-endian host");

class Writer {
 public:
  void u32(std::uint32_t v) { raw(&v, sizeof v); }
  void u64(std::uint64_t v) { raw(&v, sizeof v); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    raw(s.data(), s.size());
  }
  template <typename Range>
  void strlist(const Range& r) {
    u32(static_cast<std::uint32_t>(std::size(r)));
    for (const auto& s : r) str(s);
  }
  void raw(const void* p, std::size_t n) { buf_.append(static_cast<const char*>(p), n); }
  std::string& buffer() { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::uint32_t u32() {
    std::uint32_t v;
    raw(&v, sizeof v);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v;
    raw(&v, sizeof v);
    return v;
  }
  std::string str() {
    const auto n = u32();
    need(n);
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::vector<std::string> strlist() {
    const auto n = u32();
    std::vector<std::string> out;
    out.reserve(std::min<std::size_t>(n, remaining()));
    for (std::uint32_t i = 0; i < n; ++i) out.push_back(str());
    return out;
  }
  void raw(void* p, std::size_t n) {
    need(n);
    std::memcpy(p, data_.data() + pos_, n);
    pos_ += n;
  }
  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t pos() const { return pos_; }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw DataError("index snapshot is truncated");
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace

class IndexSnapshot {
 public:
  static std::string encode(const Index& index) {
    Writer w;
    w.raw(kMagic, sizeof kMagic);
    w.u32(kVersion);
    w.u32(0);
    w.strlist(index.options_.schema);
    w.str(index.options_.all_field);

    w.u32(static_cast<std::uint32_t>(index.chains_.size()));
    for (const auto& [lang, chain] : index.chains_) {
      w.str(lang);
      std::vector<std::string> stages;
      for (auto s : chain.stages()) stages.emplace_back(stage_name(s));
      w.strlist(stages);
      w.strlist(chain.stopwords());
    }

    w.u32(static_cast<std::uint32_t>(index.docs_.size()));
    for (const auto& d : index.docs_) {
      w.str(d.id);
      w.str(d.lang);
      w.u32(static_cast<std::uint32_t>(d.fields.size()));
      for (const auto& [name, values] : d.fields) {
        w.str(name);
        w.strlist(values);
      }
    }

    w.u32(static_cast<std::uint32_t>(index.fields_.size()));
    for (const auto& f : index.fields_) {
      w.str(f.name);
      w.str(f.lang);
      w.u64(f.total_tokens);
      for (auto len : f.lengths) w.u32(len);
      w.u32(static_cast<std::uint32_t>(f.postings.size()));
      for (const auto& [term, list] : f.postings) {
        w.str(term);
        w.u32(static_cast<std::uint32_t>(list.size()));
        for (const auto& p : list) {
          w.u32(p.doc);
          w.u32(static_cast<std::uint32_t>(p.positions.size()));
          for (auto pos : p.positions) w.u32(pos);
        }
      }
    }

    w.u32(static_cast<std::uint32_t>(index.values_.size()));
    for (const auto& [field, values] : index.values_) {
      w.str(field);
      w.u32(static_cast<std::uint32_t>(values.size()));
      for (const auto& [value, docs] : values) {
        w.str(value);
        w.u32(static_cast<std::uint32_t>(docs.size()));
        for (auto d : docs) w.u32(d);
      }
    }
    const auto checksum = io::fnv1a(w.buffer());
    w.u64(checksum);
    return std::move(w.buffer());
  }

  static Index decode(std::string_view data) {
    if (data.size() < sizeof kMagic + 16 || std::memcmp(data.data(), kMagic, sizeof kMagic) != 0) {
      throw DataError("not an index snapshot (bad magic)");
    }
    const auto body = data.substr(0, data.size() - 8);
    std::uint64_t stored = 0;
    std::memcpy(&stored, data.data() + body.size(), sizeof stored);
    if (io::fnv1a(body) != stored) throw DataError("index snapshot checksum mismatch");

    Reader r(body);
    char magic[8];
    r.raw(magic, sizeof magic);
    const auto version = r.u32();
    if (version != kVersion) {
      throw DataError("unsupported index snapshot version " + std::to_string(version));
    }
    r.u32();

    Index index;
    index.options_.schema = r.strlist();
    index.options_.all_field = r.str();

    const auto n_chains = r.u32();
    for (std::uint32_t i = 0; i < n_chains; ++i) {
      auto lang = r.str();
      std::vector<Stage> stages;
      for (const auto& s : r.strlist()) stages.push_back(parse_stage(s));
      auto words = r.strlist();
      StopwordSet stopwords(words.begin(), words.end());
      index.chains_.emplace(lang, AnalyzerChain::from_parts(lang, std::move(stages), std::move(stopwords)));
    }

    const auto n_docs = r.u32();
    index.docs_.reserve(n_docs);
    for (std::uint32_t i = 0; i < n_docs; ++i) {
      Document d;
      d.id = r.str();
      d.lang = r.str();
      const auto nf = r.u32();
      for (std::uint32_t k = 0; k < nf; ++k) {
        auto name = r.str();
        d.fields.emplace(std::move(name), r.strlist());
      }
      index.docs_.push_back(std::move(d));
    }

    const auto n_fields = r.u32();
    for (std::uint32_t i = 0; i < n_fields; ++i) {
      Index::FieldData f;
      f.name = r.str();
      f.lang = r.str();
      f.total_tokens = r.u64();
      f.lengths.resize(n_docs);
      for (auto& len : f.lengths) len = r.u32();
      const auto n_terms = r.u32();
      for (std::uint32_t t = 0; t < n_terms; ++t) {
        auto term = r.str();
        std::vector<Posting> list(r.u32());
        for (auto& p : list) {
          p.doc = r.u32();
          if (p.doc >= n_docs) throw DataError("index snapshot posting refers to unknown document");
          p.positions.resize(r.u32());
          for (auto& pos : p.positions) pos = r.u32();
        }
        f.postings.emplace(std::move(term), std::move(list));
      }
      index.field_ids_.emplace(f.name, index.fields_.size());
      index.fields_.push_back(std::move(f));
    }

    const auto n_value_fields = r.u32();
    for (std::uint32_t i = 0; i < n_value_fields; ++i) {
      auto field = r.str();
      auto& values = index.values_[field];
      const auto nv = r.u32();
      for (std::uint32_t v = 0; v < nv; ++v) {
        auto value = r.str();
        std::vector<DocOrdinal> docs(r.u32());
        for (auto& d : docs) d = r.u32();
        values.emplace(std::move(value), std::move(docs));
      }
    }
    if (r.remaining() != 0) throw DataError("index snapshot has trailing bytes");
    return index;
  }
};

void Index::save(const std::filesystem::path& file) const { io::write_file_atomic(file, IndexSnapshot::encode(*this)); }

Index Index::load(const std::filesystem::path& file) { return IndexSnapshot::decode(io::read_file(file)); }

}  // namespace sparse_expand
