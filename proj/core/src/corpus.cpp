#include "msa/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "msa/error.hpp"
#include "msa/tokenizer.hpp"

namespace msa {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void emit_warning(const WarningSink& warn, std::string_view message) {
  if (warn) {
    warn(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open corpus file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IngestError("error reading corpus file: " + path.string());
  return buf.str();
}

std::vector<std::string> clean_see_also(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  out.reserve(raw.size());
  for (const auto& s : raw) {
    std::string_view t = trim(s);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

// Shared pruning / id assignment for both formats.
class Collector {
public:
  Collector(const ArticleSink& sink, const WarningSink& warn) : sink_(sink), warn_(warn) {}

  void offer(ArticleRecord rec, std::string_view origin) {
    if (rec.is_redirect) {
      ++stats_.pruned_redirects;
      return;
    }
    if (rec.ns != "main") {
      ++stats_.pruned_namespace;
      return;
    }
    if (!titles_.insert(rec.title).second) {
      ++stats_.malformed_records;
      emit_warning(warn_, std::string(origin) + ": duplicate title '" + rec.title + "' skipped");
      return;
    }
    rec.id = static_cast<ConceptId>(stats_.article_count);
    rec.body_chars = count_chars(rec.body);
    ++stats_.article_count;
    if (!rec.see_also.empty()) ++stats_.see_also_bearing;
    sink_(std::move(rec));
  }

  void malformed(std::string_view origin, std::string_view why) {
    ++stats_.malformed_records;
    emit_warning(warn_, std::string(origin) + ": " + std::string(why) + "; record skipped");
  }

  const CorpusStats& stats() const { return stats_; }

private:
  const ArticleSink& sink_;
  const WarningSink& warn_;
  CorpusStats stats_;
  std::unordered_set<std::string> titles_;
};

void ingest_jsonl(const fs::path& source, Collector& collector) {
  std::ifstream in(source, std::ios::binary);
  if (!in) throw IngestError("cannot open corpus file: " + source.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string origin = source.filename().string() + ":" + std::to_string(line_no);
    if (trim(line).empty()) continue;

    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) {
      collector.malformed(origin, "not a JSON object");
      continue;
    }
    try {
      ArticleRecord rec;
      const auto title = obj.find("title");
      if (title == obj.end() || !title->is_string() || trim(title->get_ref<const std::string&>()).empty()) {
        collector.malformed(origin, "missing or empty \"title\"");
        continue;
      }
      rec.title = std::string(trim(title->get_ref<const std::string&>()));
      rec.is_redirect = obj.value("redirect", false) || obj.value("is_redirect", false);
      rec.ns = obj.value("namespace", std::string("main"));
      const auto body = obj.find("body");
      if (body != obj.end() && body->is_string()) {
        rec.body = strip_excluded_sections(body->get_ref<const std::string&>());
      } else if (!rec.is_redirect) {
        collector.malformed(origin, "missing \"body\"");
        continue;
      }
      if (auto sa = obj.find("see_also"); sa != obj.end()) {
        rec.see_also = clean_see_also(sa->get<std::vector<std::string>>());
      }
      collector.offer(std::move(rec), origin);
    } catch (const json::exception& e) {
      collector.malformed(origin, std::string("bad field type (") + e.what() + ")");
    }
  }
  if (in.bad()) throw IngestError("error reading corpus file: " + source.string());
}

constexpr std::array<std::string_view, 12> kNamespaces = {"Category", "File",   "Image",    "Template",
                                                          "Wikipedia", "Help",  "Portal",   "Talk",
                                                          "User",      "Draft", "Module",   "MediaWiki"};

std::string namespace_of(std::string_view title) {
  const auto colon = title.find(':');
  if (colon == std::string_view::npos) return "main";
  const std::string_view prefix = title.substr(0, colon);
  for (std::string_view ns : kNamespaces) {
    if (prefix == ns) {
      std::string lowered(ns);
      std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      return lowered;
    }
  }
  return "main";
}

bool is_redirect_text(std::string_view text) {
  text = trim(text);
  constexpr std::string_view kMarker = "#REDIRECT";
  if (text.size() < kMarker.size()) return false;
  for (std::size_t i = 0; i < kMarker.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(text[i])) != kMarker[i]) return false;
  }
  return true;
}

void ingest_wikitext_dir(const fs::path& source, Collector& collector) {
  std::error_code ec;
  if (!fs::is_directory(source, ec)) throw IngestError("not a directory: " + source.string());
  std::vector<fs::path> files;
  for (fs::directory_iterator it(source, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->is_regular_file()) files.push_back(it->path());
  }
  if (ec) throw IngestError("cannot list corpus directory " + source.string() + ": " + ec.message());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

  for (const auto& file : files) {
    const std::string raw = read_file(file);
    ArticleRecord rec;
    std::string title = file.stem().string();
    std::replace(title.begin(), title.end(), '_', ' ');
    rec.title = std::string(trim(title));
    if (rec.title.empty()) {
      collector.malformed(file.filename().string(), "empty title");
      continue;
    }
    rec.is_redirect = is_redirect_text(raw);
    rec.ns = namespace_of(rec.title);
    rec.see_also = extract_see_also(raw);
    rec.body = wikitext_to_plain(strip_excluded_sections(raw));
    collector.offer(std::move(rec), file.filename().string());
  }
}

}  // namespace

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::jsonl;
  if (name == "wikitext_dir" || name == "wikitext") return CorpusFormat::wikitext_dir;
  throw IngestError("unknown corpus format '" + std::string(name) + "' (expected jsonl or wikitext_dir)");
}

std::string_view to_string(CorpusFormat format) {
  return format == CorpusFormat::jsonl ? "jsonl" : "wikitext_dir";
}

CorpusStats ingest(const fs::path& source, CorpusFormat format, const ArticleSink& sink, const WarningSink& warn) {
  std::error_code ec;
  if (!fs::exists(source, ec)) throw IngestError("corpus source does not exist: " + source.string());
  Collector collector(sink, warn);
  if (format == CorpusFormat::jsonl) {
    ingest_jsonl(source, collector);
  } else {
    ingest_wikitext_dir(source, collector);
  }
  return collector.stats();
}

Corpus::Corpus(std::vector<ArticleRecord> articles, CorpusStats stats)
    : articles_(std::move(articles)), stats_(stats) {
  by_title_.reserve(articles_.size());
  for (const auto& a : articles_) by_title_.emplace(a.title, a.id);
}

std::optional<ConceptId> Corpus::resolve(std::string_view title) const {
  const auto it = by_title_.find(std::string(trim(title)));
  if (it == by_title_.end()) return std::nullopt;
  return it->second;
}

Corpus load_corpus(const fs::path& source, CorpusFormat format, const WarningSink& warn) {
  std::vector<ArticleRecord> articles;
  const CorpusStats stats =
      ingest(source, format, [&](ArticleRecord&& rec) { articles.push_back(std::move(rec)); }, warn);
  return Corpus(std::move(articles), stats);
}

}  // namespace msa
