#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msa/corpus.hpp"
#include "msa/tokenizer.hpp"

namespace msa {
namespace {

struct Heading {
  int level = 0;
  std::string_view title;
};

// "== Title ==" with matching runs of '=' on both sides.
std::optional<Heading> parse_heading(std::string_view line) {
  line = trim(line);
  std::size_t lead = 0;
  while (lead < line.size() && line[lead] == '=') ++lead;
  std::size_t trail = 0;
  while (trail < line.size() - lead && line[line.size() - 1 - trail] == '=') ++trail;
  if (lead == 0 || trail == 0 || lead + trail >= line.size()) return std::nullopt;
  const int level = static_cast<int>(std::min(lead, trail));
  return Heading{level, trim(line.substr(lead, line.size() - lead - trail))};
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

bool istarts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

// Splits on '\n', keeping empty lines; a trailing '\r' is dropped.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

constexpr std::array<std::string_view, 4> kExcludedSections = {"References", "See also", "Categories",
                                                               "External links"};

bool is_excluded(std::string_view title) {
  return std::any_of(kExcludedSections.begin(), kExcludedSections.end(),
                     [&](std::string_view s) { return iequals(title, s); });
}

// Finds the matching "}}"-style close for nested open/close pairs starting at
// `pos` (which points at the opening sequence). Returns npos if unbalanced.
std::size_t find_balanced(std::string_view s, std::size_t pos, std::string_view open, std::string_view close) {
  int depth = 0;
  while (pos < s.size()) {
    if (s.compare(pos, open.size(), open) == 0) {
      ++depth;
      pos += open.size();
    } else if (s.compare(pos, close.size(), close) == 0) {
      --depth;
      pos += close.size();
      if (depth == 0) return pos;
    } else {
      ++pos;
    }
  }
  return std::string_view::npos;
}

bool is_non_text_link(std::string_view target) {
  if (!target.empty() && target.front() == ':') target.remove_prefix(1);
  return istarts_with(target, "File:") || istarts_with(target, "Image:") || istarts_with(target, "Category:");
}

}  // namespace

std::vector<std::string> extract_see_also(std::string_view raw_article_text) {
  std::vector<std::string> targets;
  int section_level = 0;  // 0 = not inside a See also section
  for (std::string_view line : split_lines(raw_article_text)) {
    if (auto h = parse_heading(line)) {
      if (section_level != 0 && h->level <= section_level) section_level = 0;
      if (section_level == 0 && h->level >= 2 && iequals(h->title, "See also")) section_level = h->level;
      continue;
    }
    if (section_level == 0) continue;
    std::string_view item = trim(line);
    if (item.empty() || (item.front() != '*' && item.front() != '#')) continue;

    std::size_t pos = 0;
    while ((pos = item.find("[[", pos)) != std::string_view::npos) {
      const std::size_t close = item.find("]]", pos + 2);
      if (close == std::string_view::npos) break;
      std::string_view inner = item.substr(pos + 2, close - pos - 2);
      if (auto bar = inner.find('|'); bar != std::string_view::npos) inner = inner.substr(0, bar);
      inner = trim(inner);
      if (!inner.empty()) targets.emplace_back(inner);
      pos = close + 2;
    }
  }
  return targets;
}

std::string strip_excluded_sections(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  int skip_level = 0;
  bool first = true;
  for (std::string_view line : split_lines(text)) {
    if (auto h = parse_heading(line)) {
      if (skip_level != 0 && h->level <= skip_level) skip_level = 0;
      if (skip_level == 0 && is_excluded(h->title)) skip_level = h->level;
    }
    if (skip_level != 0) continue;
    if (!first) out.push_back('\n');
    out.append(line);
    first = false;
  }
  return out;
}

std::string wikitext_to_plain(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    const std::string_view rest = raw.substr(i);
    if (rest.starts_with("<!--")) {
      const std::size_t end = raw.find("-->", i + 4);
      i = end == std::string_view::npos ? raw.size() : end + 3;
    } else if (rest.starts_with("{{")) {
      const std::size_t end = find_balanced(raw, i, "{{", "}}");
      i = end == std::string_view::npos ? raw.size() : end;
    } else if (rest.starts_with("{|")) {
      const std::size_t end = find_balanced(raw, i, "{|", "|}");
      i = end == std::string_view::npos ? raw.size() : end;
    } else if (istarts_with(rest, "<ref")) {
      const std::size_t tag_end = raw.find('>', i);
      if (tag_end == std::string_view::npos) {
        i = raw.size();
      } else if (raw[tag_end - 1] == '/') {
        i = tag_end + 1;
      } else {
        const std::size_t close = raw.find("</ref>", tag_end);
        i = close == std::string_view::npos ? raw.size() : close + 6;
      }
    } else if (rest.front() == '<') {
      const std::size_t end = raw.find('>', i);
      i = end == std::string_view::npos ? raw.size() : end + 1;
    } else if (rest.starts_with("[[")) {
      const std::size_t end = find_balanced(raw, i, "[[", "]]");
      if (end == std::string_view::npos) {
        i = raw.size();
        continue;
      }
      std::string_view inner = raw.substr(i + 2, end - i - 4);
      if (!is_non_text_link(inner)) {
        if (auto bar = inner.rfind('|'); bar != std::string_view::npos) inner = inner.substr(bar + 1);
        out.append(wikitext_to_plain(inner));
      }
      i = end;
    } else if (rest.front() == '[' && (rest.starts_with("[http") || rest.starts_with("[//"))) {
      const std::size_t end = raw.find(']', i);
      if (end == std::string_view::npos) {
        i = raw.size();
        continue;
      }
      std::string_view inner = raw.substr(i + 1, end - i - 1);
      const std::size_t space = inner.find(' ');
      if (space != std::string_view::npos) out.append(inner.substr(space + 1));
      i = end + 1;
    } else if (rest.starts_with("''")) {
      while (i < raw.size() && raw[i] == '\'') ++i;
    } else {
      out.push_back(raw[i]);
      ++i;
    }
  }

  // Second pass: heading markers and list bullets.
  std::string plain;
  plain.reserve(out.size());
  bool first = true;
  for (std::string_view line : split_lines(out)) {
    if (auto h = parse_heading(line)) {
      line = h->title;
    } else {
      std::string_view t = trim(line);
      while (!t.empty() && (t.front() == '*' || t.front() == '#' || t.front() == ':' || t.front() == ';')) {
        t.remove_prefix(1);
      }
      line = trim(t);
    }
    if (!first) plain.push_back('\n');
    plain.append(line);
    first = false;
  }
  return std::string(trim(plain));
}

}  // namespace msa
