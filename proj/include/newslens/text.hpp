// Copyright 2026 The newslens Authors.
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

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "newslens/error.hpp"
#include "newslens/unicode.hpp"

namespace newslens {

/// Word tokens of `text`: NFC-normalized, lowercased, maximal runs of
/// letters/marks/digits. Punctuation, apostrophes and hyphens separate tokens.
inline std::vector<std::string> tokenize(std::string_view text) {
  const icu::UnicodeString folded = unicode::fold(unicode::from_utf8(text));
  std::vector<std::string> tokens;
  icu::UnicodeString current;
  for (int32_t i = 0; i < folded.length();) {
    const UChar32 c = folded.char32At(i);
    if (unicode::is_word_char(c)) {
      current.append(c);
    } else if (!current.isEmpty()) {
      tokens.push_back(unicode::to_utf8(current));
      current.remove();
    }
    i += U16_LENGTH(c);
  }
  if (!current.isEmpty()) tokens.push_back(unicode::to_utf8(current));
  return tokens;
}

/// Set of folded terms loaded from a one-term-per-line UTF-8 file. Blank
/// lines and lines starting with '#' are ignored.
class TermList {
 public:
  TermList() = default;
  explicit TermList(const std::vector<std::string>& terms) {
    for (const auto& t : terms) add(t);
  }

  static TermList load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read term list '" + path.string() + "'");
    TermList list;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      const auto last = line.find_last_not_of(" \t");
      list.add(line.substr(first, last - first + 1));
    }
    return list;
  }

  void add(std::string_view term) { terms_.insert(unicode::fold(term)); }
  /// `term` must already be folded (tokenizer output is).
  bool contains(const std::string& term) const { return terms_.count(term) != 0; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

 private:
  std::unordered_set<std::string> terms_;
};

namespace detail {

inline bool is_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?' || c == U'…'; }

inline std::u32string_view trim(std::u32string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && u_isUWhiteSpace(static_cast<UChar32>(s[a]))) ++a;
  while (b > a && u_isUWhiteSpace(static_cast<UChar32>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline bool has_word_char(std::u32string_view s) {
  for (char32_t c : s) {
    if (unicode::is_word_char(static_cast<UChar32>(c))) return true;
  }
  return false;
}

}  // namespace detail

/// Splits after a run of [.!?…] that is followed by whitespace and then an
/// uppercase letter or digit. A single '.' closing a word listed in
/// `abbreviations` (with or without its period) never splits. Segments without any word
/// character are dropped.
inline std::vector<std::string> split_sentences(std::string_view text,
                                                const TermList& abbreviations = {}) {
  const std::u32string s = unicode::to_u32(unicode::nfc(text));
  std::vector<std::string> sentences;
  auto emit = [&](std::size_t from, std::size_t to) {
    const auto piece = detail::trim(std::u32string_view(s).substr(from, to - from));
    if (detail::has_word_char(piece)) sentences.push_back(unicode::from_u32(piece));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!detail::is_terminator(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && detail::is_terminator(s[j])) ++j;
    if (j >= s.size() || !u_isUWhiteSpace(static_cast<UChar32>(s[j]))) {
      i = j;
      continue;
    }
    std::size_t k = j;
    while (k < s.size() && u_isUWhiteSpace(static_cast<UChar32>(s[k]))) ++k;
    if (k >= s.size() ||
        !(u_isupper(static_cast<UChar32>(s[k])) || u_istitle(static_cast<UChar32>(s[k])) ||
          u_isdigit(static_cast<UChar32>(s[k])))) {
      i = j;
      continue;
    }
    if (j == i + 1 && s[i] == U'.' && !abbreviations.empty()) {
      std::size_t w = i;
      while (w > start && !u_isUWhiteSpace(static_cast<UChar32>(s[w - 1]))) --w;
      const std::string word = unicode::from_u32(std::u32string_view(s).substr(w, i + 1 - w));
      const std::string folded = unicode::fold(word);
      if (abbreviations.contains(folded) || abbreviations.contains(folded.substr(0, folded.size() - 1))) {
        i = j;
        continue;
      }
    }
    emit(start, j);
    start = k;
    i = k;
  }
  if (start < s.size()) emit(start, s.size());
  return sentences;
}

}  // namespace newslens
