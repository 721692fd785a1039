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

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "newslens/error.hpp"

namespace newslens {

enum class Language { fr, de, it };

inline constexpr std::array<Language, 3> kLanguages = {Language::fr, Language::de,
                                                       Language::it};

inline constexpr std::size_t index_of(Language lang) { return static_cast<std::size_t>(lang); }

inline constexpr std::string_view to_code(Language lang) {
  switch (lang) {
    case Language::fr: return "fr";
    case Language::de: return "de";
    case Language::it: return "it";
  }
  return "??";
}

/// Accepts "fr"/"de"/"it" in any letter case.
inline std::optional<Language> parse_language(std::string_view code) {
  std::string lower(code);
  for (char& c : lower) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  if (lower == "fr") return Language::fr;
  if (lower == "de") return Language::de;
  if (lower == "it") return Language::it;
  return std::nullopt;
}

inline Language require_language(std::string_view code) {
  if (auto lang = parse_language(code)) return *lang;
  throw InputError("unsupported language code '" + std::string(code) + "'");
}

}  // namespace newslens
