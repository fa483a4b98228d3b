//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/text.hpp"

#include <cctype>
#include <sstream>

namespace molforge {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string fnv1a64_hex(std::string_view data) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t hash = fnv1a64(data);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[hash & 0xF];
    hash >>= 4;
  }
  return out;
}

std::vector<std::string> tokenize_caption(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto is_token_char = [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '-' || c == ',';
  };
  auto flush = [&] {
    // Trim punctuation from the edges so "acid," and "-like" reduce to
    // their alphanumeric cores, while "1,2-diol" keeps interior marks.
    std::size_t begin = 0;
    std::size_t end = current.size();
    while (begin < end &&
           !std::isalnum(static_cast<unsigned char>(current[begin]))) {
      ++begin;
    }
    while (end > begin &&
           !std::isalnum(static_cast<unsigned char>(current[end - 1]))) {
      --end;
    }
    if (end > begin) tokens.push_back(current.substr(begin, end - begin));
    current.clear();
  };
  for (unsigned char c : text) {
    if (is_token_char(c)) {
      current.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> character_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  tokens.reserve(text.size());
  for (char c : text) tokens.emplace_back(1, c);
  return tokens;
}

std::string stem(std::string_view word) {
  std::string w(word);
  auto ends_with = [&](std::string_view suffix) {
    return w.size() >= suffix.size() &&
           std::string_view(w).substr(w.size() - suffix.size()) == suffix;
  };
  auto chop = [&](std::size_t n) { w.resize(w.size() - n); };

  if (ends_with("sses")) {
    chop(2);
  } else if (ends_with("ies") && w.size() > 4) {
    chop(2);
  } else if (ends_with("ss")) {
    // keep
  } else if (ends_with("s") && w.size() > 3) {
    chop(1);
  }
  if (ends_with("ing") && w.size() > 5) {
    chop(3);
  } else if (ends_with("ed") && w.size() > 4) {
    chop(2);
  }
  return w;
}

std::size_t estimate_tokens(std::string_view text) {
  std::size_t count = 0;
  bool in_run = false;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      if (!in_run) {
        ++count;
        in_run = true;
      }
    } else {
      in_run = false;
      if (!std::isspace(c)) ++count;  // every punctuation mark is a token
    }
  }
  return count;
}

}  // namespace molforge
