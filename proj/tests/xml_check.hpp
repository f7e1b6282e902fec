// Minimal XML well-formedness checker for the SVG tests: matched tags,
// quoted attributes, no stray '<' in text. Not a general parser.
#pragma once

#include <cctype>
#include <string>
#include <vector>

namespace testutil {

inline bool xml_well_formed(const std::string& doc, std::string* error = nullptr) {
  auto fail = [&](const std::string& message) {
    if (error) *error = message;
    return false;
  };
  std::vector<std::string> stack;
  std::size_t i = 0;
  bool seen_root = false;
  while (i < doc.size()) {
    const char c = doc[i];
    if (c != '<') {
      if (c == '>') return fail("stray '>' in text");
      ++i;
      continue;
    }
    // declaration
    if (doc.compare(i, 2, "<?") == 0) {
      const std::size_t end = doc.find("?>", i);
      if (end == std::string::npos) return fail("unterminated declaration");
      i = end + 2;
      continue;
    }
    const bool closing = i + 1 < doc.size() && doc[i + 1] == '/';
    std::size_t j = i + (closing ? 2 : 1);
    std::string name;
    while (j < doc.size() && (std::isalnum(static_cast<unsigned char>(doc[j])) ||
                              doc[j] == ':' || doc[j] == '-' || doc[j] == '_'))
      name += doc[j++];
    if (name.empty()) return fail("tag with empty name");

    // attributes
    bool self_closing = false;
    while (j < doc.size() && doc[j] != '>') {
      if (doc[j] == '"') {
        const std::size_t close = doc.find('"', j + 1);
        if (close == std::string::npos) return fail("unterminated attribute value");
        j = close + 1;
        continue;
      }
      if (doc[j] == '/' && j + 1 < doc.size() && doc[j + 1] == '>') {
        self_closing = true;
        ++j;
        break;
      }
      if (doc[j] == '<') return fail("nested '<' inside tag");
      ++j;
    }
    if (j >= doc.size()) return fail("unterminated tag");
    ++j;  // consume '>'

    if (closing) {
      if (self_closing) return fail("closing tag cannot self-close");
      if (stack.empty() || stack.back() != name)
        return fail("mismatched closing tag: " + name);
      stack.pop_back();
    } else if (!self_closing) {
      if (stack.empty() && seen_root) return fail("multiple root elements");
      stack.push_back(name);
      seen_root = true;
    } else if (stack.empty()) {
      if (seen_root) return fail("multiple root elements");
      seen_root = true;
    }
    i = j;
  }
  if (!stack.empty()) return fail("unclosed tag: " + stack.back());
  if (!seen_root) return fail("no root element");
  return true;
}

}  // namespace testutil
