#pragma once

// Minimal XML well-formedness check: declaration, balanced tags, quoted
// attributes without duplicates, a single root element. Enough for the SVG
// we emit; not a general XML parser.

#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace intercept::testkit {

struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  int depth = 0;
};

struct XmlCheck {
  bool ok = false;
  std::string error;
  std::vector<XmlElement> elements;  // document order
};

inline XmlCheck check_xml(std::string_view s) {
  XmlCheck out;
  std::size_t i = 0;
  const auto fail = [&](std::string msg) {
    out.ok = false;
    out.error = msg + " at offset " + std::to_string(i);
    return out;
  };
  const auto name_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' || c == '.';
  };
  const auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  if (s.substr(0, 5) != "<?xml") return fail("missing XML declaration");
  i = s.find("?>");
  if (i == std::string_view::npos) return fail("unterminated declaration");
  i += 2;

  std::vector<std::string> stack;
  int roots = 0;
  while (true) {
    skip_ws();
    if (i >= s.size()) break;
    if (s[i] != '<') {
      if (stack.empty()) return fail("text outside root");
      const auto next = s.find('<', i);
      if (next == std::string_view::npos) return fail("unterminated text");
      i = next;
      continue;
    }
    ++i;
    if (i < s.size() && s[i] == '/') {
      ++i;
      const std::size_t start = i;
      while (i < s.size() && name_char(s[i])) ++i;
      const std::string name(s.substr(start, i - start));
      skip_ws();
      if (i >= s.size() || s[i] != '>') return fail("bad closing tag");
      ++i;
      if (stack.empty() || stack.back() != name) return fail("mismatched closing tag </" + name + ">");
      stack.pop_back();
      continue;
    }
    const std::size_t start = i;
    while (i < s.size() && name_char(s[i])) ++i;
    XmlElement el;
    el.name = std::string(s.substr(start, i - start));
    el.depth = static_cast<int>(stack.size());
    if (el.name.empty()) return fail("empty tag name");
    if (stack.empty() && ++roots > 1) return fail("more than one root element");
    std::set<std::string> seen;
    bool self_closing = false;
    while (true) {
      skip_ws();
      if (i >= s.size()) return fail("unterminated tag");
      if (s[i] == '/') {
        if (i + 1 >= s.size() || s[i + 1] != '>') return fail("bad self-closing tag");
        i += 2;
        self_closing = true;
        break;
      }
      if (s[i] == '>') {
        ++i;
        break;
      }
      const std::size_t a = i;
      while (i < s.size() && name_char(s[i])) ++i;
      const std::string attr(s.substr(a, i - a));
      if (attr.empty()) return fail("bad attribute name");
      if (!seen.insert(attr).second) return fail("duplicate attribute " + attr);
      skip_ws();
      if (i >= s.size() || s[i] != '=') return fail("attribute without value");
      ++i;
      skip_ws();
      if (i >= s.size() || (s[i] != '"' && s[i] != '\'')) return fail("unquoted attribute");
      const char q = s[i++];
      const auto end = s.find(q, i);
      if (end == std::string_view::npos) return fail("unterminated attribute");
      const std::string value(s.substr(i, end - i));
      if (value.find('<') != std::string::npos) return fail("'<' in attribute");
      el.attributes.emplace_back(attr, value);
      i = end + 1;
    }
    out.elements.push_back(std::move(el));
    if (!self_closing) stack.push_back(out.elements.back().name);
  }
  if (!stack.empty()) return fail("unclosed element <" + stack.back() + ">");
  if (roots != 1) return fail("no root element");
  out.ok = true;
  return out;
}

inline std::string attribute(const XmlElement& el, std::string_view name) {
  for (const auto& [k, v] : el.attributes) {
    if (k == name) return v;
  }
  return {};
}

}  // namespace intercept::testkit
