#pragma once

// Text grammar for trees: `L` is a leaf, `(X Y)` a node with a single space
// between the children. Builder aliases `cat:<k>`, `cb:<h>`, `even:<n>` and
// `a52` may appear wherever a tree may.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "plane_tree.hpp"
#include "tree_shape.hpp"

namespace inducibility {

inline constexpr std::size_t kMaxAliasCaterpillar = 4096;
inline constexpr std::size_t kMaxAliasHeight = 20;
inline constexpr std::size_t kMaxAliasEven = std::size_t{1} << 20;

/// Canonical text of a shape: smaller branch first.
inline std::string format_shape(Shape s) {
  if (s.is_leaf()) return "L";
  return "(" + format_shape(s.left()) + " " + format_shape(s.right()) + ")";
}

namespace detail {

/// Expands `a52`, `cat:<k>`, `cb:<h>` or `even:<n>`; `start` is the byte
/// offset of the token for error reporting.
inline Shape alias_shape(std::string_view tok, std::size_t start) {
  if (tok == "a52") return a52();
  auto colon = tok.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("unknown tree alias '" + std::string(tok) + "'", start);
  std::string_view name = tok.substr(0, colon);
  std::string_view arg = tok.substr(colon + 1);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
  if (arg.empty() || ec != std::errc() || ptr != arg.data() + arg.size())
    throw ParseError("expected a nonnegative integer after '" + std::string(name) + ":'",
                     start + colon + 1);
  if (name == "cat") {
    if (value < 1) throw ParseError("cat:<k> needs k >= 1", start);
    if (value > kMaxAliasCaterpillar)
      throw LimitExceeded("cat:<k> alias", value, kMaxAliasCaterpillar);
    return caterpillar(value);
  }
  if (name == "cb") {
    if (value > kMaxAliasHeight) throw LimitExceeded("cb:<h> alias", value, kMaxAliasHeight);
    return complete(value);
  }
  if (name == "even") {
    if (value < 1) throw ParseError("even:<n> needs n >= 1", start);
    if (value > kMaxAliasEven) throw LimitExceeded("even:<n> alias", value, kMaxAliasEven);
    return even(value);
  }
  throw ParseError("unknown tree alias '" + std::string(name) + "'", start);
}

// Recursive descent over the grammar. `Builder` supplies leaf(), join(a, b)
// and alias(shape) for the target representation.
template <class Builder>
class Parser {
 public:
  using Tree = decltype(Builder::leaf());

  explicit Parser(std::string_view text) : text_(text) {}

  Tree parse_all() {
    Tree t = parse();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return t;
  }

 private:
  Tree parse() {
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input, expected a tree", pos_);
    const char c = text_[pos_];
    if (c == 'L') {
      ++pos_;
      return Builder::leaf();
    }
    if (c == '(') {
      ++pos_;
      Tree a = parse();
      expect(' ');
      Tree b = parse();
      expect(')');
      return Builder::join(a, b);
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == ':'))
        ++pos_;
      return Builder::alias(alias_shape(text_.substr(start, pos_ - start), start));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(c == ' ' ? std::string("expected a single space")
                                : std::string("expected '") + c + "'",
                       pos_);
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct ShapeBuilder {
  static Shape leaf() { return Shape::leaf(); }
  static Shape join(Shape a, Shape b) { return make_node(a, b); }
  static Shape alias(Shape s) { return s; }
};

struct PlaneBuilder {
  static PlaneTree leaf() { return PlaneTree::leaf(); }
  static PlaneTree join(const PlaneTree& a, const PlaneTree& b) { return PlaneTree::join(a, b); }
  static PlaneTree alias(Shape s) { return PlaneTree::from_shape(s); }
};

}  // namespace detail

/// Shapes are parsed straight to interned nodes, so large aliases such as
/// cb:20 never materialize a plane tree.
inline Shape parse_shape(std::string_view text) {
  return detail::Parser<detail::ShapeBuilder>(text).parse_all();
}

/// Child order is significant. Aliases expand to their canonical embedding.
inline PlaneTree parse_plane_tree(std::string_view text) {
  return detail::Parser<detail::PlaneBuilder>(text).parse_all();
}

}  // namespace inducibility
