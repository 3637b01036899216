#include "ideolab/labels.hpp"

#include <array>
#include <utility>

#include "ideolab/errors.hpp"

namespace ideolab {

namespace {

// Every flair spelling observed on the forum and its class. Byte-exact table;
// the emoji shortcodes differ even when the display name matches, which is
// why ":libright:" and ":libright2:" are separate rows.
constexpr std::array<std::pair<std::string_view, NineClass>, 12> kFlairTable{{
    {":CENTG: - Centrist", NineClass::centrist},
    {":centrist: - Centrist", NineClass::centrist},
    {":centrist: - Grand Inquisitor", NineClass::centrist},
    {":left: - Left", NineClass::left},
    {":libright: - LibRight", NineClass::libright},
    {":libright2: - LibRight", NineClass::libright},
    {":right: - Right", NineClass::right},
    {":libleft: - LibLeft", NineClass::libleft},
    {":lib: - LibCenter", NineClass::libcenter},
    {":auth: - AuthCenter", NineClass::authcenter},
    {":authleft: - AuthLeft", NineClass::authleft},
    {":authright: - AuthRight", NineClass::authright},
}};

std::string_view trim_ws(std::string_view s) {
  const auto is_ws = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
  };
  while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

const char* name(NineClass c) {
  switch (c) {
    case NineClass::authcenter: return "authcenter";
    case NineClass::authleft: return "authleft";
    case NineClass::authright: return "authright";
    case NineClass::centrist: return "centrist";
    case NineClass::left: return "left";
    case NineClass::libcenter: return "libcenter";
    case NineClass::libleft: return "libleft";
    case NineClass::libright: return "libright";
    case NineClass::right: return "right";
  }
  return "";
}

const char* name(EconLabel c) {
  switch (c) {
    case EconLabel::left: return "left";
    case EconLabel::center: return "center";
    case EconLabel::right: return "right";
  }
  return "";
}

const char* name(SocialLabel c) {
  switch (c) {
    case SocialLabel::lib: return "lib";
    case SocialLabel::center: return "center";
    case SocialLabel::auth: return "auth";
  }
  return "";
}

NineClass parse_nine_class(std::string_view s) {
  for (int i = 0; i < kNineClassCount; ++i) {
    const auto c = static_cast<NineClass>(i);
    if (s == name(c)) return c;
  }
  throw UnknownLabel("not a nine-class name: \"" + std::string(s) + "\"");
}

bool is_nine_class_name(std::string_view s) {
  for (int i = 0; i < kNineClassCount; ++i)
    if (s == name(static_cast<NineClass>(i))) return true;
  return false;
}

NineClass recode_flair(std::string_view raw_flair) {
  const std::string_view t = trim_ws(raw_flair);
  for (const auto& [spelling, cls] : kFlairTable)
    if (t == spelling) return cls;
  throw UnknownFlair(std::string(raw_flair));
}

EconLabel to_economic(NineClass c) {
  switch (c) {
    case NineClass::left:
    case NineClass::libleft:
    case NineClass::authleft:
      return EconLabel::left;
    case NineClass::right:
    case NineClass::libright:
    case NineClass::authright:
      return EconLabel::right;
    case NineClass::centrist:
    case NineClass::libcenter:
    case NineClass::authcenter:
      return EconLabel::center;
  }
  return EconLabel::center;
}

SocialLabel to_social(NineClass c) {
  switch (c) {
    case NineClass::libleft:
    case NineClass::libright:
    case NineClass::libcenter:
      return SocialLabel::lib;
    case NineClass::authleft:
    case NineClass::authright:
    case NineClass::authcenter:
      return SocialLabel::auth;
    case NineClass::centrist:
    case NineClass::left:
    case NineClass::right:
      return SocialLabel::center;
  }
  return SocialLabel::center;
}

std::vector<std::size_t> filter_centrists(const std::vector<EconLabel>& labels) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != EconLabel::center) keep.push_back(i);
  return keep;
}

std::vector<std::size_t> filter_centrists(const std::vector<SocialLabel>& labels) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != SocialLabel::center) keep.push_back(i);
  return keep;
}

const std::vector<std::string>& known_flairs() {
  static const std::vector<std::string> flairs = [] {
    std::vector<std::string> v;
    for (const auto& [spelling, cls] : kFlairTable) v.emplace_back(spelling);
    return v;
  }();
  return flairs;
}

std::vector<std::string> flair_spellings(NineClass c) {
  std::vector<std::string> v;
  for (const auto& [spelling, cls] : kFlairTable)
    if (cls == c) v.emplace_back(spelling);
  return v;
}

}  // namespace ideolab
