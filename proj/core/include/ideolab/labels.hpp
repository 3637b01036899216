#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ideolab {

// The nine self-declared ideology classes (political-compass quadrants plus
// axis midpoints and the center).
enum class NineClass {
  authcenter,
  authleft,
  authright,
  centrist,
  left,
  libcenter,
  libleft,
  libright,
  right,
};

enum class EconLabel { left, center, right };
enum class SocialLabel { lib, center, auth };

inline constexpr int kNineClassCount = 9;

const char* name(NineClass c);
const char* name(EconLabel c);
const char* name(SocialLabel c);

// Parse a nine-class name ("libleft", ...). Throws UnknownLabel.
NineClass parse_nine_class(std::string_view s);
bool is_nine_class_name(std::string_view s);

// Maps a raw forum flair string (e.g. ":libright2: - LibRight") to its class.
// Matching is byte-exact after trimming ASCII whitespace at both ends; there
// is no case folding. Throws UnknownFlair for anything else.
NineClass recode_flair(std::string_view raw_flair);

// Collapse onto the economic axis: lib/auth variants keep their wing,
// centrist/libcenter/authcenter fold to center.
EconLabel to_economic(NineClass c);

// Collapse onto the social axis: left/right/centrist fold to center.
SocialLabel to_social(NineClass c);

// Indices of rows whose label is not the axis midpoint, preserving order.
// Binary tasks train on exactly these rows.
std::vector<std::size_t> filter_centrists(const std::vector<EconLabel>& labels);
std::vector<std::size_t> filter_centrists(const std::vector<SocialLabel>& labels);

// The raw flair spellings accepted by recode_flair, in a fixed order.
const std::vector<std::string>& known_flairs();
// Raw flair spellings that recode to the given class.
std::vector<std::string> flair_spellings(NineClass c);

}  // namespace ideolab
