#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "ideolab/errors.hpp"
#include "ideolab/labels.hpp"

using namespace ideolab;

TEST_CASE("every raw flair recodes to its class") {
  CHECK(recode_flair(":CENTG: - Centrist") == NineClass::centrist);
  CHECK(recode_flair(":centrist: - Centrist") == NineClass::centrist);
  CHECK(recode_flair(":centrist: - Grand Inquisitor") == NineClass::centrist);
  CHECK(recode_flair(":left: - Left") == NineClass::left);
  CHECK(recode_flair(":libright: - LibRight") == NineClass::libright);
  CHECK(recode_flair(":libright2: - LibRight") == NineClass::libright);
  CHECK(recode_flair(":right: - Right") == NineClass::right);
  CHECK(recode_flair(":libleft: - LibLeft") == NineClass::libleft);
  CHECK(recode_flair(":lib: - LibCenter") == NineClass::libcenter);
  CHECK(recode_flair(":auth: - AuthCenter") == NineClass::authcenter);
  CHECK(recode_flair(":authleft: - AuthLeft") == NineClass::authleft);
  CHECK(recode_flair(":authright: - AuthRight") == NineClass::authright);
}

TEST_CASE("recoding trims surrounding whitespace but never folds case") {
  CHECK(recode_flair("  :left: - Left \t") == NineClass::left);
  CHECK(recode_flair("\n:CENTG: - Centrist\r\n") == NineClass::centrist);
  CHECK_THROWS_AS(recode_flair(":LEFT: - LEFT"), UnknownFlair);
  CHECK_THROWS_AS(recode_flair(":purple: - Unknown"), UnknownFlair);
  CHECK_THROWS_AS(recode_flair(""), UnknownFlair);
  CHECK_THROWS_AS(recode_flair(":left:-Left"), UnknownFlair);
}

TEST_CASE("the twelve flairs cover exactly the nine classes") {
  CHECK(known_flairs().size() == 12);
  std::set<NineClass> image;
  for (const std::string& f : known_flairs()) image.insert(recode_flair(f));
  CHECK(image.size() == 9);
  for (int k = 0; k < kNineClassCount; ++k) {
    const auto c = static_cast<NineClass>(k);
    const auto spellings = flair_spellings(c);
    CHECK(!spellings.empty());
    for (const std::string& s : spellings) CHECK(recode_flair(s) == c);
  }
}

TEST_CASE("nine-class names parse and round trip") {
  const std::vector<std::string> names = {"authcenter", "authleft", "authright",
                                          "centrist",   "left",     "libcenter",
                                          "libleft",    "libright", "right"};
  for (int k = 0; k < kNineClassCount; ++k) {
    const auto c = static_cast<NineClass>(k);
    CHECK(name(c) == names[static_cast<std::size_t>(k)]);
    CHECK(parse_nine_class(name(c)) == c);
    CHECK(is_nine_class_name(name(c)));
  }
  CHECK(!is_nine_class_name("Left"));
  CHECK(!is_nine_class_name(":left: - Left"));
  CHECK_THROWS_AS(parse_nine_class("authcentre"), UnknownLabel);
}

TEST_CASE("economic map folds the social axis away") {
  CHECK(to_economic(NineClass::libleft) == EconLabel::left);
  CHECK(to_economic(NineClass::left) == EconLabel::left);
  CHECK(to_economic(NineClass::authleft) == EconLabel::left);
  CHECK(to_economic(NineClass::libright) == EconLabel::right);
  CHECK(to_economic(NineClass::right) == EconLabel::right);
  CHECK(to_economic(NineClass::authright) == EconLabel::right);
  CHECK(to_economic(NineClass::centrist) == EconLabel::center);
  CHECK(to_economic(NineClass::libcenter) == EconLabel::center);
  CHECK(to_economic(NineClass::authcenter) == EconLabel::center);
}

TEST_CASE("social map folds the economic axis away") {
  CHECK(to_social(NineClass::libleft) == SocialLabel::lib);
  CHECK(to_social(NineClass::libright) == SocialLabel::lib);
  CHECK(to_social(NineClass::libcenter) == SocialLabel::lib);
  CHECK(to_social(NineClass::authleft) == SocialLabel::auth);
  CHECK(to_social(NineClass::authright) == SocialLabel::auth);
  CHECK(to_social(NineClass::authcenter) == SocialLabel::auth);
  CHECK(to_social(NineClass::centrist) == SocialLabel::center);
  CHECK(to_social(NineClass::left) == SocialLabel::center);
  CHECK(to_social(NineClass::right) == SocialLabel::center);
}

TEST_CASE("both axis maps are surjective") {
  std::set<EconLabel> econ;
  std::set<SocialLabel> social;
  for (int k = 0; k < kNineClassCount; ++k) {
    econ.insert(to_economic(static_cast<NineClass>(k)));
    social.insert(to_social(static_cast<NineClass>(k)));
  }
  CHECK(econ.size() == 3);
  CHECK(social.size() == 3);
}

TEST_CASE("centrist filtering keeps non-center rows in order") {
  const std::vector<EconLabel> econ = {EconLabel::left, EconLabel::center,
                                       EconLabel::right, EconLabel::left};
  CHECK(filter_centrists(econ) == std::vector<std::size_t>{0, 2, 3});
  CHECK(filter_centrists(std::vector<EconLabel>{EconLabel::center, EconLabel::center})
            .empty());
  const std::vector<SocialLabel> social = {SocialLabel::auth, SocialLabel::lib};
  CHECK(filter_centrists(social) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("axis label names are the file-format spellings") {
  CHECK(std::string(name(EconLabel::left)) == "left");
  CHECK(std::string(name(EconLabel::center)) == "center");
  CHECK(std::string(name(EconLabel::right)) == "right");
  CHECK(std::string(name(SocialLabel::lib)) == "lib");
  CHECK(std::string(name(SocialLabel::center)) == "center");
  CHECK(std::string(name(SocialLabel::auth)) == "auth");
}
