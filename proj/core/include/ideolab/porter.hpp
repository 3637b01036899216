#pragma once

#include <string>
#include <string_view>

namespace ideolab {

// Porter suffix-stripping stemmer, matching the author's reference C
// implementation (including its documented departures: bli->ble, logi->log,
// and leaving words of length <= 2 untouched). Input is expected to be
// lowercase; characters outside a-z are treated as consonants.
std::string porter_stem(std::string_view token);

}  // namespace ideolab
