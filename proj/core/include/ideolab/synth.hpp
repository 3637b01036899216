#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ideolab/ingest.hpp"
#include "ideolab/labels.hpp"

namespace ideolab {

enum class LabelScheme { nine, econ_binary, social_binary };

LabelScheme parse_label_scheme(const std::string& s);
const char* name(LabelScheme s);

struct SynthConfig {
  std::size_t n_users = 1000;
  std::size_t n_subreddits = 200;
  std::size_t n_informative = 20;  // applies to subreddits and to vocabulary
  double signal_strength = 0.2;    // in [0, 0.5]
  double base_rate = 0.3;          // Bernoulli rate of uninformative cells;
                                   // base_rate +- signal_strength must stay in [0, 1]
  LabelScheme label_scheme = LabelScheme::nine;
  std::size_t vocab_size = 500;
  std::size_t words_per_user = 200;
  std::uint64_t seed = 0;
};

// Which axis an informative column/word discriminates, and in which direction.
struct PlantedSignal {
  std::size_t index = 0;  // column index (subreddits) or vocab index (words)
  int axis = 0;           // 0 = economic, 1 = social
  int polarity = +1;      // +1: right/auth side interacts more, -1: less
};

struct SynthCorpus {
  std::vector<std::string> users;  // lexicographically ordered by construction
  std::vector<NineClass> labels;   // aligned with users
  std::vector<std::string> raw_flairs;  // forum spelling of each label
  InteractionMatrix interactions;       // Bernoulli cells, values in {0, 1}
  std::vector<InteractionRecord> records;            // pivot-able history rows
  std::vector<std::vector<std::string>> comments;    // per user
  std::vector<std::string> vocabulary;
  std::vector<PlantedSignal> informative_subreddits;
  std::vector<PlantedSignal> informative_words;
};

// Deterministic in cfg.seed: two runs with equal configs produce identical
// corpora, byte for byte once serialized. Cell probability is
//   base_rate + signal_strength * polarity * axis_score(label)
// with axis_score in {-1, 0, +1} (left/lib negative, right/auth positive).
// Word inclusion uses the same structure around a 0.5 base.
SynthCorpus generate_synth(const SynthConfig& cfg);

}  // namespace ideolab
