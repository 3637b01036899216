#include "ideolab/synth.hpp"

#include <algorithm>
#include <string>

#include "ideolab/errors.hpp"
#include "ideolab/rng.hpp"

namespace ideolab {

namespace {

std::string padded(const char* prefix, std::size_t i, int width) {
  std::string digits = std::to_string(i);
  std::string out = prefix;
  for (int k = static_cast<int>(digits.size()); k < width; ++k) out.push_back('0');
  return out + digits;
}

int axis_score(NineClass c, int axis) {
  if (axis == 0) {
    switch (to_economic(c)) {
      case EconLabel::left: return -1;
      case EconLabel::center: return 0;
      case EconLabel::right: return +1;
    }
  }
  switch (to_social(c)) {
    case SocialLabel::lib: return -1;
    case SocialLabel::center: return 0;
    case SocialLabel::auth: return +1;
  }
  return 0;
}

void validate(const SynthConfig& cfg) {
  if (cfg.n_users < 1) throw ConfigInvalid("synth: n_users must be >= 1");
  if (cfg.n_subreddits < 1) throw ConfigInvalid("synth: n_subreddits must be >= 1");
  if (cfg.n_informative > cfg.n_subreddits)
    throw ConfigInvalid("synth: n_informative exceeds n_subreddits");
  if (cfg.vocab_size < 1) throw ConfigInvalid("synth: vocab_size must be >= 1");
  if (cfg.n_informative > cfg.vocab_size)
    throw ConfigInvalid("synth: n_informative exceeds vocab_size");
  if (cfg.signal_strength < 0.0 || cfg.signal_strength > 0.5)
    throw ConfigInvalid("synth: signal_strength must be in [0, 0.5]");
  if (cfg.base_rate <= 0.0 || cfg.base_rate >= 1.0)
    throw ConfigInvalid("synth: base_rate must be in (0, 1)");
  if (cfg.n_informative > 0 &&
      (cfg.base_rate + cfg.signal_strength > 1.0 || cfg.base_rate - cfg.signal_strength < 0.0))
    throw ConfigInvalid("synth: base_rate +- signal_strength leaves [0, 1]");
}

}  // namespace

LabelScheme parse_label_scheme(const std::string& s) {
  if (s == "nine") return LabelScheme::nine;
  if (s == "econ_binary") return LabelScheme::econ_binary;
  if (s == "social_binary") return LabelScheme::social_binary;
  throw ConfigInvalid("unknown label_scheme: \"" + s + "\"");
}

const char* name(LabelScheme s) {
  switch (s) {
    case LabelScheme::nine: return "nine";
    case LabelScheme::econ_binary: return "econ_binary";
    case LabelScheme::social_binary: return "social_binary";
  }
  return "nine";
}

SynthCorpus generate_synth(const SynthConfig& cfg) {
  validate(cfg);
  SynthCorpus out;

  // Fixed-width names keep lexicographic order equal to generation order,
  // which pins row/column identity across every downstream artifact.
  out.users.reserve(cfg.n_users);
  for (std::size_t u = 0; u < cfg.n_users; ++u) out.users.push_back(padded("u", u, 6));
  std::vector<std::string> subreddits;
  for (std::size_t s = 0; s < cfg.n_subreddits; ++s)
    subreddits.push_back(padded("r/s", s, 5));
  out.vocabulary.reserve(cfg.vocab_size);
  for (std::size_t w = 0; w < cfg.vocab_size; ++w)
    out.vocabulary.push_back(padded("tok", w, 5));

  // Informative indices come first; axis alternates, polarity flips per pair.
  for (std::size_t i = 0; i < cfg.n_informative; ++i) {
    PlantedSignal sig;
    sig.index = i;
    sig.axis = static_cast<int>(i % 2);
    sig.polarity = ((i / 2) % 2 == 0) ? +1 : -1;
    out.informative_subreddits.push_back(sig);
    out.informative_words.push_back(sig);
  }

  // Labels.
  Rng label_rng = Rng::derived(cfg.seed, 1);
  static const NineClass kEconPool[] = {NineClass::authleft,  NineClass::authright,
                                        NineClass::left,      NineClass::libleft,
                                        NineClass::libright,  NineClass::right};
  static const NineClass kSocialPool[] = {NineClass::authcenter, NineClass::authleft,
                                          NineClass::authright,  NineClass::libcenter,
                                          NineClass::libleft,    NineClass::libright};
  out.labels.reserve(cfg.n_users);
  out.raw_flairs.reserve(cfg.n_users);
  for (std::size_t u = 0; u < cfg.n_users; ++u) {
    NineClass c;
    switch (cfg.label_scheme) {
      case LabelScheme::nine:
        c = static_cast<NineClass>(label_rng.uniform_int(kNineClassCount));
        break;
      case LabelScheme::econ_binary:
        c = kEconPool[label_rng.uniform_int(6)];
        break;
      case LabelScheme::social_binary:
        c = kSocialPool[label_rng.uniform_int(6)];
        break;
      default:
        c = NineClass::centrist;
    }
    out.labels.push_back(c);
    const auto spellings = flair_spellings(c);
    out.raw_flairs.push_back(spellings[label_rng.uniform_int(spellings.size())]);
  }

  // Interaction cells, user-major then subreddit order.
  Rng cell_rng = Rng::derived(cfg.seed, 2);
  std::vector<Triplet> trips;
  for (std::size_t u = 0; u < cfg.n_users; ++u) {
    for (std::size_t s = 0; s < cfg.n_subreddits; ++s) {
      double p = cfg.base_rate;
      if (s < cfg.n_informative) {
        const auto& sig = out.informative_subreddits[s];
        p += cfg.signal_strength * sig.polarity * axis_score(out.labels[u], sig.axis);
      }
      if (cell_rng.bernoulli(p)) trips.push_back({u, s, 1.0});
    }
  }
  out.interactions.users = out.users;
  out.interactions.subreddits = subreddits;
  out.interactions.matrix =
      csr_from_triplets(cfg.n_users, cfg.n_subreddits, std::move(trips));

  // History rows, one per nonzero cell; pivoting them reproduces the matrix.
  Rng rec_rng = Rng::derived(cfg.seed, 3);
  const auto& m = out.interactions.matrix;
  for (std::size_t u = 0; u < cfg.n_users; ++u) {
    for (std::size_t k = m.row_ptr[u]; k < m.row_ptr[u + 1]; ++k) {
      const std::size_t s = m.col_idx[k];
      InteractionRecord rec;
      rec.username = out.users[u];
      rec.kind = ((u + s) % 2 == 0) ? InteractionKind::post : InteractionKind::comment;
      if (rec.kind == InteractionKind::post)
        rec.title = "thread " + std::to_string(u) + "-" + std::to_string(s);
      rec.score = static_cast<std::int64_t>(rec_rng.uniform_int(201)) - 100;
      rec.time = std::to_string(1 + rec_rng.uniform_int(12)) + ":" +
                 (rec_rng.uniform_int(2) ? "30" : "00") + " " +
                 std::to_string(1 + rec_rng.uniform_int(28)) + "/" +
                 std::to_string(1 + rec_rng.uniform_int(12)) + "/21";
      rec.subreddit = subreddits[s];
      out.records.push_back(std::move(rec));
    }
  }

  // Comment text: informative tokens around a 0.5 base, uniform filler.
  Rng text_rng = Rng::derived(cfg.seed, 4);
  out.comments.resize(cfg.n_users);
  for (std::size_t u = 0; u < cfg.n_users; ++u) {
    std::vector<std::string> tokens;
    for (std::size_t w = 0; w < cfg.n_informative; ++w) {
      const auto& sig = out.informative_words[w];
      const double p =
          0.5 + cfg.signal_strength * sig.polarity * axis_score(out.labels[u], sig.axis);
      if (text_rng.bernoulli(p)) tokens.push_back(out.vocabulary[w]);
    }
    while (tokens.size() < cfg.words_per_user) {
      const std::size_t w =
          cfg.n_informative +
          text_rng.uniform_int(std::max<std::size_t>(1, cfg.vocab_size - cfg.n_informative));
      tokens.push_back(out.vocabulary[std::min(w, cfg.vocab_size - 1)]);
    }
    text_rng.shuffle(tokens);

    // Split into up to five comments per user.
    const std::size_t n_comments = tokens.empty() ? 0 : std::min<std::size_t>(5, tokens.size());
    std::vector<std::string>& dst = out.comments[u];
    if (n_comments > 0) {
      const std::size_t per = (tokens.size() + n_comments - 1) / n_comments;
      for (std::size_t start = 0; start < tokens.size(); start += per) {
        std::string text;
        for (std::size_t i = start; i < std::min(tokens.size(), start + per); ++i) {
          if (!text.empty()) text.push_back(' ');
          text += tokens[i];
        }
        dst.push_back(std::move(text));
      }
    }
  }
  return out;
}

}  // namespace ideolab
