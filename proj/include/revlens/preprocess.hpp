#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "revlens/lemmatizer.hpp"
#include "revlens/pos_tagger.hpp"
#include "revlens/stoplist.hpp"
#include "revlens/tokenizer.hpp"

namespace revlens {

inline const std::vector<std::string>& default_keep_tags() {
  static const std::vector<std::string> tags = {"JJ", "VB", "RB", "NN"};
  return tags;
}

// Drops tokens made only of punctuation or symbols; "don't" stays.
inline std::vector<Token> remove_punctuation(std::vector<Token> tokens) {
  std::erase_if(tokens, [](const Token& t) { return !text::has_word_char(t.text); });
  return tokens;
}

inline std::vector<Token> pos_tag(std::vector<Token> tokens, const PosTagger& tagger) {
  tagger.tag(tokens);
  return tokens;
}

inline std::vector<Token> pos_tag(std::vector<Token> tokens) {
  static const RuleTagger tagger;
  return pos_tag(std::move(tokens), tagger);
}

// Keeps tokens whose Penn tag starts with one of the prefixes; the default
// prefixes select the adjective, verb, adverb and noun families.
inline std::vector<Token> chunk_filter(const std::vector<Token>& tokens,
                                       const std::vector<std::string>& keep_tags = default_keep_tags()) {
  std::vector<Token> out;
  for (const auto& t : tokens) {
    if (!t.pos) throw std::invalid_argument("chunk_filter: token '" + t.text + "' is untagged");
    const bool keep = std::any_of(keep_tags.begin(), keep_tags.end(),
                                  [&](const std::string& prefix) { return t.pos->starts_with(prefix); });
    if (keep) out.push_back(t);
  }
  return out;
}

enum class PipelineOrder {
  FilterThenTag,  // tokenize, stopwords, punctuation, tag, lemmatize, chunk
  TagThenFilter,  // tokenize, tag, stopwords, punctuation, lemmatize, chunk
};

inline std::string_view to_string(PipelineOrder o) {
  return o == PipelineOrder::FilterThenTag ? "filter-then-tag" : "tag-then-filter";
}

inline PipelineOrder parse_pipeline_order(std::string_view s) {
  if (s == "filter-then-tag") return PipelineOrder::FilterThenTag;
  if (s == "tag-then-filter") return PipelineOrder::TagThenFilter;
  throw std::invalid_argument("unknown pipeline order '" + std::string(s) + "'");
}

struct PreprocessConfig {
  Stoplist stoplist = Stoplist::builtin();
  std::vector<std::string> keep_tags = default_keep_tags();
  PipelineOrder order = PipelineOrder::FilterThenTag;
  std::shared_ptr<const PosTagger> tagger = std::make_shared<RuleTagger>();
  std::shared_ptr<const Lemmatizer> lemmatizer = std::make_shared<Lemmatizer>();

  // The tagger and lemmatizer are not serialized; loaders get the bundled ones.
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["order"] = std::string(to_string(order));
    j["keep_tags"] = keep_tags;
    j["stoplist"] = std::vector<std::string>(stoplist.words().begin(), stoplist.words().end());
    return j;
  }

  static PreprocessConfig from_json(const nlohmann::json& j) {
    PreprocessConfig c;
    c.order = parse_pipeline_order(j.at("order").get<std::string>());
    c.keep_tags = j.at("keep_tags").get<std::vector<std::string>>();
    c.stoplist = Stoplist(j.at("stoplist").get<std::vector<std::string>>());
    return c;
  }
};

// Full pipeline with the stage order from the config.
inline std::vector<Token> preprocess_tokens(std::string_view input, const PreprocessConfig& config = {}) {
  auto tokens = tokenize(input);
  if (config.order == PipelineOrder::FilterThenTag) {
    tokens = remove_stopwords(std::move(tokens), config.stoplist);
    tokens = remove_punctuation(std::move(tokens));
    config.tagger->tag(tokens);
  } else {
    config.tagger->tag(tokens);
    tokens = remove_stopwords(std::move(tokens), config.stoplist);
    tokens = remove_punctuation(std::move(tokens));
  }
  for (auto& t : tokens) t = (*config.lemmatizer)(std::move(t));
  // "did" -> "do": a lemma can itself be a stop word.
  std::erase_if(tokens, [&](const Token& t) { return config.stoplist.contains(*t.lemma); });
  return chunk_filter(tokens, config.keep_tags);
}

// Returns the lemma sequence of the retained tokens.
inline std::vector<std::string> preprocess(std::string_view input, const PreprocessConfig& config = {}) {
  std::vector<std::string> out;
  for (auto& t : preprocess_tokens(input, config)) out.push_back(std::move(*t.lemma));
  return out;
}

}  // namespace revlens
