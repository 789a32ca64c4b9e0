// revlens command-line front end.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revlens/corpus.hpp"
#include "revlens/embed.hpp"
#include "revlens/eval.hpp"
#include "revlens/miner.hpp"
#include "revlens/models.hpp"
#include "revlens/pipeline.hpp"
#include "revlens/preprocess.hpp"
#include "revlens/version.hpp"

namespace {

using namespace revlens;

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

std::string env_name(std::string long_name) {
  std::string out = "REVLENS_";
  for (char c : long_name) out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

NgramRange parse_ngrams(const std::string& s) {
  const auto parts = text::split(s, ',');
  NgramRange r;
  try {
    if (parts.size() == 1) {
      r.lo = r.hi = std::stoul(std::string(text::trim(parts[0])));
    } else if (parts.size() == 2) {
      r.lo = std::stoul(std::string(text::trim(parts[0])));
      r.hi = std::stoul(std::string(text::trim(parts[1])));
    } else {
      throw std::invalid_argument("");
    }
    r.validate();
  } catch (const std::exception&) {
    throw CLI::ValidationError("--ngrams", "expected N or LO,HI with 1 <= LO <= HI <= 3, got '" + s + "'");
  }
  return r;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tsv_field(std::string s) {
  for (auto& c : s)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return s;
}

struct FeatureFlags {
  std::string ngrams = "1,2";
  std::size_t min_count = 1;
  std::string stoplist;
  std::string keep_tags;
  std::string order = "filter-then-tag";
  std::string feature_mode;

  void attach(CLI::App* app) {
    app->add_option("--ngrams", ngrams, "n-gram range as N or LO,HI")->capture_default_str();
    app->add_option("--min-count", min_count, "minimum n-gram count for the vocabulary")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--stoplist", stoplist, "stop-word file (one word per line)")->check(CLI::ExistingFile);
    app->add_option("--keep-tags", keep_tags, "comma-separated Penn tag prefixes kept by chunking");
    app->add_option("--order", order, "stage order")
        ->check(CLI::IsMember({"filter-then-tag", "tag-then-filter"}))
        ->capture_default_str();
    app->add_option("--feature-mode", feature_mode, "counts or binary (default depends on the algorithm)")
        ->check(CLI::IsMember({"counts", "binary"}));
  }

  PreprocessConfig preprocess() const {
    PreprocessConfig c;
    if (!stoplist.empty()) c.stoplist = Stoplist::load(stoplist);
    if (!keep_tags.empty()) {
      c.keep_tags.clear();
      for (const auto& t : text::split(keep_tags, ',')) c.keep_tags.emplace_back(text::trim(t));
    }
    c.order = parse_pipeline_order(order);
    return c;
  }

  FeatureOptions features() const {
    FeatureOptions f;
    f.preprocess = preprocess();
    f.ngrams = parse_ngrams(ngrams);
    f.min_count = min_count;
    if (!feature_mode.empty()) f.mode = feature_mode == "binary" ? FeatureMode::Binary : FeatureMode::Counts;
    return f;
  }
};

struct HyperFlags {
  Hyperparams hp;
  std::string loss = "hinge";

  void attach(CLI::App* app) {
    app->add_option("--seed", hp.seed, "random seed")->capture_default_str();
    app->add_option("--alpha", hp.alpha, "naive Bayes smoothing")->capture_default_str();
    app->add_option("--lr", hp.learning_rate, "learning rate (logistic regression, SGD)")->capture_default_str();
    app->add_option("--epochs", hp.epochs, "epochs (logistic regression, SGD)")->capture_default_str();
    app->add_option("--l2", hp.l2, "L2 strength (logistic regression, SGD)")->capture_default_str();
    app->add_option("--loss", loss, "SGD loss")->check(CLI::IsMember({"hinge", "log"}))->capture_default_str();
    app->add_option("--C", hp.C, "SVC regularization")->capture_default_str();
    app->add_option("--tol", hp.tolerance, "convergence tolerance")->capture_default_str();
    app->add_option("--max-iter", hp.max_iter, "SVC iteration budget")->capture_default_str();
    app->add_option("--nu", hp.nu, "nu for nu-SVC")->capture_default_str();
  }

  Hyperparams get() const {
    Hyperparams h = hp;
    h.sgd_loss = parse_sgd_loss(loss);
    h.validate();
    return h;
  }
};

std::vector<std::string> algorithm_names() {
  std::vector<std::string> out;
  for (auto a : kAllAlgorithms) out.emplace_back(to_string(a));
  return out;
}

// key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::map<std::string, std::string> out;
  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto t = std::string(text::trim(line));
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw CLI::ConversionError("config line " + std::to_string(n) + ": expected key=value");
    auto key = std::string(text::trim(t.substr(0, eq)));
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    out[key] = std::string(text::trim(t.substr(eq + 1)));
  }
  return out;
}

std::string config_path_from(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  if (const char* e = std::getenv("REVLENS_CONFIG")) return e;
  return {};
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

int run(int argc, char** argv) {
  CLI::App app{"Mine, preprocess, classify and evaluate code review comments.", "revlens"};
  app.set_version_flag("--version", REVLENS_VERSION);
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  std::string config_file;
  app.add_option("--config", config_file, "key=value config file (flags > environment > config)");

  // ---- mine
  auto* mine = app.add_subcommand("mine", "fetch pull-request review comments from the GitHub API");
  std::string owner, repo, since, until, out_path, token_env = "GITHUB_TOKEN",
                                                  api_base = "https://api.github.com";
  int per_page = 100;
  std::size_t workers = 1;
  bool no_wait = false;
  mine->add_option("--owner", owner, "user or organization")->required();
  mine->add_option("--repo", repo, "mine only this repository");
  mine->add_option("--since", since, "earliest created_at (ISO date)");
  mine->add_option("--until", until, "latest created_at (ISO date)");
  mine->add_option("--out", out_path, "output JSON Lines corpus (appended; resumable)")->required();
  mine->add_option("--token-env", token_env, "environment variable holding the API token")->capture_default_str();
  mine->add_option("--api-base-url", api_base, "API root")->capture_default_str();
  mine->add_option("--per-page", per_page, "page size")->check(CLI::Range(1, 100))->capture_default_str();
  mine->add_option("--workers", workers, "repositories fetched concurrently")->check(CLI::PositiveNumber);
  mine->add_flag("--no-wait", no_wait, "fail instead of sleeping when the rate limit is exhausted");

  // ---- preprocess
  auto* pre = app.add_subcommand("preprocess", "run the text pipeline over a corpus or a single text");
  std::string pre_in, pre_out, pre_text;
  bool pre_tagged = false;
  FeatureFlags pre_flags;
  auto* pre_in_opt = pre->add_option("--in", pre_in, "corpus file (.jsonl or .csv)")->check(CLI::ExistingFile);
  pre->add_option("--out", pre_out, "token output (JSON Lines); stdout if omitted");
  pre->add_option("--text", pre_text, "preprocess one text")->excludes(pre_in_opt);
  pre->add_flag("--tagged", pre_tagged, "with --text, print every token with its tag and lemma");
  pre->add_option("--stoplist", pre_flags.stoplist, "stop-word file")->check(CLI::ExistingFile);
  pre->add_option("--keep-tags", pre_flags.keep_tags, "comma-separated Penn tag prefixes kept by chunking");
  pre->add_option("--order", pre_flags.order, "stage order")
      ->check(CLI::IsMember({"filter-then-tag", "tag-then-filter"}))
      ->capture_default_str();

  // ---- train
  auto* tr = app.add_subcommand("train", "train one classifier on a labeled corpus");
  std::string algo, tr_in, tr_out;
  FeatureFlags tr_flags;
  HyperFlags tr_hp;
  tr->add_option("--algo", algo, "algorithm")->required()->check(CLI::IsMember(algorithm_names()));
  tr->add_option("--in", tr_in, "labeled corpus")->required()->check(CLI::ExistingFile);
  tr->add_option("--out", tr_out, "model file")->required();
  tr_flags.attach(tr);
  tr_hp.attach(tr);

  // ---- evaluate
  auto* ev = app.add_subcommand("evaluate", "train all classifiers on a split and report test metrics");
  std::string ev_in, ev_report = "report.json", ev_text, ev_algos;
  double ev_split = 0.75;
  bool ev_stratified = false, ev_timing = false, ev_concurrent = false, ev_strict_nu = false;
  std::size_t ev_top = 10;
  FeatureFlags ev_flags;
  HyperFlags ev_hp;
  ev->add_option("--in", ev_in, "labeled corpus")->required()->check(CLI::ExistingFile);
  ev->add_option("--split", ev_split, "training fraction")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  ev->add_option("--report", ev_report, "JSON report path")->capture_default_str();
  ev->add_option("--text-report", ev_text, "text report path");
  ev->add_option("--algos", ev_algos, "comma-separated subset of algorithms");
  ev->add_option("--top-features", ev_top, "informative features listed per naive Bayes model")->capture_default_str();
  ev->add_flag("--stratified", ev_stratified, "stratify the split by label");
  ev->add_flag("--timing", ev_timing, "record wall-clock times (makes the report non-reproducible)");
  ev->add_flag("--concurrent", ev_concurrent, "train the algorithms in parallel");
  ev->add_flag("--strict-nu", ev_strict_nu, "fail instead of lowering an infeasible nu");
  ev_flags.attach(ev);
  ev_hp.attach(ev);

  // ---- classify
  auto* cl = app.add_subcommand("classify", "label comments with a trained model");
  std::string cl_model, cl_input;
  std::vector<std::string> cl_texts;
  cl->add_option("--model", cl_model, "model file")->required()->check(CLI::ExistingFile);
  auto* cl_text_opt = cl->add_option("--text", cl_texts, "text to classify (repeatable)");
  cl->add_option("--input", cl_input, "file with one comment per line; stdin if neither --text nor --input")
      ->excludes(cl_text_opt);

  // ---- embed
  auto* em = app.add_subcommand("embed", "train skip-gram word embeddings on a corpus");
  std::string em_in, em_out;
  EmbeddingConfig em_cfg;
  bool em_lemmas = false;
  em->add_option("--in", em_in, "corpus")->required()->check(CLI::ExistingFile);
  em->add_option("--out", em_out, "embedding model file")->required();
  em->add_option("--dim", em_cfg.dimensions, "vector size")->capture_default_str();
  em->add_option("--window", em_cfg.window, "context window")->capture_default_str();
  em->add_option("--negative", em_cfg.negative_samples, "negative samples per pair")->capture_default_str();
  em->add_option("--epochs", em_cfg.epochs, "passes over the corpus")->capture_default_str();
  em->add_option("--lr", em_cfg.initial_learning_rate, "initial learning rate")->capture_default_str();
  em->add_option("--min-count", em_cfg.min_count, "minimum word count")->capture_default_str();
  em->add_option("--seed", em_cfg.seed, "random seed")->capture_default_str();
  em->add_option("--threads", em_cfg.threads, "training threads (>1 is not reproducible)")->capture_default_str();
  em->add_flag("--lemmas", em_lemmas, "train on preprocessed lemmas instead of lowercased words");

  // ---- similar
  auto* si = app.add_subcommand("similar", "nearest words in an embedding model");
  std::string si_model, si_word;
  std::size_t si_topn = 10;
  si->add_option("--model", si_model, "embedding model file")->required()->check(CLI::ExistingFile);
  si->add_option("--word", si_word, "query word")->required();
  si->add_option("--topn", si_topn, "number of neighbours")->capture_default_str();

  // ---- report
  auto* rp = app.add_subcommand("report", "corpus statistics, or a text rendering of a JSON evaluation report");
  std::string rp_in, rp_out;
  rp->add_option("--in", rp_in, "corpus (.jsonl/.csv) or evaluation report (.json)")->required()->check(
      CLI::ExistingFile);
  rp->add_option("--out", rp_out, "write here instead of stdout");

  for (auto* sub : app.get_subcommands({})) {
    sub->set_version_flag("--version", REVLENS_VERSION);
    for (auto* opt : sub->get_options()) {
      const auto& ln = opt->get_lnames();
      if (ln.empty() || ln[0] == "help" || ln[0] == "version") continue;
      opt->envname(env_name(ln[0]));
    }
  }

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    std::vector<std::string> forward(args.rbegin(), args.rend());
    if (auto path = config_path_from(forward); !path.empty()) {
      CLI::App* sub = nullptr;
      for (const auto& a : forward)
        if (!a.empty() && a[0] != '-') {
          sub = app.get_subcommand_no_throw(a);
          if (sub) break;
        }
      if (sub) {
        for (const auto& [key, value] : read_config_file(path)) {
          auto* opt = sub->get_option_no_throw("--" + key);
          if (!opt || given_on_command_line(forward, key) || std::getenv(env_name(key).c_str())) continue;
          args.insert(args.begin(), "--" + key + "=" + value);
        }
      }
    }
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (mine->parsed()) {
      MinerConfig cfg;
      cfg.api_base_url = api_base;
      cfg.per_page = per_page;
      cfg.workers = workers;
      cfg.wait_on_rate_limit = !no_wait;
      cfg.output_path = out_path;
      if (!since.empty()) cfg.since = Timestamp::parse(since);
      if (!until.empty()) {
        auto u = Timestamp::parse(until);
        if (until.size() == 10) u = Timestamp::from_unix(u.unix_seconds() + 86399);
        cfg.until = u;
      }
      if (const char* tok = std::getenv(token_env.c_str()); tok && *tok) cfg.auth_token = tok;
      else std::cerr << "warning: " << token_env << " is not set; unauthenticated requests are heavily rate limited\n";
      const auto result = mine_org(owner, cfg, repo.empty() ? std::nullopt : std::optional<std::string>(repo));
      std::cout << mining_summary(result);
      return 0;
    }

    if (pre->parsed()) {
      const auto cfg = pre_flags.preprocess();
      if (!pre_text.empty() || pre_in.empty()) {
        if (pre_text.empty()) throw CLI::RequiredError("--in or --text");
        if (pre_tagged) {
          auto tokens = remove_punctuation(tokenize(pre_text));
          cfg.tagger->tag(tokens);
          for (auto& t : tokens) {
            t = (*cfg.lemmatizer)(std::move(t));
            std::cout << t.text << "\t" << *t.pos << "\t" << *t.lemma << "\n";
          }
        } else {
          std::cout << text::join(preprocess(pre_text, cfg), " ") << "\n";
        }
        return 0;
      }
      const auto corpus = load_corpus(pre_in);
      std::string out;
      for (const auto& e : corpus) {
        nlohmann::ordered_json j;
        j["id"] = e.comment.id;
        j["tokens"] = preprocess(e.comment.body, cfg);
        if (e.label) j["label"] = std::string(to_string(*e.label));
        out += j.dump() + "\n";
      }
      if (pre_out.empty()) std::cout << out;
      else atomic_write(pre_out, out);
      return 0;
    }

    if (tr->parsed()) {
      const auto corpus = load_corpus(tr_in);
      const auto model = train_on_corpus(corpus, parse_algorithm(algo), tr_hp.get(), tr_flags.features());
      save_model(model, tr_out);
      std::cout << "trained " << algo << " on " << corpus.size() << " comments, " << model.dimension()
                << " features" << (model.converged ? "" : " (not converged)") << "\n";
      return 0;
    }

    if (ev->parsed()) {
      EvalOptions opts;
      opts.split.train_fraction = ev_split;
      opts.split.seed = ev_hp.hp.seed;
      opts.split.stratified = ev_stratified;
      opts.hyperparams = ev_hp.get();
      opts.hyperparams.nu_clamp = !ev_strict_nu;
      opts.features = ev_flags.features();
      opts.timing = ev_timing;
      opts.concurrent = ev_concurrent;
      opts.informative_features = ev_top;
      if (!ev_algos.empty()) {
        opts.algorithms.clear();
        for (const auto& a : text::split(ev_algos, ',')) opts.algorithms.push_back(parse_algorithm(text::trim(a)));
      }
      const auto report = benchmark(load_corpus(ev_in), opts);
      atomic_write(ev_report, report_json(report).dump(2) + "\n");
      const auto txt = report_text(report);
      if (ev_text.empty()) std::cout << txt;
      else atomic_write(ev_text, txt);
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
      return 0;
    }

    if (cl->parsed()) {
      const auto model = load_model(cl_model);
      const auto cfg = model_preprocess_config(model);
      auto emit = [&](const std::string& line, std::size_t n) {
        try {
          const auto p = predict(model, featurize(model, line, cfg));
          std::cout << tsv_field(line) << "\t" << to_string(p.label) << "\t" << fmt2(p.confidence) << "\n";
        } catch (const std::exception& e) {
          std::cout << tsv_field(line) << "\t\t\n";
          std::cerr << "line " << n << ": " << e.what() << "\n";
        }
      };
      if (!cl_texts.empty()) {
        for (std::size_t i = 0; i < cl_texts.size(); ++i) emit(cl_texts[i], i + 1);
        return 0;
      }
      std::ifstream file;
      if (!cl_input.empty()) {
        file.open(cl_input);
        if (!file) throw IoError("cannot open '" + cl_input + "'");
      }
      std::istream& in = cl_input.empty() ? std::cin : file;
      std::string line;
      for (std::size_t n = 1; std::getline(in, line); ++n) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        emit(line, n);
      }
      return 0;
    }

    if (em->parsed()) {
      const auto corpus = load_corpus(em_in);
      std::vector<std::vector<std::string>> sentences;
      for (const auto& e : corpus) {
        if (em_lemmas) {
          sentences.push_back(preprocess(e.comment.body));
          continue;
        }
        std::vector<std::string> words;
        for (const auto& t : remove_punctuation(tokenize(e.comment.body))) words.push_back(text::to_lower_utf8(t.text));
        sentences.push_back(std::move(words));
      }
      const auto model = train_embeddings(sentences, em_cfg);
      model.save(em_out);
      std::cout << "vocabulary " << model.size() << ", dimensions " << model.dimensions() << "\n";
      for (std::size_t i = 0; i < model.epoch_losses().size(); ++i)
        std::cout << "epoch " << i + 1 << "\tloss " << model.epoch_losses()[i] << "\n";
      return 0;
    }

    if (si->parsed()) {
      const auto model = EmbeddingModel::load(si_model);
      for (const auto& [w, s] : most_similar(model, si_word, si_topn)) std::cout << w << "\t" << fmt2(s) << "\n";
      return 0;
    }

    if (rp->parsed()) {
      std::string out;
      if (text::to_lower(std::filesystem::path(rp_in).extension().string()) == ".json") {
        out = report_text(report_from_json(nlohmann::json::parse(read_file(rp_in))));
      } else {
        const auto corpus = load_corpus(rp_in);
        std::ostringstream o;
        o << "Comments: " << corpus.size() << "\n\nProject\tComments\tShare\n";
        for (const auto& [p, n] : project_counts(corpus))
          o << p << "\t" << n << "\t" << fmt2(100.0 * static_cast<double>(n) / static_cast<double>(corpus.size()))
            << "%\n";
        if (corpus.fully_labeled() && !corpus.empty()) {
          const auto counts = label_counts(corpus);
          o << "\nLabel\tComments\tShare\n";
          for (const auto& [l, share] : label_distribution(corpus))
            o << to_string(l) << "\t" << counts.at(l) << "\t" << fmt2(100.0 * share) << "%\n";
        }
        out = o.str();
      }
      if (rp_out.empty()) std::cout << out;
      else atomic_write(rp_out, out);
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
