// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any gating criterion fails; criterion 6 is reported but never gates.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "revlens/embed.hpp"
#include "revlens/eval.hpp"
#include "revlens/features.hpp"
#include "revlens/miner.hpp"
#include "revlens/models.hpp"
#include "revlens/preprocess.hpp"
#include "support/fake_github.hpp"
#include "support/oracles.hpp"

using namespace revlens;
namespace oracle = revlens::testing;
namespace fs = std::filesystem;

namespace {

// Tolerances and limits.
constexpr double kBayesTol = 1e-9;
constexpr double kGradRelTol = 1e-4;
constexpr double kFiniteDiffStep = 1e-5;
constexpr double kDualTol = 1e-3;
constexpr double kMicroRecallTol = 1e-12;
constexpr double kSelfCosineTol = 1e-9;

constexpr double kReferenceLinearSvcAccuracy = 0.8309;
constexpr double kLinearSvcWindow = 0.05;
constexpr double kReferenceEfficientF = 0.73;
constexpr double kReferenceSystemGeneratedF = 0.75;
constexpr double kFWindow = 0.10;
constexpr std::size_t kReferenceSystemGenerated = 8837;
constexpr std::size_t kReferenceComments = 13557;

class Check {
public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      ok_ = false;
      if (failures_.size() < 5) failures_.push_back(what);
    }
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return ok_; }
  std::string detail() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    for (const auto& n : notes_) s += (s.empty() ? "" : "; ") + n;
    return s;
  }

private:
  bool ok_ = true;
  std::vector<std::string> failures_, notes_;
};

std::string num(double v, int precision = 4) {
  std::ostringstream o;
  o.precision(precision);
  o << std::fixed << v;
  return o.str();
}

std::string sci(double v) {
  std::ostringstream o;
  o.precision(2);
  o << std::scientific << v;
  return o.str();
}

struct Criterion {
  int id;
  std::string name;
  std::chrono::milliseconds limit;
  bool gating;
  std::function<void(Check&)> body;
};

const Corpus& fixture() {
  static const Corpus c = load_corpus(std::string(REVLENS_FIXTURE_DIR) + "/corpus.jsonl");
  return c;
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("revlens-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

void nb_oracle(Check& c) {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto prob = oracle::random_problem(rng, 10, 20, 2, 4);
    const auto data = oracle::to_examples(prob);
    for (auto [algo, kind] : {std::pair{Algorithm::MultinomialNB, oracle::BayesKind::Multinomial},
                              std::pair{Algorithm::BernoulliNB, oracle::BayesKind::Bernoulli}}) {
      Hyperparams hp;
      const auto m = train(algo, data, oracle::toy_vocabulary(prob.dim), hp);
      for (int q = 0; q < 5; ++q) {
        const auto query = oracle::random_row(rng, prob.dim);
        const auto want = oracle::bayes_posterior(prob, query, hp.alpha, kind);
        const auto got = predict(m, oracle::to_sparse(query)).scores;
        for (const auto& [label, p] : want) worst = std::max(worst, std::abs(got.at(label) - p));
      }
    }
  }
  c.expect(worst <= kBayesTol, "max posterior error " + sci(worst));
  c.note("max |posterior - oracle| = " + sci(worst));
}

void gradients(Check& c) {
  std::mt19937_64 rng(102);
  std::normal_distribution<double> g(0.0, 0.7);
  double worst_lr = 0.0, worst_sgd = 0.0;
  for (int point = 0; point < 10; ++point) {
    const auto prob = oracle::random_problem(rng, 6, 12);
    const auto data = oracle::to_examples(prob);
    std::vector<Label> labels;
    for (auto l : kAllLabels)
      if (std::find(prob.y.begin(), prob.y.end(), l) != prob.y.end()) labels.push_back(l);
    std::vector<std::size_t> y;
    for (auto l : prob.y) y.push_back(static_cast<std::size_t>(std::find(labels.begin(), labels.end(), l) - labels.begin()));
    const std::size_t L = labels.size(), d = prob.dim;
    std::vector<double> theta(L * d + L);
    for (auto& t : theta) t = g(rng);
    const double l2 = 0.05 * point;
    auto f = [&](const std::vector<double>& th) { return logistic_loss(th, data, y, L, d, l2); };
    worst_lr = std::max(worst_lr, oracle::relative_error(logistic_gradient(theta, data, y, L, d, l2),
                                                         oracle::central_difference(f, theta, kFiniteDiffStep)));

    std::vector<double> t;
    for (auto l : prob.y) t.push_back(l == prob.y[0] ? 1.0 : -1.0);
    std::vector<double> w(d + 1);
    for (auto& v : w) v = g(rng);
    auto h = [&](const std::vector<double>& th) { return binary_objective(th, data, t, l2, SgdLoss::Log); };
    worst_sgd = std::max(worst_sgd, oracle::relative_error(binary_gradient(w, data, t, l2, SgdLoss::Log),
                                                           oracle::central_difference(h, w, kFiniteDiffStep)));
  }
  c.expect(worst_lr < kGradRelTol, "logistic regression rel err " + sci(worst_lr));
  c.expect(worst_sgd < kGradRelTol, "SGD log-loss rel err " + sci(worst_sgd));
  c.note("rel err LR " + sci(worst_lr) + ", SGD " + sci(worst_sgd));
}

void svm_sanity(Check& c) {
  const auto data = oracle::separable_toy();
  c.expect(data.size() == 40, "toy set has " + std::to_string(data.size()) + " points");
  const auto vocab = oracle::toy_vocabulary(2);
  for (auto a : {Algorithm::LinearSVC, Algorithm::NuSVC}) {
    Hyperparams hp;
    const auto m = train(a, data, vocab, hp);
    std::size_t right = 0;
    for (const auto& e : data) right += predict(m, e.x).label == e.y;
    c.expect(right == data.size(), std::string(to_string(a)) + " training accuracy " + std::to_string(right) + "/40");
  }
  std::vector<const SparseVector*> x;
  std::vector<double> y;
  for (const auto& e : data) {
    x.push_back(&e.x);
    y.push_back(e.y == Label::Efficient ? 1.0 : -1.0);
  }
  const Hyperparams defaults;
  const auto sol = solve_nu_svm(x, y, 2, defaults.nu, defaults.tolerance, defaults.max_iter * x.size());
  double sum = 0.0, signed_sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += sol.alpha[i];
    signed_sum += sol.alpha[i] * y[i];
  }
  c.expect(std::abs(signed_sum) <= kDualTol, "sum alpha_i y_i = " + sci(signed_sum));
  c.expect(sum >= defaults.nu * static_cast<double>(x.size()) - kDualTol, "sum alpha_i = " + sci(sum));
  c.note("sum alpha y = " + sci(signed_sum) + ", sum alpha = " + num(sum) + " (nu n = " +
         num(defaults.nu * static_cast<double>(x.size())) + ")");
}

void metric_identities(Check& c) {
  std::mt19937_64 rng(104);
  std::uniform_int_distribution<std::size_t> size(1, 200);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pairs = oracle::random_pairs(rng, size(rng));
    const auto cm = confusion(pairs);
    c.expect(accuracy(cm) == static_cast<double>(cm.trace()) / static_cast<double>(cm.total()), "accuracy != trace/total");
    c.expect(std::abs(micro_recall(cm) - accuracy(cm)) <= kMicroRecallTol, "micro-recall != accuracy");
    for (auto l : kAllLabels) {
      const auto want = oracle::tally(pairs, l);
      const auto got = precision_recall_f1(cm, l);
      c.expect(got.precision == want.precision && got.recall == want.recall && got.f1 == want.f1,
               "P/R/F mismatch for " + std::string(to_string(l)));
    }
  }
}

void ngram_law(Check& c) {
  std::mt19937_64 rng(105);
  const std::vector<std::string> pool = {"a", "b", "please", "enter", "your", "comment", "fix"};
  std::uniform_int_distribution<std::size_t> len(0, 15), pick(0, pool.size() - 1);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::string> t(len(rng));
    for (auto& s : t) s = pool[pick(rng)];
    for (std::size_t n = 1; n <= 3; ++n) {
      const std::size_t want = t.size() >= n ? t.size() - n + 1 : 0;
      c.expect(ngrams(t, n).size() == want, "wrong count for len " + std::to_string(t.size()));
    }
  }
  const std::vector<std::string> example = {"Please", "enter", "your", "comment"};
  c.expect(ngrams(example, 2).size() == 3, "bigrams of the example");
  c.expect(ngrams(example, 3).size() == 2, "trigrams of the example");
}

void reproduction(Check& c) {
  c.note("reference dataset unavailable offline; fixture substitute");
  const double reference_baseline = static_cast<double>(kReferenceSystemGenerated) / kReferenceComments;
  c.note("reference baseline " + num(100.0 * reference_baseline, 1) + "%");

  const auto r = benchmark(fixture());
  c.note("fixture baseline " + num(100.0 * r.baseline_accuracy, 1) + "%");
  for (const auto& res : r.results)
    c.expect(res.accuracy >= r.baseline_accuracy,
             std::string(to_string(res.algorithm)) + " below baseline (" + num(res.accuracy) + ")");

  const auto& svc = r.result(Algorithm::LinearSVC);
  std::size_t rank = 1;
  for (const auto& res : r.results) rank += res.accuracy > svc.accuracy;
  c.expect(std::abs(svc.accuracy - kReferenceLinearSvcAccuracy) <= kLinearSvcWindow,
           "linear-svc accuracy " + num(100.0 * svc.accuracy, 2) + "% outside 83.09 +/- 5");
  c.expect(rank <= 2, "linear-svc rank " + std::to_string(rank));
  const double f_eff = svc.per_label.at(Label::Efficient).f1;
  const double f_sys = svc.per_label.at(Label::SystemGenerated).f1;
  c.expect(std::abs(f_eff - kReferenceEfficientF) <= kFWindow, "Efficient F " + num(f_eff, 3) + " vs 0.73 +/- 0.10");
  c.expect(std::abs(f_sys - kReferenceSystemGeneratedF) <= kFWindow,
           "System-Generated F " + num(f_sys, 3) + " vs 0.75 +/- 0.10");
  std::string accs;
  for (const auto a : ranking(r)) accs += std::string(accs.empty() ? "" : " ") + std::string(to_string(a)) + "=" +
                                          num(100.0 * r.result(a).accuracy, 1);
  c.note("accuracies " + accs + "; linear-svc rank " + std::to_string(rank));
}

void word2vec(Check& c) {
  std::vector<std::vector<std::string>> sentences;
  for (const auto& e : fixture()) {
    std::vector<std::string> words;
    for (const auto& t : remove_punctuation(tokenize(e.comment.body))) words.push_back(text::to_lower_utf8(t.text));
    sentences.push_back(std::move(words));
  }
  const auto m = train_embeddings(sentences, EmbeddingConfig{});
  const auto& losses = m.epoch_losses();
  c.expect(losses.size() >= 2 && losses.back() < losses.front(), "loss did not decrease");
  if (!losses.empty()) c.note("loss " + num(losses.front()) + " -> " + num(losses.back()));

  for (std::size_t i = 0; i < m.size(); i += 7) {
    const auto& w = m.words()[i];
    const auto r = most_similar(m, w, 10);
    c.expect(r.size() <= 10, "too many neighbours for " + w);
    for (std::size_t k = 0; k < r.size(); ++k) {
      c.expect(r[k].first != w, "query returned as its own neighbour: " + w);
      if (k > 0) c.expect(r[k].second <= r[k - 1].second, "scores increase for " + w);
    }
    const auto v = m.vector(w);
    const std::vector<double> d(v.begin(), v.end());
    c.expect(std::abs(cosine(d, d) - 1.0) <= kSelfCosineTol, "self cosine of " + w);
  }

  std::mt19937_64 rng(107);
  std::normal_distribution<double> g(0.0, 0.5);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t dim = 3 + trial % 6, outs = 1 + trial % 5;
    std::vector<double> flat((outs + 1) * dim);
    for (auto& x : flat) x = g(rng);
    auto unpack = [&](const std::vector<double>& th) {
      std::vector<std::vector<double>> o(outs);
      for (std::size_t k = 0; k < outs; ++k)
        o[k].assign(th.begin() + static_cast<std::ptrdiff_t>(dim * (k + 1)),
                    th.begin() + static_cast<std::ptrdiff_t>(dim * (k + 2)));
      return std::pair{std::vector<double>(th.begin(), th.begin() + static_cast<std::ptrdiff_t>(dim)), o};
    };
    const auto [center, outputs] = unpack(flat);
    const auto grad = sgns_gradient(center, outputs);
    std::vector<double> analytic = grad.center;
    for (const auto& o : grad.outputs) analytic.insert(analytic.end(), o.begin(), o.end());
    auto loss = [&](const std::vector<double>& th) {
      const auto [cc, oo] = unpack(th);
      return sgns_loss(cc, oo);
    };
    worst = std::max(worst, oracle::relative_error(analytic, oracle::central_difference(loss, flat, kFiniteDiffStep)));
  }
  c.expect(worst < kGradRelTol, "SGNS gradient rel err " + sci(worst));
}

MinerConfig miner_config(const oracle::FakeGitHub& gh, const fs::path& out) {
  MinerConfig cfg;
  cfg.api_base_url = gh.base_url();
  cfg.output_path = out;
  cfg.timeout = std::chrono::seconds(5);
  cfg.warn = [](const std::string&) {};
  cfg.sleeper = [](std::chrono::seconds) {};
  return cfg;
}

std::size_t unique_ids(const Corpus& corpus) {
  std::set<std::string> ids;
  for (const auto& e : corpus) ids.insert(e.comment.id);
  return ids.size();
}

std::size_t nonempty_lines(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += !line.empty();
  return n;
}

void miner(Check& c) {
  oracle::FakeGitHub gh("eclipse", {{"che", 4867}, {"jgit", 5655}, {"egit", 3035}});

  const auto full = scratch() / "full.jsonl";
  auto cfg = miner_config(gh, full);
  cfg.workers = 3;
  const auto r = mine_org("eclipse", cfg);
  c.expect(r.corpus.size() == kReferenceComments, "full run yielded " + std::to_string(r.corpus.size()));
  c.expect(unique_ids(r.corpus) == kReferenceComments, "full run has duplicate ids");

  const auto killed = scratch() / "killed.jsonl";
  auto kcfg = miner_config(gh, killed);
  gh.fail_after(60);
  const auto partial = mine_org("eclipse", kcfg);
  c.expect(partial.corpus.size() < kReferenceComments && !partial.warnings.empty(), "interruption did not happen");
  {
    std::ofstream torn(killed, std::ios::app | std::ios::binary);
    torn << R"({"id":"1","project":"che","author":"x","bo)";
  }
  gh.clear_failures();
  const auto resumed = mine_org("eclipse", kcfg);
  c.expect(resumed.corpus.size() == kReferenceComments, "resumed run yielded " + std::to_string(resumed.corpus.size()));
  c.expect(unique_ids(resumed.corpus) == resumed.corpus.size(), "duplicates after resume");
  c.expect(nonempty_lines(killed) == kReferenceComments, "resumed file has " + std::to_string(nonempty_lines(killed)) + " lines");
  c.note("interrupted at " + std::to_string(partial.corpus.size()) + " records, resumed to " +
         std::to_string(resumed.corpus.size()));

  oracle::FakeGitHub limited("acme", {{"core", 250}});
  auto lcfg = miner_config(limited, scratch() / "limited.jsonl");
  const auto now = Timestamp::parse("2021-06-01T12:00:00Z");
  lcfg.now = [now] { return now; };
  std::vector<std::chrono::seconds> sleeps;
  lcfg.sleeper = [&](std::chrono::seconds s) { sleeps.push_back(s); };
  limited.inject_rate_limit(1, now, 45);
  const auto lr = mine_org("acme", lcfg);
  c.expect(sleeps.size() == 1 && sleeps[0] == std::chrono::seconds(46), "no back-off until the reset time");
  c.expect(lr.corpus.size() == 250, "rate-limited run yielded " + std::to_string(lr.corpus.size()));
}

int run_cli(const std::vector<std::string>& args) {
  std::string cmd = "'" + std::string(REVLENS_CLI) + "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " >/dev/null 2>&1 </dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void determinism(Check& c) {
  const std::string corpus = std::string(REVLENS_FIXTURE_DIR) + "/corpus.jsonl";
  const auto a = scratch() / "report-a.json", b = scratch() / "report-b.json";
  c.expect(run_cli({"evaluate", "--in", corpus, "--report", a.string()}) == 0, "first evaluate failed");
  c.expect(run_cli({"evaluate", "--in", corpus, "--report", b.string()}) == 0, "second evaluate failed");
  const auto x = fs::exists(a) ? read_file(a) : "", y = fs::exists(b) ? read_file(b) : "";
  c.expect(!x.empty() && x == y, "reports differ");
  c.note(std::to_string(x.size()) + " bytes");
}

}  // namespace

int main() {
  using namespace std::chrono_literals;
  const std::vector<Criterion> criteria = {
      {1, "NB family matches brute-force Bayes oracle", 5s, true, nb_oracle},
      {2, "LR and log-loss SGD gradient checks", 5s, true, gradients},
      {3, "LinearSVC/NuSVC separable sanity and nu dual", 10s, true, svm_sanity},
      {4, "metric identities", 60s, true, metric_identities},
      {5, "n-gram count law", 60s, true, ngram_law},
      {6, "reproduction on the bundled fixture (non-gating)", 300s, false, reproduction},
      {7, "word2vec properties", 120s, true, word2vec},
      {8, "miner correctness against fake GitHub", 30s, true, miner},
      {9, "evaluate is byte-deterministic", 300s, true, determinism},
  };

  bool gate_ok = true;
  std::size_t passed = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    check.expect(ms <= cr.limit, "runtime " + std::to_string(ms.count()) + " ms over limit");
    const bool ok = check.ok();
    passed += ok;
    if (!ok && cr.gating) gate_ok = false;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << cr.id << ": " << cr.name << " [" << ms.count() << " ms]";
    if (const auto d = check.detail(); !d.empty()) std::cout << " - " << d;
    std::cout << std::endl;
  }
  std::cout << passed << "/" << criteria.size() << " criteria passed"
            << (gate_ok ? "; all gating criteria passed" : "; a gating criterion failed") << "\n";
  fs::remove_all(scratch());
  return gate_ok ? 0 : 1;
}
