#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "revlens/models.hpp"
#include "revlens/models/model_io.hpp"
#include "support/oracles.hpp"

using namespace revlens;
namespace oracle = revlens::testing;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "revlens_test_models";
  std::filesystem::create_directories(dir);
  return dir / name;
}

// d1 = "a a b" (Efficient), d2 = "b b" (Not-Efficient) over {a, b}.
std::vector<Example> hand_example() {
  return {{SparseVector(2, {{0, 2.0}, {1, 1.0}}), Label::Efficient}, {SparseVector(2, {{1, 2.0}}), Label::NotEfficient}};
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

Hyperparams quick() {
  Hyperparams hp;
  hp.nu_clamp = true;
  hp.max_iter = 200;
  return hp;
}

}  // namespace

TEST(Algorithm, NamesRoundTrip) {
  for (auto a : kAllAlgorithms) EXPECT_EQ(parse_algorithm(to_string(a)), a);
  EXPECT_EQ(parse_algorithm("linear-svc"), Algorithm::LinearSVC);
  EXPECT_THROW(parse_algorithm("unknown-algo"), std::invalid_argument);
  EXPECT_EQ(default_feature_mode(Algorithm::NaiveBayes), FeatureMode::Binary);
  EXPECT_EQ(default_feature_mode(Algorithm::BernoulliNB), FeatureMode::Binary);
  EXPECT_EQ(default_feature_mode(Algorithm::MultinomialNB), FeatureMode::Counts);
  EXPECT_EQ(default_feature_mode(Algorithm::LinearSVC), FeatureMode::Counts);
}

TEST(Hyperparams, ValidateAndJson) {
  Hyperparams hp;
  hp.nu = 1.5;
  EXPECT_THROW(hp.validate(), std::invalid_argument);
  Hyperparams a;
  a.C = 3.5;
  a.sgd_loss = SgdLoss::Log;
  const auto b = Hyperparams::from_json(nlohmann::json::parse(a.to_json().dump()));
  EXPECT_EQ(b.C, 3.5);
  EXPECT_EQ(b.sgd_loss, SgdLoss::Log);
}

TEST(MultinomialNB, HandComputedLikelihoods) {
  const auto m = train(Algorithm::MultinomialNB, hand_example(), oracle::toy_vocabulary(2));
  ASSERT_EQ(m.labels, (std::vector<Label>{Label::Efficient, Label::NotEfficient}));
  EXPECT_NEAR(std::exp(m.row(0)[0]), 0.6, 1e-12);
  EXPECT_NEAR(std::exp(m.row(0)[1]), 0.4, 1e-12);
  EXPECT_NEAR(std::exp(m.row(1)[0]), 0.25, 1e-12);
  EXPECT_NEAR(std::exp(m.row(1)[1]), 0.75, 1e-12);

  const auto p = predict(m, SparseVector(2, {{0, 1.0}}));
  EXPECT_EQ(p.label, Label::Efficient);
  EXPECT_NEAR(p.confidence, 0.6 * 0.5 / (0.6 * 0.5 + 0.25 * 0.5), 1e-12);
}

TEST(MultinomialNB, ZeroVectorFollowsPriors) {
  auto data = hand_example();
  data.push_back({SparseVector(2, {{0, 1.0}}), Label::NotEfficient});
  const auto m = train(Algorithm::MultinomialNB, data, oracle::toy_vocabulary(2));
  const auto p = predict(m, SparseVector(2, {}));
  EXPECT_EQ(p.label, Label::NotEfficient);
  EXPECT_NEAR(p.confidence, 2.0 / 3.0, 1e-12);
}

TEST(Train, Preconditions) {
  std::vector<Example> one_label = {{SparseVector(2, {{0, 1.0}}), Label::Efficient},
                                    {SparseVector(2, {{1, 1.0}}), Label::Efficient}};
  for (auto a : kAllAlgorithms) EXPECT_THROW(train(a, one_label, oracle::toy_vocabulary(2)), ModelError);
  EXPECT_THROW(train(Algorithm::MultinomialNB, {}, oracle::toy_vocabulary(2)), ModelError);
  EXPECT_THROW(train(Algorithm::MultinomialNB, hand_example(), oracle::toy_vocabulary(3)), ModelError);
  EXPECT_THROW(train(Algorithm::MultinomialNB, hand_example(), oracle::toy_vocabulary(2), {},
                     {Label::Efficient, Label::NotEfficient, Label::SystemGenerated}),
               ModelError);
}

TEST(NaiveBayesFamily, MatchesBruteForceOracle) {
  std::mt19937_64 rng(31);
  const std::pair<Algorithm, oracle::BayesKind> kinds[] = {
      {Algorithm::MultinomialNB, oracle::BayesKind::Multinomial},
      {Algorithm::BernoulliNB, oracle::BayesKind::Bernoulli},
      {Algorithm::NaiveBayes, oracle::BayesKind::PresenceOnly}};
  for (int trial = 0; trial < 50; ++trial) {
    const auto prob = oracle::random_problem(rng);
    std::uniform_real_distribution<double> alpha_d(0.1, 2.0);
    Hyperparams hp;
    hp.alpha = alpha_d(rng);
    const auto data = oracle::to_examples(prob);
    for (const auto& [algo, kind] : kinds) {
      const auto m = train(algo, data, oracle::toy_vocabulary(prob.dim), hp);
      for (int q = 0; q < 5; ++q) {
        const auto query = oracle::random_row(rng, prob.dim);
        const auto want = oracle::bayes_posterior(prob, query, hp.alpha, kind);
        const auto got = predict(m, oracle::to_sparse(query)).scores;
        ASSERT_EQ(got.size(), want.size());
        for (const auto& [label, p] : want) EXPECT_NEAR(got.at(label), p, 1e-9) << to_string(algo);
      }
    }
  }
}

TEST(LogisticRegression, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> g(0.0, 0.7);
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
    EXPECT_LT(oracle::relative_error(logistic_gradient(theta, data, y, L, d, l2), oracle::central_difference(f, theta)), 1e-4);
  }
}

TEST(SgdLogLoss, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(33);
  std::normal_distribution<double> g(0.0, 0.7);
  for (int point = 0; point < 10; ++point) {
    const auto prob = oracle::random_problem(rng, 8, 15);
    const auto data = oracle::to_examples(prob);
    std::vector<double> t;
    for (auto l : prob.y) t.push_back(l == prob.y[0] ? 1.0 : -1.0);
    std::vector<double> theta(prob.dim + 1);
    for (auto& v : theta) v = g(rng);
    const double l2 = 0.1 * point;
    auto f = [&](const std::vector<double>& th) { return binary_objective(th, data, t, l2, SgdLoss::Log); };
    EXPECT_LT(oracle::relative_error(binary_gradient(theta, data, t, l2, SgdLoss::Log), oracle::central_difference(f, theta)),
              1e-4);
  }
}

TEST(MarginLoss, StableAtExtremes) {
  EXPECT_NEAR(margin_loss(SgdLoss::Log, 800.0), 0.0, 1e-300);
  EXPECT_NEAR(margin_loss(SgdLoss::Log, -800.0), 800.0, 1e-9);
  EXPECT_EQ(margin_loss(SgdLoss::Hinge, 2.0), 0.0);
  EXPECT_EQ(margin_loss(SgdLoss::Hinge, 0.25), 0.75);
}

TEST(LinearSVC, SeparableToyIsFitExactly) {
  const auto data = oracle::separable_toy();
  const auto m = train(Algorithm::LinearSVC, data, oracle::toy_vocabulary(2));
  double hinge = 0.0;
  for (const auto& e : data) {
    EXPECT_EQ(predict(m, e.x).label, e.y);
    const double t = e.y == Label::Efficient ? 1.0 : -1.0;
    hinge += std::max(0.0, 1.0 - t * (e.x.dot(m.row(0).data()) + m.bias[0]));
  }
  EXPECT_LT(hinge / static_cast<double>(data.size()), 1e-3);
}

TEST(NuSVC, SeparableToyAndDualConstraints) {
  const auto data = oracle::separable_toy();
  const auto m = train(Algorithm::NuSVC, data, oracle::toy_vocabulary(2));
  for (const auto& e : data) EXPECT_EQ(predict(m, e.x).label, e.y);

  std::vector<const SparseVector*> x;
  std::vector<double> y;
  for (const auto& e : data) {
    x.push_back(&e.x);
    y.push_back(e.y == Label::Efficient ? 1.0 : -1.0);
  }
  for (double nu : {0.1, 0.3, 0.5, 0.9}) {
    const auto sol = solve_nu_svm(x, y, 2, nu, 1e-3, 100000);
    EXPECT_TRUE(sol.converged);
    double sum = 0.0, signed_sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_GE(sol.alpha[i], -1e-12);
      EXPECT_LE(sol.alpha[i], 1.0 + 1e-12);
      sum += sol.alpha[i];
      signed_sum += sol.alpha[i] * y[i];
    }
    EXPECT_NEAR(signed_sum, 0.0, 1e-3);
    EXPECT_GE(sum, nu * static_cast<double>(x.size()) - 1e-3);
  }
}

// Complementary slackness of the scaled dual: with margins measured by the
// r-normalized decision function, alpha = 0 needs y f >= 1, alpha = 1 needs
// y f <= 1 and free variables sit on the margin. (y f - 1) r is the gap
// between a gradient entry and its class level, which is what the solver's
// stopping tolerance bounds, so the check is made in those units.
TEST(NuSVC, KktConditionsOnRandomProblems) {
  std::mt19937_64 rng(34);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 30 + trial, dim = 4;
    std::vector<SparseVector> xs;
    std::vector<double> y;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = i % 3 == 0 ? 1.0 : -1.0;
      std::vector<SparseVector::Entry> e;
      for (std::uint32_t k = 0; k < dim; ++k) e.emplace_back(k, std::max(0.05, 2.0 + g(rng) + (k == 0 ? t : 0.0)));
      xs.emplace_back(dim, std::move(e));
      y.push_back(t);
    }
    std::vector<const SparseVector*> x;
    for (const auto& v : xs) x.push_back(&v);
    const double nu = 0.5 * max_feasible_nu(y);
    const double solver_tol = 1e-4;
    const auto sol = solve_nu_svm(x, y, dim, nu, solver_tol, 200000);
    ASSERT_TRUE(sol.converged);
    const double tol = (solver_tol + 1e-9) / sol.r;
    for (std::size_t i = 0; i < n; ++i) {
      const double m = y[i] * sol.decision(*x[i]);
      if (sol.alpha[i] < 1e-9) EXPECT_GE(m, 1.0 - tol);
      else if (sol.alpha[i] > 1.0 - 1e-9) EXPECT_LE(m, 1.0 + tol);
      else EXPECT_NEAR(m, 1.0, tol);
    }
  }
}

TEST(NuSVC, InfeasibleNuIsRejectedOrClamped) {
  std::vector<Example> data = oracle::separable_toy();
  data.resize(10);
  data.push_back({SparseVector(2, {{0, 1.0}}), Label::SystemGenerated});
  Hyperparams strict;
  strict.nu = 0.5;
  EXPECT_THROW(train(Algorithm::NuSVC, data, oracle::toy_vocabulary(2), strict), ModelError);
  strict.nu_clamp = true;
  const auto m = train(Algorithm::NuSVC, data, oracle::toy_vocabulary(2), strict);
  EXPECT_TRUE(m.metadata.contains("nu_effective"));
}

TEST(SgdLogLoss, AgreesWithLogisticRegressionOnTinySet) {
  auto data = oracle::separable_toy(9);
  data.resize(8);
  // Two-label softmax with penalty l2 equals a binary logistic model with
  // penalty l2 / 2 on the weight difference.
  Hyperparams sgd;
  sgd.sgd_loss = SgdLoss::Log;
  sgd.l2 = 0.1;
  sgd.learning_rate = 0.5;
  sgd.epochs = 5000;
  sgd.tolerance = 1e-12;
  Hyperparams lr;
  lr.l2 = 2.0 * sgd.l2;
  lr.learning_rate = 0.5;
  lr.epochs = 20000;
  const auto vocab = oracle::toy_vocabulary(2);
  const auto ms = train(Algorithm::SGDClassifier, data, vocab, sgd);
  const auto ml = train(Algorithm::LogisticRegression, data, vocab, lr);
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int i = 0; i < 50; ++i) {
    const SparseVector x(2, {{0, u(rng)}, {1, u(rng)}});
    const double p_lr = softmax(ml.raw_scores(x))[0];
    const double p_sgd = 1.0 / (1.0 + std::exp(-ms.raw_scores(x)[0]));
    EXPECT_NEAR(p_sgd, p_lr, 1e-2);
  }
}

TEST(Predict, NormalizedScoresForEveryAlgorithm) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 8; ++trial) {
    const auto prob = oracle::random_problem(rng, 10, 20, 2, 4);
    const auto data = oracle::to_examples(prob);
    for (auto a : kAllAlgorithms) {
      const auto m = train(a, data, oracle::toy_vocabulary(prob.dim), quick());
      for (int q = 0; q < 10; ++q) {
        const auto p = predict(m, oracle::to_sparse(oracle::random_row(rng, prob.dim)));
        double s = 0.0;
        for (const auto& [l, v] : p.scores) s += v;
        EXPECT_NEAR(s, 1.0, 1e-9);
        EXPECT_GE(p.confidence, 0.0);
        EXPECT_LE(p.confidence, 1.0);
        EXPECT_EQ(p.confidence, p.scores.at(p.label));
      }
    }
  }
}

TEST(Predict, ArgmaxInvariantUnderPositiveScaling) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 8; ++trial) {
    const auto prob = oracle::random_problem(rng);
    const auto data = oracle::to_examples(prob);
    for (auto a : kAllAlgorithms) {
      const auto m = train(a, data, oracle::toy_vocabulary(prob.dim), quick());
      for (int q = 0; q < 10; ++q) {
        const auto x = oracle::to_sparse(oracle::random_row(rng, prob.dim));
        auto raw = m.raw_scores(x);
        const double c = scale(rng);
        for (auto& r : raw) r *= c;
        EXPECT_EQ(m.labels[argmax(raw)], predict(m, x).label);
      }
    }
  }
}

TEST(MostInformative, OneSidedAndNeutralFeatures) {
  // Feature 0 appears only in Efficient documents; feature 1 appears in
  // every document of both labels.
  std::vector<Example> data;
  for (int i = 0; i < 9; ++i) data.push_back({SparseVector(2, {{0, 1.0}, {1, 1.0}}), Label::Efficient});
  for (int i = 0; i < 9; ++i) data.push_back({SparseVector(2, {{1, 1.0}}), Label::SystemGenerated});
  const auto m = train(Algorithm::NaiveBayes, data, oracle::toy_vocabulary(2));
  const auto mif = most_informative_features(m, 10);
  ASSERT_EQ(mif.size(), 2u);
  EXPECT_EQ(mif[0].feature, "wa");
  EXPECT_EQ(mif[0].label, Label::Efficient);
  EXPECT_NEAR(mif[0].ratio, 10.0, 1e-9);  // (9+1)/(9+2) over (0+1)/(9+2)
  EXPECT_EQ(mif[1].feature, "wb");
  EXPECT_NEAR(mif[1].ratio, 1.0, 1e-12);
  EXPECT_EQ(most_informative_features(m, 1).size(), 1u);

  const auto svc = train(Algorithm::LinearSVC, data, oracle::toy_vocabulary(2));
  EXPECT_THROW(most_informative_features(svc, 3), ModelError);
}

TEST(ModelIo, RoundTripPreservesPredictions) {
  std::mt19937_64 rng(38);
  const auto prob = oracle::random_problem(rng, 10, 20, 3, 4);
  const auto data = oracle::to_examples(prob);
  for (auto a : kAllAlgorithms) {
    const auto m = train(a, data, oracle::toy_vocabulary(prob.dim), quick());
    const auto path = temp_file(std::string(to_string(a)) + ".rvlm");
    save_model(m, path);
    const auto back = load_model(path);
    EXPECT_EQ(back.algorithm, a);
    EXPECT_EQ(back.labels, m.labels);
    EXPECT_EQ(*back.vocabulary, *m.vocabulary);
    EXPECT_EQ(back.metadata, m.metadata);
    std::mt19937_64 probe(99);
    for (int i = 0; i < 100; ++i) {
      const auto x = oracle::to_sparse(oracle::random_row(probe, prob.dim));
      const auto p = predict(m, x), q = predict(back, x);
      EXPECT_EQ(p.label, q.label);
      EXPECT_EQ(p.confidence, q.confidence);
    }
  }
}

TEST(ModelIo, TruncatedFileFailsChecksum) {
  const auto m = train(Algorithm::MultinomialNB, hand_example(), oracle::toy_vocabulary(2));
  const auto bytes = serialize_model(m);
  for (std::size_t cut : {bytes.size() - 1, bytes.size() / 2, std::size_t{8}}) {
    try {
      deserialize_model(std::string_view(bytes).substr(0, cut));
      ADD_FAILURE() << "no error for truncation at " << cut;
    } catch (const ModelFormatError& e) {
      EXPECT_NE(std::string(e.what()).find("checksum"), std::string::npos) << e.what();
    }
  }
  auto flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x40;
  EXPECT_THROW(deserialize_model(flipped), ModelFormatError);
}

TEST(ModelIo, FutureVersionIsRejected) {
  const auto m = train(Algorithm::MultinomialNB, hand_example(), oracle::toy_vocabulary(2));
  auto bytes = serialize_model(m);
  ASSERT_EQ(bytes.substr(0, 4), "RVLM");
  bytes[4] = static_cast<char>(kModelFormatVersion + 1);
  try {
    deserialize_model(bytes);
    FAIL() << "expected a version error";
  } catch (const ModelFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos) << e.what();
  }
  EXPECT_THROW(deserialize_model("NOPE"), ModelFormatError);
}

TEST(Train, IsDeterministicPerSeed) {
  std::mt19937_64 rng(39);
  const auto prob = oracle::random_problem(rng);
  const auto data = oracle::to_examples(prob);
  for (auto a : {Algorithm::SGDClassifier, Algorithm::LinearSVC, Algorithm::NuSVC}) {
    const auto x = train(a, data, oracle::toy_vocabulary(prob.dim), quick());
    const auto y = train(a, data, oracle::toy_vocabulary(prob.dim), quick());
    EXPECT_EQ(serialize_model(x), serialize_model(y));
  }
}
