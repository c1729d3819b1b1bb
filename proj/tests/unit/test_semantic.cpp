#include <gtest/gtest.h>

#include <random>

#include "mcfrag/allocation.hpp"
#include "mcfrag/corpus.hpp"
#include "mcfrag/disclosure.hpp"
#include "mcfrag/error.hpp"
#include "mcfrag/rake.hpp"
#include "oracles.hpp"

using namespace mcfrag;

namespace {

const ExtractedTerm* find_term(const std::vector<ExtractedTerm>& ts, const std::string& text) {
  for (const auto& t : ts)
    if (t.text == text) return &t;
  return nullptr;
}

TermAssessment quasi(std::string term, std::map<std::string, double> risk) {
  TermAssessment a;
  a.term = std::move(term);
  a.risk = std::move(risk);
  a.cls = classify_risk(a.max_risk());
  return a;
}

PrivacyPolicy policy_of(std::vector<std::string> cs, double cap = 1.0) { return PrivacyPolicy::make(cs, cap); }

// N = 8 toy corpus from explicit counts.
CorpusStats toy() {
  return CorpusStats::from_counts(8, {{"c", 2}, {"t", 2}, {"u", 4}, {"all", 8}, {"w", 3}},
                                  {{{"t", "c"}, 2}, {{"u", "c"}, 1}, {{"w", "c"}, 1}});
}

}  // namespace

TEST(Rake, EmptyAndAllStopwords) {
  EXPECT_TRUE(extract_terms("").empty());
  EXPECT_TRUE(extract_terms("the of and").empty());
}

TEST(Rake, StopwordListIsVersioned) {
  EXPECT_EQ(kStopwordListVersion, "mcfrag-en-1");
  EXPECT_TRUE(default_stopwords().contains("the"));
  EXPECT_FALSE(default_stopwords().contains("train"));
}

TEST(Rake, ExampleSentenceWithBundledList) {
  // "train" is a content word in the bundled list, so the sentence is one run.
  auto ts = extract_terms("deep convolutional networks train deep networks");
  ASSERT_EQ(ts.size(), 1u);
  auto want = test::rake_scores({{"deep", "convolutional", "networks", "train", "deep", "networks"}});
  EXPECT_DOUBLE_EQ(ts[0].score, want.begin()->second);
}

TEST(Rake, ExampleSentenceWithTrainAsStopword) {
  auto sw = default_stopwords();
  sw.insert("train");
  auto ts = extract_terms("deep convolutional networks train deep networks", sw);
  auto oracle = test::rake_scores({{"deep", "convolutional", "networks"}, {"deep", "networks"}});
  const auto* dcn = find_term(ts, "deep convolutional networks");
  ASSERT_NE(dcn, nullptr);
  // deg(deep)=5,f=2; deg(convolutional)=3,f=1; deg(networks)=5,f=2
  EXPECT_DOUBLE_EQ(dcn->score, 2.5 + 3.0 + 2.5);
  EXPECT_DOUBLE_EQ(dcn->score, oracle["deep convolutional networks"]);
  const auto* dn = find_term(ts, "deep networks");
  ASSERT_NE(dn, nullptr);
  EXPECT_DOUBLE_EQ(dn->score, oracle["deep networks"]);
}

TEST(Rake, SpansPointAtSurfaceText) {
  std::string text = "Viral load was high. Later the viral load was low.";
  auto ts = extract_terms(text);
  const auto* vl = find_term(ts, "viral load");
  ASSERT_NE(vl, nullptr);
  ASSERT_EQ(vl->spans.size(), 2u);
  EXPECT_EQ(text.substr(vl->spans[0].begin, vl->spans[0].end - vl->spans[0].begin), "Viral load");
  EXPECT_EQ(text.substr(vl->spans[1].begin, vl->spans[1].end - vl->spans[1].begin), "viral load");
}

TEST(Rake, PunctuationDigitsAndNewlinesBreakPhrases) {
  auto ts = extract_terms("blood tests, 200 cells\nbone marrow");
  EXPECT_NE(find_term(ts, "blood tests"), nullptr);
  EXPECT_NE(find_term(ts, "cells"), nullptr);
  EXPECT_NE(find_term(ts, "bone marrow"), nullptr);
  EXPECT_EQ(find_term(ts, "tests cells"), nullptr);
}

TEST(Corpus, ContiguousMultiWordMatching) {
  std::vector<std::string> ps{"the immune system fails", "system immune", "an immune system"};
  auto s = CorpusStats::from_paragraphs(ps);
  EXPECT_EQ(s.paragraph_count(), 3u);
  EXPECT_EQ(s.doc_freq("immune system"), 2u);
  EXPECT_EQ(s.doc_freq("immune"), 3u);
  EXPECT_EQ(s.co_doc_freq("immune system", "fails"), 1u);
  EXPECT_EQ(s.doc_freq("absent"), 0u);
}

TEST(Disclosure, InformationContentToyValues) {
  auto s = toy();
  EXPECT_NEAR(information_content("all", s), 0.0, 1e-12);
  EXPECT_NEAR(information_content("t", s), 2.0, 1e-12);
  EXPECT_NEAR(information_content("unseen", s), 4.0, 1e-12);
  EXPECT_NEAR(information_content("w", s), test::ic_oracle(3, 8), 1e-12);
}

TEST(Disclosure, RiskToyValues) {
  auto s = toy();
  EXPECT_DOUBLE_EQ(disclosure_risk("c", "c", s), 1.0);
  EXPECT_NEAR(disclosure_risk("t", "c", s), 1.0, 1e-12);
  EXPECT_NEAR(disclosure_risk("u", "c", s), 0.0, 1e-12);
  EXPECT_NEAR(disclosure_risk("w", "c", s), test::risk_oracle(3, 2, 1, 8), 1e-12);
  EXPECT_EQ(disclosure_risk("all", "c", s), 0.0);
}

TEST(Disclosure, DegenerateEntity) {
  auto s = toy();
  try {
    disclosure_risk("t", "all", s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateEntity);
  }
  EXPECT_THROW(policy_of({"nothing"}).validate_on(s), Error);
}

// Property: random counts against the formula computed independently.
TEST(Disclosure, MatchesOracleOnRandomCounts) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 2 + rng() % 60;
    std::size_t dfc = 1 + rng() % (n - 1);
    std::size_t dft = 1 + rng() % n;
    std::size_t codf = rng() % (std::min(dft, dfc) + 1);
    auto s = CorpusStats::from_counts(n, {{"c", dfc}, {"t", dft}}, {{{"t", "c"}, codf}});
    double want = codf == dft ? 1.0 : test::risk_oracle(double(dft), double(dfc), double(codf), double(n));
    EXPECT_NEAR(disclosure_risk("t", "c", s), want, 1e-9) << n << " " << dfc << " " << dft << " " << codf;
  }
}

TEST(Classify, Boundaries) {
  EXPECT_EQ(classify_risk(1.0), TermClass::kIdentifier);
  EXPECT_EQ(classify_risk(std::nextafter(1.0, 0.0)), TermClass::kQuasiIdentifier);
  EXPECT_EQ(classify_risk(0.4), TermClass::kQuasiIdentifier);
  EXPECT_EQ(classify_risk(0.0), TermClass::kSafe);
}

TEST(Classify, TermsAgainstPolicy) {
  auto s = CorpusStats::from_counts(8, {{"hiv", 2}, {"virus", 4}, {"t", 2}, {"q", 4}, {"z", 3}},
                                    {{{"t", "hiv"}, 2}, {{"q", "hiv"}, 2}, {{"z", "virus"}, 0}});
  std::vector<std::string> terms{"t", "q", "z"};
  auto out = classify_terms(terms, policy_of({"hiv", "virus"}), s);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].cls, TermClass::kIdentifier);
  EXPECT_EQ(out[1].cls, TermClass::kQuasiIdentifier);  // PMI 1 bit over IC 2 bits
  EXPECT_NEAR(out[1].risk.at("hiv"), 0.5, 1e-12);
  EXPECT_EQ(out[2].cls, TermClass::kSafe);
}

TEST(Allocation, HandTracedExample) {
  std::vector<TermAssessment> q{quasi("a", {{"c", 0.6}}), quasi("b", {{"c", 0.5}}),
                                quasi("d", {{"c", 0.4}}), quasi("e", {{"c", 0.3}})};
  auto a = allocate(q, policy_of({"c"}), Strategy::kUnordered);
  ASSERT_EQ(a.groups.size(), 2u);
  EXPECT_EQ(a.groups[0], (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(a.groups[1], (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(test::optimal_partition({{0.6}, {0.5}, {0.4}, {0.3}}, 1.0), 2u);
  EXPECT_EQ(a.fragments[0].terms(), (std::vector<std::string>{"a", "e"}));
}

TEST(Allocation, TrivialCases) {
  EXPECT_TRUE(allocate({}, policy_of({"c"}), Strategy::kUnordered).groups.empty());
  std::vector<TermAssessment> one{quasi("x", {{"c", 0.2}})};
  EXPECT_EQ(allocate_fragments(one, policy_of({"c"}), Strategy::kOrderedDesc).size(), 1u);
}

TEST(Allocation, UnplaceableGuard) {
  std::vector<TermAssessment> q{quasi("x", {{"c", 0.7}})};
  try {
    allocate(q, policy_of({"c"}, 0.5), Strategy::kUnordered);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnplaceableTerm);
  }
}

TEST(Allocation, OrderingStrategies) {
  std::vector<TermAssessment> q{quasi("b", {{"c", 0.3}}), quasi("a", {{"c", 0.3}}), quasi("z", {{"c", 0.9}})};
  EXPECT_EQ(allocation_order(q, Strategy::kUnordered), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(allocation_order(q, Strategy::kOrderedDesc), (std::vector<std::size_t>{2, 1, 0}));
  EXPECT_EQ(allocation_order(q, Strategy::kOrderedAsc), (std::vector<std::size_t>{1, 0, 2}));
}

// Property: greedy respects the cap and never beats the exhaustive optimum.
TEST(Allocation, GreedyVersusExhaustive) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t n = 1 + rng() % 10, ents = 1 + rng() % 2;
    std::vector<TermAssessment> q;
    std::vector<std::vector<double>> risks;
    for (std::size_t i = 0; i < n; ++i) {
      std::map<std::string, double> r;
      std::vector<double> row;
      for (std::size_t e = 0; e < ents; ++e) {
        double x = rng() % 4 == 0 ? 0.0 : u(rng);
        r["c" + std::to_string(e)] = x;
        row.push_back(x);
      }
      if (*std::max_element(row.begin(), row.end()) == 0.0) {
        row[0] = 0.05;
        r["c0"] = 0.05;
      }
      q.push_back(quasi("t" + std::to_string(i), r));
      risks.push_back(row);
    }
    std::vector<std::string> cs;
    for (std::size_t e = 0; e < ents; ++e) cs.push_back("c" + std::to_string(e));
    auto opt = test::optimal_partition(risks, 1.0);
    for (auto st : {Strategy::kUnordered, Strategy::kOrderedDesc, Strategy::kOrderedAsc}) {
      auto a = allocate(q, policy_of(cs), st);
      EXPECT_GE(a.groups.size(), opt);
      for (const auto& g : a.groups)
        for (std::size_t e = 0; e < ents; ++e) {
          double s = 0.0;
          for (auto i : g) s += risks[i][e];
          EXPECT_LT(s, 1.0);
        }
      std::size_t placed = 0;
      for (const auto& g : a.groups) placed += g.size();
      EXPECT_EQ(placed, n);
    }
  }
}
