#include <gtest/gtest.h>

#include <random>

#include "core/json_io.hpp"
#include "mcfrag/canonical.hpp"
#include "mcfrag/error.hpp"
#include "mcfrag/fragment.hpp"
#include "mcfrag/location.hpp"
#include "mcfrag/manifest.hpp"

using namespace mcfrag;

namespace {

std::vector<std::string> v(std::initializer_list<const char*> xs) {
  return {xs.begin(), xs.end()};
}

}  // namespace

TEST(Canonical, Sha256KnownVectors) {
  EXPECT_EQ(sha256_hex(to_bytes("")),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex(to_bytes("abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Canonical, TermSetNormalisesCaseOrderAndDuplicates) {
  auto terms = v({"Virus", "HIV", "virus"});
  EXPECT_EQ(canonicalize(TermSetPayload{terms}), to_bytes("hiv\nvirus"));
}

TEST(Canonical, EmptyTermSetIsEmptyBytes) {
  EXPECT_TRUE(canonicalize(TermSetPayload{}).empty());
}

TEST(Canonical, ByteBlockIsIdentity) {
  Bytes b{0xDE, 0xAD, 0xBE, 0xEF};
  EXPECT_EQ(canonicalize(b), b);
}

TEST(Canonical, NfcFoldsDecomposedForms) {
  // "é" precomposed vs e + combining acute
  EXPECT_EQ(canonical_term("Caf\xC3\xA9"), canonical_term("CAFE\xCC\x81"));
  EXPECT_EQ(canonical_term("  HIV   Virus "), "hiv virus");
}

TEST(Canonical, CaseMaskRoundTrip) {
  auto mask = case_mask("HiV", "hiv");
  ASSERT_TRUE(mask);
  EXPECT_EQ(apply_case_mask("hiv", *mask), "HiV");
  EXPECT_FALSE(case_mask("hiv!", "hiv"));
}

TEST(FragmentKeyTest, OrderAndCaseInvariant) {
  EXPECT_EQ(fragment_key(TermSetPayload{v({"Virus", "hiv"})}),
            fragment_key(TermSetPayload{v({"HIV", "virus"})}));
}

TEST(FragmentKeyTest, MatchesIndependentDigests) {
  EXPECT_EQ(fragment_key(TermSetPayload{v({"hiv"})}).hex(),
            "dca3d101447ca58acfd3af449a693b49f02ad841bdb4ae92fcf49c4d603c19f3");
  EXPECT_EQ(fragment_key(TermSetPayload{v({"virus"})}).hex(),
            "2898a07b2cf23dda8530b14b6aa522e67b002886d170c02219acc3598fdb50f3");
  EXPECT_EQ(fragment_key(TermSetPayload{v({"virus", "HIV"})}).hex(),
            "bbce3d26d460ccaf8c51ba2b0c14772baa807afa003b6b75279daa53a77133f5");
  EXPECT_EQ(fragment_key(Bytes{0xDE, 0xAD, 0xBE, 0xEF}).hex(),
            "5f78c33274e43fa9de5659265c1d917e25c03722dcb0b8d27db8d5feaa813953");
  EXPECT_EQ(fragment_key(Bytes{0xDE, 0xAD, 0xBE, 0xEF, 0x00}).hex(),
            "e2867e538491f86ac5906b12ac667abf7761171d1ae94d867c231df82b0c7c90");
}

TEST(FragmentKeyTest, HexRoundTripAndValidation) {
  auto k = fragment_key(Bytes{1, 2, 3});
  EXPECT_EQ(FragmentKey::from_hex(k.hex()), k);
  EXPECT_THROW(FragmentKey::from_hex("abc"), Error);
  EXPECT_THROW(FragmentKey::from_hex(std::string(64, 'G')), Error);
}

TEST(FragmentTest, SelfVerifiesAndDetectsTamper) {
  auto f = Fragment::term_set(v({"b", "a"}));
  EXPECT_TRUE(f.self_verifies());
  EXPECT_EQ(f.terms(), v({"a", "b"}));
  auto bytes = f.bytes();
  bytes[0] ^= 0xFF;
  auto bad = Fragment::from_stored(f.key(), f.kind(), bytes, f.sensitivity());
  EXPECT_FALSE(bad.self_verifies());
  EXPECT_FALSE(bad.verifies_against(f.key()));
}

TEST(FragmentTest, NonCanonicalTermBytesDoNotVerify) {
  Bytes unsorted = to_bytes("b\na");
  auto f = Fragment::from_stored(FragmentKey::of_bytes(unsorted), FragmentKind::kTermSet, unsorted,
                                 Sensitivity::kQuasiIdentifier);
  EXPECT_FALSE(f.self_verifies());
}

// Property: re-encoding a decoded canonical payload is a fixed point.
TEST(CanonicalProperty, Idempotent) {
  std::mt19937 rng(7);
  const char* alphabet[] = {"a", "B", "c", " ", "\xC3\xA9", "E\xCC\x81", "Z", "\xCE\xA3"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> terms;
    int n = rng() % 6;
    for (int i = 0; i < n; ++i) {
      std::string t;
      int len = 1 + rng() % 5;
      for (int j = 0; j < len; ++j) t += alphabet[rng() % 8];
      terms.push_back(t);
    }
    auto once = canonicalize(TermSetPayload{terms});
    auto decoded = decode_term_set(once);
    EXPECT_EQ(canonicalize(TermSetPayload{decoded}), once);
    EXPECT_EQ(decoded, canonical_terms(decoded));
  }
}

TEST(Location, ParseAndFormat) {
  auto loc = StorageLocation::parse("scsp1:abcd");
  EXPECT_EQ(loc.csp_id, "scsp1");
  EXPECT_EQ(loc.object_key, "abcd");
  EXPECT_EQ(loc.str(), "scsp1:abcd");
  EXPECT_THROW(StorageLocation::parse("nocolon"), Error);
}

TEST(Location, TierTrustMapping) {
  EXPECT_EQ(CspDescriptor::make("p", Tier::kPrivate).trust, Trust::kTrusted);
  EXPECT_EQ(CspDescriptor::make("q", Tier::kPublic).trust, Trust::kSemiHonest);
  CspDescriptor bad{"x", Tier::kPublic, Trust::kTrusted};
  EXPECT_THROW(bad.validate(), Error);
}

TEST(RefCount, AddRemoveRebuild) {
  RefCountIndex idx;
  auto k = fragment_key(Bytes{9});
  idx.add(k, "a");
  idx.add(k, "b");
  EXPECT_EQ(idx.referents(k).size(), 2u);
  idx.remove(k, "a");
  EXPECT_EQ(idx.referents(k), std::set<std::string>{"b"});
  idx.remove(k, "b");
  EXPECT_TRUE(idx.referents(k).empty());
  EXPECT_EQ(idx.size(), 0u);

  LocationTable t{"obj", {"p"}, {{k, {StorageLocation{"p", k.hex()}}}}};
  auto rebuilt = RefCountIndex::rebuild({{"obj", t}});
  EXPECT_EQ(rebuilt.referents(k), std::set<std::string>{"obj"});
}

TEST(Manifest, TemplateReassemblyWithLocalAndEscapes) {
  std::string text = "An \xE2\x9F\xA8odd\xE2\x9F\xA9 note about HIV and Lyon.";
  auto frag = Fragment::term_set(v({"hiv"}));
  std::vector<Placement> ps;
  auto hiv_pos = text.find("HIV");
  auto lyon_pos = text.find("Lyon");
  ps.push_back({hiv_pos, hiv_pos + 3, Binding{Binding::Source::kFragment, 0, 0, {0, 1, 2}, {}}});
  ps.push_back({lyon_pos, lyon_pos + 4, Binding{Binding::Source::kLocal, 0, 0, {}, {}}});
  auto m = DocumentManifest::from_placements("obj", text, ps, {"Lyon"});
  EXPECT_EQ(to_string(m.reassemble(std::vector<Fragment>{frag})), text);

  auto j = io::to_json(m);
  EXPECT_EQ(io::manifest_from_json(j), m);
}

TEST(Manifest, ConcatenateJoinsRows) {
  auto m = DocumentManifest::concatenate("o");
  std::vector<Fragment> rows{Fragment::byte_block(to_bytes("ab")), Fragment::byte_block(to_bytes("cd"))};
  EXPECT_EQ(to_string(m.reassemble(rows)), "abcd");
}

TEST(Manifest, DropRowShiftsLaterBindings) {
  std::string text = "x y z";
  std::vector<Placement> ps{{0, 1, Binding{Binding::Source::kFragment, 0, 0, {}, {}}},
                            {4, 5, Binding{Binding::Source::kFragment, 1, 0, {}, {}}}};
  auto m = DocumentManifest::from_placements("o", text, ps, {});
  m.drop_row(0);
  std::vector<Fragment> rows{Fragment::term_set(v({"z"}))};
  EXPECT_EQ(to_string(m.reassemble(rows)), " y z");
  EXPECT_EQ(m.max_bound_index(0), std::optional<std::size_t>(0));
}

TEST(JsonIo, TableRoundTrip) {
  auto k = fragment_key(Bytes{1});
  LocationTable t{"obj", {"p", "s"}, {{k, {StorageLocation{"p", k.hex()}, std::nullopt}}}};
  EXPECT_EQ(io::table_from_json(io::to_json(t)), t);
}
