#include "costas/construction.hpp"
#include "costas/xcorr.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace costas;

namespace {

std::vector<std::uint32_t> as_vector(const CostasPermutation& f) { return {f.values().begin(), f.values().end()}; }

}  // namespace

TEST(Welch, Examples) {
    EXPECT_EQ(as_vector(welch(5, 2)), (std::vector<std::uint32_t>{2, 4, 3, 1}));
    EXPECT_EQ(as_vector(welch(7, 3)), (std::vector<std::uint32_t>{3, 2, 6, 4, 5, 1}));
    const auto shifted = welch(5, 2, 1);
    EXPECT_EQ(as_vector(shifted), (std::vector<std::uint32_t>{4, 3, 1, 2}));
    EXPECT_EQ(std::get<WelchOrigin>(shifted.provenance()), (WelchOrigin{5, 2, 1}));
    EXPECT_EQ(as_vector(welch(5, 2, -3)), as_vector(shifted));  // shift reduced mod p-1
    EXPECT_EQ(welch(7, 3).at(1), 3u);
    EXPECT_THROW(welch(7, 3).at(0), std::out_of_range);
}

TEST(Welch, Errors) {
    EXPECT_THROW(welch(5, 4), std::invalid_argument);
    EXPECT_THROW(welch(9, 2), std::invalid_argument);
    EXPECT_THROW(welch(3, 2), std::invalid_argument);
    EXPECT_THROW(welch_family(3), std::invalid_argument);
}

TEST(WelchFamily, SizesAndOrder) {
    EXPECT_EQ(welch_family(5).size(), 2u);
    const auto w7 = welch_family(7);
    ASSERT_EQ(w7.size(), 2u);
    EXPECT_EQ(std::get<WelchOrigin>(w7[0].provenance()).g, 3u);
    EXPECT_EQ(std::get<WelchOrigin>(w7[1].provenance()).g, 5u);
    EXPECT_EQ(welch_family(13).size(), 4u);
}

TEST(WelchFamily, DistinctMembersAllCostas) {
    for (std::uint32_t p = 5; p <= 200; ++p) {
        if (!is_prime(p)) continue;
        const auto family = welch_family(p);
        EXPECT_EQ(family.size(), euler_phi(p - 1));
        std::set<std::vector<std::uint32_t>> seen;
        for (const auto& f : family) {
            EXPECT_TRUE(is_costas(f));
            EXPECT_EQ(std::get<WelchOrigin>(f.provenance()).shift, 0u);
            seen.insert(as_vector(f));
        }
        EXPECT_EQ(seen.size(), family.size());
    }
}

TEST(Golomb, Examples) {
    const auto gf5 = make_field(5);
    EXPECT_EQ(as_vector(golomb(gf5, FieldElement{2}, FieldElement{2})), (std::vector<std::uint32_t>{2, 1, 3}));
    const auto gf4 = make_field(2, 2);
    EXPECT_EQ(as_vector(golomb(gf4, FieldElement{2}, FieldElement{2})), (std::vector<std::uint32_t>{2, 1}));
    EXPECT_THROW(golomb(gf5, FieldElement{4}, FieldElement{2}), std::invalid_argument);
    EXPECT_THROW(golomb(make_field(3), FieldElement{2}, FieldElement{2}), std::invalid_argument);
}

TEST(Golomb, DefiningEquationHolds) {
    for (std::uint32_t q : {4u, 5u, 8u, 9u, 16u, 25u, 27u, 32u, 49u}) {
        const auto spec = make_field_of_order(q);
        for (const auto& f : golomb_full_family(spec)) {
            const auto& o = std::get<GolombOrigin>(f.provenance());
            for (std::size_t i = 1; i <= f.n(); ++i) {
                const auto lhs = add(pow(FieldElement{o.g1}, i, spec), pow(FieldElement{o.g2}, f.at(i), spec), spec);
                ASSERT_EQ(lhs, FieldElement{1}) << q;
            }
        }
    }
}

TEST(Golomb, SwappingGeneratorsInverts) {
    for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u, 11u, 16u, 27u, 64u}) {
        const auto spec = make_field_of_order(q);
        const auto prims = primitive_elements(spec);
        for (auto g1 : prims)
            for (auto g2 : prims) {
                const auto f = golomb(spec, g1, g2), h = golomb(spec, g2, g1);
                for (std::size_t i = 1; i <= f.n(); ++i) ASSERT_EQ(h.at(f.at(i)), i);
            }
    }
}

TEST(Golomb, TableBaseDoesNotMatter) {
    const auto spec = make_field(3, 3);
    const auto prims = primitive_elements(spec);
    const LogTable a(spec, prims.front()), b(spec, prims.back());
    for (auto g1 : prims) EXPECT_EQ(golomb(a, g1, prims[2]), golomb(b, g1, prims[2]));
}

TEST(GolombFamilies, Sizes) {
    EXPECT_EQ(golomb_subfamily(make_field(5)).size(), 2u);
    EXPECT_EQ(golomb_subfamily(make_field(2, 3)).size(), 6u);
    EXPECT_EQ(golomb_subfamily(make_field(59)).size(), 28u);
    EXPECT_EQ(golomb_full_family(make_field(5)).size(), 4u);
    EXPECT_EQ(golomb_full_family(make_field(2, 2)).size(), 4u);
    EXPECT_EQ(golomb_full_family(make_field(59)).size(), 784u);
    EXPECT_THROW(golomb_subfamily(make_field(3)), std::invalid_argument);
    EXPECT_THROW(golomb_full_family(make_field(3)), std::invalid_argument);
}

TEST(GolombFamilies, SubfamilyUsesCanonicalG2AndOrdersByG1) {
    const auto spec = make_field(3, 2);
    const auto sub = golomb_subfamily(spec);
    std::vector<std::uint32_t> g1s;
    for (const auto& f : sub) {
        EXPECT_EQ(std::get<GolombOrigin>(f.provenance()).g2, 4u);
        g1s.push_back(std::get<GolombOrigin>(f.provenance()).g1);
    }
    EXPECT_EQ(g1s, (std::vector<std::uint32_t>{4, 5, 7, 8}));
    const auto other = golomb_subfamily(spec, FieldElement{7});
    EXPECT_EQ(std::get<GolombOrigin>(other[0].provenance()).g2, 7u);
}

TEST(IsCostas, Examples) {
    EXPECT_TRUE(is_costas(std::vector<std::uint32_t>{2, 4, 3, 1}));
    EXPECT_FALSE(is_costas(std::vector<std::uint32_t>{1, 2, 3, 4}));
    EXPECT_TRUE(is_costas(std::vector<std::uint32_t>{1}));
    EXPECT_TRUE(is_costas(std::vector<std::uint32_t>{1, 2}));
    EXPECT_TRUE(is_costas(std::vector<std::uint32_t>{}));
}

TEST(IsCostas, NonPermutationIsAnErrorNotAVerdict) {
    EXPECT_THROW(is_costas(std::vector<std::uint32_t>{1, 1, 2}), PermutationError);
    EXPECT_THROW(is_costas(std::vector<std::uint32_t>{0, 1, 2}), PermutationError);
    EXPECT_THROW(is_costas(std::vector<std::uint32_t>{1, 2, 4}), PermutationError);
    EXPECT_THROW(CostasPermutation({2, 2}), PermutationError);
}

TEST(IsCostas, MatchesDefinitionOnAllSmallPermutations) {
    for (std::size_t n = 1; n <= 8; ++n) {
        std::vector<std::uint32_t> f(n);
        std::iota(f.begin(), f.end(), 1u);
        do {
            ASSERT_EQ(is_costas(f), oracle::costas(f));
        } while (std::next_permutation(f.begin(), f.end()));
    }
}

TEST(IsCostas, EquivalentToAutocorrelationAtMostOne) {
    std::mt19937_64 rng(7);
    auto check = [](const std::vector<std::uint32_t>& values) {
        const CostasPermutation f(values);
        const auto table = cross_correlation_table(f, f);
        std::uint32_t off_peak = 0;
        for (auto u = table.min_shift(); u <= table.max_shift(); ++u)
            for (auto v = table.min_shift(); v <= table.max_shift(); ++v)
                if (u != 0 || v != 0) off_peak = std::max(off_peak, table.at(u, v));
        EXPECT_EQ(is_costas(f), off_peak <= 1);
        EXPECT_EQ(table.at(0, 0), f.n());
    };
    for (std::size_t n = 1; n <= 7; ++n) {
        std::vector<std::uint32_t> f(n);
        std::iota(f.begin(), f.end(), 1u);
        do check(f);
        while (std::next_permutation(f.begin(), f.end()));
    }
    for (int i = 0; i < 50; ++i) check(oracle::random_permutation(20, rng));
    for (const auto& f : welch_family(31)) check(as_vector(f));
}

TEST(TextForm, RoundTripKeepsValuesAndProvenance) {
    std::vector<CostasPermutation> perms = welch_family(11);
    for (auto& f : golomb_subfamily(make_field(2, 4))) perms.push_back(f);
    perms.push_back(CostasPermutation({3, 1, 2}));
    for (const auto& f : perms) {
        const auto text = format_permutation(f);
        EXPECT_EQ(parse_permutation(text), f);
        EXPECT_TRUE(matches_provenance(parse_permutation(text)));
    }
    EXPECT_EQ(format_permutation(welch(5, 2)), "# welch p=5 g=2 shift=0\n2 4 3 1\n");
}

TEST(TextForm, ParseErrors) {
    EXPECT_THROW(parse_permutation("# welch p=5 g=2 shift=0\n"), std::invalid_argument);
    EXPECT_THROW(parse_permutation("1 2 x\n"), std::invalid_argument);
    EXPECT_THROW(parse_permutation("1 1 2\n"), PermutationError);
    EXPECT_THROW(parse_permutation("# welch p=5 shift=0\n2 4 3 1\n"), std::invalid_argument);
    EXPECT_EQ(parse_permutation("2 3 1\n").provenance(), Provenance{ExternalOrigin{}});
}

TEST(TextForm, DetectsProvenanceMismatch) {
    EXPECT_FALSE(matches_provenance(parse_permutation("# welch p=5 g=2 shift=0\n2 4 1 3\n")));
    EXPECT_FALSE(matches_provenance(parse_permutation("# golomb q=5 g1=2 g2=2\n1 2 3\n")));
}
