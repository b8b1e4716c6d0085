#include "costas/ffield.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <set>
#include <sstream>

using namespace costas;

namespace {

const std::vector<std::uint32_t> kSmallOrders = {3, 4, 5, 7, 8, 9, 11, 13, 16};

std::vector<std::uint32_t> prime_powers_upto(std::uint32_t limit, std::uint32_t from = 3) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t q = from; q <= limit; ++q)
        if (is_prime_power(q)) out.push_back(q);
    return out;
}

std::vector<std::uint32_t> values(const std::vector<FieldElement>& xs) {
    std::vector<std::uint32_t> out;
    for (auto x : xs) out.push_back(x.value);
    return out;
}

/// True when no monic polynomial of degree 1..deg/2 divides f (enumerated).
bool irreducible_by_enumeration(const std::vector<std::uint32_t>& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<std::uint32_t> g(d + 1);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = c % p;
                c /= p;
            }
            g[d] = 1;
            // long division of f by monic g
            std::vector<std::int64_t> rem(f.begin(), f.end());
            for (std::size_t k = deg; k >= d; --k) {
                const std::int64_t lead = ((rem[k] % p) + p) % p;
                for (std::size_t i = 0; i <= d; ++i) rem[k - d + i] -= lead * g[i];
                if (k == d) break;
            }
            bool zero = true;
            for (std::size_t i = 0; i < d; ++i) zero &= ((rem[i] % p) + p) % p == 0;
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace

TEST(MakeField, Examples) {
    EXPECT_EQ(make_field(2, 2).modulus, (std::vector<std::uint32_t>{1, 1, 1}));
    EXPECT_EQ(make_field(3, 2).modulus, (std::vector<std::uint32_t>{1, 0, 1}));
    const auto f5 = make_field(5);
    EXPECT_TRUE(f5.modulus.empty());
    EXPECT_EQ(f5.q, 5u);
    EXPECT_EQ(make_field_of_order(128).r, 7u);
}

TEST(MakeField, Errors) {
    EXPECT_THROW(make_field(4, 1), FieldError);
    EXPECT_THROW(make_field(2, 21), FieldError);
    EXPECT_THROW(make_field(1031, 2), FieldError);
    EXPECT_THROW(make_field(2, 1), FieldError);  // q < 3
    EXPECT_THROW(make_field_of_order(12), FieldError);
    EXPECT_NO_THROW(make_field(2, 20));
}

TEST(MakeField, ModulusIsSmallestIrreducible) {
    for (auto q : prime_powers_upto(729)) {
        const auto spec = make_field_of_order(q);
        if (spec.r == 1) continue;
        ASSERT_TRUE(irreducible_by_enumeration(spec.modulus, spec.p)) << q;
        // every smaller monic candidate is reducible
        std::uint64_t code = 0;
        for (std::size_t i = spec.r; i-- > 0;) code = code * spec.p + spec.modulus[i];
        for (std::uint64_t smaller = 0; smaller < code; ++smaller) {
            std::vector<std::uint32_t> g(spec.r + 1);
            std::uint64_t c = smaller;
            for (std::uint32_t i = 0; i < spec.r; ++i) {
                g[i] = c % spec.p;
                c /= spec.p;
            }
            g[spec.r] = 1;
            ASSERT_FALSE(irreducible_by_enumeration(g, spec.p)) << q << " candidate " << smaller;
        }
    }
}

TEST(Arithmetic, Examples) {
    const auto gf4 = make_field(2, 2);
    EXPECT_EQ(mul(FieldElement{2}, FieldElement{2}, gf4), FieldElement{3});
    const auto gf5 = make_field(5);
    EXPECT_EQ(inv(FieldElement{2}, gf5), FieldElement{3});
    EXPECT_THROW(inv(FieldElement{0}, gf5), FieldError);
    EXPECT_THROW(add(FieldElement{5}, FieldElement{1}, gf5), FieldError);
    const auto gf9 = make_field(3, 2);
    for (std::uint32_t a = 0; a < 9; ++a) EXPECT_EQ(add(FieldElement{a}, neg(FieldElement{a}, gf9), gf9), FieldElement{0});
}

TEST(Arithmetic, MatchesSchoolbookOracle) {
    for (auto q : prime_powers_upto(256)) {
        const auto spec = make_field_of_order(q);
        oracle::PolyField ref{spec.p, spec.r, spec.modulus};
        for (std::uint32_t a = 0; a < q; a += (q > 64 ? 7 : 1))
            for (std::uint32_t b = 0; b < q; ++b) {
                ASSERT_EQ(mul(FieldElement{a}, FieldElement{b}, spec).value, ref.mul(a, b)) << q;
                ASSERT_EQ(add(FieldElement{a}, FieldElement{b}, spec).value, ref.add(a, b)) << q;
            }
    }
}

TEST(Arithmetic, AxiomsExhaustiveSmallFields) {
    for (auto q : kSmallOrders) {
        const auto s = make_field_of_order(q);
        for (std::uint32_t a = 0; a < q; ++a) {
            const FieldElement x{a};
            if (a) {
                EXPECT_EQ(mul(x, inv(x, s), s), FieldElement{1});
            }
            for (std::uint32_t b = 0; b < q; ++b) {
                const FieldElement y{b};
                ASSERT_EQ(add(x, y, s), add(y, x, s));
                ASSERT_EQ(mul(x, y, s), mul(y, x, s));
                for (std::uint32_t c = 0; c < q; ++c) {
                    const FieldElement z{c};
                    ASSERT_EQ(add(add(x, y, s), z, s), add(x, add(y, z, s), s));
                    ASSERT_EQ(mul(mul(x, y, s), z, s), mul(x, mul(y, z, s), s));
                    ASSERT_EQ(mul(x, add(y, z, s), s), add(mul(x, y, s), mul(x, z, s), s));
                }
            }
        }
    }
}

TEST(Arithmetic, AxiomsRandomLargerFields) {
    std::mt19937_64 rng(20261015);
    for (std::uint32_t q : {27u, 81u, 121u, 125u, 243u, 1024u, 2187u, 65536u, 1u << 20, 1048573u}) {
        const auto s = make_field_of_order(q);
        std::uniform_int_distribution<std::uint32_t> pick(0, q - 1);
        for (int i = 0; i < 200; ++i) {
            const FieldElement x{pick(rng)}, y{pick(rng)}, z{pick(rng)};
            ASSERT_EQ(mul(mul(x, y, s), z, s), mul(x, mul(y, z, s), s));
            ASSERT_EQ(mul(x, add(y, z, s), s), add(mul(x, y, s), mul(x, z, s), s));
            ASSERT_EQ(add(x, neg(x, s), s), FieldElement{0});
            if (x.value) {
                ASSERT_EQ(mul(x, inv(x, s), s), FieldElement{1});
            }
        }
    }
}

TEST(PrimitiveElements, Examples) {
    EXPECT_EQ(values(primitive_elements(make_field(5))), (std::vector<std::uint32_t>{2, 3}));
    EXPECT_EQ(values(primitive_elements(make_field(7))), (std::vector<std::uint32_t>{3, 5}));
    EXPECT_EQ(values(primitive_elements(make_field(2, 2))), (std::vector<std::uint32_t>{2, 3}));
    EXPECT_EQ(values(primitive_elements(make_field(3, 2))), (std::vector<std::uint32_t>{4, 5, 7, 8}));
}

TEST(PrimitiveElements, CountAndOrderOracle) {
    for (auto q : prime_powers_upto(128)) {
        const auto spec = make_field_of_order(q);
        oracle::PolyField ref{spec.p, spec.r, spec.modulus};
        const auto prims = primitive_elements(spec);
        EXPECT_EQ(prims.size(), euler_phi(q - 1)) << q;
        std::set<std::uint32_t> listed;
        for (auto g : prims) listed.insert(g.value);
        for (std::uint32_t a = 1; a < q; ++a) EXPECT_EQ(ref.order_of(a) == q - 1, listed.count(a) == 1) << q << " " << a;
        for (auto g : prims) {
            std::set<std::uint32_t> generated;
            FieldElement x{1};
            for (std::uint32_t i = 0; i + 1 < q; ++i) {
                generated.insert(x.value);
                x = mul(x, g, spec);
            }
            EXPECT_EQ(generated.size(), q - 1);
        }
    }
}

TEST(LogTable, Examples) {
    const auto gf5 = make_field(5);
    const auto t5 = build_log_table(gf5, FieldElement{2});
    EXPECT_EQ(t5.exp_values(), (std::vector<std::uint32_t>{1, 2, 4, 3}));
    const auto gf4 = make_field(2, 2);
    EXPECT_EQ(build_log_table(gf4, FieldElement{2}).exp_values(), (std::vector<std::uint32_t>{1, 2, 3}));
    EXPECT_THROW(build_log_table(gf5, FieldElement{4}), FieldError);
    EXPECT_THROW(build_log_table(gf5, FieldElement{0}), FieldError);
    EXPECT_THROW(t5.log(FieldElement{0}), FieldError);
}

TEST(LogTable, InverseMapAndTableArithmetic) {
    for (auto q : prime_powers_upto(200)) {
        const auto spec = make_field_of_order(q);
        const auto table = build_log_table(spec, primitive_elements(spec).back());
        for (std::uint32_t k = 0; k + 1 < q; ++k) ASSERT_EQ(table.log(table.exp(k)), k);
        for (std::uint32_t a = 0; a < q; a += 3)
            for (std::uint32_t b = 0; b < q; b += 5)
                ASSERT_EQ(table.mul(FieldElement{a}, FieldElement{b}), mul(FieldElement{a}, FieldElement{b}, spec));
        for (std::uint32_t a = 0; a < q; a += 4)
            ASSERT_EQ(table.pow(FieldElement{a}, 7), pow(FieldElement{a}, 7, spec));
    }
}

TEST(LogTableCache, RoundTripsBitExactly) {
    const auto spec = make_field(3, 4);
    const auto table = build_log_table(spec, smallest_primitive_element(spec));
    std::stringstream first;
    write_log_table(first, table);
    const std::string bytes = first.str();

    std::stringstream in(bytes);
    auto loaded = read_log_table(in, spec, table.base());
    ASSERT_TRUE(loaded);
    EXPECT_EQ(*loaded, table);
    std::stringstream second;
    write_log_table(second, *loaded);
    EXPECT_EQ(second.str(), bytes);
}

TEST(LogTableCache, RejectsMismatchedKeyOrCorruption) {
    const auto spec = make_field(3, 4);
    const auto base = smallest_primitive_element(spec);
    std::stringstream buf;
    write_log_table(buf, build_log_table(spec, base));
    const std::string bytes = buf.str();

    std::stringstream wrong_field(bytes);
    EXPECT_FALSE(read_log_table(wrong_field, make_field(2, 4), base));
    std::stringstream wrong_base(bytes);
    EXPECT_FALSE(read_log_table(wrong_base, spec, primitive_elements(spec).back()));

    std::string truncated = bytes.substr(0, bytes.size() - 4);
    std::stringstream short_in(truncated);
    EXPECT_FALSE(read_log_table(short_in, spec, base));

    std::string dup = bytes;
    // make exp[2] equal exp[3]: no longer a bijection
    const std::size_t exp_start = bytes.size() - 4 * (spec.q - 1);
    std::copy_n(dup.begin() + exp_start + 12, 4, dup.begin() + exp_start + 8);
    std::stringstream dup_in(dup);
    EXPECT_FALSE(read_log_table(dup_in, spec, base));
}

TEST(LogTableCache, WriteThroughDirectory) {
    const auto dir = std::filesystem::temp_directory_path() / "costas_logtable_cache_test";
    std::filesystem::remove_all(dir);
    const auto spec = make_field(5, 3);
    const auto base = smallest_primitive_element(spec);
    const auto built = cached_log_table(spec, base, dir);
    const auto path = dir / log_table_cache_name(spec, base);
    ASSERT_TRUE(std::filesystem::exists(path));
    const auto reloaded = cached_log_table(spec, base, dir);
    EXPECT_EQ(built, reloaded);
    std::filesystem::remove_all(dir);
}
