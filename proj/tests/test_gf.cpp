#include "doctest.h"

#include "slicerank/errors.hpp"
#include "slicerank/gf.hpp"

#include <set>

using namespace slicerank;

TEST_CASE("make_field picks the least irreducible modulus") {
    auto f3 = Field::make(3, 1);
    CHECK(f3->q() == 3);
    CHECK(f3->modulus() == std::vector<int>{0, 1});

    // x^2 + 1 has no roots in Z_3: 0+1, 1+1, 4+1 are all nonzero mod 3.
    auto f9 = Field::make(3, 2);
    CHECK(f9->q() == 9);
    CHECK(f9->modulus() == std::vector<int>{1, 0, 1});

    // Every smaller monic quadratic (c0 = 0) is divisible by x.
    for (int c1 = 0; c1 < 3; ++c1) {
        const int f[] = {0, c1, 1};
        CHECK_FALSE(is_irreducible(f, 3));
    }

    CHECK(Field::make(5, 2)->q() == 25);
    CHECK(Field::make(3, 4)->q() == 81);
    CHECK(is_irreducible(Field::make(3, 4)->modulus(), 3));
    CHECK(is_irreducible(Field::make(7, 3)->modulus(), 7));
}

TEST_CASE("invalid fields are rejected") {
    CHECK_THROWS_AS(Field::make(2, 1), InvalidInput);
    CHECK_THROWS_AS(Field::make(9, 1), InvalidInput);
    CHECK_THROWS_AS(Field::make(3, 0), InvalidInput);
    CHECK_THROWS_AS(Field::make(3, 11), GateExceeded);
    CHECK_THROWS_AS(Field::from_order(12), InvalidInput);
    CHECK_THROWS_AS(Field::from_order(8), InvalidInput);
    CHECK(Field::from_order(27)->k() == 3);
}

TEST_CASE("small GF(3) facts") {
    auto F = Field::make(3, 1);
    const auto two = F->from_int(2);
    CHECK(F->inv(two) == two);
    CHECK(F->half(F->one()) == two);
    CHECK_THROWS_AS(F->inv(F->zero()), DivisionByZero);
}

TEST_CASE("enumeration is canonical") {
    auto F = Field::make(3, 1);
    const auto e = F->elements();
    REQUIRE(e.size() == 3);
    CHECK(F->to_string(e[0]) == "0");
    CHECK(F->to_string(e[1]) == "1");
    CHECK(F->to_string(e[2]) == "2");

    auto F9 = Field::make(3, 2);
    const auto e9 = F9->elements();
    std::set<FieldElement> distinct(e9.begin(), e9.end());
    CHECK(distinct.size() == 9);
    CHECK(e9[0] == F9->zero());
    // Lexicographic on coefficient lists, low degree first.
    for (std::size_t i = 1; i < e9.size(); ++i)
        CHECK(F9->coeffs(e9[i - 1]) < F9->coeffs(e9[i]));
    for (std::size_t i = 0; i < e9.size(); ++i)
        for (std::size_t j = 0; j < e9.size(); ++j)
            if (i != j)
                CHECK_FALSE(F9->sub(e9[i], e9[j]).is_zero());
}

TEST_CASE("field axioms hold exhaustively for q <= 81") {
    for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {3, 3}, {3, 4}}) {
        auto F = Field::make(p, k);
        CAPTURE(F->q());
        const auto el = F->elements();
        const auto zero = F->zero();
        const auto one = F->one();
        for (auto a : el) {
            CHECK(F->add(a, zero) == a);
            CHECK(F->mul(a, one) == a);
            CHECK(F->add(a, F->neg(a)) == zero);
            CHECK(F->pow(a, F->q()) == a);
            CHECK(F->add(F->half(a), F->half(a)) == a);
            if (!a.is_zero()) {
                CHECK(F->mul(a, F->inv(a)) == one);
                CHECK(F->pow(a, F->q() - 1) == one);
            }
            for (auto b : el) {
                CHECK(F->add(a, b) == F->add(b, a));
                CHECK(F->mul(a, b) == F->mul(b, a));
                if (!a.is_zero() && !b.is_zero())
                    CHECK_FALSE(F->mul(a, b).is_zero());
            }
        }
        // Associativity and distributivity on a stride of triples.
        for (std::size_t i = 0; i < el.size(); i += 2)
            for (std::size_t j = 0; j < el.size(); j += 3)
                for (std::size_t l = 0; l < el.size(); ++l) {
                    const auto a = el[i], b = el[j], c = el[l];
                    CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
                    CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
                    CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
                }
    }
}

TEST_CASE("untabulated fields agree with Fermat") {
    auto F = Field::make(17, 2); // q = 289, coefficient arithmetic path
    for (std::uint32_t c = 0; c < F->q(); c += 7) {
        const FieldElement a{c};
        CHECK(F->pow(a, F->q()) == a);
        if (!a.is_zero())
            CHECK(F->mul(a, F->inv(a)) == F->one());
    }
}

TEST_CASE("text forms") {
    auto F9 = Field::make(3, 2);
    const auto x = F9->from_coeffs(std::vector<int>{2, 1});
    CHECK(F9->to_string(x) == "21");
    CHECK(F9->parse("21") == x);
    CHECK_THROWS_AS(F9->parse("3"), InvalidInput);
    CHECK_THROWS_AS(F9->parse("31"), InvalidInput);

    const Vector v{x, F9->one()};
    CHECK(F9->to_string(v) == "2110");
    CHECK(F9->parse_vector("2110", 2) == v);

    auto F = Field::make(37, 1);
    CHECK(F->to_string(F->from_int(36)) == "36");
    CHECK(F->parse("36") == F->from_int(36));
    CHECK(F->parse_vector("36 1", 2) == Vector{F->from_int(36), F->one()});
}

TEST_CASE("point indices are lexicographic") {
    auto F = Field::make(3, 1);
    for (std::uint64_t i = 0; i < 27; ++i)
        CHECK(point_index(*F, point_from_index(*F, i, 3)) == i);
    CHECK(point_from_index(*F, 5, 2) == Vector{F->one(), F->from_int(2)});
}
