#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tz/errors.hpp"
#include "tz/fgab.hpp"
#include "tz/group_oracle.hpp"
#include "tz/torsion.hpp"

using namespace tz;

namespace {

Integer cofactor_det(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Integer total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j) minor(r - 1, cc++) = m(r, c);
        const Integer term = m(0, j) * cofactor_det(minor);
        total += (j % 2 == 0) ? term : Integer(-term);
    }
    return total;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
    return m;
}

// No eigenvalue on the unit circle at a root of unity, so every R(phi^n) is finite.
IntMatrix random_hyperbolic(std::mt19937_64& rng, std::size_t n) {
    for (;;) {
        IntMatrix a = random_matrix(rng, n, -3, 3);
        if (!has_root_of_unity(characteristic_polynomial(a))) return a;
    }
}

// Random endomorphism of Z^r + Z/n_1 + ... with a valid torsion block.
FgAbEndo random_endo(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> rank_dist(0, 2), tors_dist(0, 2), small(2, 4), coef(-4, 4);
    FgAbGroup g;
    g.rank = static_cast<std::size_t>(rank_dist(rng));
    Integer n = 1;
    for (int i = tors_dist(rng); i > 0; --i) {
        n *= small(rng);
        g.torsion.push_back(n);
    }
    const std::size_t r = g.rank, s = g.torsion.size();
    IntMatrix a(r, r), b(s, r), c(s, s);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) a(i, j) = coef(rng);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < r; ++j) b(i, j) = coef(rng);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            Integer step = g.torsion[i] / gcd(g.torsion[i], g.torsion[j]);
            c(i, j) = coef(rng) * step;
        }
    return FgAbEndo(g, a, b, c);
}

Rational decimal_to_rational(const std::string& text) {
    const auto dot = text.find('.');
    std::string digits = text;
    Integer scale = 1;
    if (dot != std::string::npos) {
        digits.erase(dot, 1);
        for (std::size_t k = dot; k < digits.size(); ++k) scale *= 10;
    }
    return make_rational(Integer(digits, 10), scale);
}

RationalFunctionQ rf(std::initializer_list<long> num, std::initializer_list<long> den) {
    return RationalFunctionQ(Polynomial(num), Polynomial(den));
}

}  // namespace

TEST_CASE("FgAbGroup validates the divisibility chain") {
    const FgAbGroup ok{1, {Integer(2), Integer(4)}};
    CHECK_NOTHROW(ok.validate());
    const FgAbGroup broken{0, {Integer(4), Integer(6)}};
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
    const FgAbGroup unit{0, {Integer(1)}};
    CHECK_THROWS_AS(unit.validate(), std::invalid_argument);
    CHECK(FgAbGroup{2, {Integer(2), Integer(4)}}.to_string() == "Z^2 + Z/2 + Z/4");
    CHECK(FgAbGroup{}.to_string() == "0");
}

TEST_CASE("FgAbEndo checks the homomorphism condition and reduces blocks") {
    // Z/2 + Z/4: C[1][0] must be a multiple of 2
    CHECK_THROWS_AS(FgAbEndo::finite({Integer(2), Integer(4)}, IntMatrix{{1, 0}, {1, 1}}), std::invalid_argument);
    const FgAbEndo e = FgAbEndo::finite({Integer(2), Integer(4)}, IntMatrix{{3, 0}, {2, -1}});
    CHECK(e.torsion_part() == IntMatrix{{1, 0}, {2, 3}});
    CHECK_THROWS_AS(FgAbEndo(FgAbGroup{1, {}}, IntMatrix{{1, 2}}, IntMatrix(), IntMatrix()), std::invalid_argument);
}

TEST_CASE("reidemeister_number examples") {
    const FgAbEndo cat = FgAbEndo::free(IntMatrix{{2, 1}, {1, 1}});
    CHECK(reidemeister_number(cat, 1) == ReidemeisterCount(Integer(1)));
    CHECK(reidemeister_number(cat, 2) == ReidemeisterCount(Integer(5)));
    CHECK(reidemeister_number(FgAbEndo::free(IntMatrix{{1}}), 1).is_infinite());
    CHECK(reidemeister_number(FgAbEndo::finite({Integer(4)}, IntMatrix{{3}}), 1) == ReidemeisterCount(Integer(2)));
    CHECK(reidemeister_number(FgAbEndo(FgAbGroup{}, {}, {}, {}), 3) == ReidemeisterCount(Integer(1)));
    CHECK(reidemeister_number(FgAbEndo::free(IntMatrix{{1}}), 1).to_string() == "INFINITE");
}

TEST_CASE("torsion-free R(phi^n) equals |det(A^n - I)| by cofactor expansion") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const IntMatrix a = random_hyperbolic(rng, n);
        const FgAbEndo e = FgAbEndo::free(a);
        for (unsigned long k = 1; k <= 6; ++k) {
            const Integer expected = abs(cofactor_det(a.power(k) - IntMatrix::identity(n)));
            CHECK(reidemeister_number(e, k).value() == expected);
        }
    }
}

TEST_CASE("R(phi^n) = (-1)^(r + p n) L(phi^n) with L(phi^n) = det(I - A^n)") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const IntMatrix a = random_hyperbolic(rng, n);
        const SignData signs = sigma_r_p(a);
        for (unsigned long k = 1; k <= 6; ++k) {
            const Integer l = lefschetz_number(a, k);
            CHECK(l == cofactor_det(IntMatrix::identity(n) - a.power(k)));
            const bool negative = (signs.r + signs.p * k) % 2 == 1;
            CHECK(reidemeister_number(FgAbEndo::free(a), k).value() == (negative ? Integer(-l) : l));
        }
    }
}

TEST_CASE("lefschetz_zeta examples") {
    CHECK(lefschetz_zeta(IntMatrix{{2}}) == rf({1, -2}, {1, -1}));
    CHECK(lefschetz_zeta(IntMatrix{{0, -1}, {1, 0}}) == rf({1, 0, 1}, {1, -2, 1}));
    CHECK(lefschetz_zeta(IntMatrix{{1}}) == RationalFunctionQ());
    CHECK(lefschetz_zeta(IntMatrix(0, 0)) == rf({1}, {1, -1}));
}

TEST_CASE("sigma_r_p examples") {
    auto check = [](const IntMatrix& a, int sigma, std::size_t r, std::size_t p) {
        const SignData s = sigma_r_p(a);
        CHECK(s.sigma == sigma);
        CHECK(s.r == r);
        CHECK(s.p == p);
    };
    check(IntMatrix{{2}}, 1, 1, 0);
    check(IntMatrix{{-2}}, -1, 1, 1);
    check(IntMatrix{{2, 1}, {1, 1}}, 1, 1, 0);
    CHECK_THROWS_AS(sigma_r_p(IntMatrix{{1}}), MathError);
    CHECK_THROWS_AS(sigma_r_p(IntMatrix{{-1, 0}, {0, 3}}), MathError);
}

TEST_CASE("reidemeister_zeta examples") {
    const ZetaForm doubling = reidemeister_zeta(FgAbEndo::free(IntMatrix{{2}}), 12);
    REQUIRE(doubling.closed_form);
    CHECK(*doubling.closed_form == rf({1, -1}, {1, -2}));
    CHECK(doubling.route == ClosedFormRoute::lefschetz);

    const ZetaForm inversion = reidemeister_zeta(FgAbEndo::finite({Integer(5)}, IntMatrix{{-1}}), 12);
    CHECK(inversion.sequence[0] == 1);
    CHECK(inversion.sequence[1] == 5);
    REQUIRE(inversion.closed_form);
    // (1 - z)^-1 (1 - z^2)^-2
    const Polynomial den = Polynomial{1, -1} * Polynomial{1, 0, -1} * Polynomial{1, 0, -1};
    CHECK(*inversion.closed_form == RationalFunctionQ(Polynomial{1}, den));

    CHECK_THROWS_AS(reidemeister_zeta(FgAbEndo::free(IntMatrix{{1}}), 6), MathError);
    CHECK_THROWS_AS(reidemeister_zeta(FgAbEndo(FgAbGroup{1, {Integer(3)}}, IntMatrix{{1}}, IntMatrix{{0}},
                                               IntMatrix{{2}}),
                                      6),
                    MathError);
    // rotation by 90 degrees: R(phi^n) finite for n < 4 but infinite at n = 4
    CHECK_THROWS_AS(reidemeister_zeta(FgAbEndo::free(IntMatrix{{0, -1}, {1, 0}}), 3), MathError);

    const ZetaForm trivial = reidemeister_zeta(FgAbEndo(FgAbGroup{}, {}, {}, {}), 8);
    REQUIRE(trivial.closed_form);
    CHECK(*trivial.closed_form == rf({1}, {1, -1}));
}

TEST_CASE("mixed free and torsion zeta from the recurrence") {
    // x2 on Z and inversion on Z/3: R(phi^n) = (2^n - 1)(2 + (-1)^n)
    const FgAbEndo e(FgAbGroup{1, {Integer(3)}}, IntMatrix{{2}}, IntMatrix{{1}}, IntMatrix{{-1}});
    const ZetaForm z = reidemeister_zeta(e, 12);
    for (std::size_t n = 1; n <= 12; ++n) {
        Integer two_n;
        mpz_ui_pow_ui(two_n.get_mpz_t(), 2, n);
        CHECK(z.sequence[n - 1] == (two_n - 1) * (n % 2 == 0 ? 3 : 1));
    }
    CHECK(z.route == ClosedFormRoute::recurrence);
    REQUIRE(z.closed_form);
    CHECK(series_of_rational(*z.closed_form, 12) == z.series);
}

TEST_CASE("closed forms agree with the exp-series whenever produced") {
    std::mt19937_64 rng(303);
    int produced = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const FgAbEndo e = random_endo(rng);
        const auto seq = reidemeister_sequence(e, 10);
        if (!seq.zeta_defined()) continue;
        ZetaForm z{};
        try {
            z = reidemeister_zeta(e, 10);
        } catch (const MathError&) {
            continue;
        }
        CHECK(z.series == exp_zeta_series(std::span<const Integer>(seq.finite_values())));
        if (z.closed_form) {
            ++produced;
            CHECK(series_of_rational(*z.closed_form, 10) == z.series);
        }
    }
    CHECK(produced > 5);
}

TEST_CASE("verify_functional_equation examples") {
    const auto two = verify_functional_equation(rf({1, -1}, {1, -2}), 2, 1, 1);
    CHECK(two.holds);
    CHECK(two.epsilon == 2);
    const auto three = verify_functional_equation(rf({1, -1}, {1, -3}), 3, 1, 1);
    CHECK(three.holds);
    CHECK(three.epsilon == 3);
    const auto trivial = verify_functional_equation(RationalFunctionQ(), 5, 2, 1);
    CHECK(trivial.holds);
    CHECK(trivial.epsilon == 1);
    CHECK_THROWS_AS(verify_functional_equation(RationalFunctionQ(), 0, 1, 1), std::invalid_argument);
    CHECK_FALSE(verify_functional_equation(rf({1, -1}, {1, -2}), 3, 1, 1).holds);
}

TEST_CASE("functional equation holds for torsion-free closed forms, with a consistent constant") {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<long> pick(2, 9);
    int checked = 0;
    while (checked < 30) {
        const std::size_t n = 1 + static_cast<std::size_t>(checked % 3);
        const IntMatrix a = random_hyperbolic(rng, n);
        const Integer d = determinant(a);
        if (d == 0) continue;
        const ZetaForm z = reidemeister_zeta(FgAbEndo::free(a), 8);
        REQUIRE(z.closed_form);
        const auto fe = verify_functional_equation(*z.closed_form, d, n, z.signs->r);
        CHECK(fe.holds);
        // the quotient at two evaluation points
        const RationalFunctionQ& f = *z.closed_form;
        const long sign = n % 2 == 0 ? 1 : -1;
        std::vector<Rational> quotients;
        for (int k = 0; k < 2; ++k) {
            const Rational x = make_rational(pick(rng) + 10 * k, pick(rng) + 13);
            try {
                const Rational lhs = f.eval(1 / (Rational(d) * x));
                Rational rhs = f.eval(x);
                if (sign < 0) rhs = 1 / rhs;
                quotients.push_back(lhs / rhs);
            } catch (const MathError&) {
            }
        }
        if (quotients.size() == 2) CHECK(quotients[0] == quotients[1]);
        ++checked;
    }
}

TEST_CASE("eventual_image examples") {
    const FgAbEndo nil = FgAbEndo::finite({Integer(4)}, IntMatrix{{2}});
    const Reduction h = eventual_image(nil);
    CHECK(h.endo.group().is_trivial());
    CHECK(reidemeister_number(h.endo, 1) == reidemeister_number(nil, 1));

    const FgAbEndo diag = FgAbEndo::free(IntMatrix{{2, 0}, {0, 1}});
    const Reduction image = eventual_image(diag);
    CHECK(image.endo.group() == FgAbGroup{2, {}});
    CHECK(characteristic_polynomial(image.endo.free_part()) == characteristic_polynomial(diag.free_part()));
    CHECK(abs(determinant(image.basis)) == 2);

    const FgAbEndo cat = FgAbEndo::free(IntMatrix{{2, 1}, {1, 1}});
    const Reduction same = eventual_image(cat);
    CHECK(same.steps == 0);
    CHECK(same.endo.free_part() == cat.free_part());
}

TEST_CASE("nilpotent_radical_quotient examples") {
    const FgAbEndo e = FgAbEndo::free(IntMatrix{{0, 0}, {0, 2}});
    const Reduction q = nilpotent_radical_quotient(e);
    CHECK(q.endo.group() == FgAbGroup{1, {}});
    CHECK(q.endo.free_part() == IntMatrix{{2}});
    CHECK(reidemeister_number(q.endo, 1).value() == 1);
    CHECK(reidemeister_number(e, 1).value() == 1);

    const FgAbEndo cat = FgAbEndo::free(IntMatrix{{2, 1}, {1, 1}});
    const Reduction same = nilpotent_radical_quotient(cat);
    CHECK(same.steps == 0);
    CHECK(same.endo.free_part() == cat.free_part());

    const FgAbEndo z8 = FgAbEndo::finite({Integer(8)}, IntMatrix{{2}});
    const Reduction all = nilpotent_radical_quotient(z8);
    CHECK(all.endo.group().is_trivial());
    CHECK(all.steps == 3);
    CHECK(reidemeister_number(z8, 1).value() == 1);
}

TEST_CASE("reductions preserve the Reidemeister sequence") {
    std::mt19937_64 rng(505);
    for (int trial = 0; trial < 40; ++trial) {
        const FgAbEndo e = random_endo(rng);
        const auto original = reidemeister_sequence(e, 6).values;
        const Reduction h = eventual_image(e);
        const Reduction q = nilpotent_radical_quotient(e);
        CHECK(reidemeister_sequence(h.endo, 6).values == original);
        CHECK(reidemeister_sequence(q.endo, 6).values == original);
        // phi(H) lies in H and phi is injective on it
        CHECK(nilpotent_radical_quotient(h.endo).steps == 0);
        CHECK(nilpotent_radical_quotient(q.endo).steps == 0);
    }
}

TEST_CASE("finite groups: R equals twisted classes and fixed characters") {
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<int> small(2, 4), coef(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Integer> inv;
        Integer n = 1;
        for (int i = 1 + trial % 2; i > 0; --i) {
            n *= small(rng);
            inv.push_back(n);
        }
        IntMatrix c(inv.size(), inv.size());
        for (std::size_t i = 0; i < inv.size(); ++i)
            for (std::size_t j = 0; j < inv.size(); ++j) c(i, j) = coef(rng) * (inv[i] / gcd(inv[i], inv[j]));
        const FgAbEndo e = FgAbEndo::finite(inv, c);
        const AbelianCharEndo chars(inv, c);
        const FiniteGroupEndo g = to_group(chars);
        for (unsigned long k = 1; k <= 4; ++k) {
            const Integer r = reidemeister_number(e, k).value();
            CHECK(r == twisted_classes(g, k));
            CHECK(r == fixed_characters(chars, k));
        }
    }
}

TEST_CASE("torsion_tau examples") {
    const RationalFunctionQ l = rf({1, -2}, {1, -1});
    const TorsionValue minus_one = torsion_tau(l, Rational(1, 2));
    REQUIRE(minus_one.kind == TorsionValue::Kind::value);
    const Rational tol(Integer(1), Integer("10000000000000000000000000000"));
    CHECK(abs(decimal_to_rational(minus_one.decimal) - Rational(2, 3)) < tol);

    CHECK(torsion_tau(l, Rational(0)).kind == TorsionValue::Kind::zero_divisor);

    const TorsionValue i = torsion_tau(l, Rational(1, 4));
    REQUIRE(i.kind == TorsionValue::Kind::value);
    const Rational t = decimal_to_rational(i.decimal);
    CHECK(abs(t * t - Rational(2, 5)) < tol);
    CHECK(i.decimal.substr(0, 8) == "0.632455");

    // numerator 1 + z vanishes at -1
    CHECK(torsion_tau(rf({1, 1}, {1, -3}), Rational(1, 2)).kind == TorsionValue::Kind::pole);
    CHECK(torsion_tau(l, Rational(1, 4), 50).decimal.size() == 52);
}
