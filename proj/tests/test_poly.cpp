#include <random>

#include "doctest.h"
#include "foldlab/poly.hpp"

using namespace foldlab;

namespace {

std::shared_ptr<const QuadraticAlgebra> golden() {
    return QuadraticAlgebra::golden_over(BaseRing({5}));
}

Poly rand_poly(std::mt19937_64& rng, int nvars, int maxdeg, const QuadraticAlgebra* alg) {
    std::uniform_int_distribution<long> cdist(-5, 5);
    std::uniform_int_distribution<int> edist(0, maxdeg);
    Poly p = Poly::zero(nvars, alg);
    int nterms = 1 + (int)(rng() % 6);
    for (int t = 0; t < nterms; ++t) {
        std::vector<int> exps(nvars, 0);
        int budget = edist(rng);
        for (int b = 0; b < budget; ++b) exps[rng() % nvars]++;
        QScalar c = alg ? QScalar(make_rat(cdist(rng)), make_rat(cdist(rng)), alg)
                        : QScalar(make_rat(cdist(rng)));
        p.add_term(Poly::key_of_exponents(exps), c);
    }
    return p;
}

Poly rand_linear(std::mt19937_64& rng, int nvars, const QuadraticAlgebra* alg) {
    std::uniform_int_distribution<long> cdist(-4, 4);
    while (true) {
        std::vector<QScalar> coeffs(nvars);
        for (auto& c : coeffs)
            c = alg ? QScalar(make_rat(cdist(rng)), make_rat(cdist(rng)), alg)
                    : QScalar(make_rat(cdist(rng)));
        Poly lin = Poly::linear(coeffs, alg);
        if (!lin.is_zero()) return lin;
    }
}

}  // namespace

TEST_CASE("term bookkeeping") {
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    Poly f = x * x - y * y;
    CHECK(f.degree() == 2);
    CHECK(f.is_homogeneous());
    CHECK(f.term_count() == 2);
    CHECK((f - f).is_zero());
    Poly g = f + Poly::constant(2, QScalar(3));
    CHECK(!g.is_homogeneous());
    CHECK(g.augment() == QScalar(3));
    CHECK(f.augment() == QScalar(0));
    // canonical order: graded lex, leading term first
    Poly h = y + x * x;
    CHECK(h.terms()[0].first == Poly::key_of_exponents(std::vector<int>{2, 0}));
}

TEST_CASE("substitution examples") {
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    Poly f = x * y;
    // identity
    std::vector<Poly> id = {x, y};
    CHECK(f.substitute(id) == f);
    // A2 reflection r1: a1 -> -a1, a2 -> a1 + a2 maps a1 a2 to -a1^2 - a1 a2
    std::vector<Poly> r1 = {-x, x + y};
    CHECK(f.substitute(r1) == -(x * x) - x * y);
}

TEST_CASE("substitution is a ring homomorphism, randomized") {
    std::mt19937_64 rng(7777);
    auto g = golden();
    for (int k = 0; k < 200; ++k) {
        Poly f1 = rand_poly(rng, 3, 2, g.get());
        Poly f2 = rand_poly(rng, 3, 2, g.get());
        std::vector<Poly> images;
        for (int j = 0; j < 3; ++j) images.push_back(rand_linear(rng, 3, g.get()));
        CHECK((f1 * f2).substitute(images) == f1.substitute(images) * f2.substitute(images));
        CHECK((f1 + f2).substitute(images) == f1.substitute(images) + f2.substitute(images));
    }
}

TEST_CASE("substitute_linear round trips through the inverse matrix") {
    // A2 simple reflection in the root basis is an involution
    std::vector<std::vector<QScalar>> r1 = {{QScalar(-1), QScalar(1)}, {QScalar(0), QScalar(1)}};
    std::mt19937_64 rng(31337);
    for (int k = 0; k < 100; ++k) {
        Poly f = rand_poly(rng, 2, 3, nullptr);
        CHECK(f.substitute_linear(r1).substitute_linear(r1) == f);
    }
}

TEST_CASE("linear division examples") {
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    auto d1 = divide_by_linear(x * x - y * y, x - y);
    CHECK(d1.divisible);
    CHECK(d1.quotient == x + y);

    auto d2 = divide_by_linear(x * x + y * y, x - y);
    CHECK(!d2.divisible);
    CHECK(!d2.remainder.is_zero());

    // over Q(tau): (x - tau y)(x + y) / (x - tau y) = x + y
    auto g = golden();
    QScalar tau = QScalar::tau(g.get());
    Poly xt = Poly::variable(2, 0, g.get()), yt = Poly::variable(2, 1, g.get());
    Poly lin = xt - tau * yt;
    auto d3 = divide_by_linear(lin * (xt + yt), lin);
    CHECK(d3.divisible);
    CHECK(d3.quotient == xt + yt);

    CHECK_THROWS_AS(divide_by_linear(x, Poly::zero(2, nullptr)), DegenerateInputError);
    CHECK_THROWS_AS(divide_by_linear(x, x * y), DegenerateInputError);
    CHECK_THROWS_AS(divide_by_linear(x, x + Poly::constant(2, QScalar(1))),
                    DegenerateInputError);
}

TEST_CASE("division round trip, 500 random cases") {
    std::mt19937_64 rng(424242);
    auto g = golden();
    for (int k = 0; k < 500; ++k) {
        const QuadraticAlgebra* alg = k % 2 ? g.get() : nullptr;
        Poly f = rand_poly(rng, 3, 3, alg);
        Poly lin = rand_linear(rng, 3, alg);
        auto d = divide_by_linear(f * lin, lin);
        REQUIRE(d.divisible);
        CHECK(d.quotient == f);
        // f*lin + c for nonzero constant c is never divisible
        Poly shifted = f * lin + Poly::constant(3, QScalar(1), alg);
        CHECK(!divide_by_linear(shifted, lin).divisible);
    }
}

TEST_CASE("integral-mode certification") {
    BaseRing z5({5});
    auto g = golden();
    QScalar tau = QScalar::tau(g.get());
    Poly x = Poly::variable(2, 0, g.get()), y = Poly::variable(2, 1, g.get());

    // dividing 2x(x+y) by 2x: quotient x+y lies in Z(tau)[1/5]
    Poly lin2 = x * QScalar(2);
    auto ok = divide_by_linear(lin2 * (x + y), lin2, Mode::Integral, &z5);
    CHECK(ok.divisible);
    CHECK(ok.integral_ok);

    // dividing x+y... by 3x: quotient has 1/3 coefficients, not in Z(tau)[1/5]
    Poly lin3 = x * QScalar(3);
    auto bad = divide_by_linear(x * (x + y), lin3, Mode::Integral, &z5);
    CHECK(bad.divisible);
    CHECK(!bad.integral_ok);
    // same division over the fraction field is fine
    auto fld = divide_by_linear(x * (x + y), lin3, Mode::Field, &z5);
    CHECK(fld.divisible);
    CHECK(fld.integral_ok);

    // reconstruction stays exact: quotient * lin == f when certified
    auto d = divide_by_linear((x + tau * y) * (x - y), x + tau * y, Mode::Integral, &z5);
    REQUIRE(d.divisible);
    CHECK(d.integral_ok);
    CHECK(d.quotient * (x + tau * y) == (x + tau * y) * (x - y));
}

TEST_CASE("augmentation is multiplicative") {
    std::mt19937_64 rng(99);
    auto g = golden();
    for (int k = 0; k < 200; ++k) {
        Poly f1 = rand_poly(rng, 3, 2, g.get());
        Poly f2 = rand_poly(rng, 3, 2, g.get());
        CHECK((f1 * f2).augment() == f1.augment() * f2.augment());
        CHECK((f1 + f2).augment() == f1.augment() + f2.augment());
    }
}
