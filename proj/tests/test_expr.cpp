#include <random>

#include <gtest/gtest.h>

#include "dqwall/expr/derivation.hpp"
#include "dqwall/expr/linear_solve.hpp"
#include "random_poly.hpp"

using namespace dqwall::expr;

namespace {

const Poly p = sym(Symbol::p);
const Poly E = sym(Symbol::E);
const Poly a = sym(Symbol::alpha);
const Poly u = sym(Symbol::u);
const Poly I = Poly::i();

DerivationTable liouville_table() { return DerivationTable().add(Symbol::u, +1); }

}  // namespace

TEST(GaussianRational, ArithmeticAndText) {
    const GaussianRational half = GaussianRational::ratio(1, 2);
    EXPECT_EQ((GaussianRational::i() * GaussianRational::i()), GaussianRational(-1));
    EXPECT_EQ((GaussianRational(1) / GaussianRational(0, 2)).to_string(), "-1/2*i");
    EXPECT_EQ(GaussianRational(half.re(), mpq_class(-3)).to_string(), "(1/2-3*i)");
    EXPECT_EQ(GaussianRational::parse_real("0.125"), GaussianRational::ratio(1, 8));
    EXPECT_EQ(GaussianRational::parse_real("-2.5e-1"), GaussianRational::ratio(-1, 4));
    EXPECT_EQ(GaussianRational::parse_real("3/6"), half);
    EXPECT_THROW(GaussianRational(1) / GaussianRational(0), std::domain_error);
}

TEST(PolyArith, DifferenceOfSquares) {
    EXPECT_EQ((p + I * a) * (p - I * a), p * p + a * a);
    EXPECT_EQ(((p + I * a) * (p - I * a)).to_string(), "p^2 + alpha^2");
}

TEST(PolyArith, IdentityQuotient) {
    const RationalFn f(p * p - E, p * p - E);
    EXPECT_TRUE(f.is_one());
}

TEST(PolyArith, ConjugatePairSum) {
    const RationalFn sum = RationalFn(Poly(1), p + I * a) + RationalFn(Poly(1), p - I * a);
    EXPECT_EQ(sum, RationalFn(Poly(2) * p, p * p + a * a));
    EXPECT_EQ(sum.num(), Poly(2) * p);
    EXPECT_EQ(sum.den(), p * p + a * a);
    EXPECT_EQ(sum.to_string(), "(2*p)/(p^2 + alpha^2)");
}

TEST(PolyArith, DivisionByZero) {
    EXPECT_THROW(RationalFn(p) / RationalFn(Poly()), std::domain_error);
    EXPECT_THROW(RationalFn(p, Poly()), std::domain_error);
}

TEST(PolyArith, CanonicalTextIsSorted) {
    const Poly z = E * E + p.pow(4) - Poly(2) * E * p * p;
    EXPECT_EQ(z.to_string(), "p^4 - 2*p^2*E + E^2");
    EXPECT_EQ((Poly(GaussianRational::ratio(1, 2)) * I * u - p).to_string(), "-p + 1/2*i*u");
    EXPECT_EQ(Poly().to_string(), "0");
}

TEST(PolyArith, ExactDivision) {
    const Poly f = (p + E) * (a - u);
    EXPECT_EQ(*f.divide_exact(p + E), a - u);
    EXPECT_FALSE(f.divide_exact(p + a).has_value());
}

TEST(Gcd, RecoversCommonFactor) {
    const Poly common = p * p - I * a * E + Poly(3);
    const Poly f = common * (p + u) * (E - Poly(1));
    const Poly g = common * (u * u + a) * (E - Poly(1));
    EXPECT_EQ(gcd(f, g), ((E - Poly(1)) * common).monic());
    EXPECT_TRUE(gcd(p + Poly(1), p - Poly(1)).is_one());
    EXPECT_EQ(gcd(Poly(4) * p * E, Poly(6) * p * p), p);
}

TEST(Differentiate, GeneratorRule) {
    const auto table = liouville_table();
    EXPECT_EQ(table.differentiate(u), Poly(2) * a * u);
    EXPECT_EQ(table.differentiate(u * u), Poly(4) * a * u * u);
    const RationalFn f(u, p * p + a * a);
    EXPECT_EQ(table.differentiate(f), RationalFn(Poly(2) * a * u, p * p + a * a));
    EXPECT_TRUE(table.differentiate(p * E * a).is_zero());
}

TEST(Differentiate, UnknownGeneratorThrows) {
    EXPECT_THROW(liouville_table().differentiate(sym(Symbol::v)), std::invalid_argument);
    EXPECT_THROW(DerivationTable().add(Symbol::p, 1), std::invalid_argument);
}

TEST(LinearSolve, Identity) {
    const std::vector<LinearRow> rows = {{{1, 0}, 1}, {{0, 1}, p}};
    const auto rep = linear_solve(rows);
    ASSERT_TRUE(rep.solution);
    EXPECT_EQ((*rep.solution)[0], RationalFn(1));
    EXPECT_EQ((*rep.solution)[1], RationalFn(p));
}

TEST(LinearSolve, SumAndDifference) {
    // R1 + R-1 = A, R1 - R-1 = B, with A = E and B = alpha as stand-ins
    const std::vector<LinearRow> rows = {{{1, 1}, E}, {{1, -1}, a}};
    const auto rep = linear_solve(rows);
    ASSERT_TRUE(rep.solution);
    EXPECT_EQ((*rep.solution)[0], RationalFn(E + a, Poly(2)));
    EXPECT_EQ((*rep.solution)[1], RationalFn(E - a, Poly(2)));
}

TEST(LinearSolve, InconsistentReportsRow) {
    const std::vector<LinearRow> rows = {{{p, 1}, 1}, {{p * p, p}, p + Poly(1)}};
    try {
        linear_solve(rows);
        FAIL() << "expected InconsistentSystem";
    } catch (const InconsistentSystem& e) {
        EXPECT_FALSE(e.row().pivot.has_value());
        EXPECT_FALSE(e.row().rhs.is_zero());
    }
}

TEST(LinearSolve, RankDeficientHasNoUniqueSolution) {
    const std::vector<LinearRow> rows = {{{p, 1}, 0}, {{p * p, p}, 0}};
    const auto rep = linear_solve(rows);
    EXPECT_EQ(rep.rank, 1U);
    EXPECT_FALSE(rep.solution.has_value());
}

TEST(LinearSolve, CombinationReproducesRows) {
    const std::vector<LinearRow> rows = {
        {{p, u, RationalFn(Poly(1), p + a)}, 0}, {{E, a, 1}, 1}, {{u, p, E}, p}};
    SolveOptions opt;
    opt.track_combination = true;
    const auto rep = linear_solve(rows, opt);
    for (const auto& r : rep.rows) {
        for (std::size_t j = 0; j < 3; ++j) {
            RationalFn acc;
            for (std::size_t k = 0; k < rows.size(); ++k) acc += r.combination[k] * rows[k].coeffs[j];
            EXPECT_EQ(acc, r.coeffs[j]);
        }
    }
}

TEST(ExprProperties, RingAxiomsOnRandomPolys) {
    std::mt19937_64 rng(7);
    const std::vector<Symbol> syms = {Symbol::p, Symbol::E, Symbol::alpha, Symbol::u};
    for (int trial = 0; trial < 50; ++trial) {
        const Poly x = dqwall::testing::random_poly(rng, syms);
        const Poly y = dqwall::testing::random_poly(rng, syms);
        const Poly z = dqwall::testing::random_poly(rng, syms);
        EXPECT_EQ((x + y) + z, x + (y + z));
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ(x * y, y * x);
        if (!y.is_zero()) {
            EXPECT_EQ(*(x * y).divide_exact(y), x);
        }
    }
}

TEST(ExprProperties, LeibnizRule) {
    std::mt19937_64 rng(11);
    const auto table = DerivationTable().add(Symbol::u, 1).add(Symbol::v, -1);
    const std::vector<Symbol> syms = {Symbol::p, Symbol::alpha, Symbol::u, Symbol::v};
    for (int trial = 0; trial < 30; ++trial) {
        const Poly f = dqwall::testing::random_poly(rng, syms);
        const Poly g = dqwall::testing::random_poly(rng, syms);
        EXPECT_EQ(table.differentiate(f * g), table.differentiate(f) * g + f * table.differentiate(g));
        const Poly h = dqwall::testing::random_poly(rng, syms, 2, 1);
        if (h.is_zero()) continue;
        const RationalFn q(f, h);
        // quotient rule, checked through the product rule
        EXPECT_EQ(table.differentiate(q) * RationalFn(h) + q * RationalFn(table.differentiate(h)),
                  RationalFn(table.differentiate(f)));
    }
}

TEST(ExprProperties, SolveIsScaleInvariant) {
    std::mt19937_64 rng(3);
    const std::vector<Symbol> syms = {Symbol::p, Symbol::E};
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<LinearRow> rows;
        for (int r = 0; r < 3; ++r) {
            LinearRow row;
            for (int c = 0; c < 3; ++c) row.coeffs.emplace_back(dqwall::testing::random_poly(rng, syms, 2, 1));
            row.rhs = dqwall::testing::random_poly(rng, syms, 2, 1);
            rows.push_back(row);
        }
        std::optional<SolveReport> base;
        try {
            base = linear_solve(rows);
        } catch (const InconsistentSystem&) {
            continue;
        }
        if (!base->solution) continue;
        auto scaled = rows;
        for (auto& row : scaled) {
            Poly n = dqwall::testing::random_poly(rng, syms, 2, 1), d = dqwall::testing::random_poly(rng, syms, 2, 1);
            if (n.is_zero() || d.is_zero()) n = d = Poly(1);
            const RationalFn f(n, d);
            for (auto& c : row.coeffs) c *= f;
            row.rhs *= f;
        }
        const auto again = linear_solve(scaled);
        ASSERT_TRUE(again.solution);
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ((*again.solution)[j], (*base->solution)[j]);
    }
}
